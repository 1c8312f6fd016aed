//! Influence digraphs, irreducibility classes, permutation structure of
//! strongly cooperative maps, and orbit-length bounds.
//!
//! Coordinates are 0-based here; text exports are 1-based.

use std::fmt;

use crate::antichain::max_level_size;
use crate::dynamics::{orbit_decompose, Dynamics, OrbitDecomposition, TotalMap};
use crate::error::{Error, Result};
use crate::monotone::{is_cooperative, is_strongly_cooperative};
use crate::state::StateSpace;

/// Digraph on nodes `0..n` with adjacency rows as bitmasks.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    out: Vec<u64>,
}

impl Digraph {
    pub fn empty(n: usize) -> Self {
        assert!(n <= 64, "digraphs hold at most 64 nodes");
        Digraph { n, out: vec![0; n] }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Digraph::empty(n);
        for i in 0..n {
            for j in 0..n {
                g.add(i, j);
            }
        }
        g
    }

    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Self {
        let mut g = Digraph::empty(n);
        for &(i, j) in arcs {
            g.add(i, j);
        }
        g
    }

    pub fn nodes(&self) -> usize {
        self.n
    }

    pub fn add(&mut self, i: usize, j: usize) {
        assert!(i < self.n && j < self.n);
        self.out[i] |= 1 << j;
    }

    pub fn has(&self, i: usize, j: usize) -> bool {
        self.out[i] >> j & 1 == 1
    }

    pub fn successors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let row = self.out[i];
        (0..self.n).filter(move |&j| row >> j & 1 == 1)
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|i| self.successors(i).map(move |j| (i, j)))
            .collect()
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn is_subgraph_of(&self, other: &Digraph) -> bool {
        self.n == other.n && self.out.iter().zip(&other.out).all(|(a, b)| a & !b == 0)
    }

    pub fn intersect_with(&mut self, other: &Digraph) {
        for (a, b) in self.out.iter_mut().zip(&other.out) {
            *a &= b;
        }
    }

    pub fn union_with(&mut self, other: &Digraph) {
        for (a, b) in self.out.iter_mut().zip(&other.out) {
            *a |= b;
        }
    }

    /// Nodes reachable from `start`, including `start`, as a bitmask.
    pub fn reachable(&self, start: usize) -> u64 {
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = self.out[v] & !seen;
            seen |= new;
            frontier |= new;
        }
        seen
    }

    /// `i j` per line, 1-based.
    pub fn edge_list(&self) -> String {
        self.arcs()
            .iter()
            .map(|(i, j)| format!("{} {}\n", i + 1, j + 1))
            .collect()
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("digraph {name} {{\n");
        for v in 0..self.n {
            s.push_str(&format!("  {};\n", v + 1));
        }
        for (i, j) in self.arcs() {
            s.push_str(&format!("  {} -> {};\n", i + 1, j + 1));
        }
        s.push_str("}\n");
        s
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arcs: Vec<String> = self
            .arcs()
            .iter()
            .map(|(i, j)| format!("<{},{}>", i + 1, j + 1))
            .collect();
        write!(f, "Digraph({}; {})", self.n, arcs.join(" "))
    }
}

/// Strongly connected components, iterative Tarjan. Components are sorted
/// internally and ordered by their smallest node.
pub fn strongly_connected_components(g: &Digraph) -> Vec<Vec<usize>> {
    const UNSEEN: usize = usize::MAX;
    let n = g.n;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut next = 0usize;
    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        // (node, next successor to try)
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut k)) = call.last_mut() {
            if let Some(w) = (*k..n).find(|&w| g.has(v, w)) {
                *k = w + 1;
                if index[w] == UNSEEN {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(u, _)) = call.last() {
                low[u] = low[u].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().unwrap();
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                comps.push(comp);
            }
        }
    }
    comps.sort_by_key(|c| c[0]);
    comps
}

pub fn strongly_connected(g: &Digraph) -> bool {
    strongly_connected_components(g).len() <= 1
}

/// Which arc sets `influence_arcs` evaluates.
#[derive(Clone, Copy, Debug)]
pub enum Over<'a> {
    All,
    /// The state set of one cycle of the map.
    Attractor(&'a [usize]),
}

/// `A_x` (strict) and `A*_x` (weak) for each state of a designated subset.
#[derive(Clone, Debug)]
pub struct InfluenceArcSets {
    pub space: StateSpace,
    pub states: Vec<usize>,
    pub strict: Vec<Digraph>,
    pub weak: Vec<Digraph>,
}

impl InfluenceArcSets {
    pub fn intersection_strict(&self) -> Digraph {
        fold(&self.strict, self.space.dim(), true)
    }

    pub fn intersection_weak(&self) -> Digraph {
        fold(&self.weak, self.space.dim(), true)
    }

    pub fn union_weak(&self) -> Digraph {
        fold(&self.weak, self.space.dim(), false)
    }

    /// First state (by position in `states`) whose `G_x` is not strongly connected.
    pub fn first_not_strongly_connected(&self) -> Option<usize> {
        self.strict
            .iter()
            .position(|g| !strongly_connected(g))
            .map(|k| self.states[k])
    }
}

fn fold(gs: &[Digraph], n: usize, intersect: bool) -> Digraph {
    let mut acc = if intersect { Digraph::complete(n) } else { Digraph::empty(n) };
    for g in gs {
        if intersect {
            acc.intersect_with(g);
        } else {
            acc.union_with(g);
        }
    }
    acc
}

/// `(A_x, A*_x)` for a single state.
///
/// `<i,j> ∈ A*_x` iff `g(x)_j < g(x^{i+})_j` or `g(x^{i-})_j < g(x)_j`.
/// `<i,j> ∈ A_x` iff additionally both strict inequalities hold whenever
/// `0 < x_i < p_i - 1`. Missing neighbours at the boundary contribute no arc.
pub fn arcs_at<D: Dynamics + ?Sized>(m: &D, x: usize) -> (Digraph, Digraph) {
    let space = m.space();
    let n = space.dim();
    let gx = m.image_rank(x);
    let mut strict = Digraph::empty(n);
    let mut weak = Digraph::empty(n);
    for i in 0..n {
        let up = space.up_rank(x, i);
        let down = space.down_rank(x, i);
        let g_up = (up != x).then(|| m.image_rank(up));
        let g_down = (down != x).then(|| m.image_rank(down));
        let interior = g_up.is_some() && g_down.is_some();
        for j in 0..n {
            let v = space.digit(gx, j);
            let rises = g_up.is_some_and(|r| v < space.digit(r, j));
            let falls = g_down.is_some_and(|r| space.digit(r, j) < v);
            if rises || falls {
                weak.add(i, j);
                if !interior || (rises && falls) {
                    strict.add(i, j);
                }
            }
        }
    }
    (strict, weak)
}

fn check_attractor(dec: &OrbitDecomposition, x: &[usize]) -> Result<usize> {
    dec.find_cycle(x).ok_or_else(|| {
        Error::InvalidAttractor(format!("{} states do not form a cycle of the map", x.len()))
    })
}

pub fn influence_arcs<D: Dynamics + ?Sized>(m: &D, over: Over<'_>) -> Result<InfluenceArcSets> {
    let space = m.space();
    let states: Vec<usize> = match over {
        Over::All => (0..space.size()).collect(),
        Over::Attractor(x) => {
            check_attractor(&orbit_decompose(m), x)?;
            x.to_vec()
        }
    };
    let (strict, weak) = states.iter().map(|&x| arcs_at(m, x)).unzip();
    Ok(InfluenceArcSets {
        space: space.clone(),
        states,
        strict,
        weak,
    })
}

/// Irreducibility along a single attractor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlongAttractor {
    pub cycle: Vec<usize>,
    pub strongly_irreducible: bool,
    pub irreducible: bool,
    pub weakly_irreducible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibilityReport {
    pub n: usize,
    pub strongly_irreducible: bool,
    pub strongly_semi_irreducible: bool,
    pub irreducible: bool,
    pub weakly_irreducible: bool,
    /// A state whose `G_x` is not strongly connected.
    pub irreducible_witness: Option<usize>,
    pub intersection_strict: Digraph,
    pub intersection_weak: Digraph,
    pub union_weak: Digraph,
    pub along: Vec<AlongAttractor>,
}

impl IrreducibilityReport {
    pub fn along_cycle(&self, cycle: &[usize]) -> Option<&AlongAttractor> {
        let mut want = cycle.to_vec();
        want.sort_unstable();
        self.along.iter().find(|a| {
            let mut c = a.cycle.clone();
            c.sort_unstable();
            c == want
        })
    }
}

fn along_attractor<D: Dynamics + ?Sized>(m: &D, cycle: &[usize]) -> AlongAttractor {
    let arcs: Vec<(Digraph, Digraph)> = cycle.iter().map(|&x| arcs_at(m, x)).collect();
    let n = m.space().dim();
    let strict: Vec<Digraph> = arcs.iter().map(|a| a.0.clone()).collect();
    let weak: Vec<Digraph> = arcs.iter().map(|a| a.1.clone()).collect();
    AlongAttractor {
        cycle: cycle.to_vec(),
        strongly_irreducible: strongly_connected(&fold(&strict, n, true)),
        irreducible: strict.iter().all(strongly_connected),
        weakly_irreducible: strongly_connected(&fold(&weak, n, false)),
    }
}

pub fn classify_irreducibility<D: Dynamics + ?Sized>(m: &D) -> IrreducibilityReport {
    let space = m.space();
    let n = space.dim();
    let mut inter_strict = Digraph::complete(n);
    let mut inter_weak = Digraph::complete(n);
    let mut union_weak = Digraph::empty(n);
    let mut witness = None;
    for x in 0..space.size() {
        let (strict, weak) = arcs_at(m, x);
        if witness.is_none() && !strongly_connected(&strict) {
            witness = Some(x);
        }
        inter_strict.intersect_with(&strict);
        inter_weak.intersect_with(&weak);
        union_weak.union_with(&weak);
    }
    let dec = orbit_decompose(m);
    let along = dec.cycles().iter().map(|c| along_attractor(m, c)).collect();
    IrreducibilityReport {
        n,
        strongly_irreducible: strongly_connected(&inter_strict),
        strongly_semi_irreducible: strongly_connected(&inter_weak),
        irreducible: witness.is_none(),
        weakly_irreducible: strongly_connected(&union_weak),
        irreducible_witness: witness,
        intersection_strict: inter_strict,
        intersection_weak: inter_weak,
        union_weak,
        along,
    }
}

/// Irreducibility flags along a given attractor only.
pub fn classify_along<D: Dynamics + ?Sized>(m: &D, cycle: &[usize]) -> Result<AlongAttractor> {
    check_attractor(&orbit_decompose(m), cycle)?;
    Ok(along_attractor(m, cycle))
}

/// A permutation of `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &j in &map {
            if j >= n || seen[j] {
                return Err(Error::InvalidPermutation(format!(
                    "{map:?} is not a bijection of 0..{n}"
                )));
            }
            seen[j] = true;
        }
        Ok(Permutation(map))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// `i -> i+1 mod n`.
    pub fn cyclic(n: usize) -> Self {
        Permutation((0..n).map(|i| (i + 1) % n).collect())
    }

    /// Disjoint cycles in the given order, e.g. `[[0,1],[2,3,4]]`.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut map: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for c in cycles {
            for (k, &i) in c.iter().enumerate() {
                if i >= n || touched[i] {
                    return Err(Error::InvalidPermutation(format!(
                        "cycles {cycles:?} are not disjoint in 0..{n}"
                    )));
                }
                touched[i] = true;
                map[i] = c[(k + 1) % c.len()];
            }
        }
        Permutation::new(map)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// Cycles including fixed points, each starting at its smallest element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for s in 0..self.len() {
            if seen[s] {
                continue;
            }
            let mut c = vec![s];
            seen[s] = true;
            let mut i = self.0[s];
            while i != s {
                seen[i] = true;
                c.push(i);
                i = self.0[i];
            }
            out.push(c);
        }
        out
    }

    pub fn is_cyclic(&self) -> bool {
        self.cycles().len() == 1
    }

    /// Least `r > 0` with `pi^r = id`.
    pub fn order(&self) -> u128 {
        self.cycles().iter().fold(1u128, |acc, c| lcm(acc, c.len() as u128))
    }

    /// `g_pi` with `(g_pi(x))_{pi(i)} = x_i`.
    pub fn induced_map(&self, space: &StateSpace) -> Result<TotalMap> {
        let n = space.dim();
        if self.len() != n {
            return Err(Error::InvalidPermutation(format!(
                "permutation of {} elements on a {n}-dimensional space",
                self.len()
            )));
        }
        for i in 0..n {
            let j = self.0[i];
            if space.level(j) < space.level(i) {
                return Err(Error::InvalidPermutation(format!(
                    "coordinate {} has {} levels but receives coordinate {} with {} levels",
                    j + 1,
                    space.level(j),
                    i + 1,
                    space.level(i)
                )));
            }
        }
        TotalMap::from_coord_fn(space.clone(), |x, y| {
            for i in 0..n {
                y[self.0[i]] = x[i];
            }
        })
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

/// Cycle notation, 1-based, fixed points omitted; `()` for the identity.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<String> = self
            .cycles()
            .into_iter()
            .filter(|c| c.len() > 1)
            .map(|c| {
                let items: Vec<String> = c.iter().map(|i| (i + 1).to_string()).collect();
                format!("({})", items.join(" "))
            })
            .collect();
        if cycles.is_empty() {
            write!(f, "()")
        } else {
            write!(f, "{}", cycles.join(""))
        }
    }
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u128, b: u128) -> u128 {
    a / gcd(a, b) * b
}

/// For a cooperative irreducible map, the cyclic `pi` with `g = g_pi`.
///
/// `pi(i) = j` iff `<i,j> ∈ A_0`. Strong cooperativity and the identity
/// `g = g_pi` are re-checked on every state.
pub fn extract_cyclic_pi(m: &TotalMap) -> Result<Permutation> {
    if !is_cooperative(m) {
        return Err(Error::NotIrreducible("map is not cooperative".into()));
    }
    let report = classify_irreducibility(m);
    if let Some(x) = report.irreducible_witness {
        return Err(Error::NotIrreducible(format!(
            "G_x is not strongly connected at {}",
            m.space().unrank(x).unwrap()
        )));
    }
    if !is_strongly_cooperative(m) {
        return Err(Error::TheoremViolation(
            "cooperative irreducible map is not strongly cooperative".into(),
        ));
    }
    let (a0, _) = arcs_at(m, 0);
    let n = m.space().dim();
    let mut map = Vec::with_capacity(n);
    for i in 0..n {
        let succ: Vec<usize> = a0.successors(i).collect();
        if succ.len() != 1 {
            return Err(Error::TheoremViolation(format!(
                "node {} has out-degree {} in G_0",
                i + 1,
                succ.len()
            )));
        }
        map.push(succ[0]);
    }
    let pi = Permutation::new(map)
        .map_err(|e| Error::TheoremViolation(format!("A_0 does not define a permutation: {e}")))?;
    if !pi.is_cyclic() {
        return Err(Error::TheoremViolation(format!("extracted {pi} is not cyclic")));
    }
    let g_pi = pi.induced_map(m.space())?;
    if let Some(x) = (0..m.space().size()).find(|&x| g_pi.table()[x] != m.table()[x]) {
        return Err(Error::TheoremViolation(format!(
            "g differs from g_pi at {}",
            m.space().unrank(x).unwrap()
        )));
    }
    Ok(pi)
}

fn bit(k: usize, i: usize) -> usize {
    1 << (k - 1 - i)
}

/// Induction on the number of coordinates: `sigma` from singleton images,
/// `I` the persistent singletons, recursion on `f(y) = g(y ∪ I) \ I` over
/// the complement `J`.
fn pi_on_persistent(g: &TotalMap) -> Result<Vec<usize>> {
    let k = g.space().dim();
    let t = g.table();
    let mut sigma = Vec::with_capacity(k);
    for i in 0..k {
        let img = t[bit(k, i)] as usize;
        if img.count_ones() != 1 {
            return Err(Error::TheoremViolation(format!(
                "singleton {{{}}} maps to a state with {} elements",
                i + 1,
                img.count_ones()
            )));
        }
        sigma.push(k - 1 - img.trailing_zeros() as usize);
    }
    let dec = orbit_decompose(g);
    let in_i: Vec<bool> = (0..k).map(|i| dec.is_persistent(bit(k, i))).collect();
    if !in_i.iter().any(|&b| b) {
        return Err(Error::TheoremViolation("no singleton state is persistent".into()));
    }
    if in_i.iter().all(|&b| b) {
        return Ok(sigma);
    }
    let j: Vec<usize> = (0..k).filter(|&i| !in_i[i]).collect();
    let i_mask: usize = (0..k).filter(|&i| in_i[i]).map(|i| bit(k, i)).sum();
    let sub_space = StateSpace::boolean(j.len())?;
    let lift = |y: usize| -> usize {
        (0..j.len())
            .filter(|&l| y & bit(j.len(), l) != 0)
            .map(|l| bit(k, j[l]))
            .sum()
    };
    let f = TotalMap::from_rank_fn(sub_space, |y| {
        let img = t[lift(y) | i_mask] as usize & !i_mask;
        (0..j.len())
            .filter(|&l| img & bit(k, j[l]) != 0)
            .map(|l| bit(j.len(), l))
            .sum()
    })?;
    let rho = pi_on_persistent(&f)?;
    let mut pi = sigma;
    for (l, &r) in rho.iter().enumerate() {
        pi[j[l]] = j[r];
    }
    Ok(pi)
}

/// For a strongly cooperative Boolean map, a permutation `pi` with
/// `g(x) = g_pi(x)` on every persistent state.
pub fn extract_pi_boolean_sc(m: &TotalMap) -> Result<Permutation> {
    if !m.space().is_boolean() {
        return Err(Error::ContractInapplicable(
            "permutation extraction needs a Boolean space".into(),
        ));
    }
    if !is_strongly_cooperative(m) {
        return Err(Error::ContractInapplicable("map is not strongly cooperative".into()));
    }
    let pi = Permutation::new(pi_on_persistent(m)?)
        .map_err(|e| Error::TheoremViolation(format!("induction produced {e}")))?;
    let g_pi = pi.induced_map(m.space())?;
    let dec = orbit_decompose(m);
    if let Some(x) = dec
        .persistent_ranks()
        .into_iter()
        .find(|&x| g_pi.table()[x] != m.table()[x])
    {
        return Err(Error::TheoremViolation(format!(
            "g differs from g_pi at persistent state {}",
            m.space().unrank(x).unwrap()
        )));
    }
    Ok(pi)
}

/// Largest `k` for which [`landau_r`] is computed exactly. `R(k)` exceeds
/// `2^31` long before this, so larger arguments never bound an orbit.
pub const LANDAU_LIMIT: u32 = 1000;

/// Maximum order of a permutation of `k` elements.
pub fn landau_r(k: u32) -> Result<u128> {
    if k == 0 {
        return Err(Error::Precondition("R(k) needs k >= 1".into()));
    }
    if k > LANDAU_LIMIT {
        return Err(Error::CountOverflow(format!("R({k}) is not computed above k = {LANDAU_LIMIT}")));
    }
    let k = k as usize;
    let primes: Vec<usize> = (2..=k).filter(|&q| (2..q).take_while(|d| d * d <= q).all(|d| q % d != 0)).collect();
    // best[b]: max product of powers of distinct primes seen so far with sum <= b.
    let mut best = vec![1u128; k + 1];
    for &q in &primes {
        for b in (q..=k).rev() {
            let mut power = q;
            let mut value = q as u128;
            while power <= b {
                let cand = best[b - power].checked_mul(value).ok_or_else(|| {
                    Error::CountOverflow(format!("R({k}) exceeds 128 bits"))
                })?;
                best[b] = best[b].max(cand);
                power = match power.checked_mul(q) {
                    Some(p) => p,
                    None => break,
                };
                value *= q as u128;
            }
        }
    }
    Ok(best[k])
}

/// One bound applied to one cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCheck {
    pub name: &'static str,
    pub bound: u128,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleBounds {
    pub cycle_index: usize,
    pub length: usize,
    pub checks: Vec<BoundCheck>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitBoundsReport {
    pub n: usize,
    /// `N = sum (p_i - 1)`.
    pub big_n: u32,
    pub cooperative: bool,
    pub strongly_cooperative: bool,
    pub irreducible: bool,
    /// `R(N)`; `None` when `N` exceeds [`LANDAU_LIMIT`].
    pub landau_big_n: Option<u128>,
    /// `R(n)`, reported for comparison and never asserted.
    pub landau_n: u128,
    pub max_cycle_len: usize,
    pub cycles: Vec<CycleBounds>,
}

impl OrbitBoundsReport {
    pub fn all_hold(&self) -> bool {
        self.cycles.iter().all(|c| c.checks.iter().all(|b| b.holds))
    }

    pub fn violations(&self) -> Vec<(usize, &BoundCheck)> {
        self.cycles
            .iter()
            .flat_map(|c| c.checks.iter().filter(|b| !b.holds).map(move |b| (c.cycle_index, b)))
            .collect()
    }
}

pub const BOUND_STRONG_COOP: &str = "strongly cooperative: |X| <= R(N)";
pub const BOUND_IRREDUCIBLE: &str = "cooperative irreducible: |X| <= n";
pub const BOUND_SIR_ALONG: &str = "Boolean cooperative, strongly irreducible along X: |X| <= n";
pub const BOUND_WIR_ALONG: &str = "Boolean strongly cooperative, weakly irreducible along X: |X| <= n";
pub const BOUND_ANTICHAIN: &str = "cooperative: |X| <= largest level set";

/// Checks every cycle against each bound whose hypotheses hold; the
/// hypotheses are evaluated here.
pub fn check_orbit_bounds<D: Dynamics + ?Sized>(m: &D) -> Result<OrbitBoundsReport> {
    let space = m.space();
    let n = space.dim();
    let big_n = space.max_sum();
    let cooperative = is_cooperative(m);
    let sc = cooperative && is_strongly_cooperative(m);
    let report = classify_irreducibility(m);
    let dec = orbit_decompose(m);
    let landau_big_n = if big_n <= LANDAU_LIMIT { Some(landau_r(big_n.max(1))?) } else { None };
    let landau_n = landau_r(n as u32)?;
    let antichain_bound = max_level_size(space.levels())?;
    let boolean = space.is_boolean();

    let mut cycles = Vec::new();
    for (k, c) in dec.cycles().iter().enumerate() {
        let len = c.len() as u128;
        let along = &report.along[k];
        let mut checks = Vec::new();
        let mut push = |name, bound: u128| checks.push(BoundCheck { name, bound, holds: len <= bound });
        if sc {
            // Above the limit R(N) > 2^31 >= |Pi|, so the bound cannot fail.
            push(BOUND_STRONG_COOP, landau_big_n.unwrap_or(u128::MAX));
        }
        if cooperative && report.irreducible {
            push(BOUND_IRREDUCIBLE, n as u128);
        }
        if boolean && cooperative && along.strongly_irreducible {
            push(BOUND_SIR_ALONG, n as u128);
        }
        if boolean && sc && along.weakly_irreducible {
            push(BOUND_WIR_ALONG, n as u128);
        }
        if cooperative {
            push(BOUND_ANTICHAIN, antichain_bound);
        }
        cycles.push(CycleBounds { cycle_index: k, length: c.len(), checks });
    }
    Ok(OrbitBoundsReport {
        n,
        big_n,
        cooperative,
        strongly_cooperative: sc,
        irreducible: report.irreducible,
        landau_big_n,
        landau_n,
        max_cycle_len: dec.max_cycle_len(),
        cycles,
    })
}
