//! Generators for the named example systems and random families used by
//! the property checks. Every named generator re-verifies the properties
//! its example claims before returning.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::antichain::{d_exact, middle_level};
use crate::dynamics::{orbit_decompose, Dynamics, TotalMap};
use crate::embedding::trivial_extend;
use crate::error::{Error, Result};
use crate::irreducibility::{
    arcs_at, classify_along, classify_irreducibility, strongly_connected, Digraph, Permutation,
};
use crate::monotone::{cooperativity_violation, is_cooperative, is_strongly_cooperative};
use crate::smale::{smale_extend, PartialMap};
use crate::state::StateSpace;

pub fn make_g_pi(space: &StateSpace, pi: &Permutation) -> Result<TotalMap> {
    pi.induced_map(space)
}

/// Middle-layer ranks of `{0..p-1}^n`, ascending.
pub fn middle_layer_ranks(space: &StateSpace) -> Vec<usize> {
    space.level_set(middle_level(space))
}

/// Cycles the middle layer in rank order and closes the map with
/// [`trivial_extend`].
pub fn make_cycle_on_layer(n: usize, p: u32) -> Result<TotalMap> {
    let space = StateSpace::uniform(n, p)?;
    let layer = middle_layer_ranks(&space);
    let mut gamma = PartialMap::new(space.clone());
    for (k, &x) in layer.iter().enumerate() {
        gamma.insert_rank(x, layer[(k + 1) % layer.len()])?;
    }
    let g = trivial_extend(&space, &gamma)?;
    ensure(is_cooperative(&g), "layer cycle is not cooperative")?;
    ensure(
        orbit_decompose(&g).find_cycle(&layer).is_some(),
        "middle layer is not a cycle",
    )?;
    Ok(g)
}

fn ensure(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::TheoremViolation(what.into()))
    }
}

/// `g(x1, x2) = (1 - x2, x1)` on `{0,1}^2`.
pub fn make_almost_coop_2d() -> TotalMap {
    TotalMap::from_coord_fn(StateSpace::boolean(2).unwrap(), |x, y| {
        y[0] = 1 - x[1];
        y[1] = x[0];
    })
    .unwrap()
}

/// A strongly cooperative map on `{0,1,2}^2` whose persistent states admit no
/// common permutation `pi` with `g = g_pi`.
pub fn make_ternary_sc_counterexample() -> TotalMap {
    let space = StateSpace::uniform(2, 3).unwrap();
    TotalMap::from_coord_fn(space, |x, y| {
        let v: [u32; 2] = match (x[0], x[1]) {
            (0, 1) => [1, 0],
            (1, 0) => [0, 1],
            (2, 0) | (0, 2) => [1, 1],
            (a, b) => [a, b],
        };
        y.copy_from_slice(&v);
    })
    .unwrap()
}

fn check_dimension(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Precondition(format!("need n >= 2, got {n}")));
    }
    Ok(())
}

/// Cooperative, strongly semi-irreducible map on `{0..3}^n` with a cycle of
/// length `d(n,2)` inside `M = {1 <= min x <= max x <= 2}`.
pub fn make_almostex(n: usize) -> Result<TotalMap> {
    check_dimension(n)?;
    let f = make_cycle_on_layer(n, 2)?;
    let fs = f.space().clone();
    let pi = Permutation::cyclic(n);
    let space = StateSpace::uniform(n, 4)?;
    let g = TotalMap::from_coord_fn(space.clone(), |x, y| {
        let lo = *x.iter().min().unwrap();
        let hi = *x.iter().max().unwrap();
        if hi == 3 {
            for i in 0..n {
                y[pi.apply(i)] = match x[i] {
                    0 => 0,
                    3 => 3,
                    _ => 2,
                };
            }
        } else if lo >= 1 {
            let inner: Vec<u32> = x.iter().map(|&v| v - 1).collect();
            let img = fs.decode(f.table()[fs.encode(&inner)] as usize);
            for j in 0..n {
                y[j] = 1 + img[j];
            }
        } else {
            for i in 0..n {
                y[pi.apply(i)] = (x[i] > 0) as u32;
            }
        }
    })?;
    if let Some(v) = cooperativity_violation(&g) {
        return Err(Error::TheoremViolation(format!(
            "map is not cooperative at {} along coordinate {}",
            v.x,
            v.i + 1
        )));
    }
    ensure(
        classify_irreducibility(&g).strongly_semi_irreducible,
        "map is not strongly semi-irreducible",
    )?;
    let m = shifted_layer(&fs, &space, 1, 1);
    ensure(
        orbit_decompose(&g).find_cycle(&m).is_some(),
        "shifted middle layer is not a cycle",
    )?;
    Ok(g)
}

/// `{offset + scale * x : x in D}` for the Boolean middle layer `D`.
fn shifted_layer(boolean: &StateSpace, target: &StateSpace, offset: u32, scale: u32) -> Vec<usize> {
    middle_layer_ranks(boolean)
        .into_iter()
        .map(|x| {
            let c: Vec<u32> = boolean.decode(x).iter().map(|&v| offset + scale * v).collect();
            target.encode(&c)
        })
        .collect()
}

/// The attractor `1 + D` of [`make_almostex`] (or `1 + 3D` of
/// [`make_nopsirshortex`] with `scale = 3`) as ranks in `{0..p-1}^n`.
pub fn embedded_layer(n: usize, p: u32, scale: u32) -> Result<Vec<usize>> {
    Ok(shifted_layer(&StateSpace::boolean(n)?, &StateSpace::uniform(n, p)?, 1, scale))
}

/// The partial map `h` on `M ∪ {y^{i±}}` with `M = 1 + 3D`, before extension.
pub fn nopsirshortex_partial(n: usize) -> Result<PartialMap> {
    check_dimension(n)?;
    let f = make_cycle_on_layer(n, 2)?;
    let fs = f.space().clone();
    let space = StateSpace::uniform(n, 6)?;
    let pi = Permutation::cyclic(n);
    let mut h = PartialMap::new(space.clone());
    for x in middle_layer_ranks(&fs) {
        let y = fs.decode(x).iter().map(|&v| 1 + 3 * v).collect::<Vec<_>>();
        let hy = fs
            .decode(f.table()[x] as usize)
            .iter()
            .map(|&v| 1 + 3 * v)
            .collect::<Vec<_>>();
        let (yr, hr) = (space.encode(&y), space.encode(&hy));
        h.insert_rank(yr, hr)?;
        for i in 0..n {
            let j = pi.apply(i);
            h.insert_rank(space.up_rank(yr, i), space.up_rank(hr, j))?;
            h.insert_rank(space.down_rank(yr, i), space.down_rank(hr, j))?;
        }
    }
    Ok(h)
}

/// Cooperative map on `{0..5}^n`, strongly irreducible along the cycle
/// `1 + 3D` of length `d(n,2)`.
pub fn make_nopsirshortex(n: usize) -> Result<TotalMap> {
    let h = nopsirshortex_partial(n)?;
    ensure(h.is_cooperative(), "partial map h is not cooperative")?;
    let g = smale_extend(&h)?;
    ensure(is_cooperative(&g), "extension is not cooperative")?;
    let m = embedded_layer(n, 6, 3)?;
    let along = classify_along(&g, &m)
        .map_err(|_| Error::TheoremViolation("1 + 3D is not a cycle".into()))?;
    ensure(along.strongly_irreducible, "not strongly irreducible along 1 + 3D")?;
    Ok(g)
}

/// Cooperative Boolean map irreducible along its middle-layer cycle.
pub fn make_irlong(n: usize) -> Result<TotalMap> {
    check_dimension(n)?;
    let g = make_cycle_on_layer(n, 2)?;
    let d = middle_layer_ranks(g.space());
    let along = classify_along(&g, &d)?;
    ensure(along.irreducible, "not irreducible along the middle layer")?;
    Ok(g)
}

/// One prescribed quadruple of the Germanex construction (1-based pair in
/// reports; 0-based here).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GermanexPair {
    pub i: usize,
    pub j: usize,
    /// `a(s)`, with `a_i > a_j`.
    pub a: usize,
    /// `b(s) = pi_s a(s)`.
    pub b: usize,
    pub a2: usize,
    pub b2: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GermanexReport {
    pub n: usize,
    pub seed: u64,
    pub attempts: u64,
    pub d: usize,
    pub pairs: Vec<GermanexPair>,
    /// Number of off-diagonal arcs in the union of `A*_x` over `D`.
    pub union_arcs: usize,
    pub all_off_diagonal_arcs: bool,
    /// Index into `pairs` of the pair whose completion was pinned.
    pub witness_pair: usize,
    /// `a(s)` for the witness pair; `G_x` there is not strongly connected.
    pub witness_state: usize,
    pub witness_not_strongly_connected: bool,
    /// Pairs `s` with `G_{a(s)}` not strongly connected.
    pub disconnected_pairs: usize,
}

const DRAWS_PER_PAIR: u32 = 10_000;

fn bit(n: usize, i: usize) -> usize {
    1 << (n - 1 - i)
}

fn swap(n: usize, x: usize, i: usize, j: usize) -> usize {
    let (bi, bj) = (x & bit(n, i) != 0, x & bit(n, j) != 0);
    if bi == bj {
        x
    } else {
        x ^ bit(n, i) ^ bit(n, j)
    }
}

/// `gamma` on the Boolean middle layer `D` with prescribed values
/// `gamma(a(s)) = b'(s)`, `gamma(b(s)) = a'(s)` for every pair `s = <i,j>`,
/// completed to a single cycle through `D`, and its Smale extension.
///
/// Quadruples are drawn pair by pair: `a(s), a'(s)` uniform in
/// `D_s = {x in D : x_i > x_j}`, redrawn until all four states are unused.
/// For the first pair `s0` the completion is pinned: the other states above
/// `min(a, b)` go to states above `min(a', b')` and the other states below
/// `max(a, b)` go to states below `max(a', b')`. This closes `{i, j}` in
/// `G_{a(s0)}`. Remaining arcs are chained into one cycle by minimum rank.
///
/// Randomness: one `ChaCha8Rng::seed_from_u64(seed)` stream consumed across
/// all attempts.
pub fn make_germanex(n: usize, seed: u64, max_retries: u64) -> Result<(TotalMap, GermanexReport)> {
    let space = StateSpace::boolean(n)?;
    let d = d_exact(n, 2)? as usize;
    let pairs = n * n.saturating_sub(1) / 2;
    if n < 3 || 4 * pairs > d {
        return Err(Error::Infeasible(format!(
            "4*C({n},2) = {} prescribed states exceed d({n},2) = {d}",
            4 * pairs
        )));
    }
    let layer = middle_layer_ranks(&space);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last = String::new();
    for attempt in 1..=max_retries.max(1) {
        match germanex_attempt(&space, &layer, &mut rng) {
            Ok((gamma, quads)) => {
                let g = smale_extend(&gamma)?;
                let report = verify_germanex(&g, &layer, quads, seed, attempt)?;
                return Ok((g, report));
            }
            Err(reason) => last = reason,
        }
    }
    Err(Error::ConstructionFailure {
        attempts: max_retries.max(1),
        reason: last,
    })
}

type Attempt = std::result::Result<(PartialMap, Vec<GermanexPair>), String>;

fn germanex_attempt(space: &StateSpace, layer: &[usize], rng: &mut ChaCha8Rng) -> Attempt {
    let n = space.dim();
    let mut used: HashSet<usize> = HashSet::new();
    let mut arcs: Vec<(usize, usize)> = Vec::new();
    let mut quads = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let ds: Vec<usize> = layer
                .iter()
                .copied()
                .filter(|&x| x & bit(n, i) != 0 && x & bit(n, j) == 0)
                .collect();
            let mut found = None;
            for _ in 0..DRAWS_PER_PAIR {
                let a = *ds.choose(rng).unwrap();
                let a2 = *ds.choose(rng).unwrap();
                let (b, b2) = (swap(n, a, i, j), swap(n, a2, i, j));
                if a != a2 && [a, b, a2, b2].iter().all(|x| !used.contains(x)) {
                    found = Some(GermanexPair { i, j, a, b, a2, b2 });
                    break;
                }
            }
            let q = found.ok_or_else(|| format!("no free quadruple for <{},{}>", i + 1, j + 1))?;
            used.extend([q.a, q.b, q.a2, q.b2]);
            arcs.push((q.a, q.b2));
            arcs.push((q.b, q.a2));
            if quads.is_empty() {
                for (src, dst) in pinned_star_arcs(n, &q) {
                    if !used.insert(src) && ![q.a2, q.b2].contains(&src) {
                        return Err("star sources overlap".into());
                    }
                    used.insert(dst);
                    arcs.push((src, dst));
                }
            }
            quads.push(q);
        }
    }
    let cycle = close_single_cycle(layer, &arcs).ok_or("prescribed arcs close a short cycle")?;
    let mut gamma = PartialMap::new(space.clone());
    for (k, &x) in cycle.iter().enumerate() {
        gamma
            .insert_rank(x, cycle[(k + 1) % cycle.len()])
            .map_err(|e| e.to_string())?;
    }
    Ok((gamma, quads))
}

/// Up-star of `c = a & b` onto up-star of `c' = a' & b'` and down-star of
/// `e = a | b` onto down-star of `e' = a' | b'`, excluding the prescribed
/// `a, b` themselves. Pairing is by ascending rank.
fn pinned_star_arcs(n: usize, q: &GermanexPair) -> Vec<(usize, usize)> {
    let (c, e) = (q.a & q.b, q.a | q.b);
    let (c2, e2) = (q.a2 & q.b2, q.a2 | q.b2);
    let up = |base: usize, outer: usize| -> Vec<usize> {
        (0..n).filter(|&k| outer & bit(n, k) == 0).map(|k| base | bit(n, k)).collect()
    };
    let down = |base: usize, inner: usize| -> Vec<usize> {
        (0..n).filter(|&k| inner & bit(n, k) != 0).map(|k| base & !bit(n, k)).collect()
    };
    let mut out = Vec::new();
    for (src, dst) in [(up(c, e), up(c2, e2)), (down(e, c), down(e2, c2))] {
        let (mut src, mut dst) = (src, dst);
        src.sort_unstable();
        dst.sort_unstable();
        out.extend(src.into_iter().zip(dst));
    }
    out
}

/// Links the chains formed by an injective partial arc set into one cycle
/// through every node, chains ordered by minimum rank. `None` if the arcs
/// already contain a cycle.
fn close_single_cycle(nodes: &[usize], arcs: &[(usize, usize)]) -> Option<Vec<usize>> {
    let next: std::collections::HashMap<usize, usize> = arcs.iter().copied().collect();
    let targets: HashSet<usize> = arcs.iter().map(|a| a.1).collect();
    let mut chains: Vec<Vec<usize>> = Vec::new();
    for &h in nodes.iter().filter(|x| !targets.contains(x)) {
        let mut chain = vec![h];
        let mut x = h;
        while let Some(&y) = next.get(&x) {
            chain.push(y);
            x = y;
        }
        chains.push(chain);
    }
    if chains.iter().map(Vec::len).sum::<usize>() != nodes.len() {
        return None;
    }
    chains.sort_by_key(|c| *c.iter().min().unwrap());
    Some(chains.concat())
}

fn verify_germanex(
    g: &TotalMap,
    layer: &[usize],
    pairs: Vec<GermanexPair>,
    seed: u64,
    attempts: u64,
) -> Result<GermanexReport> {
    let n = g.space().dim();
    ensure(
        orbit_decompose(g).find_cycle(layer).is_some(),
        "middle layer is not a single cycle of the extension",
    )?;
    for q in &pairs {
        ensure(
            g.table()[q.a] as usize == q.b2 && g.table()[q.b] as usize == q.a2,
            "prescribed values are not kept",
        )?;
    }
    let mut union = Digraph::empty(n);
    for &x in layer {
        union.union_with(&arcs_at(g, x).1);
    }
    let union_arcs = union.arcs().iter().filter(|(i, j)| i != j).count();
    let all = union_arcs == n * (n - 1);
    ensure(all, "union of A*_x over D misses an off-diagonal arc")?;
    let disconnected: Vec<bool> = pairs
        .iter()
        .map(|q| !strongly_connected(&arcs_at(g, q.a).0))
        .collect();
    ensure(disconnected[0], "G_{a(s)} is strongly connected at the pinned pair")?;
    Ok(GermanexReport {
        n,
        seed,
        attempts,
        d: layer.len(),
        union_arcs,
        all_off_diagonal_arcs: all,
        witness_pair: 0,
        witness_state: pairs[0].a,
        witness_not_strongly_connected: disconnected[0],
        disconnected_pairs: disconnected.iter().filter(|&&b| b).count(),
        pairs,
    })
}

/// Truth tables (bit `r` = value at rank `r`) of all monotone Boolean
/// functions of `n <= 5` variables, ascending.
pub fn monotone_boolean_functions(n: usize) -> Result<Vec<u64>> {
    if n > 5 {
        return Err(Error::UnsupportedSpace(format!(
            "enumerating monotone functions of {n} variables is out of range"
        )));
    }
    let size = 1usize << n;
    let covers: Vec<(usize, usize)> = (0..size)
        .flat_map(|x| (0..n).filter(move |i| x >> i & 1 == 0).map(move |i| (x, x | 1 << i)))
        .collect();
    let monotone = |t: u64| covers.iter().all(|&(x, y)| t >> x & 1 <= t >> y & 1);
    if n <= 4 {
        let all = if size == 64 { u64::MAX } else { (1u64 << size) - 1 };
        return Ok((0..=all).filter(|&t| monotone(t)).collect());
    }
    // n = 5: up-closed sets via products of monotone functions of 4 variables.
    let lower = monotone_boolean_functions(4)?;
    let mut out = Vec::new();
    for &f0 in &lower {
        for &f1 in lower.iter().filter(|&&f1| f0 & !f1 == 0) {
            out.push(f0 | f1 << 16);
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// All cooperative maps on `{0,1}^n`, one monotone function per coordinate,
/// in lexicographic order of the coordinate functions.
pub struct CooperativeBooleanSystems {
    space: StateSpace,
    functions: Vec<u64>,
    index: Vec<usize>,
    done: bool,
}

impl CooperativeBooleanSystems {
    pub fn new(n: usize) -> Result<Self> {
        Ok(CooperativeBooleanSystems {
            space: StateSpace::boolean(n)?,
            functions: monotone_boolean_functions(n)?,
            index: vec![0; n],
            done: n == 0,
        })
    }

    pub fn count(n: usize) -> Result<u128> {
        let k = monotone_boolean_functions(n)?.len() as u128;
        Ok(k.pow(n as u32))
    }
}

impl Iterator for CooperativeBooleanSystems {
    type Item = TotalMap;

    fn next(&mut self) -> Option<TotalMap> {
        if self.done {
            return None;
        }
        let n = self.space.dim();
        let fs: Vec<u64> = self.index.iter().map(|&k| self.functions[k]).collect();
        let g = TotalMap::from_rank_fn(self.space.clone(), |x| {
            // state rank x has coordinate i at bit n-1-i; function tables use rank directly.
            (0..n).map(|i| ((fs[i] >> x & 1) as usize) << (n - 1 - i)).sum()
        })
        .unwrap();
        let mut k = n;
        loop {
            if k == 0 {
                self.done = true;
                break;
            }
            k -= 1;
            self.index[k] += 1;
            if self.index[k] < self.functions.len() {
                break;
            }
            self.index[k] = 0;
        }
        Some(g)
    }
}

/// Uniformly random total map (not cooperative in general).
pub fn random_map(space: &StateSpace, rng: &mut impl Rng) -> TotalMap {
    let size = space.size();
    let table = (0..size).map(|_| rng.gen_range(0..size) as u32).collect();
    TotalMap::from_table(space.clone(), table).unwrap()
}

/// A random permutation `pi` with `g_pi` well defined on `space`: `pi` only
/// permutes coordinates with equal level counts.
pub fn random_valid_permutation(space: &StateSpace, rng: &mut impl Rng) -> Permutation {
    let n = space.dim();
    let mut map: Vec<usize> = (0..n).collect();
    let mut levels: Vec<u32> = space.levels().to_vec();
    levels.sort_unstable();
    levels.dedup();
    for p in levels {
        let class: Vec<usize> = (0..n).filter(|&i| space.level(i) == p).collect();
        let mut shuffled = class.clone();
        shuffled.shuffle(rng);
        for (&i, &j) in class.iter().zip(&shuffled) {
            map[i] = j;
        }
    }
    Permutation::new(map).unwrap()
}

/// Random strongly cooperative map: a composition of up to `steps` factors
/// drawn from valid coordinate permutations, unit transfers
/// (`x_i -= 1, x_j += 1` when both stay in range), and pair sorts
/// (`max(x_i, x_j)` into `i`, `min` into `j`, equal level counts only).
pub fn random_strongly_cooperative(space: &StateSpace, steps: usize, rng: &mut impl Rng) -> TotalMap {
    let n = space.dim();
    let mut table: Vec<u32> = (0..space.size() as u32).collect();
    let mut buf = vec![0u32; n];
    for _ in 0..rng.gen_range(1..=steps.max(1)) {
        let kind = rng.gen_range(0..3);
        let factor: Box<dyn Fn(&mut [u32])> = match kind {
            0 => {
                let pi = random_valid_permutation(space, rng);
                Box::new(move |x: &mut [u32]| {
                    let old = x.to_vec();
                    for i in 0..old.len() {
                        x[pi.apply(i)] = old[i];
                    }
                })
            }
            _ if n < 2 => Box::new(|_: &mut [u32]| {}),
            1 => {
                let i = rng.gen_range(0..n);
                let j = (i + rng.gen_range(1..n)) % n;
                let pj = space.level(j);
                Box::new(move |x: &mut [u32]| {
                    if x[i] > 0 && x[j] + 1 < pj {
                        x[i] -= 1;
                        x[j] += 1;
                    }
                })
            }
            _ => {
                let i = rng.gen_range(0..n);
                let same: Vec<usize> = (0..n).filter(|&j| j != i && space.level(j) == space.level(i)).collect();
                match same.choose(rng) {
                    None => Box::new(|_: &mut [u32]| {}),
                    Some(&j) => Box::new(move |x: &mut [u32]| {
                        let (hi, lo) = (x[i].max(x[j]), x[i].min(x[j]));
                        x[i] = hi;
                        x[j] = lo;
                    }),
                }
            }
        };
        for t in table.iter_mut() {
            space.decode_into(*t as usize, &mut buf);
            factor(&mut buf);
            *t = space.encode(&buf) as u32;
        }
    }
    TotalMap::from_table(space.clone(), table).unwrap()
}

/// Random cooperative partial map. Each state enters the domain with
/// probability `density`; images are drawn in rank order uniformly from the
/// box above the join of earlier images of smaller domain states.
pub fn random_cooperative_partial(space: &StateSpace, density: f64, rng: &mut impl Rng) -> PartialMap {
    let n = space.dim();
    let domain: Vec<usize> = (0..space.size()).filter(|_| rng.gen_bool(density)).collect();
    let mut images: Vec<(usize, Vec<u32>)> = Vec::with_capacity(domain.len());
    let mut p = PartialMap::new(space.clone());
    for &a in &domain {
        let mut lo = vec![0u32; n];
        for (b, gb) in &images {
            if space.leq_rank(*b, a) {
                for k in 0..n {
                    lo[k] = lo[k].max(gb[k]);
                }
            }
        }
        let img: Vec<u32> = (0..n).map(|k| rng.gen_range(lo[k]..space.level(k))).collect();
        p.insert_rank(a, space.encode(&img)).unwrap();
        images.push((a, img));
    }
    p
}

/// Random cooperative total map: the Smale extension of a random
/// cooperative partial map.
pub fn random_cooperative(space: &StateSpace, density: f64, rng: &mut impl Rng) -> TotalMap {
    smale_extend(&random_cooperative_partial(space, density, rng)).unwrap()
}

/// Random antichain: states in shuffled order, kept when incomparable to
/// every kept state, up to `max_len`.
pub fn random_antichain(space: &StateSpace, max_len: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut order: Vec<usize> = (0..space.size()).collect();
    order.shuffle(rng);
    let mut kept: Vec<usize> = Vec::new();
    for x in order {
        if kept.len() >= max_len {
            break;
        }
        if kept.iter().all(|&y| !space.leq_rank(x, y) && !space.leq_rank(y, x)) {
            kept.push(x);
        }
    }
    kept.sort_unstable();
    kept
}

/// Whether a generated map is strongly cooperative; used by callers that
/// want the check without importing the monotone module.
pub fn strongly_cooperative<D: Dynamics + ?Sized>(m: &D) -> bool {
    is_strongly_cooperative(m)
}
