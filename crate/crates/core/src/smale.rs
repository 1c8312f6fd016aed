//! Partial cooperative maps and their Smale extension: the cooperative
//! total map `g` with `g(z) = inf gamma(U(z))` on states lying below the
//! domain and `g(z) = sup g(L(z))` elsewhere.
//!
//! In a product of finite chains the componentwise min/max are the lattice
//! meet/join, so the extension is unique once the domain cover is fixed.

use std::collections::BTreeMap;

use crate::dynamics::{Dynamics, TotalMap};
use crate::error::{Error, Result};
use crate::state::{State, StateSpace};

/// `gamma : A -> Pi` for a finite domain `A`, stored by rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialMap {
    space: StateSpace,
    entries: BTreeMap<usize, usize>,
}

impl PartialMap {
    pub fn new(space: StateSpace) -> Self {
        PartialMap {
            space,
            entries: BTreeMap::new(),
        }
    }

    pub fn from_pairs(space: StateSpace, pairs: &[(State, State)]) -> Result<Self> {
        let mut m = PartialMap::new(space);
        for (x, y) in pairs {
            m.insert(x, y)?;
        }
        Ok(m)
    }

    /// The restriction of a total map to `domain`.
    pub fn restriction(g: &TotalMap, domain: &[usize]) -> Result<Self> {
        let mut m = PartialMap::new(g.space().clone());
        for &x in domain {
            m.insert_rank(x, g.table()[x] as usize)?;
        }
        Ok(m)
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn insert(&mut self, x: &State, y: &State) -> Result<()> {
        let (a, b) = (self.space.rank(x)?, self.space.rank(y)?);
        self.insert_rank(a, b)
    }

    /// Adds `x -> y`. Re-inserting the same pair is a no-op; a conflicting
    /// image is an error.
    pub fn insert_rank(&mut self, x: usize, y: usize) -> Result<()> {
        let size = self.space.size();
        if let Some(&bad) = [x, y].iter().find(|&&r| r >= size) {
            return Err(Error::InvalidRank { rank: bad, size });
        }
        match self.entries.insert(x, y) {
            Some(old) if old != y => {
                self.entries.insert(x, old);
                Err(Error::Precondition(format!(
                    "state {} already maps to {}",
                    self.space.unrank(x).unwrap(),
                    self.space.unrank(old).unwrap()
                )))
            }
            _ => Ok(()),
        }
    }

    pub fn get_rank(&self, x: usize) -> Option<usize> {
        self.entries.get(&x).copied()
    }

    pub fn get(&self, x: &State) -> Option<State> {
        let r = self.space.rank(x).ok()?;
        self.get_rank(r).map(|y| self.space.unrank(y).unwrap())
    }

    pub fn contains_rank(&self, x: usize) -> bool {
        self.entries.contains_key(&x)
    }

    /// Domain ranks, ascending.
    pub fn domain(&self) -> Vec<usize> {
        self.entries.keys().copied().collect()
    }

    /// `(x, gamma(x))` rank pairs in ascending order of `x`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.entries.iter().map(|(&a, &b)| (a, b))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// First domain pair `x <= y` with `gamma(x) !<= gamma(y)`.
    pub fn cooperativity_violation(&self) -> Option<(usize, usize)> {
        let s = &self.space;
        let items: Vec<(usize, usize)> = self.iter().collect();
        for (k, &(x, gx)) in items.iter().enumerate() {
            // Rank order extends the cooperative order: only later ranks can be above x.
            for &(y, gy) in &items[k + 1..] {
                if s.leq_rank(x, y) && !s.leq_rank(gx, gy) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    pub fn is_cooperative(&self) -> bool {
        self.cooperativity_violation().is_none()
    }
}

/// `below[z]`: `z <= a` for some marked `a`. `above[z]`: `a <= z`.
pub(crate) fn comparability_flags(space: &StateSpace, marked: &[bool]) -> (Vec<bool>, Vec<bool>) {
    let size = space.size();
    let n = space.dim();
    let mut below = marked.to_vec();
    for z in (0..size).rev() {
        if below[z] {
            continue;
        }
        below[z] = (0..n).any(|i| {
            let up = space.up_rank(z, i);
            up != z && below[up]
        });
    }
    let mut above = marked.to_vec();
    for z in 0..size {
        if above[z] {
            continue;
        }
        above[z] = (0..n).any(|i| {
            let down = space.down_rank(z, i);
            down != z && above[down]
        });
    }
    (below, above)
}

/// Greedily (in rank order) adds states that are incomparable to every
/// marked state and to every previously added one. Returns the added ranks.
pub(crate) fn greedy_antichain_completion(space: &StateSpace, marked: &[bool]) -> Vec<usize> {
    let (below, above) = comparability_flags(space, marked);
    let mut blocked: Vec<bool> = below.iter().zip(&above).map(|(a, b)| *a || *b).collect();
    let mut added = Vec::new();
    for z in 0..space.size() {
        if blocked[z] {
            continue;
        }
        added.push(z);
        for w in space.up_set(z) {
            blocked[w] = true;
        }
        for w in space.down_set(z) {
            blocked[w] = true;
        }
    }
    added
}

/// Extends the domain so every state is comparable to some domain element.
/// Added states form an antichain incomparable to the original domain and
/// are mapped to themselves.
pub fn complete_antichain_cover(p: &PartialMap) -> PartialMap {
    let space = &p.space;
    let mut marked = vec![false; space.size()];
    for x in p.entries.keys() {
        marked[*x] = true;
    }
    let mut out = p.clone();
    for z in greedy_antichain_completion(space, &marked) {
        out.entries.insert(z, z);
    }
    out
}

fn check_cooperative(p: &PartialMap) -> Result<()> {
    if let Some((x, y)) = p.cooperativity_violation() {
        let s = &p.space;
        return Err(Error::Precondition(format!(
            "partial map is not cooperative: {} <= {} but images {} !<= {}",
            s.unrank(x).unwrap(),
            s.unrank(y).unwrap(),
            s.unrank(p.get_rank(x).unwrap()).unwrap(),
            s.unrank(p.get_rank(y).unwrap()).unwrap()
        )));
    }
    Ok(())
}

/// The Smale extension of a cooperative partial map.
///
/// Infima over `U(z)` are propagated downward (`U(z)` is `{z} ∩ A` together
/// with the `U(z^{i+})`), then suprema over `L(z)` upward in rank order.
pub fn smale_extend(p: &PartialMap) -> Result<TotalMap> {
    check_cooperative(p)?;
    let cover = complete_antichain_cover(p);
    let space = &p.space;
    let size = space.size();
    let n = space.dim();

    let mut inf = vec![0u32; size * n];
    let mut in_upper = vec![false; size];
    let mut img = vec![0u32; n];
    for z in (0..size).rev() {
        let (head, tail) = inf.split_at_mut((z + 1) * n);
        let row = &mut head[z * n..];
        if let Some(a) = cover.get_rank(z) {
            space.decode_into(a, &mut img);
            row.copy_from_slice(&img);
            in_upper[z] = true;
        }
        for i in 0..n {
            let up = space.up_rank(z, i);
            if up == z || !in_upper[up] {
                continue;
            }
            let other = &tail[(up - z - 1) * n..(up - z) * n];
            if in_upper[z] {
                for k in 0..n {
                    row[k] = row[k].min(other[k]);
                }
            } else {
                row.copy_from_slice(other);
                in_upper[z] = true;
            }
        }
    }

    // sup over L(z) = {x in Pi_U : x <= z}; reuse the buffer row by row.
    let mut sup = inf;
    let mut seen = in_upper.clone();
    for z in 0..size {
        let (head, tail) = sup.split_at_mut(z * n);
        let row = &mut tail[..n];
        for i in 0..n {
            let down = space.down_rank(z, i);
            if down == z || !seen[down] {
                continue;
            }
            let other = &head[down * n..(down + 1) * n];
            if seen[z] {
                for k in 0..n {
                    row[k] = row[k].max(other[k]);
                }
            } else {
                row.copy_from_slice(other);
                seen[z] = true;
            }
        }
        debug_assert!(seen[z]);
    }
    // Pi_U is a down-set and g is monotone on it, so rows in Pi_U are unchanged.
    let table = (0..size)
        .map(|z| space.encode(&sup[z * n..(z + 1) * n]) as u32)
        .collect();
    TotalMap::from_table(space.clone(), table)
}

/// Reference implementation of [`smale_extend`] evaluating `U(z)` and
/// `L(z)` as explicit sets. Cost `O(|Pi|^2 n)`.
pub fn smale_extend_naive(p: &PartialMap) -> Result<TotalMap> {
    check_cooperative(p)?;
    let cover = complete_antichain_cover(p);
    let space = &p.space;
    let size = space.size();
    let n = space.dim();
    let domain: Vec<(usize, Vec<u32>)> = cover
        .iter()
        .map(|(a, ga)| (a, space.decode(ga)))
        .collect();

    let mut g: Vec<Option<Vec<u32>>> = vec![None; size];
    for (z, slot) in g.iter_mut().enumerate() {
        let images: Vec<&Vec<u32>> = domain
            .iter()
            .filter(|(a, _)| space.leq_rank(z, *a))
            .map(|(_, ga)| ga)
            .collect();
        if !images.is_empty() {
            *slot = Some(meet(&images, n));
        }
    }
    let upper: Vec<usize> = (0..size).filter(|&z| g[z].is_some()).collect();
    let mut table = vec![0u32; size];
    for z in 0..size {
        let value = match &g[z] {
            Some(v) => v.clone(),
            None => {
                let lows: Vec<&Vec<u32>> = upper
                    .iter()
                    .filter(|&&x| space.leq_rank(x, z))
                    .map(|&x| g[x].as_ref().unwrap())
                    .collect();
                if lows.is_empty() {
                    return Err(Error::TheoremViolation(format!(
                        "L({}) is empty after the antichain cover",
                        space.unrank(z).unwrap()
                    )));
                }
                join(&lows, n)
            }
        };
        table[z] = space.encode(&value) as u32;
    }
    TotalMap::from_table(space.clone(), table)
}

fn meet(vs: &[&Vec<u32>], n: usize) -> Vec<u32> {
    (0..n).map(|k| vs.iter().map(|v| v[k]).min().unwrap()).collect()
}

fn join(vs: &[&Vec<u32>], n: usize) -> Vec<u32> {
    (0..n).map(|k| vs.iter().map(|v| v[k]).max().unwrap()).collect()
}

/// The level `r` when the domain of `p` is exactly `{x : S(x) = r}`.
pub fn full_level_of(p: &PartialMap) -> Option<u32> {
    let space = &p.space;
    let first = *p.entries.keys().next()?;
    let r = space.sum_rank(first);
    let all_on_level = p.entries.keys().all(|&x| space.sum_rank(x) == r);
    (all_on_level && p.len() == space.level_set(r).len()).then_some(r)
}

/// Smale extension for a domain that is a full level set, in the form
/// `inf gamma(U(z))` above-domain and `sup gamma(L(z))` with `L(z)` taken in
/// the domain itself.
pub fn hyperplane_smale(p: &PartialMap) -> Result<TotalMap> {
    if full_level_of(p).is_none() {
        return Err(Error::Precondition(
            "domain is not a full level set {x : S(x) = r}".into(),
        ));
    }
    let space = &p.space;
    let n = space.dim();
    let domain: Vec<(usize, Vec<u32>)> = p.iter().map(|(a, ga)| (a, space.decode(ga))).collect();
    let table = (0..space.size())
        .map(|z| {
            let ups: Vec<&Vec<u32>> = domain
                .iter()
                .filter(|(a, _)| space.leq_rank(z, *a))
                .map(|(_, ga)| ga)
                .collect();
            let value = if ups.is_empty() {
                let downs: Vec<&Vec<u32>> = domain
                    .iter()
                    .filter(|(a, _)| space.leq_rank(*a, z))
                    .map(|(_, ga)| ga)
                    .collect();
                join(&downs, n)
            } else {
                meet(&ups, n)
            };
            space.encode(&value) as u32
        })
        .collect();
    TotalMap::from_table(space.clone(), table)
}

/// Values of a map `[0,1]^n -> [0,1]^n` sampled at the grid points
/// `x / (p-1)`, indexed by the rank of `x` in `{0..p-1}^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct GridSamples {
    space: StateSpace,
    values: Vec<Vec<f64>>,
}

impl GridSamples {
    pub fn new(space: StateSpace, values: Vec<Vec<f64>>) -> Result<Self> {
        if space.uniform_level().is_none() {
            return Err(Error::UnsupportedSpace("grid samples need uniform levels".into()));
        }
        if values.len() != space.size() {
            return Err(Error::InputRange(format!(
                "expected {} grid points, got {}",
                space.size(),
                values.len()
            )));
        }
        for (r, v) in values.iter().enumerate() {
            if v.len() != space.dim() {
                return Err(Error::InputRange(format!(
                    "sample {} has {} components, expected {}",
                    space.unrank(r).unwrap(),
                    v.len(),
                    space.dim()
                )));
            }
            if let Some(bad) = v.iter().find(|c| !(0.0..=1.0).contains(*c)) {
                return Err(Error::InputRange(format!(
                    "sample {} has component {bad} outside [0,1]",
                    space.unrank(r).unwrap()
                )));
            }
        }
        Ok(GridSamples { space, values })
    }

    /// Samples `f` at every grid point.
    pub fn from_fn(space: StateSpace, f: impl Fn(&[f64]) -> Vec<f64>) -> Result<Self> {
        let p = space.uniform_level().unwrap_or(2);
        let scale = (p - 1) as f64;
        let values = (0..space.size())
            .map(|r| {
                let x: Vec<f64> = space.decode(r).iter().map(|&c| c as f64 / scale).collect();
                f(&x)
            })
            .collect();
        Self::new(space, values)
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn values(&self) -> &[Vec<f64>] {
        &self.values
    }
}

fn grid_scale(space: &StateSpace) -> f64 {
    (space.uniform_level().unwrap() - 1) as f64
}

/// Rounds `(p-1) f(x/(p-1))` to the nearest level, ties upward.
pub fn discretize_map(samples: &GridSamples) -> Result<TotalMap> {
    let space = samples.space.clone();
    let scale = grid_scale(&space);
    let table = samples
        .values
        .iter()
        .map(|v| {
            let levels: Vec<u32> = v.iter().map(|&c| (c * scale + 0.5).floor() as u32).collect();
            space.encode(&levels) as u32
        })
        .collect();
    TotalMap::from_table(space, table)
}

/// `max_x || m(x)/(p-1) - f(x/(p-1)) ||_inf` over the grid points.
pub fn approximation_error(samples: &GridSamples, m: &TotalMap) -> Result<f64> {
    if m.space() != &samples.space {
        return Err(Error::InvalidSpace("map and samples live on different grids".into()));
    }
    let space = &samples.space;
    let scale = grid_scale(space);
    let mut worst = 0.0f64;
    for (r, v) in samples.values.iter().enumerate() {
        let img = space.decode(m.table()[r] as usize);
        for (k, &c) in v.iter().enumerate() {
            worst = worst.max((img[k] as f64 / scale - c).abs());
        }
    }
    Ok(worst)
}

/// Empirical Lipschitz constants of `gamma` on its level-set domain and of
/// its Smale extension, sup-norm, in level units.
#[derive(Clone, Debug, PartialEq)]
pub struct ModulusReport {
    pub n: usize,
    pub lipschitz_gamma: f64,
    pub lipschitz_extension: f64,
    /// `6n + 3`.
    pub factor: f64,
    pub pairs_checked: usize,
    pub holds: bool,
}

fn sup_dist(space: &StateSpace, a: usize, b: usize) -> u32 {
    (0..space.dim())
        .map(|i| space.digit(a, i).abs_diff(space.digit(b, i)))
        .max()
        .unwrap_or(0)
}

fn ratio(space: &StateSpace, x: usize, y: usize, gx: usize, gy: usize) -> f64 {
    sup_dist(space, gx, gy) as f64 / sup_dist(space, x, y) as f64
}

/// Compares the extension's empirical Lipschitz constant with `(6n+3)` times
/// that of `gamma`. With `pairs = None` every pair of distinct states is used.
/// The result is evidence about the grid, not a proof.
pub fn modulus_check(p: &PartialMap, pairs: Option<&[(usize, usize)]>) -> Result<ModulusReport> {
    if p.len() < 2 {
        return Err(Error::NotApplicable("need at least two domain points".into()));
    }
    if full_level_of(p).is_none() {
        return Err(Error::Precondition(
            "domain is not a full level set {x : S(x) = r}".into(),
        ));
    }
    let space = &p.space;
    let items: Vec<(usize, usize)> = p.iter().collect();
    let mut lg = 0.0f64;
    for (k, &(x, gx)) in items.iter().enumerate() {
        for &(y, gy) in &items[k + 1..] {
            lg = lg.max(ratio(space, x, y, gx, gy));
        }
    }
    let g = smale_extend(p)?;
    let t = g.table();
    let mut le = 0.0f64;
    let mut checked = 0usize;
    match pairs {
        Some(pairs) => {
            for &(x, y) in pairs {
                if x != y {
                    le = le.max(ratio(space, x, y, t[x] as usize, t[y] as usize));
                    checked += 1;
                }
            }
        }
        None => {
            for x in 0..space.size() {
                for y in x + 1..space.size() {
                    le = le.max(ratio(space, x, y, t[x] as usize, t[y] as usize));
                    checked += 1;
                }
            }
        }
    }
    let factor = 6.0 * space.dim() as f64 + 3.0;
    Ok(ModulusReport {
        n: space.dim(),
        lipschitz_gamma: lg,
        lipschitz_extension: le,
        factor,
        pairs_checked: checked,
        holds: le <= factor * lg,
    })
}
