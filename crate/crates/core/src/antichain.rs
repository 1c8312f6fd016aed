//! Unordered sets (antichains), the middle layer `D`, and the exact,
//! asymptotic and brute-force values of its size `d_{n,p}`.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::state::{State, StateSpace};

/// Default largest space handed to [`max_antichain_oracle`].
pub const DEFAULT_ORACLE_CAP: usize = 4096;

/// A set of pairwise incomparable states, stored as ascending ranks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Antichain {
    space: StateSpace,
    ranks: Vec<usize>,
}

impl Antichain {
    pub fn new(space: &StateSpace, states: &[State]) -> Result<Self> {
        let ranks = states
            .iter()
            .map(|x| space.rank(x))
            .collect::<Result<Vec<_>>>()?;
        Self::from_ranks(space, ranks)
    }

    pub fn from_ranks(space: &StateSpace, mut ranks: Vec<usize>) -> Result<Self> {
        ranks.sort_unstable();
        ranks.dedup();
        if let Some(&r) = ranks.iter().find(|&&r| r >= space.size()) {
            return Err(Error::InvalidRank {
                rank: r,
                size: space.size(),
            });
        }
        if let Some((a, b)) = comparable_pair_ranks(space, &ranks) {
            return Err(Error::Precondition(format!(
                "{} <= {} are comparable",
                space.unrank(a).unwrap(),
                space.unrank(b).unwrap()
            )));
        }
        Ok(Antichain {
            space: space.clone(),
            ranks,
        })
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn states(&self) -> Vec<State> {
        self.ranks
            .iter()
            .map(|&r| self.space.unrank(r).unwrap())
            .collect()
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }
}

/// First pair `(a, b)` with `a < b` among `ranks` (in input order), if any.
pub fn comparable_pair_ranks(space: &StateSpace, ranks: &[usize]) -> Option<(usize, usize)> {
    let n = space.dim();
    let coords: Vec<Vec<u32>> = ranks.iter().map(|&r| space.decode(r)).collect();
    for i in 0..ranks.len() {
        for j in i + 1..ranks.len() {
            if ranks[i] == ranks[j] {
                continue;
            }
            let (a, b) = (&coords[i], &coords[j]);
            if (0..n).all(|k| a[k] <= b[k]) {
                return Some((ranks[i], ranks[j]));
            }
            if (0..n).all(|k| b[k] <= a[k]) {
                return Some((ranks[j], ranks[i]));
            }
        }
    }
    None
}

/// Returns `None` when `states` is unordered, otherwise a witness `a < b`.
pub fn comparable_pair(space: &StateSpace, states: &[State]) -> Option<(State, State)> {
    let ranks: Vec<usize> = states.iter().map(|x| space.encode(x.coords())).collect();
    comparable_pair_ranks(space, &ranks)
        .map(|(a, b)| (space.unrank(a).unwrap(), space.unrank(b).unwrap()))
}

pub fn is_unordered(space: &StateSpace, states: &[State]) -> bool {
    comparable_pair(space, states).is_none()
}

/// The level `floor(n(p-1)/2)` that defines the middle layer.
pub fn middle_level(space: &StateSpace) -> u32 {
    space.max_sum() / 2
}

/// `D = {x : S(x) = floor(n(p-1)/2)}` for a uniform space.
pub fn middle_layer(space: &StateSpace) -> Result<Antichain> {
    if space.uniform_level().is_none() {
        return Err(Error::UnsupportedSpace(format!(
            "middle layer needs uniform levels, got {:?}",
            space.levels()
        )));
    }
    Ok(Antichain {
        space: space.clone(),
        ranks: space.level_set(middle_level(space)),
    })
}

/// Number of states of `prod {0..p_i-1}` with coordinate sum `target`, by a
/// convolution over partial sums.
pub fn level_count(levels: &[u32], target: u64) -> Result<u128> {
    if let [p] = levels {
        return Ok((target < *p as u64) as u128);
    }
    let t = target as usize;
    let mut counts = vec![0u128; t + 1];
    counts[0] = 1;
    let mut reach = 0usize;
    for &p in levels {
        let width = p as usize - 1;
        reach = (reach + width).min(t);
        // Sliding window: next[s] = sum_{k=0}^{width} counts[s-k].
        let mut next = vec![0u128; t + 1];
        let mut window: u128 = 0;
        for s in 0..=reach {
            window = window
                .checked_add(counts[s])
                .ok_or_else(|| overflow(levels, target))?;
            if s > width {
                window -= counts[s - width - 1];
            }
            next[s] = window;
        }
        counts = next;
    }
    Ok(counts[t])
}

fn overflow(levels: &[u32], target: u64) -> Error {
    Error::CountOverflow(format!(
        "level {target} of a {}-dimensional space",
        levels.len()
    ))
}

/// `d_{n,p}`, the size of the middle layer of `{0..p-1}^n`, exact.
pub fn d_exact(n: usize, p: u32) -> Result<u128> {
    if n == 0 || p < 2 {
        return Err(Error::InvalidSpace(format!("need n >= 1 and p >= 2, got n={n}, p={p}")));
    }
    let target = n as u64 * (p as u64 - 1) / 2;
    level_count(&vec![p; n], target)
}

/// Size of the largest level set of a (possibly mixed) space. For products
/// of chains this is the width of the order.
pub fn max_level_size(levels: &[u32]) -> Result<u128> {
    let total: u64 = levels.iter().map(|&p| p as u64 - 1).sum();
    // Level sizes are symmetric and unimodal; the middle one is largest.
    level_count(levels, total / 2)
}

/// `sigma^2 = (p-1)(p+1)/12`, the variance of a uniform digit.
pub fn digit_variance(p: u32) -> f64 {
    let p = p as f64;
    (p - 1.0) * (p + 1.0) / 12.0
}

/// Local-limit estimate `p^n / sqrt(2 pi n sigma^2)` of `d_{n,p}`.
pub fn d_clt(n: usize, p: u32) -> f64 {
    let nf = n as f64;
    (p as f64).powf(nf) / (2.0 * std::f64::consts::PI * nf * digit_variance(p)).sqrt()
}

/// `d_exact(n,p) / d_clt(n,p)`.
pub fn ratio_to_exact(n: usize, p: u32) -> Result<f64> {
    Ok(d_exact(n, p)? as f64 / d_clt(n, p))
}

/// Outcome of [`d_bounds_check`].
#[derive(Clone, Debug, PartialEq)]
pub struct BoundsReport {
    pub n: usize,
    pub p: u32,
    pub d: u128,
    /// `d_{n,p} >= p^{n-1}/n`.
    pub lower_holds: bool,
    /// `(d_{n+1,p}, d_{n+1,p} < p^n)`; only evaluated for `n >= 2`.
    pub upper: Option<(u128, bool)>,
    /// `(c, d_{n,p} >= c^n)` when a base `c` was supplied.
    pub exponential: Option<(f64, bool)>,
}

impl BoundsReport {
    pub fn all_hold(&self) -> bool {
        self.lower_holds
            && self.upper.is_none_or(|(_, ok)| ok)
            && self.exponential.is_none_or(|(_, ok)| ok)
    }
}

/// Checks the two counting bounds on `d_{n,p}` and, optionally, `d_{n,p} >= c^n`.
pub fn d_bounds_check(n: usize, p: u32, c: Option<f64>) -> Result<BoundsReport> {
    let d = d_exact(n, p)?;
    let pw = |e: usize| -> Result<u128> {
        (p as u128)
            .checked_pow(e as u32)
            .ok_or_else(|| Error::CountOverflow(format!("{p}^{e}")))
    };
    // d >= p^{n-1}/n  <=>  n d >= p^{n-1}
    let lower_holds = d
        .checked_mul(n as u128)
        .ok_or_else(|| Error::CountOverflow(format!("{n} * d_{{{n},{p}}}")))?
        >= pw(n - 1)?;
    let upper = if n >= 2 {
        let d_next = d_exact(n + 1, p)?;
        Some((d_next, d_next < pw(n)?))
    } else {
        None
    };
    let exponential = c.map(|c| (c, d as f64 >= c.powi(n as i32)));
    Ok(BoundsReport {
        n,
        p,
        d,
        lower_holds,
        upper,
        exponential,
    })
}

/// Width of the cooperative order on `space` by Dilworth's theorem:
/// `|Pi|` minus a maximum matching in the strict comparability bipartite
/// graph (equivalently, a minimum chain cover).
pub fn max_antichain_oracle(space: &StateSpace, cap: usize) -> Result<usize> {
    let size = space.size();
    if size > cap {
        return Err(Error::OracleCap { size, cap });
    }
    Ok(size - HopcroftKarp::new(space).run())
}

const FREE: usize = usize::MAX;
const INF: u32 = u32::MAX;

/// Maximum matching between left copy `u` and right copy `v` with an edge
/// whenever `u < v`. Neighbours are generated from the up-set box on demand.
struct HopcroftKarp<'a> {
    space: &'a StateSpace,
    pair_left: Vec<usize>,
    pair_right: Vec<usize>,
    dist: Vec<u32>,
}

impl<'a> HopcroftKarp<'a> {
    fn new(space: &'a StateSpace) -> Self {
        let size = space.size();
        HopcroftKarp {
            space,
            pair_left: vec![FREE; size],
            pair_right: vec![FREE; size],
            dist: vec![INF; size],
        }
    }

    fn neighbours(&self, u: usize) -> impl Iterator<Item = usize> + 'a {
        self.space.up_set(u).skip(1)
    }

    fn run(&mut self) -> usize {
        let size = self.space.size();
        let mut matched = 0;
        for u in 0..size {
            let free = self.neighbours(u).find(|&v| self.pair_right[v] == FREE);
            if let Some(v) = free {
                self.pair_left[u] = v;
                self.pair_right[v] = u;
                matched += 1;
            }
        }
        while self.bfs() {
            for u in 0..size {
                if self.pair_left[u] == FREE && self.dfs(u) {
                    matched += 1;
                }
            }
        }
        matched
    }

    fn bfs(&mut self) -> bool {
        let mut queue = VecDeque::new();
        for u in 0..self.space.size() {
            if self.pair_left[u] == FREE {
                self.dist[u] = 0;
                queue.push_back(u);
            } else {
                self.dist[u] = INF;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for v in self.neighbours(u) {
                let w = self.pair_right[v];
                if w == FREE {
                    found = true;
                } else if self.dist[w] == INF {
                    self.dist[w] = self.dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        found
    }

    fn dfs(&mut self, u: usize) -> bool {
        let next = self.dist[u] + 1;
        for v in self.neighbours(u) {
            let w = self.pair_right[v];
            if w == FREE || (self.dist[w] == next && self.dfs(w)) {
                self.pair_left[u] = v;
                self.pair_right[v] = u;
                return true;
            }
        }
        self.dist[u] = INF;
        false
    }
}
