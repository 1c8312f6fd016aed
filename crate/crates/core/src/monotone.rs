//! Cooperativity, strong cooperativity, almost-cooperativity, and the
//! non-expansion property of strongly cooperative maps.
//!
//! All scans run over covering pairs `x < x^{i+}`: the cooperative order is
//! the transitive closure of single-coordinate steps, so a property that is
//! preserved along steps holds for every comparable pair. Witnesses are the
//! first violation in rank order.

use crate::dynamics::Dynamics;
use crate::error::{Error, Result};
use crate::state::{State, StateSpace};

/// `g(x)_j > g(x^{i+})_j`: cooperativity fails between `x` and `x^{i+}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoopViolation {
    pub x: State,
    pub i: usize,
    pub j: usize,
}

pub fn cooperativity_violation<D: Dynamics + ?Sized>(m: &D) -> Option<CoopViolation> {
    let space = m.space();
    let n = space.dim();
    for x in 0..space.size() {
        let gx = m.image_rank(x);
        for i in 0..n {
            let up = space.up_rank(x, i);
            if up == x {
                continue;
            }
            let gup = m.image_rank(up);
            if let Some(j) = (0..n).find(|&j| space.digit(gx, j) > space.digit(gup, j)) {
                return Some(CoopViolation {
                    x: space.unrank(x).unwrap(),
                    i,
                    j,
                });
            }
        }
    }
    None
}

pub fn is_cooperative<D: Dynamics + ?Sized>(m: &D) -> bool {
    cooperativity_violation(m).is_none()
}

/// `x <= y => g(x) <= g(y)` checked on every pair. Quadratic; kept as an
/// independent reference for [`is_cooperative`].
pub fn is_cooperative_pairwise<D: Dynamics + ?Sized>(m: &D) -> bool {
    let space = m.space();
    (0..space.size()).all(|x| {
        space
            .up_set(x)
            .all(|y| space.leq_rank(m.image_rank(x), m.image_rank(y)))
    })
}

/// The three strong-cooperativity conditions evaluated independently.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongCoopCheck {
    pub cooperative: bool,
    /// `S(g(x)) = S(x)` for all `x`.
    pub level_preserving: bool,
    /// `S(y - x) <= S(g(y) - g(x))` for all covering pairs `x < y`.
    pub gap_nondecreasing: bool,
    /// `g(x) < g(y)` for all covering pairs `x < y`.
    pub strictly_monotone: bool,
    /// First covering pair `(x, y)` with `g(x) = g(y)` or `g(x) !<= g(y)`.
    pub strict_witness: Option<(State, State)>,
}

impl StrongCoopCheck {
    pub fn conditions_agree(&self) -> bool {
        self.level_preserving == self.gap_nondecreasing
            && self.gap_nondecreasing == self.strictly_monotone
    }

    pub fn strongly_cooperative(&self) -> bool {
        self.cooperative && self.level_preserving
    }
}

pub fn is_level_preserving<D: Dynamics + ?Sized>(m: &D) -> bool {
    let space = m.space();
    (0..space.size()).all(|x| space.sum_rank(m.image_rank(x)) == space.sum_rank(x))
}

/// Strongly cooperative: cooperative and `S(g(x)) = S(x)` everywhere.
pub fn is_strongly_cooperative<D: Dynamics + ?Sized>(m: &D) -> bool {
    is_level_preserving(m) && is_cooperative(m)
}

/// Evaluates all three conditions without short-circuiting.
pub fn strong_cooperativity<D: Dynamics + ?Sized>(m: &D) -> StrongCoopCheck {
    let space = m.space();
    let n = space.dim();
    let mut gap = true;
    let mut strict = true;
    let mut strict_witness = None;
    for x in 0..space.size() {
        let gx = m.image_rank(x);
        let sgx = space.sum_rank(gx) as i64;
        for i in 0..n {
            let y = space.up_rank(x, i);
            if y == x {
                continue;
            }
            let gy = m.image_rank(y);
            if (space.sum_rank(gy) as i64) - sgx < 1 {
                gap = false;
            }
            if gx == gy || !space.leq_rank(gx, gy) {
                strict = false;
                if strict_witness.is_none() {
                    strict_witness = Some((space.unrank(x).unwrap(), space.unrank(y).unwrap()));
                }
            }
        }
    }
    StrongCoopCheck {
        cooperative: is_cooperative(m),
        level_preserving: is_level_preserving(m),
        gap_nondecreasing: gap,
        strictly_monotone: strict,
        strict_witness,
    }
}

/// Strong cooperativity with the three conditions cross-checked. A
/// disagreement on a cooperative map is reported as a theorem violation.
pub fn strong_cooperativity_verified<D: Dynamics + ?Sized>(m: &D) -> Result<bool> {
    let check = strong_cooperativity(m);
    if check.cooperative && !check.conditions_agree() {
        return Err(Error::TheoremViolation(format!(
            "strong-cooperativity conditions disagree: level-preserving={}, gap={}, strict={}",
            check.level_preserving, check.gap_nondecreasing, check.strictly_monotone
        )));
    }
    Ok(check.strongly_cooperative())
}

/// How the influence of coordinate `i` on coordinate `j` behaves across Pi.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairClass {
    /// `g(x^{i-})_j <= g(x)_j <= g(x^{i+})_j` for every `x`.
    Conforming,
    /// The reversed inequalities hold for every `x`, the forward ones do not.
    Reversed,
    Mixed,
}

/// `n x n` matrix of [`PairClass`], indexed `[i][j]`.
pub fn classify_pairs<D: Dynamics + ?Sized>(m: &D) -> Vec<Vec<PairClass>> {
    let space = m.space();
    let n = space.dim();
    let mut out = vec![vec![PairClass::Conforming; n]; n];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let mut forward = true;
            let mut reversed = true;
            for x in 0..space.size() {
                let lo = space.digit(m.image_rank(space.down_rank(x, i)), j);
                let mid = space.digit(m.image_rank(x), j);
                let hi = space.digit(m.image_rank(space.up_rank(x, i)), j);
                forward &= lo <= mid && mid <= hi;
                reversed &= lo >= mid && mid >= hi;
                if !forward && !reversed {
                    break;
                }
            }
            *cell = if forward {
                PairClass::Conforming
            } else if reversed {
                PairClass::Reversed
            } else {
                PairClass::Mixed
            };
        }
    }
    out
}

/// The unique order-reversing pair `(i*, j*)`, `i* != j*`, when the map is
/// almost cooperative.
pub fn almost_cooperative_pair<D: Dynamics + ?Sized>(m: &D) -> Option<(usize, usize)> {
    let classes = classify_pairs(m);
    let mut reversed = Vec::new();
    for (i, row) in classes.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            match c {
                PairClass::Conforming => {}
                PairClass::Mixed => return None,
                PairClass::Reversed if i == j => return None,
                PairClass::Reversed => reversed.push((i, j)),
            }
        }
    }
    (reversed.len() == 1).then(|| reversed[0])
}

pub fn is_almost_cooperative<D: Dynamics + ?Sized>(m: &D) -> bool {
    almost_cooperative_pair(m).is_some()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoopVerdict {
    Cooperative,
    AlmostCooperative { i: usize, j: usize },
    Neither,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoopReport {
    pub verdict: CoopVerdict,
    pub witness: Option<CoopViolation>,
    pub strongly_cooperative: bool,
    pub sc_witness: Option<(State, State)>,
}

pub fn analyze<D: Dynamics + ?Sized>(m: &D) -> CoopReport {
    let witness = cooperativity_violation(m);
    let verdict = if witness.is_none() {
        CoopVerdict::Cooperative
    } else if let Some((i, j)) = almost_cooperative_pair(m) {
        CoopVerdict::AlmostCooperative { i, j }
    } else {
        CoopVerdict::Neither
    };
    let sc = strong_cooperativity(m);
    CoopReport {
        verdict,
        witness,
        strongly_cooperative: sc.strongly_cooperative(),
        sc_witness: sc.strict_witness,
    }
}

fn l1_distance(space: &StateSpace, a: usize, b: usize) -> u64 {
    (0..space.dim())
        .map(|i| space.digit(a, i).abs_diff(space.digit(b, i)) as u64)
        .sum()
}

/// Checks `S(|y(t) - x(t)|) <= S(|y(0) - x(0)|)` for `0 <= t <= t_max`.
pub fn perturbation_contract<D: Dynamics + ?Sized>(
    m: &D,
    x0: &State,
    y0: &State,
    t_max: u64,
) -> Result<bool> {
    if !is_strongly_cooperative(m) {
        return Err(Error::ContractInapplicable(
            "map is not strongly cooperative".into(),
        ));
    }
    let space = m.space();
    let (mut x, mut y) = (space.rank(x0)?, space.rank(y0)?);
    let initial = l1_distance(space, x, y);
    for _ in 0..t_max {
        x = m.image_rank(x);
        y = m.image_rank(y);
        if l1_distance(space, x, y) > initial {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A strictly increasing chain of `p_1 + 1` states, `p_1` the largest
/// level count. Eventual strong cooperativity would push the sum of the
/// chain's last element to at least `n p_1`, above every reachable sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EventualScWitness {
    pub chain: Vec<State>,
    pub required_sum: u64,
    pub max_sum: u64,
}

pub fn eventual_sc_witness(space: &StateSpace) -> Result<EventualScWitness> {
    let n = space.dim();
    if n < 2 {
        return Err(Error::NotApplicable(
            "a strictly increasing chain of p_1 + 1 states needs n > 1".into(),
        ));
    }
    let levels = space.levels();
    let first = (0..n).max_by_key(|&i| (levels[i], std::cmp::Reverse(i))).unwrap();
    let second = if first == 0 { 1 } else { 0 };
    let p1 = levels[first];
    let mut c = vec![0u32; n];
    let mut chain = vec![space.state(c.clone())?];
    for _ in 1..p1 {
        c[first] += 1;
        chain.push(space.state(c.clone())?);
    }
    c[second] += 1;
    chain.push(space.state(c)?);
    Ok(EventualScWitness {
        chain,
        required_sum: n as u64 * p1 as u64,
        max_sum: space.max_sum() as u64,
    })
}
