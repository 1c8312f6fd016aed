//! Mixed-radix state spaces `{0..p_1-1} x ... x {0..p_n-1}` under the
//! cooperative (componentwise) order.
//!
//! States are addressed by rank: the mixed-radix value of the coordinate
//! vector with the last coordinate varying fastest. Every table-driven map
//! in the crate is indexed by this rank, and the rank order is a linear
//! extension of the cooperative order (`x < y` implies `rank(x) < rank(y)`).
//!
//! Coordinate indices are 0-based throughout the API.

use std::fmt;

use crate::error::{Error, Result};

/// Largest number of states a [`StateSpace`] may hold.
pub const MAX_STATES: usize = 1 << 31;

/// A finite product of chains `{0..p_i-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StateSpace {
    levels: Vec<u32>,
    strides: Vec<usize>,
    size: usize,
}

/// A point of a [`StateSpace`]. Obtained from [`StateSpace::state`] or
/// [`StateSpace::unrank`], both of which validate the coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State(Vec<u32>);

/// Relation between two states under the cooperative order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Equal,
    Less,
    Greater,
    Incomparable,
}

/// Result of [`StateSpace::compare`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub relation: Relation,
    /// `x << y`: strictly smaller in every coordinate.
    pub strictly_below: bool,
    /// `y << x`.
    pub strictly_above: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Up,
    Down,
}

impl State {
    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// `S(x)`, the coordinate sum.
    pub fn sum(&self) -> u64 {
        self.0.iter().map(|&c| c as u64).sum()
    }

    pub fn into_coords(self) -> Vec<u32> {
        self.0
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl StateSpace {
    pub fn new(levels: Vec<u32>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::InvalidSpace("dimension must be at least 1".into()));
        }
        if let Some(i) = levels.iter().position(|&p| p < 2) {
            return Err(Error::InvalidSpace(format!(
                "coordinate {i} has {} levels, need at least 2",
                levels[i]
            )));
        }
        let mut size: u128 = 1;
        for &p in &levels {
            size *= p as u128;
            if size > MAX_STATES as u128 {
                return Err(Error::SpaceTooLarge(size));
            }
        }
        let n = levels.len();
        let mut strides = vec![1usize; n];
        for i in (0..n - 1).rev() {
            strides[i] = strides[i + 1] * levels[i + 1] as usize;
        }
        Ok(StateSpace {
            levels,
            strides,
            size: size as usize,
        })
    }

    /// `{0..p-1}^n`.
    pub fn uniform(n: usize, p: u32) -> Result<Self> {
        Self::new(vec![p; n])
    }

    pub fn boolean(n: usize) -> Result<Self> {
        Self::uniform(n, 2)
    }

    pub fn dim(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[u32] {
        &self.levels
    }

    pub fn level(&self, i: usize) -> u32 {
        self.levels[i]
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// The common number of levels when all coordinates agree.
    pub fn uniform_level(&self) -> Option<u32> {
        let p = self.levels[0];
        self.levels.iter().all(|&q| q == p).then_some(p)
    }

    pub fn is_boolean(&self) -> bool {
        self.uniform_level() == Some(2)
    }

    /// `N = sum (p_i - 1)`, the largest coordinate sum.
    pub fn max_sum(&self) -> u32 {
        self.levels.iter().map(|&p| p - 1).sum()
    }

    pub fn state(&self, coords: impl Into<Vec<u32>>) -> Result<State> {
        let coords = coords.into();
        self.check_coords(&coords)?;
        Ok(State(coords))
    }

    fn check_coords(&self, coords: &[u32]) -> Result<()> {
        if coords.len() != self.dim() {
            return Err(Error::InvalidState(format!(
                "expected {} coordinates, got {}",
                self.dim(),
                coords.len()
            )));
        }
        for (i, (&c, &p)) in coords.iter().zip(&self.levels).enumerate() {
            if c >= p {
                return Err(Error::InvalidState(format!(
                    "coordinate {i} is {c}, must be below {p}"
                )));
            }
        }
        Ok(())
    }

    pub fn zeros(&self) -> State {
        State(vec![0; self.dim()])
    }

    pub fn top(&self) -> State {
        State(self.levels.iter().map(|&p| p - 1).collect())
    }

    pub fn compare(&self, x: &State, y: &State) -> Result<Comparison> {
        self.check_coords(&x.0)?;
        self.check_coords(&y.0)?;
        let (mut le, mut ge, mut ll, mut gg) = (true, true, true, true);
        for (&a, &b) in x.0.iter().zip(&y.0) {
            le &= a <= b;
            ge &= a >= b;
            ll &= a < b;
            gg &= a > b;
        }
        let relation = match (le, ge) {
            (true, true) => Relation::Equal,
            (true, false) => Relation::Less,
            (false, true) => Relation::Greater,
            (false, false) => Relation::Incomparable,
        };
        Ok(Comparison {
            relation,
            strictly_below: ll,
            strictly_above: gg,
        })
    }

    /// `x <= y` for states already known to belong to this space.
    pub fn leq(&self, x: &State, y: &State) -> bool {
        x.0.iter().zip(&y.0).all(|(a, b)| a <= b)
    }

    /// `x^{i+}` or `x^{i-}`, clamped at the boundary.
    pub fn step(&self, x: &State, i: usize, dir: Direction) -> Result<State> {
        if i >= self.dim() {
            return Err(Error::InvalidIndex {
                index: i,
                n: self.dim(),
            });
        }
        let mut c = x.0.clone();
        match dir {
            Direction::Up => c[i] = (c[i] + 1).min(self.levels[i] - 1),
            Direction::Down => c[i] = c[i].saturating_sub(1),
        }
        Ok(State(c))
    }

    pub fn rank(&self, x: &State) -> Result<usize> {
        self.check_coords(&x.0)?;
        Ok(self.encode(&x.0))
    }

    pub fn unrank(&self, r: usize) -> Result<State> {
        if r >= self.size {
            return Err(Error::InvalidRank {
                rank: r,
                size: self.size,
            });
        }
        let mut c = vec![0; self.dim()];
        self.decode_into(r, &mut c);
        Ok(State(c))
    }

    /// All states in rank order.
    pub fn states(&self) -> impl Iterator<Item = State> + '_ {
        (0..self.size).map(move |r| {
            let mut c = vec![0; self.dim()];
            self.decode_into(r, &mut c);
            State(c)
        })
    }

    // Rank-level primitives. These assume their inputs are in range.

    pub fn stride(&self, i: usize) -> usize {
        self.strides[i]
    }

    pub fn digit(&self, rank: usize, i: usize) -> u32 {
        ((rank / self.strides[i]) % self.levels[i] as usize) as u32
    }

    pub fn decode_into(&self, rank: usize, out: &mut [u32]) {
        let mut r = rank;
        for i in (0..self.dim()).rev() {
            let p = self.levels[i] as usize;
            out[i] = (r % p) as u32;
            r /= p;
        }
    }

    pub fn decode(&self, rank: usize) -> Vec<u32> {
        let mut c = vec![0; self.dim()];
        self.decode_into(rank, &mut c);
        c
    }

    pub fn encode(&self, coords: &[u32]) -> usize {
        coords
            .iter()
            .zip(&self.strides)
            .map(|(&c, &s)| c as usize * s)
            .sum()
    }

    /// Rank of `x^{i+}` (clamped).
    pub fn up_rank(&self, rank: usize, i: usize) -> usize {
        if self.digit(rank, i) + 1 < self.levels[i] {
            rank + self.strides[i]
        } else {
            rank
        }
    }

    /// Rank of `x^{i-}` (clamped).
    pub fn down_rank(&self, rank: usize, i: usize) -> usize {
        if self.digit(rank, i) > 0 {
            rank - self.strides[i]
        } else {
            rank
        }
    }

    pub fn leq_rank(&self, a: usize, b: usize) -> bool {
        (0..self.dim()).all(|i| self.digit(a, i) <= self.digit(b, i))
    }

    pub fn sum_rank(&self, rank: usize) -> u32 {
        let mut r = rank;
        let mut s = 0;
        for i in (0..self.dim()).rev() {
            let p = self.levels[i] as usize;
            s += (r % p) as u32;
            r /= p;
        }
        s
    }

    /// Ranks of all `y >= x`, in increasing rank order.
    pub fn up_set(&self, rank: usize) -> BoxIter<'_> {
        let lo = self.decode(rank);
        let hi = self.levels.iter().map(|&p| p - 1).collect();
        BoxIter::new(self, lo, hi)
    }

    /// Ranks of all `y <= x`, in increasing rank order.
    pub fn down_set(&self, rank: usize) -> BoxIter<'_> {
        let hi = self.decode(rank);
        BoxIter::new(self, vec![0; self.dim()], hi)
    }

    /// Ranks of `{x : S(x) = r}` in rank order.
    pub fn level_set(&self, r: u32) -> Vec<usize> {
        (0..self.size).filter(|&x| self.sum_rank(x) == r).collect()
    }
}

/// Iterator over the ranks of the box `[lo, hi]` in increasing rank order.
pub struct BoxIter<'a> {
    space: &'a StateSpace,
    lo: Vec<u32>,
    hi: Vec<u32>,
    cur: Vec<u32>,
    rank: usize,
    done: bool,
}

impl<'a> BoxIter<'a> {
    fn new(space: &'a StateSpace, lo: Vec<u32>, hi: Vec<u32>) -> Self {
        let rank = space.encode(&lo);
        let done = lo.iter().zip(&hi).any(|(a, b)| a > b);
        BoxIter {
            space,
            cur: lo.clone(),
            lo,
            hi,
            rank,
            done,
        }
    }
}

impl Iterator for BoxIter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.done {
            return None;
        }
        let out = self.rank;
        let mut i = self.cur.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            let stride = self.space.strides[i];
            if self.cur[i] < self.hi[i] {
                self.cur[i] += 1;
                self.rank += stride;
                break;
            }
            self.rank -= (self.hi[i] - self.lo[i]) as usize * stride;
            self.cur[i] = self.lo[i];
        }
        Some(out)
    }
}
