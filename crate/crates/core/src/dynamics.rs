//! Total maps `g : Pi -> Pi`, trajectories, and the decomposition of the
//! functional graph of `g` into periodic orbits and transients.

use crate::error::{Error, Result};
use crate::state::{State, StateSpace};

/// A deterministic synchronous update rule on a state space, addressed by rank.
pub trait Dynamics {
    fn space(&self) -> &StateSpace;
    fn image_rank(&self, rank: usize) -> usize;
}

/// A map stored as a table of image ranks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalMap {
    space: StateSpace,
    table: Vec<u32>,
}

impl Dynamics for TotalMap {
    fn space(&self) -> &StateSpace {
        &self.space
    }

    fn image_rank(&self, rank: usize) -> usize {
        self.table[rank] as usize
    }
}

impl TotalMap {
    pub fn from_table(space: StateSpace, table: Vec<u32>) -> Result<Self> {
        if table.len() != space.size() {
            return Err(Error::InvalidState(format!(
                "table has {} entries for a space of {} states",
                table.len(),
                space.size()
            )));
        }
        if let Some(bad) = table.iter().find(|&&t| t as usize >= space.size()) {
            return Err(Error::InvalidRank {
                rank: *bad as usize,
                size: space.size(),
            });
        }
        Ok(TotalMap { space, table })
    }

    /// Builds the table from a rank-level rule.
    pub fn from_rank_fn(space: StateSpace, f: impl Fn(usize) -> usize) -> Result<Self> {
        let table = (0..space.size()).map(|r| f(r) as u32).collect();
        Self::from_table(space, table)
    }

    /// Builds the table from a coordinate-level rule. The rule receives the
    /// coordinates of `x` and writes the coordinates of `g(x)`.
    pub fn from_coord_fn(space: StateSpace, f: impl Fn(&[u32], &mut [u32])) -> Result<Self> {
        let n = space.dim();
        let mut x = vec![0; n];
        let mut y = vec![0; n];
        let mut table = Vec::with_capacity(space.size());
        for r in 0..space.size() {
            space.decode_into(r, &mut x);
            f(&x, &mut y);
            let img = space.state(y.clone())?;
            table.push(space.encode(img.coords()) as u32);
        }
        Ok(TotalMap { space, table })
    }

    /// Materializes any [`Dynamics`] as a table.
    pub fn from_dynamics<D: Dynamics + ?Sized>(d: &D) -> Self {
        let space = d.space().clone();
        let table = (0..space.size()).map(|r| d.image_rank(r) as u32).collect();
        TotalMap { space, table }
    }

    pub fn identity(space: StateSpace) -> Self {
        let table = (0..space.size() as u32).collect();
        TotalMap { space, table }
    }

    pub fn constant(space: StateSpace, target: &State) -> Result<Self> {
        let t = space.rank(target)? as u32;
        let table = vec![t; space.size()];
        Ok(TotalMap { space, table })
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn apply(&self, x: &State) -> Result<State> {
        let r = self.space.rank(x)?;
        self.space.unrank(self.table[r] as usize)
    }

    /// `g^t(x0)`.
    pub fn trajectory(&self, x0: &State, t: u64) -> Result<State> {
        let r = self.space.rank(x0)?;
        self.space.unrank(self.iterate_rank(r, t))
    }

    pub fn iterate_rank(&self, rank: usize, t: u64) -> usize {
        let mut r = rank;
        for _ in 0..t {
            r = self.table[r] as usize;
        }
        r
    }
}

/// Periodic orbits and transient structure of a functional graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitDecomposition {
    cycles: Vec<Vec<usize>>,
    cycle_index: Vec<u32>,
    steps_to_cycle: Vec<u32>,
}

const UNVISITED: u8 = 0;
const ON_PATH: u8 = 1;
const RESOLVED: u8 = 2;

/// Decomposes the functional graph of `m` in one pass.
///
/// Each cycle is listed starting from its minimum-rank state and following
/// `g`; cycles are ordered by that minimum rank.
pub fn orbit_decompose<D: Dynamics + ?Sized>(m: &D) -> OrbitDecomposition {
    let size = m.space().size();
    let mut color = vec![UNVISITED; size];
    let mut cycle_index = vec![0u32; size];
    let mut steps = vec![0u32; size];
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut path: Vec<usize> = Vec::new();

    for start in 0..size {
        if color[start] != UNVISITED {
            continue;
        }
        path.clear();
        let mut v = start;
        while color[v] == UNVISITED {
            color[v] = ON_PATH;
            path.push(v);
            v = m.image_rank(v);
        }
        let mut tail_end = path.len();
        if color[v] == ON_PATH {
            let pos = path.iter().rposition(|&u| u == v).unwrap();
            let id = cycles.len() as u32;
            let cycle = path[pos..].to_vec();
            for &u in &cycle {
                color[u] = RESOLVED;
                cycle_index[u] = id;
                steps[u] = 0;
            }
            cycles.push(cycle);
            tail_end = pos;
        }
        for k in (0..tail_end).rev() {
            let u = path[k];
            let next = m.image_rank(u);
            color[u] = RESOLVED;
            cycle_index[u] = cycle_index[next];
            steps[u] = steps[next] + 1;
        }
    }

    // Canonical form: rotate each cycle to its minimum, then sort.
    for c in cycles.iter_mut() {
        let k = (0..c.len()).min_by_key(|&k| c[k]).unwrap();
        c.rotate_left(k);
    }
    let mut order: Vec<usize> = (0..cycles.len()).collect();
    order.sort_by_key(|&k| cycles[k][0]);
    let mut remap = vec![0u32; cycles.len()];
    for (new, &old) in order.iter().enumerate() {
        remap[old] = new as u32;
    }
    let cycles: Vec<Vec<usize>> = order.iter().map(|&k| cycles[k].clone()).collect();
    for ci in cycle_index.iter_mut() {
        *ci = remap[*ci as usize];
    }

    OrbitDecomposition {
        cycles,
        cycle_index,
        steps_to_cycle: steps,
    }
}

impl OrbitDecomposition {
    /// Cycles as lists of ranks.
    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn cycle_states(&self, space: &StateSpace, k: usize) -> Vec<State> {
        self.cycles[k]
            .iter()
            .map(|&r| space.unrank(r).unwrap())
            .collect()
    }

    /// Index of the cycle eventually reached from `rank`.
    pub fn cycle_index(&self, rank: usize) -> usize {
        self.cycle_index[rank] as usize
    }

    pub fn steps_to_cycle(&self, rank: usize) -> usize {
        self.steps_to_cycle[rank] as usize
    }

    pub fn is_persistent(&self, rank: usize) -> bool {
        self.steps_to_cycle[rank] == 0
    }

    /// Ranks lying on periodic orbits, ascending.
    pub fn persistent_ranks(&self) -> Vec<usize> {
        (0..self.steps_to_cycle.len())
            .filter(|&r| self.steps_to_cycle[r] == 0)
            .collect()
    }

    pub fn persistent_states(&self, space: &StateSpace) -> Vec<State> {
        self.persistent_ranks()
            .into_iter()
            .map(|r| space.unrank(r).unwrap())
            .collect()
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(Vec::len).collect()
    }

    pub fn max_cycle_len(&self) -> usize {
        self.cycles.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn transient_count(&self) -> usize {
        self.steps_to_cycle.iter().filter(|&&s| s > 0).count()
    }

    pub fn max_transient(&self) -> usize {
        self.steps_to_cycle.iter().copied().max().unwrap_or(0) as usize
    }

    /// Finds the cycle whose state set equals `ranks`.
    pub fn find_cycle(&self, ranks: &[usize]) -> Option<usize> {
        let first = *ranks.first()?;
        if !self.is_persistent(first) {
            return None;
        }
        let k = self.cycle_index(first);
        let c = &self.cycles[k];
        if c.len() != ranks.len() {
            return None;
        }
        let mut a = c.clone();
        let mut b = ranks.to_vec();
        a.sort_unstable();
        b.sort_unstable();
        (a == b).then_some(k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rotation_2d() -> TotalMap {
        let s = StateSpace::boolean(2).unwrap();
        TotalMap::from_coord_fn(s, |x, y| {
            y[0] = 1 - x[1];
            y[1] = x[0];
        })
        .unwrap()
    }

    #[test]
    fn apply_and_trajectory() {
        let g = rotation_2d();
        let s = g.space().clone();
        let x00 = s.state([0, 0]).unwrap();
        assert_eq!(g.apply(&x00).unwrap().coords(), &[1, 0]);
        assert_eq!(
            g.apply(&s.state([1, 1]).unwrap()).unwrap().coords(),
            &[0, 1]
        );
        assert_eq!(g.trajectory(&x00, 0).unwrap(), x00);
        assert_eq!(g.trajectory(&x00, 4).unwrap(), x00);
        let id = TotalMap::identity(s.clone());
        assert_eq!(id.trajectory(&x00, 17).unwrap(), x00);
    }

    #[test]
    fn identity_decomposition() {
        let id = TotalMap::identity(StateSpace::boolean(2).unwrap());
        let d = orbit_decompose(&id);
        assert_eq!(d.cycle_lengths(), vec![1, 1, 1, 1]);
        assert_eq!(d.transient_count(), 0);
        assert_eq!(d.persistent_ranks(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn rotation_is_one_four_cycle() {
        let d = orbit_decompose(&rotation_2d());
        assert_eq!(d.cycle_lengths(), vec![4]);
        assert_eq!(d.persistent_ranks().len(), 4);
        // starts at rank 0 = (0,0), then (1,0)=2, (1,1)=3, (0,1)=1
        assert_eq!(d.cycles()[0], vec![0, 2, 3, 1]);
    }

    #[test]
    fn transposition_cycles() {
        let s = StateSpace::boolean(2).unwrap();
        let g = TotalMap::from_coord_fn(s.clone(), |x, y| {
            y[0] = x[1];
            y[1] = x[0];
        })
        .unwrap();
        let d = orbit_decompose(&g);
        let cycles: Vec<Vec<State>> = (0..d.cycles().len())
            .map(|k| d.cycle_states(&s, k))
            .collect();
        assert_eq!(cycles.len(), 3);
        assert_eq!(cycles[0], vec![s.state([0, 0]).unwrap()]);
        assert_eq!(
            cycles[1],
            vec![s.state([0, 1]).unwrap(), s.state([1, 0]).unwrap()]
        );
        assert_eq!(cycles[2], vec![s.state([1, 1]).unwrap()]);
    }

    #[test]
    fn persistent_states_with_transient() {
        // g(0)=0, g({1})=g({2})={1}, g({1,2})={1,2}; coordinate 0 is element 1.
        let s = StateSpace::boolean(2).unwrap();
        let g = TotalMap::from_coord_fn(s.clone(), |x, y| match (x[0], x[1]) {
            (0, 0) => y.copy_from_slice(&[0, 0]),
            (1, 1) => y.copy_from_slice(&[1, 1]),
            _ => y.copy_from_slice(&[1, 0]),
        })
        .unwrap();
        let d = orbit_decompose(&g);
        let p = d.persistent_states(&s);
        assert_eq!(
            p,
            vec![
                s.state([0, 0]).unwrap(),
                s.state([1, 0]).unwrap(),
                s.state([1, 1]).unwrap()
            ]
        );
        assert_eq!(d.steps_to_cycle(s.rank(&s.state([0, 1]).unwrap()).unwrap()), 1);
    }

    #[test]
    fn long_chain_does_not_recurse() {
        // r -> r - 1, 0 fixed: a single transient chain of length size - 1.
        let s = StateSpace::uniform(1, 1 << 20).unwrap();
        let g = TotalMap::from_rank_fn(s, |r| r.saturating_sub(1)).unwrap();
        let d = orbit_decompose(&g);
        assert_eq!(d.cycle_lengths(), vec![1]);
        assert_eq!(d.max_transient(), (1 << 20) - 1);
    }

    #[test]
    fn table_validation() {
        let s = StateSpace::boolean(1).unwrap();
        assert!(TotalMap::from_table(s.clone(), vec![0]).is_err());
        assert!(TotalMap::from_table(s, vec![0, 2]).is_err());
    }
}
