//! Realizing arbitrary finite dynamics inside cooperative systems.
//!
//! Two routes: place an abstract system on the middle layer of `{0..p-1}^n`
//! and close it up with the trivial extension, or lift a cooperative system
//! on a product of chains to a Boolean one through the thermometer code.

use crate::antichain::{comparable_pair_ranks, d_exact, middle_level};
use crate::dynamics::{Dynamics, TotalMap};
use crate::error::{Error, Result};
use crate::monotone::cooperativity_violation;
use crate::smale::{comparability_flags, greedy_antichain_completion, PartialMap};
use crate::state::{State, StateSpace};

/// Whether `q^m <= d(n, p)`, i.e. every system on `q^m` states fits on the
/// middle layer of `{0..p-1}^n`.
pub fn embedding_feasible(m: u32, q: u32, n: usize, p: u32) -> Result<bool> {
    let d = d_exact(n, p)?;
    Ok(match (q as u128).checked_pow(m) {
        Some(states) => states <= d,
        None => false,
    })
}

/// An injection `phi` from the states of `source` into `target`, by rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    source: StateSpace,
    target: StateSpace,
    phi: Vec<usize>,
}

impl Embedding {
    pub fn new(source: StateSpace, target: StateSpace, phi: Vec<usize>) -> Result<Self> {
        if phi.len() != source.size() {
            return Err(Error::InvalidState(format!(
                "embedding has {} images for {} states",
                phi.len(),
                source.size()
            )));
        }
        if let Some(&bad) = phi.iter().find(|&&r| r >= target.size()) {
            return Err(Error::InvalidRank { rank: bad, size: target.size() });
        }
        let e = Embedding { source, target, phi };
        if let Some((a, b)) = e.collision() {
            return Err(Error::Precondition(format!(
                "embedding is not injective: ranks {a} and {b} share an image"
            )));
        }
        Ok(e)
    }

    pub fn source(&self) -> &StateSpace {
        &self.source
    }

    pub fn target(&self) -> &StateSpace {
        &self.target
    }

    pub fn phi(&self) -> &[usize] {
        &self.phi
    }

    pub fn image(&self, x: &State) -> Result<State> {
        let r = self.source.rank(x)?;
        self.target.unrank(self.phi[r])
    }

    /// Two source ranks with the same image, if any.
    pub fn collision(&self) -> Option<(usize, usize)> {
        let mut owner = std::collections::HashMap::with_capacity(self.phi.len());
        for (x, &y) in self.phi.iter().enumerate() {
            if let Some(prev) = owner.insert(y, x) {
                return Some((prev, x));
            }
        }
        None
    }
}

/// First source rank `x` with `g(phi(x)) != phi(f(x))`.
pub fn conjugacy_violation<F, G>(f: &F, g: &G, phi: impl Fn(usize) -> usize) -> Option<usize>
where
    F: Dynamics + ?Sized,
    G: Dynamics + ?Sized,
{
    (0..f.space().size()).find(|&x| g.image_rank(phi(x)) != phi(f.image_rank(x)))
}

pub fn verify_conjugacy<F, G>(f: &F, g: &G, phi: impl Fn(usize) -> usize) -> bool
where
    F: Dynamics + ?Sized,
    G: Dynamics + ?Sized,
{
    conjugacy_violation(f, g, phi).is_none()
}

/// Extends `gamma : A -> A` on an antichain `A` to a cooperative total map.
///
/// `A` is completed greedily to a maximal antichain `Â` (an empty `A` is
/// replaced by the level set `S = floor(N/2)`). States of `Â \ A` are fixed,
/// states strictly below `Â` go to the all-zeros state, states strictly
/// above go to the all-max state.
pub fn trivial_extend(space: &StateSpace, gamma: &PartialMap) -> Result<TotalMap> {
    if gamma.space() != space {
        return Err(Error::InvalidSpace("partial map lives on a different space".into()));
    }
    let domain = gamma.domain();
    if let Some((a, b)) = comparable_pair_ranks(space, &domain) {
        return Err(Error::Precondition(format!(
            "domain is not an antichain: {} <= {}",
            space.unrank(a).unwrap(),
            space.unrank(b).unwrap()
        )));
    }
    if let Some((x, y)) = gamma.iter().find(|(_, y)| !gamma.contains_rank(*y)) {
        return Err(Error::Precondition(format!(
            "image {} of {} is outside the domain",
            space.unrank(y).unwrap(),
            space.unrank(x).unwrap()
        )));
    }

    let size = space.size();
    let mut in_hat = vec![false; size];
    if domain.is_empty() {
        for z in space.level_set(middle_level(space)) {
            in_hat[z] = true;
        }
    } else {
        for &a in &domain {
            in_hat[a] = true;
        }
        for z in greedy_antichain_completion(space, &in_hat) {
            in_hat[z] = true;
        }
    }
    let (below, _) = comparability_flags(space, &in_hat);
    let top = size - 1;
    let table = (0..size)
        .map(|z| {
            (if let Some(y) = gamma.get_rank(z) {
                y
            } else if in_hat[z] {
                z
            } else if below[z] {
                0
            } else {
                top
            }) as u32
        })
        .collect();
    TotalMap::from_table(space.clone(), table)
}

/// Realizes `f` as the restriction of a cooperative map on `target` to the
/// first `|Sigma|` middle-layer states (in rank order).
pub fn embed_system(f: &TotalMap, target: &StateSpace) -> Result<(Embedding, TotalMap)> {
    if target.uniform_level().is_none() {
        return Err(Error::UnsupportedSpace(
            "the target must have the same number of levels in every coordinate".into(),
        ));
    }
    let layer = target.level_set(middle_level(target));
    let need = f.space().size();
    if need > layer.len() {
        return Err(Error::Infeasible(format!(
            "{need} states do not fit on a middle layer of {} states",
            layer.len()
        )));
    }
    let phi: Vec<usize> = layer[..need].to_vec();
    let mut gamma = PartialMap::new(target.clone());
    for x in 0..need {
        gamma.insert_rank(phi[x], phi[f.table()[x] as usize])?;
    }
    let g = trivial_extend(target, &gamma)?;
    if let Some(x) = conjugacy_violation(f, &g, |x| phi[x]) {
        return Err(Error::TheoremViolation(format!(
            "extension does not conjugate at source rank {x}"
        )));
    }
    if let Some(v) = cooperativity_violation(&g) {
        return Err(Error::TheoremViolation(format!(
            "extension is not cooperative at {} along coordinate {}",
            v.x, v.i
        )));
    }
    let e = Embedding::new(f.space().clone(), target.clone(), phi)?;
    Ok((e, g))
}

/// Boolean lift of a map on a product of chains.
///
/// Coordinate `i` with `p_i` levels becomes a block of `p_i - 1` bits; `psi`
/// writes `x_i` as `x_i` leading ones. The retraction `z` replaces each block
/// by the thermometer code of its popcount, and the lift is `psi ∘ g ∘ psi⁻¹ ∘ z`.
/// Images are computed on demand; the lifted table is never stored.
#[derive(Clone, Debug)]
pub struct ThermometerLift {
    base: TotalMap,
    lifted: StateSpace,
    offsets: Vec<usize>,
}

impl ThermometerLift {
    pub fn new(g: &TotalMap) -> Result<Self> {
        let src = g.space();
        let total = src.max_sum() as usize;
        if total == 0 {
            return Err(Error::InvalidSpace("every coordinate has a single level".into()));
        }
        let lifted = StateSpace::boolean(total)?;
        let mut offsets = Vec::with_capacity(src.dim());
        let mut acc = 0usize;
        for &p in src.levels() {
            offsets.push(acc);
            acc += (p - 1) as usize;
        }
        Ok(ThermometerLift { base: g.clone(), lifted, offsets })
    }

    pub fn base(&self) -> &TotalMap {
        &self.base
    }

    pub fn source_space(&self) -> &StateSpace {
        self.base.space()
    }

    /// Bit position of `(i, l)` (level `l` in `1..p_i`) in the lifted state.
    pub fn bit(&self, i: usize, l: u32) -> usize {
        self.offsets[i] + l as usize - 1
    }

    fn width(&self) -> usize {
        self.lifted.dim()
    }

    fn mask(&self, pos: usize) -> usize {
        1usize << (self.width() - 1 - pos)
    }

    pub fn psi_rank(&self, x: usize) -> usize {
        let src = self.base.space();
        let mut y = 0usize;
        for i in 0..src.dim() {
            for l in 1..=src.digit(x, i) {
                y |= self.mask(self.bit(i, l));
            }
        }
        y
    }

    pub fn psi(&self, x: &State) -> Result<State> {
        let r = self.base.space().rank(x)?;
        self.lifted.unrank(self.psi_rank(r))
    }

    /// Per-block popcounts of `y`, encoded in the source space.
    pub fn block_counts_rank(&self, y: usize) -> usize {
        let src = self.base.space();
        let mut r = 0usize;
        for i in 0..src.dim() {
            let ones = (1..src.level(i))
                .filter(|&l| y & self.mask(self.bit(i, l)) != 0)
                .count();
            r += ones * src.stride(i);
        }
        r
    }

    pub fn retract_rank(&self, y: usize) -> usize {
        self.psi_rank(self.block_counts_rank(y))
    }

    pub fn retract(&self, y: &State) -> Result<State> {
        let r = self.lifted.rank(y)?;
        self.lifted.unrank(self.retract_rank(r))
    }

    pub fn embedding(&self) -> Embedding {
        let src = self.base.space();
        let phi = (0..src.size()).map(|x| self.psi_rank(x)).collect();
        Embedding {
            source: src.clone(),
            target: self.lifted.clone(),
            phi,
        }
    }
}

impl Dynamics for ThermometerLift {
    fn space(&self) -> &StateSpace {
        &self.lifted
    }

    fn image_rank(&self, y: usize) -> usize {
        let c = self.block_counts_rank(y);
        self.psi_rank(self.base.table()[c] as usize)
    }
}

pub fn thermometer_lift(g: &TotalMap) -> Result<ThermometerLift> {
    ThermometerLift::new(g)
}

/// The retraction `z` alone, as a map on the lifted cube.
pub struct Retraction(ThermometerLift);

impl Retraction {
    pub fn new(space: &StateSpace) -> Result<Self> {
        Ok(Retraction(ThermometerLift::new(&TotalMap::identity(space.clone()))?))
    }
}

impl Dynamics for Retraction {
    fn space(&self) -> &StateSpace {
        self.0.space()
    }

    fn image_rank(&self, y: usize) -> usize {
        self.0.retract_rank(y)
    }
}
