//! Plain-text `key: value` reports. Keys keep insertion order, so identical
//! inputs render byte-identical text.

use std::fmt::{self, Display};

use crate::dynamics::{orbit_decompose, Dynamics};
use crate::error::Result;
use crate::irreducibility::{check_orbit_bounds, classify_irreducibility};
use crate::monotone::{analyze, CoopVerdict};
use crate::state::StateSpace;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    entries: Vec<(String, String)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl Display) -> &mut Self {
        self.entries.push((key.into(), value.to_string()));
        self
    }

    pub fn extend(&mut self, other: Report) -> &mut Self {
        self.entries.extend(other.entries);
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }
}

impl Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.entries {
            writeln!(f, "{k}: {v}")?;
        }
        Ok(())
    }
}

/// `(a,b,c)` with coordinates as given.
pub fn fmt_state(space: &StateSpace, rank: usize) -> String {
    let c: Vec<String> = space.decode(rank).iter().map(u32::to_string).collect();
    format!("({})", c.join(","))
}

fn fmt_list<T: Display>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Which sections [`analysis_report`] includes.
#[derive(Clone, Copy, Debug, Default)]
pub struct AnalysisOptions {
    pub orbits: bool,
    pub coop: bool,
    pub irred: bool,
    pub bounds: bool,
    /// Cycles listed state by state; longer cycle lists are summarized.
    pub list_limit: usize,
}

impl AnalysisOptions {
    pub fn all() -> Self {
        AnalysisOptions { orbits: true, coop: true, irred: true, bounds: true, list_limit: 16 }
    }
}

pub fn analysis_report<D: Dynamics + ?Sized>(m: &D, opts: AnalysisOptions) -> Result<Report> {
    let space = m.space();
    let mut r = Report::new();
    r.push("dimension", space.dim());
    r.push("levels", fmt_list(space.levels()));
    r.push("states", space.size());

    if opts.orbits {
        let dec = orbit_decompose(m);
        let mut lens = dec.cycle_lengths();
        lens.sort_unstable_by(|a, b| b.cmp(a));
        r.push("orbits.cycles", dec.cycles().len());
        r.push("orbits.cycle_lengths", fmt_list(&lens));
        r.push("orbits.max_cycle_length", dec.max_cycle_len());
        r.push("orbits.persistent_states", dec.persistent_ranks().len());
        r.push("orbits.transient_states", dec.transient_count());
        r.push("orbits.max_transient_length", dec.max_transient());
        for (k, c) in dec.cycles().iter().enumerate().take(opts.list_limit) {
            r.push(
                format!("orbits.cycle.{}", k + 1),
                fmt_list(c.iter().map(|&x| fmt_state(space, x))),
            );
        }
        if dec.cycles().len() > opts.list_limit {
            r.push("orbits.cycles_not_listed", dec.cycles().len() - opts.list_limit);
        }
    }

    if opts.coop {
        let a = analyze(m);
        let verdict = match a.verdict {
            CoopVerdict::Cooperative => "cooperative".to_string(),
            CoopVerdict::AlmostCooperative { i, j } => {
                format!("almost-cooperative <{},{}>", i + 1, j + 1)
            }
            CoopVerdict::Neither => "neither".to_string(),
        };
        r.push("coop.verdict", verdict);
        if let Some(w) = &a.witness {
            r.push(
                "coop.witness",
                format!("x={} i={} j={}", w.x, w.i + 1, w.j + 1),
            );
        }
        r.push("coop.strongly_cooperative", a.strongly_cooperative);
        if let Some((x, y)) = &a.sc_witness {
            r.push("coop.strict_witness", format!("{x} < {y}"));
        }
    }

    if opts.irred {
        let ir = classify_irreducibility(m);
        r.push("irred.strongly_irreducible", ir.strongly_irreducible);
        r.push("irred.strongly_semi_irreducible", ir.strongly_semi_irreducible);
        r.push("irred.irreducible", ir.irreducible);
        r.push("irred.weakly_irreducible", ir.weakly_irreducible);
        if let Some(x) = ir.irreducible_witness {
            r.push("irred.not_strongly_connected_at", fmt_state(space, x));
        }
        r.push("irred.intersection_strict_arcs", arcs(&ir.intersection_strict));
        r.push("irred.intersection_weak_arcs", arcs(&ir.intersection_weak));
        r.push("irred.union_weak_arcs", arcs(&ir.union_weak));
        for (k, a) in ir.along.iter().enumerate().take(opts.list_limit) {
            r.push(
                format!("irred.along.{}", k + 1),
                format!(
                    "length={} strongly_irreducible={} irreducible={} weakly_irreducible={}",
                    a.cycle.len(),
                    a.strongly_irreducible,
                    a.irreducible,
                    a.weakly_irreducible
                ),
            );
        }
    }

    if opts.bounds {
        let b = check_orbit_bounds(m)?;
        r.push("bounds.N", b.big_n);
        match b.landau_big_n {
            Some(v) => r.push("bounds.R(N)", v),
            None => r.push("bounds.R(N)", "above 2^31"),
        };
        r.push("bounds.R(n)_reference", b.landau_n);
        r.push("bounds.cooperative", b.cooperative);
        r.push("bounds.strongly_cooperative", b.strongly_cooperative);
        let applied: usize = b.cycles.iter().map(|c| c.checks.len()).sum();
        r.push("bounds.checks_applied", applied);
        r.push("bounds.all_hold", b.all_hold());
        for (k, v) in b.violations() {
            r.push(
                format!("bounds.violation.{}", k + 1),
                format!("{} (bound {})", v.name, v.bound),
            );
        }
    }
    Ok(r)
}

fn arcs(g: &crate::irreducibility::Digraph) -> String {
    let a: Vec<String> = g.arcs().iter().map(|(i, j)| format!("{}->{}", i + 1, j + 1)).collect();
    if a.is_empty() {
        "none".into()
    } else {
        a.join(" ")
    }
}
