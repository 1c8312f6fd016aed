//! Desk-scale theorem checks grouped into named suites.

use std::fmt::Write as _;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::antichain::{d_exact, max_antichain_oracle, ratio_to_exact};
use crate::constructions::{
    embedded_layer, make_almost_coop_2d, make_almostex, make_cycle_on_layer, make_g_pi,
    make_germanex, make_irlong, make_nopsirshortex, middle_layer_ranks,
    random_cooperative_partial, random_strongly_cooperative, random_valid_permutation,
    CooperativeBooleanSystems,
};
use crate::dynamics::{orbit_decompose, Dynamics, TotalMap};
use crate::embedding::thermometer_lift;
use crate::error::{Error, Result};
use crate::irreducibility::{
    classify_along, classify_irreducibility, extract_cyclic_pi, landau_r, Permutation,
};
use crate::monotone::{
    almost_cooperative_pair, is_cooperative, perturbation_contract, strong_cooperativity,
};
use crate::smale::{hyperplane_smale, smale_extend, smale_extend_naive, PartialMap};
use crate::state::StateSpace;

pub const SUITES: &[&str] = &[
    "sperner",
    "dnp",
    "clt",
    "bounds",
    "boolean3-exhaustive",
    "sm-equivalence",
    "smale",
    "cyclic-permutation",
    "landau",
    "examples",
    "perturbation",
];

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    /// State-count cap for the antichain oracle sweep.
    pub cap: usize,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { cap: 2048, seed: 1 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub suite: &'static str,
    pub name: String,
    /// The result being checked, named descriptively.
    pub reference: &'static str,
    pub params: String,
    pub passed: bool,
    pub detail: String,
}

struct Suite {
    name: &'static str,
    out: Vec<CheckResult>,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Suite { name, out: Vec::new() }
    }

    fn check(&mut self, name: &str, reference: &'static str, params: String, passed: bool, detail: String) {
        self.out.push(CheckResult {
            suite: self.name,
            name: name.into(),
            reference,
            params,
            passed,
            detail,
        });
    }
}

/// Runs one suite, or every suite for `"all"`.
pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<Vec<CheckResult>> {
    if name == "all" {
        let mut all = Vec::new();
        for s in SUITES {
            all.extend(run_suite(s, opts)?);
        }
        return Ok(all);
    }
    match name {
        "sperner" => sperner(opts),
        "dnp" => dnp(),
        "clt" => clt(),
        "bounds" => bounds(),
        "boolean3-exhaustive" => boolean3(),
        "sm-equivalence" => sm_equivalence(opts),
        "smale" => smale(opts),
        "cyclic-permutation" => cyclic_permutation(),
        "landau" => landau(opts),
        "examples" => examples(opts),
        "perturbation" => perturbation(opts),
        other => Err(Error::NotApplicable(format!(
            "unknown suite `{other}`; expected one of: all {}",
            SUITES.join(" ")
        ))),
    }
}

/// One block per check; deterministic given the options.
pub fn render(results: &[CheckResult]) -> String {
    let mut s = String::new();
    for r in results {
        let _ = writeln!(s, "check: {}/{}", r.suite, r.name);
        let _ = writeln!(s, "reference: {}", r.reference);
        let _ = writeln!(s, "params: {}", r.params);
        let _ = writeln!(s, "outcome: {}", if r.passed { "pass" } else { "FAIL" });
        let _ = writeln!(s, "detail: {}", r.detail);
        s.push('\n');
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    let _ = writeln!(s, "checks: {}", results.len());
    let _ = writeln!(s, "failed: {failed}");
    s
}

/// All `(n, p)` with `p >= 2`, `n >= 1`, `p^n <= cap`.
pub fn small_spaces(cap: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    for n in 1usize.. {
        if 2usize.pow(n.min(63) as u32) > cap {
            break;
        }
        for p in 2u32.. {
            match (p as usize).checked_pow(n as u32) {
                Some(s) if s <= cap => out.push((n, p)),
                _ => break,
            }
        }
    }
    out
}

fn sperner(opts: &SuiteOptions) -> Result<Vec<CheckResult>> {
    let mut s = Suite::new("sperner");
    let start = Instant::now();
    let spaces = small_spaces(opts.cap);
    let mut mismatch = None;
    for &(n, p) in &spaces {
        let space = StateSpace::uniform(n, p)?;
        let oracle = max_antichain_oracle(&space, opts.cap)? as u128;
        let d = d_exact(n, p)?;
        if oracle != d && mismatch.is_none() {
            mismatch = Some(format!("(n,p)=({n},{p}): oracle {oracle}, d_exact {d}"));
        }
    }
    s.check(
        "oracle-equals-middle-layer",
        "maximum antichain of a product of chains has the middle-layer size",
        format!("all p^n <= {}", opts.cap),
        mismatch.is_none(),
        mismatch.unwrap_or_else(|| {
            format!("{} spaces agree in {:.2}s", spaces.len(), start.elapsed().as_secs_f64())
        }),
    );
    Ok(s.out)
}

pub fn binomial(n: u64, k: u64) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Number of states of `{0..p-1}^n` with coordinate sum `target`, by
/// enumeration. For `n = 1` the count is read off directly.
pub fn level_count_bruteforce(n: usize, p: u32, target: u64) -> u128 {
    if n == 1 {
        return (target < p as u64) as u128;
    }
    let mut digits = vec![0u32; n];
    let mut sum = 0u64;
    let mut count = 0u128;
    loop {
        count += (sum == target) as u128;
        let mut k = n;
        loop {
            if k == 0 {
                return count;
            }
            k -= 1;
            if digits[k] + 1 < p {
                digits[k] += 1;
                sum += 1;
                break;
            }
            sum -= digits[k] as u64;
            digits[k] = 0;
        }
    }
}

fn dnp() -> Result<Vec<CheckResult>> {
    let mut s = Suite::new("dnp");
    let mut bad = None;
    for n in 1..=30usize {
        let d = d_exact(n, 2)?;
        let c = binomial(n as u64, n as u64 / 2);
        if d != c && bad.is_none() {
            bad = Some(format!("n={n}: d_exact {d}, binomial {c}"));
        }
    }
    s.check(
        "boolean-binomial",
        "Boolean middle layer size is C(n, floor(n/2))",
        "1 <= n <= 30".into(),
        bad.is_none(),
        bad.unwrap_or_else(|| "30 values agree".into()),
    );
    let mut bad = None;
    let spaces = small_spaces(1_000_000);
    for &(n, p) in &spaces {
        let target = (n as u64 * (p as u64 - 1)) / 2;
        let d = d_exact(n, p)?;
        let b = level_count_bruteforce(n, p, target);
        if d != b && bad.is_none() {
            bad = Some(format!("(n,p)=({n},{p}): d_exact {d}, enumeration {b}"));
        }
    }
    s.check(
        "enumeration",
        "middle layer count by convolution equals direct enumeration",
        "all p^n <= 10^6".into(),
        bad.is_none(),
        bad.unwrap_or_else(|| format!("{} spaces agree", spaces.len())),
    );
    Ok(s.out)
}

fn clt() -> Result<Vec<CheckResult>> {
    let mut s = Suite::new("clt");
    for (n, p, tol) in [(20usize, 2u32, 0.02), (12, 3, 0.05)] {
        let r = ratio_to_exact(n, p)?;
        s.check(
            &format!("ratio-{n}-{p}"),
            "local limit estimate p^n / sqrt(2 pi n sigma^2) approximates the middle layer",
            format!("n={n} p={p} tolerance={tol}"),
            (r - 1.0).abs() <= tol,
            format!("ratio {r:.6}"),
        );
    }
    let r = ratio_to_exact(20, 2)?;
    s.check(
        "ratio-reference",
        "local limit estimate p^n / sqrt(2 pi n sigma^2) approximates the middle layer",
        "n=20 p=2 reference=0.9876".into(),
        (r - 0.9876).abs() < 1e-4,
        format!("ratio {r:.6}"),
    );
    Ok(s.out)
}

fn bounds() -> Result<Vec<CheckResult>> {
    let mut s = Suite::new("bounds");
    let mut bad = None;
    for n in 2..=12usize {
        for p in [2u32, 3, 4] {
            let d = d_exact(n, p)?;
            let pn1 = (p as u128).pow(n as u32 - 1);
            let lower = n as u128 * d >= pn1;
            let upper = d_exact(n + 1, p)? < pn1 * p as u128;
            if !(lower && upper) && bad.is_none() {
                bad = Some(format!("(n,p)=({n},{p}): lower {lower}, upper {upper}"));
            }
        }
    }
    s.check(
        "middle-layer-bounds",
        "p^(n-1)/n <= d(n,p) and d(n+1,p) < p^n",
        "2 <= n <= 12, p in {2,3,4}".into(),
        bad.is_none(),
        bad.unwrap_or_else(|| "33 cases hold".into()),
    );
    let g = make_cycle_on_layer(10, 2)?;
    let len = orbit_decompose(&g).max_cycle_len();
    s.check(
        "exponential-cycle",
        "cooperative systems have periodic orbits longer than c^n",
        "n=10 p=2 c=1.5".into(),
        len == 252 && d_exact(10, 2)? == 252 && 252.0 > 1.5f64.powi(10) && is_cooperative(&g),
        format!("cycle length {len}, 1.5^10 = {:.2}", 1.5f64.powi(10)),
    );
    Ok(s.out)
}

fn boolean3() -> Result<Vec<CheckResult>> {
    let mut s = Suite::new("boolean3-exhaustive");
    let start = Instant::now();
    let (mut count, mut max_len, mut four) = (0usize, 0usize, 0usize);
    let mut sm_disagree = 0usize;
    let (mut irreducible, mut pi_fail, mut irr_long) = (0usize, Vec::new(), 0usize);
    let (mut sir_along, mut sir_long) = (0usize, 0usize);
    let (mut wir_sc_along, mut wir_long) = (0usize, 0usize);
    for g in CooperativeBooleanSystems::new(3)? {
        count += 1;
        let dec = orbit_decompose(&g);
        max_len = max_len.max(dec.max_cycle_len());
        four += dec.cycle_lengths().iter().filter(|&&l| l == 4).count();
        let sc = strong_cooperativity(&g);
        sm_disagree += !sc.conditions_agree() as usize;
        let ir = classify_irreducibility(&g);
        if ir.irreducible {
            irreducible += 1;
            match extract_cyclic_pi(&g) {
                Ok(pi) if pi.is_cyclic() && make_g_pi(g.space(), &pi)? == g => {}
                Ok(pi) => pi_fail.push(format!("{:?} -> {pi}", g.table())),
                Err(e) => pi_fail.push(format!("{:?}: {e}", g.table())),
            }
            irr_long += (dec.max_cycle_len() > 3) as usize;
        }
        for a in &ir.along {
            if a.strongly_irreducible {
                sir_along += 1;
                sir_long += (a.cycle.len() > 3) as usize;
            }
            if sc.strongly_cooperative() && a.weakly_irreducible {
                wir_sc_along += 1;
                wir_long += (a.cycle.len() > 3) as usize;
            }
        }
    }
    let params = "all cooperative maps on {0,1}^3".to_string();
    s.check(
        "no-four-cycle",
        "a 4-cycle does not embed into a cooperative Boolean 3-system",
        params.clone(),
        count == 8000 && max_len == 3 && four == 0,
        format!("{count} systems, max cycle {max_len}, 4-cycles {four}, {:.2}s", start.elapsed().as_secs_f64()),
    );
    s.check(
        "strong-cooperativity-conditions",
        "sum gap, strict monotonicity and level preservation are equivalent for cooperative maps",
        params.clone(),
        sm_disagree == 0,
        format!("{sm_disagree} disagreements"),
    );
    s.check(
        "irreducible-is-cyclic-permutation",
        "cooperative irreducible systems are g_pi for a cyclic pi",
        params.clone(),
        pi_fail.is_empty() && irr_long == 0,
        match pi_fail.first() {
            Some(f) => format!("{} failures, first {f}", pi_fail.len()),
            None => format!("{irreducible} irreducible systems, none with a cycle longer than 3"),
        },
    );
    s.check(
        "strongly-irreducible-along",
        "strong irreducibility along X bounds |X| by n in cooperative Boolean systems",
        params.clone(),
        sir_long == 0,
        format!("{sir_along} attractors checked, {sir_long} longer than 3"),
    );
    s.check(
        "weakly-irreducible-along",
        "weak irreducibility along X bounds |X| by n in strongly cooperative Boolean systems",
        params,
        wir_long == 0,
        format!("{wir_sc_along} attractors checked, {wir_long} longer than 3"),
    );
    Ok(s.out)
}

const RANDOM_SPACES: &[(usize, u32)] = &[(2, 3), (3, 3), (4, 2)];

fn sm_equivalence(opts: &SuiteOptions) -> Result<Vec<CheckResult>> {
    let mut s = Suite::new("sm-equivalence");
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for &(n, p) in RANDOM_SPACES {
        let space = StateSpace::uniform(n, p)?;
        let (mut bad, mut sc_count) = (0usize, 0usize);
        for k in 0..10_000 {
            // every fourth instance is strongly cooperative by construction
            let g = if k % 4 == 0 {
                random_strongly_cooperative(&space, 5, &mut rng)
            } else {
                let density = rng.gen_range(0.05..0.9);
                smale_extend(&random_cooperative_partial(&space, density, &mut rng))?
            };
            let c = strong_cooperativity(&g);
            bad += !(c.cooperative && c.conditions_agree()) as usize;
            sc_count += c.strongly_cooperative() as usize;
        }
        s.check(
            &format!("random-{n}-{p}"),
            "sum gap, strict monotonicity and level preservation are equivalent for cooperative maps",
            format!("n={n} p={p} instances=10000 seed={}", opts.seed),
            bad == 0,
            format!("{bad} disagreements, {sc_count} strongly cooperative"),
        );
    }
    Ok(s.out)
}

fn smale(opts: &SuiteOptions) -> Result<Vec<CheckResult>> {
    let mut s = Suite::new("smale");
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for (n, p) in [(3usize, 2u32), (4, 2), (2, 5), (3, 3)] {
        let space = StateSpace::uniform(n, p)?;
        let mut bad = Vec::new();
        for _ in 0..1000 {
            let density = rng.gen_range(0.02..0.8);
            let gamma = random_cooperative_partial(&space, density, &mut rng);
            let g = smale_extend(&gamma)?;
            if !is_cooperative(&g) {
                bad.push("not cooperative");
            }
            if gamma.iter().any(|(x, y)| g.table()[x] as usize != y) {
                bad.push("does not restrict to gamma");
            }
            if smale_extend_naive(&gamma)? != g {
                bad.push("differs from set-based evaluation");
            }
        }
        let mut hyper_bad = 0usize;
        for _ in 0..1000 {
            let r = rng.gen_range(0..=space.max_sum());
            let mut gamma = PartialMap::new(space.clone());
            for x in space.level_set(r) {
                gamma.insert_rank(x, rng.gen_range(0..space.size()))?;
            }
            hyper_bad += (hyperplane_smale(&gamma)? != smale_extend(&gamma)?) as usize;
        }
        s.check(
            &format!("extension-{n}-{p}"),
            "the Smale extension is cooperative and restricts to gamma",
            format!("n={n} p={p} instances=1000 seed={}", opts.seed),
            bad.is_empty(),
            bad.first().map_or("all instances hold".into(), |b| format!("{} failures, first: {b}", bad.len())),
        );
        s.check(
            &format!("hyperplane-{n}-{p}"),
            "on a full level set the extension is inf gamma(U(z)) / sup gamma(L(z))",
            format!("n={n} p={p} instances=1000 seed={}", opts.seed),
            hyper_bad == 0,
            format!("{hyper_bad} mismatches"),
        );
    }
    Ok(s.out)
}

/// All cyclic permutations of `0..n`: `0` followed by every ordering of `1..n`.
pub fn cyclic_permutations(n: usize) -> Vec<Permutation> {
    if n == 1 {
        return vec![Permutation::identity(1)];
    }
    let mut out = Vec::new();
    let mut rest: Vec<usize> = (1..n).collect();
    permute(&mut rest, 0, &mut |order| {
        let mut cycle = vec![0];
        cycle.extend_from_slice(order);
        out.push(Permutation::from_cycles(n, &[cycle]).unwrap());
    });
    out
}

fn permute(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, f);
        v.swap(k, i);
    }
}

fn cyclic_permutation() -> Result<Vec<CheckResult>> {
    let mut s = Suite::new("cyclic-permutation");
    for p in [2u32, 3] {
        let mut bad = Vec::new();
        let mut total = 0usize;
        for n in 1..=6usize {
            let space = StateSpace::uniform(n, p)?;
            for pi in cyclic_permutations(n) {
                total += 1;
                let g = make_g_pi(&space, &pi)?;
                match extract_cyclic_pi(&g) {
                    Ok(got) if got == pi => {}
                    Ok(got) => bad.push(format!("{pi} extracted as {got}")),
                    Err(e) => bad.push(format!("{pi}: {e}")),
                }
                if orbit_decompose(&g).max_cycle_len() > n {
                    bad.push(format!("{pi}: cycle longer than {n}"));
                }
            }
        }
        s.check(
            &format!("round-trip-p{p}"),
            "cooperative irreducible systems are g_pi for a cyclic pi",
            format!("all cyclic pi, 1 <= n <= 6, p={p}"),
            bad.is_empty(),
            bad.first().cloned().unwrap_or_else(|| format!("{total} permutations recovered")),
        );
    }
    Ok(s.out)
}

/// Maximum order over all permutations of `k` elements, by enumeration.
pub fn max_permutation_order(k: usize) -> u128 {
    let mut v: Vec<usize> = (0..k).collect();
    let mut best = 1;
    permute(&mut v, 0, &mut |perm| {
        best = best.max(Permutation::new(perm.to_vec()).unwrap().order());
    });
    best
}

fn landau(opts: &SuiteOptions) -> Result<Vec<CheckResult>> {
    let mut s = Suite::new("landau");
    for (k, want) in [(5usize, 6u128), (7, 12)] {
        let dp = landau_r(k as u32)?;
        let brute = max_permutation_order(k);
        s.check(
            &format!("R({k})"),
            "maximum order of a permutation of k elements",
            format!("k={k}"),
            dp == want && brute == want,
            format!("partition DP {dp}, permutation enumeration {brute}"),
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let (mut bad, mut longest) = (Vec::new(), (0usize, 0u32));
    for k in 0..1000 {
        let levels: Vec<u32> = loop {
            let n = rng.gen_range(1..=6);
            let l: Vec<u32> = (0..n).map(|_| rng.gen_range(2..=4)).collect();
            if l.iter().map(|p| p - 1).sum::<u32>() <= 12 {
                break l;
            }
        };
        let space = StateSpace::new(levels)?;
        let big_n = space.max_sum();
        let bound = landau_r(big_n)?;
        let len = if k % 2 == 0 {
            let base = make_g_pi(&space, &random_valid_permutation(&space, &mut rng))?;
            let lift = thermometer_lift(&base)?;
            orbit_decompose(&lift).max_cycle_len()
        } else {
            orbit_decompose(&random_strongly_cooperative(&space, 6, &mut rng)).max_cycle_len()
        };
        if len as u128 > bound {
            bad.push(format!("levels {:?}: cycle {len} > R({big_n}) = {bound}", space.levels()));
        }
        if len > longest.0 {
            longest = (len, big_n);
        }
    }
    s.check(
        "strongly-cooperative-orbits",
        "periodic orbits of strongly cooperative systems have length at most R(N)",
        format!("1000 systems, N <= 12, seed={}", opts.seed),
        bad.is_empty(),
        bad.first().cloned().unwrap_or_else(|| {
            format!("all hold; longest cycle {} at N = {}", longest.0, longest.1)
        }),
    );
    Ok(s.out)
}

fn examples(opts: &SuiteOptions) -> Result<Vec<CheckResult>> {
    let mut s = Suite::new("examples");
    let start = Instant::now();

    let g = make_almost_coop_2d();
    let table_ok = g.table() == [2, 0, 3, 1];
    s.check(
        "almost-cooperative-rotation",
        "g(x1,x2) = (1-x2, x1) is almost cooperative with a single 4-cycle",
        "n=2 p=2".into(),
        table_ok
            && almost_cooperative_pair(&g) == Some((1, 0))
            && orbit_decompose(&g).cycle_lengths() == [4],
        format!("table {:?}", g.table()),
    );

    let outcome = make_almostex(6).and_then(|g| {
        let r = classify_irreducibility(&g);
        let m = embedded_layer(6, 4, 1)?;
        Ok(is_cooperative(&g)
            && r.strongly_semi_irreducible
            && orbit_decompose(&g).find_cycle(&m).is_some()
            && m.len() == 20)
    });
    push_outcome(&mut s, "almostex", "cooperative strongly semi-irreducible 4-level system with a d(n,2) cycle", "n=6", outcome);

    let outcome = make_nopsirshortex(4).and_then(|g| {
        let m = embedded_layer(4, 6, 3)?;
        Ok(is_cooperative(&g) && m.len() == 6 && classify_along(&g, &m)?.strongly_irreducible)
    });
    push_outcome(&mut s, "nopsirshortex", "cooperative 6-level system strongly irreducible along a d(n,2) cycle", "n=4", outcome);

    let outcome = make_irlong(5).and_then(|g| {
        let d = middle_layer_ranks(g.space());
        Ok(d.len() == 10 && classify_along(&g, &d)?.irreducible)
    });
    push_outcome(&mut s, "irlong", "cooperative Boolean system irreducible along a d(n,2) cycle", "n=5", outcome);

    let seed = opts.seed;
    match make_germanex(12, seed, 1000) {
        Ok((g, rep)) => {
            let d = middle_layer_ranks(g.space());
            let along = classify_along(&g, &d)?;
            s.check(
                "germanex",
                "weakly irreducible along D but the Smale extension is not irreducible along D",
                format!("n=12 seed={seed} retries=1000"),
                rep.union_arcs == 132 && along.weakly_irreducible && !along.irreducible,
                format!(
                    "attempts {}, union arcs {}, disconnected G_a(s) at {} pairs",
                    rep.attempts, rep.union_arcs, rep.disconnected_pairs
                ),
            );
        }
        Err(e) => s.check(
            "germanex",
            "weakly irreducible along D but the Smale extension is not irreducible along D",
            format!("n=12 seed={seed} retries=1000"),
            false,
            e.to_string(),
        ),
    }
    if let Some(last) = s.out.last_mut() {
        last.detail.push_str(&format!("; suite time {:.2}s", start.elapsed().as_secs_f64()));
    }
    Ok(s.out)
}

fn push_outcome(s: &mut Suite, name: &str, reference: &'static str, params: &str, outcome: Result<bool>) {
    let (passed, detail) = match outcome {
        Ok(true) => (true, "all properties hold".to_string()),
        Ok(false) => (false, "a claimed property does not hold".to_string()),
        Err(e) => (false, e.to_string()),
    };
    s.check(name, reference, params.into(), passed, detail);
}

fn perturbation(opts: &SuiteOptions) -> Result<Vec<CheckResult>> {
    let mut s = Suite::new("perturbation");
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let spaces: Vec<StateSpace> = [vec![3, 3], vec![2, 2, 2, 2], vec![4, 3, 2], vec![5, 5], vec![3, 3, 3]]
        .into_iter()
        .map(StateSpace::new)
        .collect::<Result<_>>()?;
    let mut maps: Vec<TotalMap> = Vec::new();
    for space in &spaces {
        for _ in 0..20 {
            maps.push(random_strongly_cooperative(space, 6, &mut rng));
        }
    }
    let mut bad = 0usize;
    for _ in 0..10_000 {
        let g = &maps[rng.gen_range(0..maps.len())];
        let space = g.space();
        let x0 = space.unrank(rng.gen_range(0..space.size()))?;
        let y0 = space.unrank(rng.gen_range(0..space.size()))?;
        let t = rng.gen_range(1..=50);
        bad += !perturbation_contract(g, &x0, &y0, t)? as usize;
    }
    s.check(
        "non-expansion",
        "strongly cooperative maps do not increase S(|y - x|) along trajectories",
        format!("10000 triples over {} maps, seed={}", maps.len(), opts.seed),
        bad == 0,
        format!("{bad} violations"),
    );
    Ok(s.out)
}
