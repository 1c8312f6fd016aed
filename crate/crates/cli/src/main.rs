use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use coopdyn::antichain::{d_bounds_check, d_clt, d_exact, max_antichain_oracle, ratio_to_exact};
use coopdyn::constructions::{self as cons};
use coopdyn::embedding::embed_system;
use coopdyn::irreducibility::{classify_irreducibility, Permutation};
use coopdyn::mapfile::{parse_map_file, write_map_file, write_partial, write_total, MapFile};
use coopdyn::report::{analysis_report, AnalysisOptions, Report};
use coopdyn::smale::{approximation_error, discretize_map, smale_extend};
use coopdyn::verify::{render, run_suite, SuiteOptions};
use coopdyn::{Dynamics, Error, StateSpace, TotalMap};

#[derive(Parser)]
#[command(name = "coopdyn", version, about = "Cooperative finite dynamical systems toolkit")]
struct Cli {
    /// Suppress stdout reports; exit codes are unchanged.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a named construction and write it as a map file.
    Gen(GenArgs),
    /// Report orbits, cooperativity, irreducibility and cycle bounds of a total map.
    Analyze(AnalyzeArgs),
    /// Embed a total map into a larger uniform space.
    Embed {
        file: PathBuf,
        #[arg(long)]
        target_n: usize,
        #[arg(long)]
        target_p: u32,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Extend a cooperative partial map to a cooperative total map.
    Smale {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Round grid samples of a map on [0,1]^n to a total map on the grid.
    Discretize {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Middle-layer antichain size of {0..p-1}^n.
    Antichain(AntichainArgs),
    /// Run a named theorem-check suite.
    Verify {
        #[arg(long)]
        suite: String,
        /// State-count cap for the antichain oracle sweep.
        #[arg(long, default_value_t = 2048)]
        cap: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    CycleOnLayer,
    AlmostCoop2d,
    TernaryScCounterexample,
    Almostex,
    NopsirshortexPartial,
    Nopsirshortex,
    Irlong,
    Germanex,
    GPi,
    RandomStronglyCooperative,
    RandomCooperative,
}

#[derive(Args)]
struct GenArgs {
    #[arg(value_enum)]
    name: Construction,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<u32>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    retries: u64,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args)]
struct AnalyzeArgs {
    file: PathBuf,
    #[arg(long)]
    orbits: bool,
    #[arg(long)]
    coop: bool,
    #[arg(long)]
    irred: bool,
    #[arg(long)]
    bounds: bool,
    /// Also write the report to this file.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Write the union of weak influence graphs as a DOT digraph.
    #[arg(long)]
    dot: Option<PathBuf>,
    /// Write the union of weak influence graphs as a 1-based edge list.
    #[arg(long)]
    edges: Option<PathBuf>,
}

#[derive(Args)]
struct AntichainArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: u32,
    #[arg(long)]
    exact: bool,
    #[arg(long)]
    clt: bool,
    #[arg(long)]
    oracle: bool,
    #[arg(long)]
    bounds: bool,
    /// State-count cap for `--oracle`.
    #[arg(long, default_value_t = coopdyn::antichain::DEFAULT_ORACLE_CAP)]
    cap: usize,
}

/// Failure classes mapped onto exit codes.
enum Failure {
    /// A check ran and did not hold (exit 1).
    Check(String),
    /// Bad arguments, input files or preconditions (exit 2).
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let quiet = cli.quiet;
    match run(cli.cmd, quiet) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("coopdyn: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("coopdyn: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_map(path: &Path) -> Result<MapFile, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    parse_map_file(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit(quiet: bool, text: &str) {
    if !quiet {
        print!("{text}");
    }
}

fn require<T>(v: Option<T>, flag: &str, name: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("`{name}` needs {flag}")))
}

fn run(cmd: Command, quiet: bool) -> Outcome {
    match cmd {
        Command::Gen(a) => gen(a, quiet),
        Command::Analyze(a) => analyze(a, quiet),
        Command::Embed { file, target_n, target_p, output } => {
            let f = total(read_map(&file)?, "embed")?;
            let target = StateSpace::uniform(target_n, target_p)?;
            let (e, g) = embed_system(&f, &target)?;
            write_file(&output, &write_total(&g))?;
            let mut r = Report::new();
            r.push("source_states", e.source().size());
            r.push("target_states", e.target().size());
            r.push("output", output.display());
            emit(quiet, &r.to_string());
            Ok(())
        }
        Command::Smale { file, output } => {
            let gamma = match read_map(&file)? {
                MapFile::Partial(p) => p,
                MapFile::Total(t) => coopdyn::smale::PartialMap::restriction(
                    &t,
                    &(0..t.space().size()).collect::<Vec<_>>(),
                )?,
                MapFile::Samples(_) => {
                    return Err(Failure::Usage("`smale` needs a total or partial map file".into()))
                }
            };
            let g = smale_extend(&gamma)?;
            write_file(&output, &write_total(&g))?;
            let mut r = Report::new();
            r.push("domain_states", gamma.len());
            r.push("states", g.space().size());
            r.push("output", output.display());
            emit(quiet, &r.to_string());
            Ok(())
        }
        Command::Discretize { file, output } => {
            let MapFile::Samples(s) = read_map(&file)? else {
                return Err(Failure::Usage("`discretize` needs a samples map file".into()));
            };
            let g = discretize_map(&s)?;
            write_file(&output, &write_total(&g))?;
            let mut r = Report::new();
            r.push("states", g.space().size());
            r.push("max_rounding_error", approximation_error(&s, &g)?);
            r.push("output", output.display());
            emit(quiet, &r.to_string());
            Ok(())
        }
        Command::Antichain(a) => antichain(a, quiet),
        Command::Verify { suite, cap, seed } => {
            let results = run_suite(&suite, &SuiteOptions { cap, seed })?;
            emit(quiet, &render(&results));
            let failed = results.iter().filter(|r| !r.passed).count();
            if failed > 0 {
                return Err(Failure::Check(format!("{failed} check(s) failed")));
            }
            Ok(())
        }
    }
}

fn total(m: MapFile, cmd: &str) -> Result<TotalMap, Failure> {
    match m {
        MapFile::Total(t) => Ok(t),
        other => Err(Failure::Usage(format!("`{cmd}` needs a total map file, found kind {}", other.kind()))),
    }
}

fn gen(a: GenArgs, quiet: bool) -> Outcome {
    use Construction::*;
    let name = "gen";
    let mut r = Report::new();
    let text = match a.name {
        CycleOnLayer => write_total(&cons::make_cycle_on_layer(
            require(a.n, "--n", name)?,
            require(a.p, "--p", name)?,
        )?),
        AlmostCoop2d => write_total(&cons::make_almost_coop_2d()),
        TernaryScCounterexample => write_total(&cons::make_ternary_sc_counterexample()),
        Almostex => write_total(&cons::make_almostex(require(a.n, "--n", name)?)?),
        NopsirshortexPartial => write_partial(&cons::nopsirshortex_partial(require(a.n, "--n", name)?)?),
        Nopsirshortex => write_total(&cons::make_nopsirshortex(require(a.n, "--n", name)?)?),
        Irlong => write_total(&cons::make_irlong(require(a.n, "--n", name)?)?),
        Germanex => {
            let (g, rep) = cons::make_germanex(require(a.n, "--n", name)?, a.seed, a.retries)?;
            r.push("attempts", rep.attempts);
            r.push("union_arcs", rep.union_arcs);
            r.push("disconnected_pairs", rep.disconnected_pairs);
            write_total(&g)
        }
        GPi => {
            let n = require(a.n, "--n", name)?;
            let space = StateSpace::uniform(n, a.p.unwrap_or(2))?;
            write_total(&cons::make_g_pi(&space, &Permutation::cyclic(n))?)
        }
        RandomStronglyCooperative | RandomCooperative => {
            let space = StateSpace::uniform(require(a.n, "--n", name)?, require(a.p, "--p", name)?)?;
            let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
            let g = if matches!(a.name, RandomCooperative) {
                cons::random_cooperative(&space, 0.3, &mut rng)
            } else {
                cons::random_strongly_cooperative(&space, 8, &mut rng)
            };
            write_map_file(&MapFile::Total(g))
        }
    };
    write_file(&a.output, &text)?;
    r.push("output", a.output.display());
    emit(quiet, &r.to_string());
    Ok(())
}

fn analyze(a: AnalyzeArgs, quiet: bool) -> Outcome {
    let m = total(read_map(&a.file)?, "analyze")?;
    let any = a.orbits || a.coop || a.irred || a.bounds;
    let mut opts = if any { AnalysisOptions::default() } else { AnalysisOptions::all() };
    if any {
        opts.orbits = a.orbits;
        opts.coop = a.coop;
        opts.irred = a.irred;
        opts.bounds = a.bounds;
        opts.list_limit = AnalysisOptions::all().list_limit;
    }
    let r = analysis_report(&m, opts)?.to_string();
    if let Some(path) = &a.report {
        write_file(path, &r)?;
    }
    if a.dot.is_some() || a.edges.is_some() {
        let ir = classify_irreducibility(&m);
        if let Some(path) = &a.dot {
            write_file(path, &ir.union_weak.to_dot("influence"))?;
        }
        if let Some(path) = &a.edges {
            write_file(path, &ir.union_weak.edge_list())?;
        }
    }
    emit(quiet, &r);
    Ok(())
}

fn antichain(a: AntichainArgs, quiet: bool) -> Outcome {
    let all = !(a.exact || a.clt || a.oracle || a.bounds);
    let mut r = Report::new();
    r.push("n", a.n).push("p", a.p);
    let mut failed = false;
    if all || a.exact {
        r.push("d_exact", d_exact(a.n, a.p)?);
    }
    if all || a.clt {
        r.push("d_clt", format!("{:.2}", d_clt(a.n, a.p)));
        r.push("clt_ratio", format!("{:.6}", ratio_to_exact(a.n, a.p)?));
    }
    if a.oracle {
        let space = StateSpace::uniform(a.n, a.p)?;
        let w = max_antichain_oracle(&space, a.cap)?;
        let d = d_exact(a.n, a.p)?;
        r.push("oracle_width", w);
        r.push("oracle_agrees", w as u128 == d);
        failed |= w as u128 != d;
    }
    if all || a.bounds {
        let b = d_bounds_check(a.n, a.p, None)?;
        r.push("bound.lower_holds", b.lower_holds);
        if let Some((d_next, ok)) = b.upper {
            r.push("bound.d_next", d_next);
            r.push("bound.upper_holds", ok);
        }
        failed |= !b.all_hold();
    }
    emit(quiet, &r.to_string());
    if failed {
        return Err(Failure::Check("antichain check failed".into()));
    }
    Ok(())
}
