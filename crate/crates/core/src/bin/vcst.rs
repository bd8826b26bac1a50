use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use vcst_core::cds::{RootPolicy, SetCoverBackend};
use vcst_core::harness::bench::{append_rows, bench, with_workers, BenchRow};
use vcst_core::harness::generate::{generate, Family, GenerateParams};
use vcst_core::harness::io::InstanceFile;
use vcst_core::harness::solve::{certificate_summary, solve_instance, Algorithm, SolveOptions};
use vcst_core::harness::verify::{run_named, run_suite, CheckResult, Suite};
use vcst_core::harness::{exit_status, EXIT_INTERNAL, EXIT_OK};
use vcst_core::{Error, Result};

#[derive(Parser)]
#[command(
    name = "vcst",
    version,
    about = "VC-weighted Steiner tree solvers, generators and checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a random instance as JSON.
    Generate(GenerateArgs),
    /// Solve one instance and print the solution JSON.
    Solve(SolveArgs),
    /// Run the property suites; exits 4 if any check fails.
    Verify(VerifyArgs),
    /// Solve many instances in parallel and append CSV rows.
    Bench(BenchArgs),
}

#[derive(Args)]
struct GenerateArgs {
    /// random-udg, random-planar, grid-gadget or setcover-gadget.
    #[arg(long, default_value = "random-udg")]
    family: Family,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of instances; seeds run from --seed upward.
    #[arg(long, default_value_t = 1)]
    count: u64,
    #[arg(long)]
    n: Option<usize>,
    /// Side of the square the unit disk points are drawn from.
    #[arg(long = "box")]
    side: Option<f64>,
    /// Integer weights drawn from 1..=max; 1 gives unit weights.
    #[arg(long)]
    max_weight: Option<i64>,
    #[arg(long)]
    terminals: Option<usize>,
    /// Redraw unit disk graphs until connected.
    #[arg(long)]
    connected: bool,
    /// Emit a connected-domination instance with edge lengths.
    #[arg(long)]
    cds: bool,
    #[arg(long)]
    width: Option<usize>,
    #[arg(long)]
    height: Option<usize>,
    #[arg(long)]
    universe: Option<usize>,
    #[arg(long)]
    sets: Option<usize>,
    /// Output file (single instance) or directory (with --count); stdout otherwise.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct AlgoArgs {
    /// Set-cover backend for the rounding algorithms: exact, greedy or auto.
    #[arg(long, default_value = "auto")]
    backend: SetCoverBackend,
    /// Round from every root and keep the best.
    #[arg(long)]
    all_roots: bool,
    /// Restrict the roots on large graphs.
    #[arg(long)]
    restricted_roots: bool,
    /// Also compute the exact optimum when the instance is small enough.
    #[arg(long)]
    opt: bool,
}

impl AlgoArgs {
    fn options(&self, algorithm: Algorithm) -> SolveOptions {
        let mut o = SolveOptions::new(algorithm);
        o.backend = self.backend;
        o.all_roots = self.all_roots;
        o.root_policy = if self.restricted_roots {
            RootPolicy::Restricted
        } else {
            RootPolicy::All
        };
        o.compute_opt = self.opt;
        o
    }
}

#[derive(Args)]
struct SolveArgs {
    instance: PathBuf,
    /// exact, cds-lp, cds-spanning, pd-planar or activation-exact.
    #[arg(long, default_value = "exact")]
    algorithm: Algorithm,
    #[command(flatten)]
    algo: AlgoArgs,
    /// Write the flow relaxation of the chosen root in LP format.
    #[arg(long)]
    export_lp: Option<PathBuf>,
    /// Write the primal-dual event trace as JSON.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Append a CSV row for this run.
    #[arg(long)]
    bench: Option<PathBuf>,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suites to run (repeatable); all when omitted.
    #[arg(long)]
    suite: Vec<Suite>,
    /// Run a single check by name.
    #[arg(long, conflicts_with = "suite")]
    check: Option<String>,
    /// Print results as JSON lines.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(required = true)]
    instances: Vec<PathBuf>,
    /// Algorithms to run (repeatable).
    #[arg(long, default_value = "exact")]
    algorithm: Vec<Algorithm>,
    #[command(flatten)]
    algo: AlgoArgs,
    /// CSV file the rows are appended to.
    #[arg(long)]
    bench: PathBuf,
}

fn write_out(path: Option<&PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run_generate(a: GenerateArgs) -> Result<i32> {
    let params = GenerateParams {
        n: a.n,
        side: a.side,
        max_weight: a.max_weight,
        terminals: a.terminals,
        connected: a.connected,
        cds: a.cds,
        width: a.width,
        height: a.height,
        universe: a.universe,
        sets: a.sets,
    };
    if a.count == 1 {
        write_out(
            a.out.as_ref(),
            &generate(a.family, &params, a.seed)?.to_json(),
        )?;
        return Ok(EXIT_OK);
    }
    let dir = a
        .out
        .ok_or_else(|| Error::Domain("--count above 1 needs --out DIR".into()))?;
    std::fs::create_dir_all(&dir).map_err(|e| Error::Parse(format!("{}: {e}", dir.display())))?;
    for seed in a.seed..a.seed + a.count {
        let file = generate(a.family, &params, seed)?;
        file.save(&dir.join(format!("{}-{seed}.json", a.family.name())))?;
    }
    Ok(EXIT_OK)
}

fn run_solve(a: SolveArgs) -> Result<i32> {
    let file = InstanceFile::load(&a.instance)?;
    let mut opts = a.algo.options(a.algorithm);
    opts.export_lp = a.export_lp;
    opts.trace = a.trace;
    let outcome = with_workers(|| solve_instance(&file, &opts))??;
    if let Some(csv) = &a.bench {
        let id = a
            .instance
            .file_stem()
            .map_or_else(String::new, |s| s.to_string_lossy().into_owned());
        append_rows(csv, &[BenchRow::new(&id, &file, &outcome)])?;
    }
    eprintln!(
        "objective {}{} in {:.1} ms; {}",
        outcome.solution.objective,
        outcome
            .opt
            .map_or_else(String::new, |o| format!(" (optimum {o})")),
        outcome.wall_ms,
        certificate_summary(&outcome.solution.certificates)
    );
    write_out(a.out.as_ref(), &outcome.solution.to_json())?;
    let failed = outcome.solution.certificates.values().any(|&ok| !ok);
    Ok(if failed { EXIT_INTERNAL } else { EXIT_OK })
}

fn run_verify(a: VerifyArgs) -> Result<i32> {
    let results: Vec<CheckResult> = if let Some(name) = &a.check {
        vec![run_named(name).ok_or_else(|| Error::Parse(format!("unknown check {name:?}")))?]
    } else {
        let suites = if a.suite.is_empty() {
            Suite::ALL.to_vec()
        } else {
            a.suite.clone()
        };
        with_workers(|| suites.into_iter().flat_map(run_suite).collect())?
    };
    for r in &results {
        if a.json {
            println!(
                "{}",
                serde_json::to_string(r).expect("check results serialize")
            );
        } else {
            println!("{r}");
        }
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    eprintln!("{} checks, {failed} failed", results.len());
    Ok(if failed > 0 { EXIT_INTERNAL } else { EXIT_OK })
}

fn run_bench(a: BenchArgs) -> Result<i32> {
    let options: Vec<SolveOptions> = a.algorithm.iter().map(|&alg| a.algo.options(alg)).collect();
    let runs = bench(&a.instances, &options)?;
    let mut rows = Vec::new();
    let mut errors = 0;
    for (path, algorithm, row) in runs {
        match row {
            Ok(row) => rows.push(row),
            Err(e) => {
                errors += 1;
                eprintln!("{} [{algorithm}]: {e}", path.display());
            }
        }
    }
    append_rows(&a.bench, &rows)?;
    eprintln!(
        "{} rows written to {}, {errors} runs failed",
        rows.len(),
        a.bench.display()
    );
    Ok(EXIT_OK)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(a) => run_generate(a),
        Command::Solve(a) => run_solve(a),
        Command::Verify(a) => run_verify(a),
        Command::Bench(a) => run_bench(a),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            let (code, reason) = exit_status(&e);
            eprintln!("error ({reason}): {e}");
            ExitCode::from(code as u8)
        }
    }
}
