//! `lvqueens` — solve single boards, run seeded benchmark campaigns, and
//! inspect the resulting raw trial files.
//!
//! Exit codes: 0 success, 1 usage error, 2 solver or data error, 3 I/O
//! error.

use std::fmt::Display;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use lvqueens_core::board::{BoardSize, Solution};
use lvqueens_core::bt::solve_backtracking;
use lvqueens_core::lv::las_vegas;
use lvqueens_core::stats::{best_fit, describe, FitParams};

use lvqueens_cli::emit::read_raw_attempts;
use lvqueens_cli::harness::{
    run_campaign, ExperimentConfig, DEFAULT_BIN_COUNT, DEFAULT_MASTER_SEED,
    DEFAULT_SKIP_BT_ABOVE, DEFAULT_TRIALS_PER_N,
};

const SEED_ENV_VAR: &str = "LVQUEENS_SEED";

#[derive(Parser)]
#[command(
    name = "lvqueens",
    version,
    about = "N-queens solvers and runtime-distribution benchmarks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one board and print it with run metrics
    Solve {
        /// Board side length
        #[arg(long)]
        n: usize,
        /// Which solver to run
        #[arg(long, value_enum, default_value_t = Algo::Lv)]
        algo: Algo,
        /// RNG seed for the randomized solver (default: LVQUEENS_SEED, then 42)
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run a seeded trial campaign and write CSV/JSON reports
    Bench {
        /// Smallest board size, inclusive
        #[arg(long)]
        n_min: u32,
        /// Largest board size, inclusive
        #[arg(long)]
        n_max: u32,
        /// Trials per board size
        #[arg(long, default_value_t = DEFAULT_TRIALS_PER_N)]
        trials: u64,
        /// Master seed (default: LVQUEENS_SEED, then 42)
        #[arg(long)]
        seed: Option<u64>,
        /// Output directory (created if missing)
        #[arg(long)]
        out: PathBuf,
        /// Worker threads (default: one per core)
        #[arg(long)]
        jobs: Option<usize>,
        /// Abort a trial after this many placements
        #[arg(long)]
        budget: Option<u64>,
        /// Skip the backtracking baseline for sizes above this
        #[arg(long, default_value_t = DEFAULT_SKIP_BT_ABOVE)]
        skip_backtracking_above: u32,
        /// Histogram bins per board size
        #[arg(long, default_value_t = DEFAULT_BIN_COUNT)]
        bins: usize,
        /// Overwrite existing output files
        #[arg(long)]
        force: bool,
    },
    /// Describe the attempts distribution of a raw trial CSV
    Stats {
        /// Raw per-trial CSV written by `bench`
        #[arg(long)]
        input: PathBuf,
    },
    /// Fit candidate distributions to the attempts of a raw trial CSV
    Fit {
        /// Raw per-trial CSV written by `bench`
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Algo {
    /// Randomized solver with pruned uniform sampling
    Lv,
    /// Deterministic backtracking baseline
    Bt,
}

struct CliFailure {
    code: u8,
    message: String,
}

type CliResult<T> = Result<T, CliFailure>;

fn usage<M: Display>(message: M) -> CliFailure {
    CliFailure {
        code: 1,
        message: message.to_string(),
    }
}

fn domain<M: Display>(message: M) -> CliFailure {
    CliFailure {
        code: 2,
        message: message.to_string(),
    }
}

fn main() -> ExitCode {
    // Rust ignores SIGPIPE by default, which turns a downstream reader
    // closing early (`lvqueens ... | head`) into a println! panic. Restore
    // the default disposition so the process dies quietly like any filter.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap exits with 2 by convention, but this tool reserves 2 for
            // solver errors; usage problems are 1.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(command: Command) -> CliResult<()> {
    match command {
        Command::Solve { n, algo, seed } => cmd_solve(n, algo, seed),
        Command::Bench {
            n_min,
            n_max,
            trials,
            seed,
            out,
            jobs,
            budget,
            skip_backtracking_above,
            bins,
            force,
        } => cmd_bench(BenchArgs {
            n_min,
            n_max,
            trials,
            seed,
            out,
            jobs,
            budget,
            skip_backtracking_above,
            bins,
            force,
        }),
        Command::Stats { input } => cmd_stats(&input),
        Command::Fit { input } => cmd_fit(&input),
    }
}

/// Seed precedence: explicit flag, then the environment, then the default.
fn resolve_master_seed(flag: Option<u64>) -> CliResult<u64> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match std::env::var(SEED_ENV_VAR) {
        Ok(value) => value.trim().parse::<u64>().map_err(|_| {
            usage(format!(
                "{SEED_ENV_VAR} must be a non-negative integer, got '{value}'"
            ))
        }),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_MASTER_SEED),
        Err(std::env::VarError::NotUnicode(_)) => {
            Err(usage(format!("{SEED_ENV_VAR} is not valid unicode")))
        }
    }
}

fn render(solution: &Solution) -> String {
    let n = solution.n();
    let mut grid = vec![vec!['.'; n]; n];
    for q in solution.queens() {
        grid[q.row][q.col] = 'Q';
    }
    let mut out = String::new();
    for row in grid {
        let line: Vec<String> = row.into_iter().map(String::from).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

fn cmd_solve(n: usize, algo: Algo, seed: Option<u64>) -> CliResult<()> {
    let size = BoardSize::new(n).map_err(domain)?;
    match algo {
        Algo::Lv => {
            let seed = resolve_master_seed(seed)?;
            let out = las_vegas(size, seed).map_err(domain)?;
            print!("{}", render(&out.solution));
            println!("n: {n}");
            println!("algo: lv");
            println!("seed: {seed}");
            println!("attempts: {}", out.attempts);
            println!("restarts: {}", out.restarts);
            println!("duration_ns: {}", out.duration.as_nanos());
        }
        Algo::Bt => {
            let out = solve_backtracking(size).map_err(domain)?;
            print!("{}", render(&out.solution));
            println!("n: {n}");
            println!("algo: bt");
            println!("candidate_tests: {}", out.candidate_tests);
            println!("duration_ns: {}", out.duration.as_nanos());
        }
    }
    Ok(())
}

struct BenchArgs {
    n_min: u32,
    n_max: u32,
    trials: u64,
    seed: Option<u64>,
    out: PathBuf,
    jobs: Option<usize>,
    budget: Option<u64>,
    skip_backtracking_above: u32,
    bins: usize,
    force: bool,
}

fn cmd_bench(args: BenchArgs) -> CliResult<()> {
    if args.n_min > args.n_max {
        return Err(usage(format!(
            "--n-min {} exceeds --n-max {}",
            args.n_min, args.n_max
        )));
    }
    let config = ExperimentConfig {
        n_values: (args.n_min..=args.n_max).collect(),
        trials_per_n: args.trials,
        master_seed: resolve_master_seed(args.seed)?,
        attempts_budget: args.budget,
        bin_count: args.bins,
        skip_backtracking_above: args.skip_backtracking_above,
        parallelism: args.jobs,
        output_dir: args.out,
        overwrite: args.force,
    };
    let report = run_campaign(&config).map_err(|e| CliFailure {
        code: e.exit_code(),
        message: e.to_string(),
    })?;
    for warning in &report.warnings {
        eprintln!("warning: {warning}");
    }
    for p in &report.per_n {
        println!("n={}: {} ok, {} exhausted", p.n, p.ok, p.exhausted);
    }
    println!("output: {}", report.output_dir.display());
    Ok(())
}

fn cmd_stats(input: &PathBuf) -> CliResult<()> {
    let attempts = read_raw_attempts(input).map_err(|e| CliFailure {
        code: e.exit_code(),
        message: e.to_string(),
    })?;
    let stats = describe(&attempts).map_err(domain)?;
    println!("samples: {}", stats.count);
    println!("mean: {}", stats.mean);
    println!("median: {}", stats.median);
    println!("mode: {}", stats.mode);
    println!("skewness: {}", stats.skewness);
    println!("kurtosis: {}", stats.kurtosis);
    println!("lower: {}", stats.lower);
    println!("upper: {}", stats.upper);
    println!("min: {}", stats.min);
    println!("max: {}", stats.max);
    Ok(())
}

fn params_str(params: &FitParams) -> String {
    match *params {
        FitParams::Gamma { shape, scale }
        | FitParams::WeibullMin { shape, scale }
        | FitParams::Pareto { shape, scale } => format!("shape={shape}, scale={scale}"),
        FitParams::Exponential { scale } => format!("scale={scale}"),
    }
}

fn cmd_fit(input: &PathBuf) -> CliResult<()> {
    let attempts = read_raw_attempts(input).map_err(|e| CliFailure {
        code: e.exit_code(),
        message: e.to_string(),
    })?;
    let floats: Vec<f64> = attempts.iter().map(|&a| a as f64).collect();
    let best = best_fit(&floats).map_err(domain)?;
    println!("samples: {}", floats.len());
    for fit in &best.candidates {
        println!(
            "{}: {}, log_likelihood={}, ks={}",
            fit.family,
            params_str(&fit.params),
            fit.log_likelihood,
            fit.ks
        );
    }
    for (family, err) in &best.failures {
        println!("{family}: fit failed: {err}");
    }
    println!("best: {} (ks={})", best.winner.family, best.winner.ks);
    Ok(())
}
