//! Seeded trial campaigns: run the randomized solver many times per board
//! size, summarize the attempt distribution, and compare against the
//! backtracking baseline.

use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use lvqueens_core::board::{BoardError, BoardSize};
use lvqueens_core::bt::{solve_backtracking, BtError};
use lvqueens_core::lv::{las_vegas_budgeted, LvError};
use lvqueens_core::stats::{
    best_fit, describe, histogram, StatsError, MIN_FIT_SAMPLES,
};

use crate::emit::{self, EmitError};
use crate::seeding::trial_seed;

pub const DEFAULT_MASTER_SEED: u64 = 42;
pub const DEFAULT_TRIALS_PER_N: u64 = 1000;
pub const DEFAULT_BIN_COUNT: usize = 50;
/// Backtracking cost explodes combinatorially; sizes above this default are
/// benchmarked without the baseline column.
pub const DEFAULT_SKIP_BT_ABOVE: u32 = 24;

/// Errors from campaign configuration and execution.
#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("at least one board size is required")]
    NoSizes,
    #[error("trials per size must be at least 1")]
    NoTrials,
    #[error("histogram bin count must be at least 1")]
    BadBinCount,
    #[error("jobs must be at least 1")]
    BadJobs,
    #[error(transparent)]
    Board(#[from] BoardError),
    #[error(transparent)]
    Solver(#[from] LvError),
    #[error(transparent)]
    Baseline(#[from] BtError),
    #[error(transparent)]
    Stats(#[from] StatsError),
    #[error(transparent)]
    Emit(#[from] EmitError),
    #[error("could not build the worker pool: {0}")]
    ThreadPool(String),
    #[error("mean attempts must be positive to compute a speedup")]
    ZeroMean,
}

impl HarnessError {
    /// Process exit code class: 1 usage, 2 solver/data, 3 I/O.
    pub fn exit_code(&self) -> u8 {
        match self {
            HarnessError::NoSizes
            | HarnessError::NoTrials
            | HarnessError::BadBinCount
            | HarnessError::BadJobs => 1,
            HarnessError::Emit(e) => e.exit_code(),
            HarnessError::Board(_)
            | HarnessError::Solver(_)
            | HarnessError::Baseline(_)
            | HarnessError::Stats(_)
            | HarnessError::ThreadPool(_)
            | HarnessError::ZeroMean => 2,
        }
    }
}

/// Full description of a campaign; everything that affects the output files
/// is in here (and `parallelism` deliberately does not affect them).
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub n_values: Vec<u32>,
    pub trials_per_n: u64,
    pub master_seed: u64,
    /// Abort a trial once it has spent this many placements.
    pub attempts_budget: Option<u64>,
    pub bin_count: usize,
    /// Skip the backtracking baseline for sizes above this.
    pub skip_backtracking_above: u32,
    /// Worker threads; `None` uses the global default pool.
    pub parallelism: Option<usize>,
    pub output_dir: PathBuf,
    /// Overwrite existing output files instead of refusing.
    pub overwrite: bool,
}

impl ExperimentConfig {
    /// Campaign over `n_values` writing to `output_dir`, with the default
    /// trial count, seed, binning, and baseline cutoff.
    pub fn new(n_values: Vec<u32>, output_dir: PathBuf) -> Self {
        ExperimentConfig {
            n_values,
            trials_per_n: DEFAULT_TRIALS_PER_N,
            master_seed: DEFAULT_MASTER_SEED,
            attempts_budget: None,
            bin_count: DEFAULT_BIN_COUNT,
            skip_backtracking_above: DEFAULT_SKIP_BT_ABOVE,
            parallelism: None,
            output_dir,
            overwrite: false,
        }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.n_values.is_empty() {
            return Err(HarnessError::NoSizes);
        }
        if self.trials_per_n == 0 {
            return Err(HarnessError::NoTrials);
        }
        if self.bin_count == 0 {
            return Err(HarnessError::BadBinCount);
        }
        if self.parallelism == Some(0) {
            return Err(HarnessError::BadJobs);
        }
        for &n in &self.n_values {
            let size = BoardSize::new(n as usize)?;
            if size.n() == 2 || size.n() == 3 {
                return Err(HarnessError::Solver(LvError::Unsolvable { n: size.n() }));
            }
        }
        Ok(())
    }
}

/// Whether a trial found a solution or hit the attempt budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrialStatus {
    Ok,
    Exhausted,
}

impl std::fmt::Display for TrialStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            TrialStatus::Ok => "ok",
            TrialStatus::Exhausted => "exhausted",
        })
    }
}

/// One row of a raw per-trial CSV.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialRecord {
    pub n: u32,
    pub trial: u64,
    pub seed: u64,
    pub attempts: u64,
    pub restarts: u64,
    pub status: TrialStatus,
}

/// One row of the summary table, in its column order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub n: u32,
    pub mean: f64,
    pub median: f64,
    pub mode: u64,
    pub skew: f64,
    pub kurtosis: f64,
    pub lower: f64,
    pub upper: f64,
    /// Winning distribution family name, when a fit was possible.
    pub distribution: Option<String>,
    /// Backtracking candidate tests, when the baseline ran.
    pub back_attempts: Option<u64>,
    /// `back_attempts / mean`, when both halves exist.
    pub speedup: Option<f64>,
}

/// Trial accounting for one board size, recorded in the manifest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerNReport {
    pub n: u32,
    pub requested: u64,
    pub ok: u64,
    pub exhausted: u64,
}

/// Campaign manifest: the configuration that produced a directory of
/// outputs plus per-size trial accounting.
///
/// Worker count and output path are excluded on purpose — two runs of the
/// same configuration must produce identical bytes no matter where or how
/// parallel they ran.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub artifact: String,
    pub version: String,
    pub master_seed: u64,
    pub trials_per_n: u64,
    pub n_values: Vec<u32>,
    pub attempts_budget: Option<u64>,
    pub bin_count: usize,
    pub skip_backtracking_above: u32,
    pub per_n: Vec<PerNReport>,
}

impl Manifest {
    fn new(config: &ExperimentConfig, per_n: Vec<PerNReport>) -> Self {
        Manifest {
            artifact: "lvqueens".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            master_seed: config.master_seed,
            trials_per_n: config.trials_per_n,
            n_values: config.n_values.clone(),
            attempts_budget: config.attempts_budget,
            bin_count: config.bin_count,
            skip_backtracking_above: config.skip_backtracking_above,
            per_n,
        }
    }
}

/// What a finished campaign produced.
#[derive(Debug, Clone)]
pub struct CampaignReport {
    pub output_dir: PathBuf,
    pub rows: Vec<SummaryRow>,
    pub per_n: Vec<PerNReport>,
    /// Human-readable notes about skipped or partial pieces (exhausted
    /// trials, unfittable samples); never fatal.
    pub warnings: Vec<String>,
}

/// Runs all trials for one board size, in trial-index order.
///
/// Each trial is seeded by [`trial_seed`], so results depend only on
/// (master seed, n, trial index) — never on thread scheduling. Budget
/// exhaustion is recorded per trial, not raised as an error.
pub fn run_trials(n: u32, config: &ExperimentConfig) -> Result<Vec<TrialRecord>, HarnessError> {
    let size = BoardSize::new(n as usize)?;
    let results: Vec<Result<TrialRecord, HarnessError>> = (0..config.trials_per_n)
        .into_par_iter()
        .map(|trial| {
            let seed = trial_seed(config.master_seed, n, trial);
            match las_vegas_budgeted(size, seed, config.attempts_budget) {
                Ok(out) => Ok(TrialRecord {
                    n,
                    trial,
                    seed,
                    attempts: out.attempts,
                    restarts: out.restarts,
                    status: TrialStatus::Ok,
                }),
                Err(LvError::BudgetExhausted {
                    attempts, restarts, ..
                }) => Ok(TrialRecord {
                    n,
                    trial,
                    seed,
                    attempts,
                    restarts,
                    status: TrialStatus::Exhausted,
                }),
                Err(other) => Err(HarnessError::Solver(other)),
            }
        })
        .collect();
    results.into_iter().collect()
}

/// Ratio of backtracking candidate tests to mean randomized attempts.
pub fn compute_speedup(back_attempts: u64, lv_mean: f64) -> Result<f64, HarnessError> {
    if !lv_mean.is_finite() || lv_mean <= 0.0 {
        return Err(HarnessError::ZeroMean);
    }
    Ok(back_attempts as f64 / lv_mean)
}

/// Runs the whole campaign: per size, raw trials, histogram, summary row;
/// then the summary table and manifest.
///
/// If a size fails partway through, the manifest is still written with the
/// sizes that finished, then the error is returned.
pub fn run_campaign(config: &ExperimentConfig) -> Result<CampaignReport, HarnessError> {
    config.validate()?;
    std::fs::create_dir_all(&config.output_dir).map_err(|e| EmitError::io(&config.output_dir, e))?;

    match config.parallelism {
        None => campaign_inner(config),
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| HarnessError::ThreadPool(e.to_string()))?
            .install(|| campaign_inner(config)),
    }
}

fn campaign_inner(config: &ExperimentConfig) -> Result<CampaignReport, HarnessError> {
    let mut rows: Vec<SummaryRow> = Vec::new();
    let mut per_n: Vec<PerNReport> = Vec::new();
    let mut warnings: Vec<String> = Vec::new();

    let result = (|| -> Result<(), HarnessError> {
        for &n in &config.n_values {
            let records = run_trials(n, config)?;
            emit::write_raw_csv(&emit::raw_csv_path(&config.output_dir, n), &records, config.overwrite)?;

            let ok_attempts: Vec<u64> = records
                .iter()
                .filter(|r| r.status == TrialStatus::Ok)
                .map(|r| r.attempts)
                .collect();
            let exhausted = records.len() as u64 - ok_attempts.len() as u64;
            if exhausted > 0 {
                warnings.push(format!(
                    "n={n}: {exhausted} of {} trials exhausted the attempt budget",
                    records.len()
                ));
            }
            per_n.push(PerNReport {
                n,
                requested: config.trials_per_n,
                ok: ok_attempts.len() as u64,
                exhausted,
            });

            if ok_attempts.is_empty() {
                warnings.push(format!("n={n}: no successful trials; skipping histogram and summary"));
                continue;
            }

            let hist = histogram(&ok_attempts, config.bin_count)?;
            emit::write_hist_csv(&emit::hist_csv_path(&config.output_dir, n), &hist, config.overwrite)?;

            let stats = match describe(&ok_attempts) {
                Ok(stats) => stats,
                Err(e) => {
                    warnings.push(format!("n={n}: {e}; skipping summary row"));
                    continue;
                }
            };

            let distribution = if ok_attempts.len() >= MIN_FIT_SAMPLES {
                let floats: Vec<f64> = ok_attempts.iter().map(|&a| a as f64).collect();
                match best_fit(&floats) {
                    Ok(best) => Some(best.winner.family.name().to_string()),
                    Err(e) => {
                        warnings.push(format!("n={n}: distribution fit failed: {e}"));
                        None
                    }
                }
            } else {
                warnings.push(format!(
                    "n={n}: only {} successful trials; skipping distribution fit",
                    ok_attempts.len()
                ));
                None
            };

            let back_attempts = if n <= config.skip_backtracking_above {
                Some(solve_backtracking(BoardSize::new(n as usize)?)?.candidate_tests)
            } else {
                None
            };
            let speedup = match back_attempts {
                Some(b) => Some(compute_speedup(b, stats.mean)?),
                None => None,
            };

            rows.push(SummaryRow {
                n,
                mean: stats.mean,
                median: stats.median,
                mode: stats.mode,
                skew: stats.skewness,
                kurtosis: stats.kurtosis,
                lower: stats.lower,
                upper: stats.upper,
                distribution,
                back_attempts,
                speedup,
            });
        }
        Ok(())
    })();

    let manifest = Manifest::new(config, per_n.clone());
    let manifest_path = config.output_dir.join("manifest.json");
    match result {
        Ok(()) => {
            emit::write_summary_csv(&config.output_dir.join("summary.csv"), &rows, config.overwrite)?;
            emit::write_summary_json(&config.output_dir.join("summary.json"), &rows, config.overwrite)?;
            emit::write_manifest(&manifest_path, &manifest, config.overwrite)?;
            Ok(CampaignReport {
                output_dir: config.output_dir.clone(),
                rows,
                per_n,
                warnings,
            })
        }
        Err(e) => {
            // Best-effort partial manifest so an interrupted campaign still
            // records what completed; the original error wins.
            let _ = emit::write_manifest(&manifest_path, &manifest, true);
            Err(e)
        }
    }
}
