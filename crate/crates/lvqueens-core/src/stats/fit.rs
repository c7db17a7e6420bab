//! Maximum-likelihood fits of heavy-tail candidate distributions, selected
//! by Kolmogorov–Smirnov distance.
//!
//! Four two-or-one parameter families are supported, all with support on
//! positive reals and no location shift:
//!
//! * gamma(shape k, scale θ)
//! * weibull-min(shape k, scale λ)
//! * pareto(shape α, scale x_m), with x_m pinned to the sample minimum
//!   (the likelihood in x_m is maximized at that boundary)
//! * exponential(scale θ), whose MLE is closed-form (θ̂ = sample mean)
//!
//! The two-parameter fits run Nelder–Mead over *log* parameters, which keeps
//! the search unconstrained and scale-free, starting from method-of-moments
//! estimates. Likelihoods are evaluated from sufficient statistics where the
//! family allows it, so an objective evaluation is O(1) for gamma and pareto
//! and one pass over the data for weibull.

use statrs::function::gamma::{gamma_lr, ln_gamma};
use thiserror::Error;

use super::simplex::{minimize, SimplexOptions, SimplexOutcome};
use super::ks_statistic;

/// Fewest samples a fit will accept.
pub const MIN_FIT_SAMPLES: usize = 30;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// The candidate distribution families, in fixed selection order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Gamma,
    WeibullMin,
    Pareto,
    Exponential,
}

impl Family {
    /// All families in the order [`best_fit`] tries (and breaks ties) in.
    pub const ALL: [Family; 4] = [
        Family::Gamma,
        Family::WeibullMin,
        Family::Pareto,
        Family::Exponential,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Gamma => "gamma",
            Family::WeibullMin => "weibull-min",
            Family::Pareto => "pareto",
            Family::Exponential => "exponential",
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Fitted parameters; the variant always matches the family that made them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FitParams {
    Gamma { shape: f64, scale: f64 },
    WeibullMin { shape: f64, scale: f64 },
    Pareto { shape: f64, scale: f64 },
    Exponential { scale: f64 },
}

/// One family's maximum-likelihood fit and its goodness of fit.
#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub family: Family,
    pub params: FitParams,
    pub log_likelihood: f64,
    /// KS distance between the sample and the fitted CDF; smaller is better.
    pub ks: f64,
}

impl FitResult {
    /// CDF of the fitted distribution at `x`.
    pub fn cdf(&self, x: f64) -> f64 {
        cdf_of(&self.params, x)
    }
}

/// Errors from fitting.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FitError {
    #[error("need at least {need} samples to fit, got {got}")]
    TooFewSamples { got: usize, need: usize },
    #[error("samples must be finite and strictly positive")]
    NonPositiveSample,
    #[error("sample has zero spread; no candidate family fits it")]
    DegenerateSample,
    #[error("{family} fit did not converge within {iterations} iterations")]
    NoConvergence { family: Family, iterations: usize },
    #[error("no candidate family could be fitted: {details}")]
    AllFamiliesFailed { details: String },
}

/// CDF for a parameter set, defined as 0 left of the support.
pub(crate) fn cdf_of(params: &FitParams, x: f64) -> f64 {
    match *params {
        FitParams::Gamma { shape, scale } => {
            if x <= 0.0 {
                0.0
            } else {
                gamma_lr(shape, x / scale)
            }
        }
        FitParams::WeibullMin { shape, scale } => {
            if x <= 0.0 {
                0.0
            } else {
                1.0 - (-(x / scale).powf(shape)).exp()
            }
        }
        FitParams::Pareto { shape, scale } => {
            if x < scale {
                0.0
            } else {
                1.0 - (scale / x).powf(shape)
            }
        }
        FitParams::Exponential { scale } => {
            if x <= 0.0 {
                0.0
            } else {
                1.0 - (-x / scale).exp()
            }
        }
    }
}

/// Sufficient statistics shared by the likelihood evaluations.
struct Suff {
    n: f64,
    sum: f64,
    sum_ln: f64,
    mean: f64,
    mean_ln: f64,
    var: f64,
    var_ln: f64,
    min: f64,
}

impl Suff {
    fn of(sorted: &[f64]) -> Suff {
        let n = sorted.len() as f64;
        let sum: f64 = sorted.iter().sum();
        let sum_ln: f64 = sorted.iter().map(|&x| x.ln()).sum();
        let mean = sum / n;
        let mean_ln = sum_ln / n;
        let var = sorted.iter().map(|&x| (x - mean).powi(2)).sum::<f64>() / n;
        let var_ln = sorted
            .iter()
            .map(|&x| (x.ln() - mean_ln).powi(2))
            .sum::<f64>()
            / n;
        Suff {
            n,
            sum,
            sum_ln,
            mean,
            mean_ln,
            var,
            var_ln,
            min: sorted[0],
        }
    }
}

fn validate(samples: &[f64]) -> Result<Vec<f64>, FitError> {
    if samples.len() < MIN_FIT_SAMPLES {
        return Err(FitError::TooFewSamples {
            got: samples.len(),
            need: MIN_FIT_SAMPLES,
        });
    }
    if samples.iter().any(|x| !x.is_finite() || *x <= 0.0) {
        return Err(FitError::NonPositiveSample);
    }
    let mut sorted = samples.to_vec();
    sorted.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite samples compare"));
    if sorted[0] == *sorted.last().unwrap() {
        return Err(FitError::DegenerateSample);
    }
    Ok(sorted)
}

fn loglik_gamma(s: &Suff, shape: f64, scale: f64) -> f64 {
    if !shape.is_finite() || !scale.is_finite() || shape <= 0.0 || scale <= 0.0 {
        return f64::NEG_INFINITY;
    }
    (shape - 1.0) * s.sum_ln - s.sum / scale - s.n * shape * scale.ln() - s.n * ln_gamma(shape)
}

fn loglik_weibull(sorted: &[f64], s: &Suff, shape: f64, scale: f64) -> f64 {
    if !shape.is_finite() || !scale.is_finite() || shape <= 0.0 || scale <= 0.0 {
        return f64::NEG_INFINITY;
    }
    let pow_sum: f64 = sorted.iter().map(|&x| (x / scale).powf(shape)).sum();
    s.n * shape.ln() - s.n * shape * scale.ln() + (shape - 1.0) * s.sum_ln - pow_sum
}

fn loglik_pareto(s: &Suff, shape: f64, scale: f64) -> f64 {
    if !shape.is_finite() || shape <= 0.0 {
        return f64::NEG_INFINITY;
    }
    // Support requires every sample >= scale; scale is pinned to the sample
    // minimum, so that holds by construction.
    s.n * shape.ln() + s.n * shape * scale.ln() - (shape + 1.0) * s.sum_ln
}

fn loglik_exponential(s: &Suff, scale: f64) -> f64 {
    -s.n * scale.ln() - s.sum / scale
}

/// Fits one family to `samples` by maximum likelihood.
///
/// Samples must be finite, strictly positive, at least [`MIN_FIT_SAMPLES`]
/// many, and not all equal. Sample order does not affect the result.
pub fn fit_mle(samples: &[f64], family: Family) -> Result<FitResult, FitError> {
    let sorted = validate(samples)?;
    let s = Suff::of(&sorted);

    let options = SimplexOptions::default();
    let (params, log_likelihood) = match family {
        Family::Gamma => {
            // Method-of-moments start: k = mean^2 / var, θ = var / mean.
            let k0 = (s.mean * s.mean / s.var).clamp(1e-3, 1e6);
            let t0 = (s.var / s.mean).clamp(1e-9, 1e12);
            let out = minimize(
                |u| -loglik_gamma(&s, u[0].exp(), u[1].exp()),
                &[k0.ln(), t0.ln()],
                &options,
            );
            let (shape, scale) = (out.x[0].exp(), out.x[1].exp());
            (
                FitParams::Gamma { shape, scale },
                finish(family, out)?,
            )
        }
        Family::WeibullMin => {
            // ln X of a weibull has variance π²/(6k²) and mean ln λ - γ/k.
            let k0 = (std::f64::consts::PI / (6.0 * s.var_ln).sqrt()).clamp(0.05, 200.0);
            let l0 = (s.mean_ln + EULER_GAMMA / k0).exp();
            let out = minimize(
                |u| -loglik_weibull(&sorted, &s, u[0].exp(), u[1].exp()),
                &[k0.ln(), l0.ln()],
                &options,
            );
            let (shape, scale) = (out.x[0].exp(), out.x[1].exp());
            (
                FitParams::WeibullMin { shape, scale },
                finish(family, out)?,
            )
        }
        Family::Pareto => {
            // Scale is the boundary MLE x_m = min(x); only the shape is
            // searched, starting from its closed-form estimate.
            let scale = s.min;
            let a0 = 1.0 / (s.mean_ln - scale.ln());
            let out = minimize(
                |u| -loglik_pareto(&s, u[0].exp(), scale),
                &[a0.ln()],
                &options,
            );
            let shape = out.x[0].exp();
            (
                FitParams::Pareto { shape, scale },
                finish(family, out)?,
            )
        }
        Family::Exponential => {
            // Closed form: the MLE scale is the sample mean.
            let scale = s.mean;
            (
                FitParams::Exponential { scale },
                loglik_exponential(&s, scale),
            )
        }
    };

    let ks = ks_statistic(&sorted, |x| cdf_of(&params, x));
    Ok(FitResult {
        family,
        params,
        log_likelihood,
        ks,
    })
}

/// Maps a simplex outcome to the maximized log-likelihood, or a
/// no-convergence error carrying the iteration count.
fn finish(family: Family, out: SimplexOutcome) -> Result<f64, FitError> {
    if !out.converged || !out.fx.is_finite() {
        return Err(FitError::NoConvergence {
            family,
            iterations: out.iterations,
        });
    }
    Ok(-out.fx)
}

/// Every family's fit plus the winner by smallest KS distance.
#[derive(Debug, Clone)]
pub struct BestFit {
    /// The winning fit (smallest KS; earlier family in [`Family::ALL`] on a
    /// tie).
    pub winner: FitResult,
    /// All successful fits in [`Family::ALL`] order.
    pub candidates: Vec<FitResult>,
    /// Families that could not be fitted, with the reason.
    pub failures: Vec<(Family, FitError)>,
}

/// Fits every candidate family and picks the one closest to the sample in
/// KS distance. Individual family failures are tolerated and reported in
/// [`BestFit::failures`]; only all four failing is an error.
pub fn best_fit(samples: &[f64]) -> Result<BestFit, FitError> {
    // Validate once up front so structural problems (too few samples, bad
    // values) surface as themselves instead of as four identical failures.
    validate(samples)?;

    let mut candidates = Vec::new();
    let mut failures = Vec::new();
    for family in Family::ALL {
        match fit_mle(samples, family) {
            Ok(fit) => candidates.push(fit),
            Err(err) => failures.push((family, err)),
        }
    }
    let winner = candidates
        .iter()
        .min_by(|a, b| a.ks.partial_cmp(&b.ks).expect("KS distances compare"))
        .cloned()
        .ok_or_else(|| FitError::AllFamiliesFailed {
            details: failures
                .iter()
                .map(|(f, e)| format!("{f}: {e}"))
                .collect::<Vec<_>>()
                .join("; "),
        })?;
    Ok(BestFit {
        winner,
        candidates,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, Exp, Gamma, Pareto, Weibull};

    fn params_of(fit: &FitResult) -> (f64, f64) {
        match fit.params {
            FitParams::Gamma { shape, scale }
            | FitParams::WeibullMin { shape, scale }
            | FitParams::Pareto { shape, scale } => (shape, scale),
            FitParams::Exponential { scale } => (f64::NAN, scale),
        }
    }

    #[test]
    fn family_names() {
        assert_eq!(Family::Gamma.name(), "gamma");
        assert_eq!(Family::WeibullMin.name(), "weibull-min");
        assert_eq!(Family::Pareto.name(), "pareto");
        assert_eq!(Family::Exponential.to_string(), "exponential");
    }

    #[test]
    fn validation_errors() {
        let short = vec![1.0; 10];
        assert_eq!(
            fit_mle(&short, Family::Gamma),
            Err(FitError::TooFewSamples { got: 10, need: 30 })
        );
        let mut with_zero: Vec<f64> = (1..=40).map(f64::from).collect();
        with_zero[5] = 0.0;
        assert_eq!(
            fit_mle(&with_zero, Family::Gamma),
            Err(FitError::NonPositiveSample)
        );
        let constant = vec![3.5; 50];
        assert_eq!(
            fit_mle(&constant, Family::WeibullMin),
            Err(FitError::DegenerateSample)
        );
        assert_eq!(best_fit(&constant).unwrap_err(), FitError::DegenerateSample);
    }

    #[test]
    fn exponential_mle_is_the_sample_mean() {
        let samples: Vec<f64> = (1..=40).map(f64::from).collect();
        let fit = fit_mle(&samples, Family::Exponential).unwrap();
        let (_, scale) = params_of(&fit);
        assert!((scale - 20.5).abs() < 1e-12);
        // ll at the MLE collapses to -n (ln θ̂ + 1).
        let expected = -40.0 * ((20.5f64).ln() + 1.0);
        assert!((fit.log_likelihood - expected).abs() < 1e-9);
    }

    #[test]
    fn cdf_closed_forms() {
        // Gamma with shape 1 is exponential; shape 2 integrates to
        // 1 - e^{-x}(1 + x).
        let g1 = FitParams::Gamma {
            shape: 1.0,
            scale: 2.0,
        };
        let g2 = FitParams::Gamma {
            shape: 2.0,
            scale: 1.0,
        };
        let w1 = FitParams::WeibullMin {
            shape: 1.0,
            scale: 2.0,
        };
        let p1 = FitParams::Pareto {
            shape: 1.0,
            scale: 1.0,
        };
        for x in [0.1, 0.5, 1.0, 2.0, 5.0] {
            assert!((cdf_of(&g1, x) - (1.0 - (-x / 2.0f64).exp())).abs() < 1e-10);
            assert!((cdf_of(&g2, x) - (1.0 - (-x).exp() * (1.0 + x))).abs() < 1e-10);
            assert!((cdf_of(&w1, x) - (1.0 - (-x / 2.0f64).exp())).abs() < 1e-12);
        }
        assert_eq!(cdf_of(&p1, 0.5), 0.0); // left of the support
        assert!((cdf_of(&p1, 4.0) - 0.75).abs() < 1e-12);
        assert_eq!(cdf_of(&g1, -1.0), 0.0);
    }

    fn draw<D: Distribution<f64>>(dist: D, n: usize, seed: u64) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n).map(|_| dist.sample(&mut rng)).collect()
    }

    #[test]
    fn gamma_recovery() {
        let samples = draw(Gamma::new(2.0, 3.0).unwrap(), 2000, 11);
        let fit = fit_mle(&samples, Family::Gamma).unwrap();
        let (shape, scale) = params_of(&fit);
        assert!((shape - 2.0).abs() < 0.3, "shape {shape}");
        assert!((scale - 3.0).abs() < 0.5, "scale {scale}");
        assert!(fit.ks < 0.05, "ks {}", fit.ks);
    }

    #[test]
    fn weibull_recovery() {
        // rand_distr's Weibull takes (scale, shape).
        let samples = draw(Weibull::new(3.0, 1.7).unwrap(), 2000, 12);
        let fit = fit_mle(&samples, Family::WeibullMin).unwrap();
        let (shape, scale) = params_of(&fit);
        assert!((shape - 1.7).abs() < 0.15, "shape {shape}");
        assert!((scale - 3.0).abs() < 0.3, "scale {scale}");
        assert!(fit.ks < 0.05);
    }

    #[test]
    fn pareto_recovery() {
        // rand_distr's Pareto takes (scale, shape).
        let samples = draw(Pareto::new(1.0, 3.0).unwrap(), 2000, 13);
        let fit = fit_mle(&samples, Family::Pareto).unwrap();
        let (shape, scale) = params_of(&fit);
        assert!((shape - 3.0).abs() < 0.3, "shape {shape}");
        let min = samples.iter().cloned().fold(f64::INFINITY, f64::min);
        assert_eq!(scale, min, "pareto scale pins to the sample minimum");
        assert!(fit.ks < 0.05);
    }

    #[test]
    fn best_fit_recovers_each_generator() {
        let cases: Vec<(Family, Vec<f64>)> = vec![
            (Family::Gamma, draw(Gamma::new(2.0, 3.0).unwrap(), 4000, 21)),
            (
                Family::WeibullMin,
                draw(Weibull::new(3.0, 1.7).unwrap(), 4000, 22),
            ),
            (Family::Pareto, draw(Pareto::new(1.0, 3.0).unwrap(), 4000, 23)),
            (Family::Exponential, draw(Exp::new(0.5).unwrap(), 4000, 24)),
        ];
        for (family, samples) in cases {
            let best = best_fit(&samples).unwrap();
            assert!(best.failures.is_empty(), "failures for {family}");
            assert_eq!(best.candidates.len(), 4);
            // Candidates come back in the fixed family order.
            let order: Vec<Family> = best.candidates.iter().map(|c| c.family).collect();
            assert_eq!(order, Family::ALL.to_vec());
            assert_eq!(best.winner.family, family, "sample from {family}");
        }
    }

    #[test]
    fn fit_ignores_sample_order() {
        let mut samples = draw(Gamma::new(2.0, 3.0).unwrap(), 500, 31);
        let forward = fit_mle(&samples, Family::Gamma).unwrap();
        samples.reverse();
        samples.rotate_left(137);
        let shuffled = fit_mle(&samples, Family::Gamma).unwrap();
        assert_eq!(forward, shuffled);
    }

    #[test]
    fn exponential_data_ties_break_in_family_order() {
        // An exponential sample is also a gamma (shape 1) and weibull
        // (shape 1) sample, so the KS distances are close but generically
        // unequal; the winner must simply be the smallest, with ties (if
        // any) resolved toward the earlier family. This checks the ordering
        // contract rather than a particular winner.
        let samples = draw(Exp::new(0.5).unwrap(), 4000, 41);
        let best = best_fit(&samples).unwrap();
        for c in &best.candidates {
            assert!(best.winner.ks <= c.ks);
            if c.ks == best.winner.ks {
                // Winner is the earliest family among the tied ones.
                let wi = Family::ALL.iter().position(|&f| f == best.winner.family);
                let ci = Family::ALL.iter().position(|&f| f == c.family);
                assert!(wi <= ci);
            }
        }
    }
}
