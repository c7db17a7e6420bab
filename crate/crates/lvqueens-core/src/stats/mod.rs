//! Descriptive statistics, histograms, and goodness-of-fit over attempt counts.
//!
//! Conventions used throughout:
//!
//! * moments are population moments (divide by N), so skewness is
//!   `m3 / m2^1.5` and kurtosis is reported as *excess* kurtosis
//!   `m4 / m2^2 - 3` (a normal sample reads near 0);
//! * the mode is the smallest value among the most frequent ones;
//! * percentiles interpolate linearly between order statistics at rank
//!   `q * (N - 1)`, and `lower`/`upper` are the 2.5th and 97.5th
//!   percentiles — the central 95% band of the sample.

pub mod fit;
mod simplex;

use thiserror::Error;

pub use fit::{
    best_fit, fit_mle, BestFit, Family, FitError, FitParams, FitResult, MIN_FIT_SAMPLES,
};

/// Errors from the descriptive-statistics routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StatsError {
    #[error("sample is empty")]
    Empty,
    #[error("need at least {need} samples, got {got}")]
    TooFewSamples { got: usize, need: usize },
    #[error("sample has zero variance; higher moments are undefined")]
    DegenerateSample,
    #[error("histogram needs at least one bin")]
    InvalidBinCount,
}

/// Descriptive summary of a sample of attempt counts.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleStats {
    pub count: usize,
    pub mean: f64,
    pub median: f64,
    /// Smallest value among the most frequent ones.
    pub mode: u64,
    /// Population skewness, `m3 / m2^1.5`.
    pub skewness: f64,
    /// Excess kurtosis, `m4 / m2^2 - 3`.
    pub kurtosis: f64,
    /// 2.5th percentile.
    pub lower: f64,
    /// 97.5th percentile.
    pub upper: f64,
    pub min: u64,
    pub max: u64,
}

/// Computes [`SampleStats`] for `samples`.
///
/// Needs at least two samples and non-zero variance (skewness and kurtosis
/// are undefined otherwise).
pub fn describe(samples: &[u64]) -> Result<SampleStats, StatsError> {
    if samples.is_empty() {
        return Err(StatsError::Empty);
    }
    if samples.len() < 2 {
        return Err(StatsError::TooFewSamples {
            got: samples.len(),
            need: 2,
        });
    }
    let mut sorted = samples.to_vec();
    sorted.sort_unstable();

    let n = sorted.len() as f64;
    let mean = sorted.iter().map(|&x| x as f64).sum::<f64>() / n;
    let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
    for &x in &sorted {
        let d = x as f64 - mean;
        let d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    if m2 == 0.0 {
        return Err(StatsError::DegenerateSample);
    }

    let median = if sorted.len() % 2 == 1 {
        sorted[sorted.len() / 2] as f64
    } else {
        (sorted[sorted.len() / 2 - 1] as f64 + sorted[sorted.len() / 2] as f64) / 2.0
    };

    // Runs of equal values in the sorted list; ties go to the smaller value
    // because it is seen first.
    let mut mode = sorted[0];
    let mut best_run = 0usize;
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        if j - i > best_run {
            best_run = j - i;
            mode = sorted[i];
        }
        i = j;
    }

    Ok(SampleStats {
        count: sorted.len(),
        mean,
        median,
        mode,
        skewness: m3 / m2.powf(1.5),
        kurtosis: m4 / (m2 * m2) - 3.0,
        lower: percentile(&sorted, 0.025),
        upper: percentile(&sorted, 0.975),
        min: sorted[0],
        max: *sorted.last().unwrap(),
    })
}

/// Percentile of an ascending-sorted sample by linear interpolation between
/// order statistics: rank `q * (N - 1)`, fractional ranks interpolated.
///
/// `sorted` must be non-empty and ascending; `q` must be in `[0, 1]`.
pub fn percentile(sorted: &[u64], q: f64) -> f64 {
    assert!(!sorted.is_empty(), "percentile of empty sample");
    assert!((0.0..=1.0).contains(&q), "quantile {q} outside [0, 1]");
    let rank = q * (sorted.len() - 1) as f64;
    let lo = rank.floor() as usize;
    let frac = rank - lo as f64;
    if frac == 0.0 || lo + 1 == sorted.len() {
        sorted[lo] as f64
    } else {
        sorted[lo] as f64 + frac * (sorted[lo + 1] as f64 - sorted[lo] as f64)
    }
}

/// Equal-width histogram over the sample range.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    edges: Vec<f64>,
    counts: Vec<u64>,
}

impl Histogram {
    pub fn bin_count(&self) -> usize {
        self.counts.len()
    }

    /// Ascending bin edges; one more edge than bins.
    pub fn edges(&self) -> &[f64] {
        &self.edges
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Sum of all bin counts — always the sample size it was built from.
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Bins as `(lo, hi, count)` triplets.
    pub fn bins(&self) -> impl Iterator<Item = (f64, f64, u64)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .map(|(i, &c)| (self.edges[i], self.edges[i + 1], c))
    }
}

/// Bins `samples` into `bin_count` equal-width bins spanning `[min, max]`.
///
/// The last bin is closed on both sides so the maximum lands in it and the
/// bin counts always sum to the sample size. A sample with a single distinct
/// value degenerates to one unit-width bin centred on that value.
pub fn histogram(samples: &[u64], bin_count: usize) -> Result<Histogram, StatsError> {
    if samples.is_empty() {
        return Err(StatsError::Empty);
    }
    if bin_count == 0 {
        return Err(StatsError::InvalidBinCount);
    }
    let min = *samples.iter().min().unwrap();
    let max = *samples.iter().max().unwrap();
    if min == max {
        let v = min as f64;
        return Ok(Histogram {
            edges: vec![v - 0.5, v + 0.5],
            counts: vec![samples.len() as u64],
        });
    }

    let lo = min as f64;
    let hi = max as f64;
    let bins = bin_count;
    let mut edges = Vec::with_capacity(bins + 1);
    for i in 0..=bins {
        edges.push(lo + (hi - lo) * i as f64 / bins as f64);
    }
    edges[bins] = hi;

    let mut counts = vec![0u64; bins];
    for &x in samples {
        let ratio = (x as f64 - lo) / (hi - lo);
        let k = ((ratio * bins as f64) as usize).min(bins - 1);
        counts[k] += 1;
    }
    Ok(Histogram { edges, counts })
}

/// Two-sided Kolmogorov–Smirnov statistic of `samples` against a continuous
/// CDF: the largest distance between the empirical CDF and `cdf`, checking
/// both sides of each step.
///
/// `samples` must be non-empty and finite.
pub fn ks_statistic<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> f64 {
    assert!(!samples.is_empty(), "KS statistic of empty sample");
    let mut sorted = samples.to_vec();
    sorted.sort_unstable_by(|a, b| a.partial_cmp(b).expect("samples must not contain NaN"));

    let n = sorted.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        let above = (i + 1) as f64 / n - f;
        let below = f - i as f64 / n;
        d = d.max(above.abs()).max(below.abs());
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn describe_small_sample_by_hand() {
        // 1..=5: mean 3, median 3, m2 = 2, m4 = 6.8 so excess kurtosis is
        // 6.8 / 4 - 3 = -1.3; symmetric, so skewness 0.
        let s = describe(&[1, 2, 3, 4, 5]).unwrap();
        assert_eq!(s.count, 5);
        assert_eq!(s.mean, 3.0);
        assert_eq!(s.median, 3.0);
        assert_eq!(s.mode, 1); // all equally frequent; smallest wins
        assert!(s.skewness.abs() < 1e-12);
        assert!((s.kurtosis - (-1.3)).abs() < 1e-12);
        assert!((s.lower - 1.1).abs() < 1e-12); // rank 0.025 * 4 = 0.1
        assert!((s.upper - 4.9).abs() < 1e-12); // rank 0.975 * 4 = 3.9
        assert_eq!(s.min, 1);
        assert_eq!(s.max, 5);
    }

    #[test]
    fn describe_rejects_bad_samples() {
        assert_eq!(describe(&[]), Err(StatsError::Empty));
        assert_eq!(
            describe(&[7]),
            Err(StatsError::TooFewSamples { got: 1, need: 2 })
        );
        assert_eq!(describe(&[4, 4, 4]), Err(StatsError::DegenerateSample));
    }

    #[test]
    fn median_of_even_sample() {
        let s = describe(&[1, 2, 3, 10]).unwrap();
        assert_eq!(s.median, 2.5);
    }

    #[test]
    fn mode_prefers_smallest_on_ties() {
        let s = describe(&[3, 1, 2, 2, 1]).unwrap();
        assert_eq!(s.mode, 1);
        let s = describe(&[9, 4, 4, 4, 9]).unwrap();
        assert_eq!(s.mode, 4);
    }

    #[test]
    fn skewness_sign_tracks_the_tail() {
        let right = describe(&[1, 1, 1, 1, 20]).unwrap();
        assert!(right.skewness > 1.0);
        let left = describe(&[20, 20, 20, 20, 1]).unwrap();
        assert!(left.skewness < -1.0);
    }

    #[test]
    fn percentile_hits_order_statistics_exactly() {
        let sorted = [10, 20, 30, 40, 50];
        assert_eq!(percentile(&sorted, 0.0), 10.0);
        assert_eq!(percentile(&sorted, 0.25), 20.0);
        assert_eq!(percentile(&sorted, 0.5), 30.0);
        assert_eq!(percentile(&sorted, 1.0), 50.0);
        assert_eq!(percentile(&sorted, 0.125), 15.0); // halfway between ranks
    }

    #[test]
    fn histogram_bins_by_hand() {
        let h = histogram(&[1, 2, 3, 4, 5, 6, 7, 8, 9, 10], 3).unwrap();
        assert_eq!(h.edges(), &[1.0, 4.0, 7.0, 10.0]);
        assert_eq!(h.counts(), &[3, 3, 4]); // max is included in the last bin
        assert_eq!(h.total(), 10);
        let bins: Vec<_> = h.bins().collect();
        assert_eq!(bins[0], (1.0, 4.0, 3));
    }

    #[test]
    fn histogram_degenerate_sample() {
        let h = histogram(&[7, 7, 7], 5).unwrap();
        assert_eq!(h.bin_count(), 1);
        assert_eq!(h.edges(), &[6.5, 7.5]);
        assert_eq!(h.total(), 3);
    }

    #[test]
    fn histogram_rejects_bad_input() {
        assert_eq!(histogram(&[], 4), Err(StatsError::Empty));
        assert_eq!(histogram(&[1, 2], 0), Err(StatsError::InvalidBinCount));
    }

    #[test]
    fn histogram_conserves_every_sample() {
        let samples: Vec<u64> = (0..997).map(|i| (i * i * 31 + i) % 1000).collect();
        for bins in [1, 2, 7, 50, 1000] {
            let h = histogram(&samples, bins).unwrap();
            assert_eq!(h.total(), 997, "bins={bins}");
        }
    }

    #[test]
    fn ks_statistic_by_hand() {
        // Single observation at 0.5 against U(0, 1): the empirical CDF jumps
        // 0 -> 1 there, so the distance is 0.5 on both sides.
        let d = ks_statistic(&[0.5], |x| x);
        assert!((d - 0.5).abs() < 1e-12);

        // Two observations at the quartiles: every gap is exactly 0.25.
        let d = ks_statistic(&[0.25, 0.75], |x| x);
        assert!((d - 0.25).abs() < 1e-12);
    }

    #[test]
    fn ks_prefers_the_true_distribution() {
        // Deterministic uniform grid: tiny distance to U(0,1), large to x^3.
        let samples: Vec<f64> = (1..=99).map(|i| i as f64 / 100.0).collect();
        let d_true = ks_statistic(&samples, |x| x);
        let d_wrong = ks_statistic(&samples, |x: f64| x.powi(3));
        assert!(d_true < 0.02);
        assert!(d_wrong > 0.3);
        assert!(d_true < d_wrong);
    }
}
