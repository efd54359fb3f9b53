//! Limit fractions and seeded Monte Carlo verification.
//!
//! With `H_m` the m-th harmonic number, the almost-sure limits are
//!
//! * gap fractions `X/n -> v` (the principal eigenvector),
//! * node fraction `S/n -> 1 / (2(H_m - 1))`,
//! * leaf fraction `L/n -> (m-1) / (2(m+1)(H_m - 1))`,
//! * degree fractions `D/n -> v*` with `v*_0` the leaf fraction and
//!   `v*_k = 1 / (m(m+1)(H_m - 1))` for every k in `1..=m`.
//!
//! The 1-protected fraction is derived as node fraction minus leaf
//! fraction, which gives `1 / ((m+1)(H_m - 1))`. Half that value is
//! sometimes quoted for the same quantity; simulation decisively favors
//! the difference form (at m = 2 the non-leaf fraction is 2/3, not 1/3),
//! so [`LimitProfile::protected_fraction`] carries the derived value and
//! [`LimitProfile::protected_fraction_alt`] records the halved variant
//! for comparison.
//!
//! [`monte_carlo`] and [`clt_probe`] grow independent trees from seeded
//! permutations and compare empirical profiles against these limits.
//! Trials run in parallel; every trial derives its own seed from the
//! master seed and the trial index, and aggregation is done in trial
//! order, so reports are byte-reproducible regardless of scheduling.

use crate::error::{Error, Result};
use crate::rng::{permutation, trial_seed};
use crate::spectra::{harmonic, principal_eigenvector};
use crate::tree::MaryTree;

/// Limiting profile fractions for branching factor m.
#[derive(Debug, Clone, PartialEq)]
pub struct LimitProfile {
    m: usize,
    /// Gap-fraction limits, length 2m - 2.
    pub v: Vec<f64>,
    /// Degree-fraction limits by outdegree, length m + 1.
    pub v_star: Vec<f64>,
    /// Limit of L/n: `(m-1) / (2(m+1)(H_m - 1))`.
    pub leaf_fraction: f64,
    /// Limit of S/n: `1 / (2(H_m - 1))`.
    pub node_fraction: f64,
    /// Limit of P/n derived as S/n - L/n: `1 / ((m+1)(H_m - 1))`.
    pub protected_fraction: f64,
    /// Half the derived value, `1 / (2(m+1)(H_m - 1))`; quoted in places
    /// but not supported by simulation. Reported for comparison only.
    pub protected_fraction_alt: f64,
    /// Limit of the full-node fraction D_m/n: `1 / (m(m+1)(H_m - 1))`.
    pub full_fraction: f64,
}

impl LimitProfile {
    pub fn m(&self) -> usize {
        self.m
    }
}

/// Evaluate every limit formula for `m >= 2`.
pub fn limit_profile(m: usize) -> Result<LimitProfile> {
    let v = principal_eigenvector(m)?.components().to_vec();
    let mf = m as f64;
    let h = harmonic(m);
    let leaf_fraction = (mf - 1.0) / (2.0 * (mf + 1.0) * (h - 1.0));
    let node_fraction = 1.0 / (2.0 * (h - 1.0));
    let inner = 1.0 / (mf * (mf + 1.0) * (h - 1.0));
    let mut v_star = Vec::with_capacity(m + 1);
    v_star.push(leaf_fraction);
    v_star.extend(std::iter::repeat_n(inner, m));
    Ok(LimitProfile {
        m,
        v,
        v_star,
        leaf_fraction,
        node_fraction,
        protected_fraction: node_fraction - leaf_fraction,
        protected_fraction_alt: (node_fraction - leaf_fraction) / 2.0,
        full_fraction: inner,
    })
}

/// Empirical means over seeded trials, with deviations from the limits.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub m: usize,
    pub n: u64,
    pub trials: u64,
    pub seed: u64,
    /// Mean of X/n over trials, per color.
    pub mean_gap_fractions: Vec<f64>,
    /// Mean of D/n over trials, per outdegree.
    pub mean_degree_fractions: Vec<f64>,
    /// |mean X/n - v| per color.
    pub gap_deviations: Vec<f64>,
    /// |mean D/n - v*| per outdegree.
    pub degree_deviations: Vec<f64>,
    pub sup_gap_deviation: f64,
    pub sup_degree_deviation: f64,
    /// Mean of P/n over trials (non-leaf nodes per key).
    pub mean_protected_fraction: f64,
}

/// Grow `trials` independent trees of n keys each and compare mean
/// profiles against the limits. Deterministic given the seed.
pub fn monte_carlo(m: usize, n: u64, trials: u64, seed: u64) -> Result<ConvergenceReport> {
    if n < 1 {
        return Err(Error::InvalidParameter("n must be at least 1".to_string()));
    }
    if trials < 1 {
        return Err(Error::InvalidParameter(
            "trials must be at least 1".to_string(),
        ));
    }
    let limits = limit_profile(m)?;
    let per_trial = run_trials(trials, |t| -> Result<(Vec<f64>, Vec<f64>, f64)> {
        let perm = permutation(n, trial_seed(seed, t));
        let tree = MaryTree::from_permutation(m, &perm)?;
        let x = tree.gap_profile()?;
        let d = tree.degree_profile()?;
        let nf = n as f64;
        let gaps = x.counts().iter().map(|&c| c as f64 / nf).collect();
        let degrees = d.counts().iter().map(|&c| c as f64 / nf).collect();
        let protected = d.one_protected() as f64 / nf;
        Ok((gaps, degrees, protected))
    });

    let tf = trials as f64;
    let mut mean_gap_fractions = vec![0.0; 2 * m - 2];
    let mut mean_degree_fractions = vec![0.0; m + 1];
    let mut mean_protected_fraction = 0.0;
    for result in per_trial {
        let (gaps, degrees, protected) = result?;
        for (acc, g) in mean_gap_fractions.iter_mut().zip(gaps) {
            *acc += g / tf;
        }
        for (acc, d) in mean_degree_fractions.iter_mut().zip(degrees) {
            *acc += d / tf;
        }
        mean_protected_fraction += protected / tf;
    }

    let gap_deviations: Vec<f64> = mean_gap_fractions
        .iter()
        .zip(&limits.v)
        .map(|(got, want)| (got - want).abs())
        .collect();
    let degree_deviations: Vec<f64> = mean_degree_fractions
        .iter()
        .zip(&limits.v_star)
        .map(|(got, want)| (got - want).abs())
        .collect();
    let sup = |v: &[f64]| v.iter().fold(0.0f64, |a, &b| a.max(b));
    Ok(ConvergenceReport {
        m,
        n,
        trials,
        seed,
        sup_gap_deviation: sup(&gap_deviations),
        sup_degree_deviation: sup(&degree_deviations),
        mean_gap_fractions,
        mean_degree_fractions,
        gap_deviations,
        degree_deviations,
        mean_protected_fraction,
    })
}

/// Sample moments of the standardized leaf count
/// `(D_0 - n v*_0) / sqrt(n)` over seeded trials.
///
/// Moments that need more trials than provided are `None`: variance
/// needs 2, skewness 3, excess kurtosis 4 (all bias-corrected sample
/// estimators).
#[derive(Debug, Clone, PartialEq)]
pub struct CltProbe {
    pub m: usize,
    pub n: u64,
    pub trials: u64,
    pub seed: u64,
    pub mean: f64,
    pub variance: Option<f64>,
    pub skewness: Option<f64>,
    pub excess_kurtosis: Option<f64>,
}

/// Normality probe for the centered, scaled leaf count. Only meaningful
/// in the Gaussian regime, so m is restricted to `3..=26`.
pub fn clt_probe(m: usize, n: u64, trials: u64, seed: u64) -> Result<CltProbe> {
    if !(3..=26).contains(&m) {
        return Err(Error::InvalidParameter(format!(
            "normality probe requires m in 3..=26, got {m}"
        )));
    }
    if n < 1 || trials < 1 {
        return Err(Error::InvalidParameter(
            "n and trials must be at least 1".to_string(),
        ));
    }
    let v_star0 = limit_profile(m)?.leaf_fraction;
    let samples = run_trials(trials, |t| -> Result<f64> {
        let perm = permutation(n, trial_seed(seed, t));
        let tree = MaryTree::from_permutation(m, &perm)?;
        let leaves = tree.degree_profile()?.leaves() as f64;
        Ok((leaves - n as f64 * v_star0) / (n as f64).sqrt())
    });
    let samples: Vec<f64> = samples.into_iter().collect::<Result<_>>()?;

    let t = trials as f64;
    let mean = samples.iter().sum::<f64>() / t;
    let central = |p: i32| samples.iter().map(|x| (x - mean).powi(p)).sum::<f64>() / t;
    let m2 = central(2);

    let variance = (trials >= 2).then(|| m2 * t / (t - 1.0));
    let skewness = (trials >= 3 && m2 > 0.0).then(|| {
        let g1 = central(3) / m2.powf(1.5);
        g1 * (t * (t - 1.0)).sqrt() / (t - 2.0)
    });
    let excess_kurtosis = (trials >= 4 && m2 > 0.0).then(|| {
        let g2 = central(4) / (m2 * m2) - 3.0;
        ((t + 1.0) * g2 + 6.0) * (t - 1.0) / ((t - 2.0) * (t - 3.0))
    });
    Ok(CltProbe {
        m,
        n,
        trials,
        seed,
        mean,
        variance,
        skewness,
        excess_kurtosis,
    })
}

/// Run trials in parallel, results in trial order. Each trial's work is
/// a pure function of its index (seeds included), so the output does not
/// depend on the schedule or the number of threads.
fn run_trials<T, F>(trials: u64, work: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync,
{
    let count = trials as usize;
    let threads = std::thread::available_parallelism()
        .map(|v| v.get())
        .unwrap_or(1)
        .min(count)
        .max(1);
    if threads == 1 {
        return (0..trials).map(work).collect();
    }
    let chunk = count.div_ceil(threads);
    let mut out: Vec<Option<T>> = std::iter::repeat_with(|| None).take(count).collect();
    std::thread::scope(|scope| {
        for (block, slots) in out.chunks_mut(chunk).enumerate() {
            let work = &work;
            scope.spawn(move || {
                for (offset, slot) in slots.iter_mut().enumerate() {
                    *slot = Some(work((block * chunk + offset) as u64));
                }
            });
        }
    });
    out.into_iter().map(|slot| slot.unwrap()).collect()
}
