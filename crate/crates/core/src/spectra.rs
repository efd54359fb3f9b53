//! Spectral analysis of the transposed replacement matrix.
//!
//! The urn is balanced (all row sums 1), so the principal eigenvalue of
//! the transposed replacement matrix is 1 and its eigenvector has the
//! closed form computed by [`principal_eigenvector`]: with
//! `N = m(m+1)(H_m - 1)`,
//!
//! ```text
//! v_i     = i / N                    for i = 1..m
//! v_{m+j} = m(m+1) / ((j+2) N)       for j = 1..m-2
//! ```
//!
//! normalized so all `2m - 2` components sum to 1. The rest of the
//! spectrum comes from the dense QR solver in [`eigen`]; what matters
//! downstream is the second-largest real part. Normalized color counts
//! are asymptotically Gaussian exactly when `Re(lambda_2) < 1/2`, and
//! that threshold is crossed between m = 26 (0.499) and m = 27 (0.516).
//!
//! ```
//! use marytree::spectra::{eigen_spectrum, Regime};
//!
//! let report = eigen_spectrum(27).unwrap();
//! assert!((report.lambda1() - 1.0).abs() < 1e-9);
//! assert!(report.lambda2_re() > 0.5);
//! assert_eq!(report.regime(), Regime::NonGaussian);
//! ```

pub mod eigen;

use crate::error::{Error, Result};
use crate::urn::ReplacementMatrix;

/// A complex number; only what eigenvalue reporting needs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Complex {
    pub re: f64,
    pub im: f64,
}

/// m-th harmonic number, by compensated (Kahan) summation.
pub fn harmonic(m: usize) -> f64 {
    let mut sum = 0.0f64;
    let mut carry = 0.0f64;
    for i in 1..=m {
        let term = 1.0 / i as f64 - carry;
        let next = sum + term;
        carry = (next - sum) - term;
        sum = next;
    }
    sum
}

/// The principal (Perron) eigenvector of the transposed replacement
/// matrix, all components positive and summing to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct PrincipalVector {
    m: usize,
    v: Vec<f64>,
}

impl PrincipalVector {
    pub fn m(&self) -> usize {
        self.m
    }

    /// Components indexed from 0; entry `i` is color `i + 1`.
    pub fn components(&self) -> &[f64] {
        &self.v
    }
}

/// Closed-form principal eigenvector for branching factor m.
/// m = 2 is the boundary case (1/3, 2/3).
pub fn principal_eigenvector(m: usize) -> Result<PrincipalVector> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!(
            "branching factor must be at least 2, got {m}"
        )));
    }
    if m == 2 {
        return Ok(PrincipalVector {
            m,
            v: vec![1.0 / 3.0, 2.0 / 3.0],
        });
    }
    let mf = m as f64;
    let norm = mf * (mf + 1.0) * (harmonic(m) - 1.0);
    let mut v = Vec::with_capacity(2 * m - 2);
    for i in 1..=m {
        v.push(i as f64 / norm);
    }
    for j in 1..=m - 2 {
        v.push(mf * (mf + 1.0) / ((j as f64 + 2.0) * norm));
    }
    Ok(PrincipalVector { m, v })
}

/// Limit-law regime for the normalized color counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `Re(lambda_2) < 1/2`: asymptotically normal.
    Gaussian,
    /// `Re(lambda_2) >= 1/2`: no Gaussian limit.
    NonGaussian,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Regime::Gaussian => write!(f, "Gaussian"),
            Regime::NonGaussian => write!(f, "NonGaussian"),
        }
    }
}

/// Full spectrum of the transposed replacement matrix.
#[derive(Debug, Clone)]
pub struct SpectralReport {
    m: usize,
    /// All 2m - 2 eigenvalues, sorted by descending real part, ties by
    /// descending imaginary part.
    eigenvalues: Vec<Complex>,
    lambda1: f64,
    lambda2_re: f64,
    regime: Regime,
}

impl SpectralReport {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn eigenvalues(&self) -> &[Complex] {
        &self.eigenvalues
    }

    /// The principal eigenvalue; 1 for every balanced urn here.
    pub fn lambda1(&self) -> f64 {
        self.lambda1
    }

    /// Real part of the second-largest eigenvalue.
    pub fn lambda2_re(&self) -> f64 {
        self.lambda2_re
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }
}

/// Supported branching-factor range for the eigensolver path.
pub const M_MAX: usize = 64;

/// Compute and classify the spectrum for `2 <= m <= 64`.
pub fn eigen_spectrum(m: usize) -> Result<SpectralReport> {
    if !(2..=M_MAX).contains(&m) {
        return Err(Error::InvalidParameter(format!(
            "branching factor must lie in 2..={M_MAX}, got {m}"
        )));
    }
    let transpose = ReplacementMatrix::new(m)?.transpose_f64();
    let mut eigenvalues = eigen::eigenvalues(&transpose)?;
    eigenvalues.sort_by(|a, b| b.re.total_cmp(&a.re).then(b.im.total_cmp(&a.im)));

    let lambda1 = eigenvalues[0].re;
    if (lambda1 - 1.0).abs() > 1e-9 || eigenvalues[0].im.abs() > 1e-9 {
        return Err(Error::NumericFailure(format!(
            "principal eigenvalue drifted from 1: {lambda1}"
        )));
    }
    let lambda2_re = eigenvalues[1].re;
    let regime = if lambda2_re < 0.5 {
        Regime::Gaussian
    } else {
        Regime::NonGaussian
    };
    Ok(SpectralReport {
        m,
        eigenvalues,
        lambda1,
        lambda2_re,
        regime,
    })
}

/// Regime classification for `2 <= m <= 64`.
pub fn regime(m: usize) -> Result<Regime> {
    Ok(eigen_spectrum(m)?.regime())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_values() {
        assert_eq!(harmonic(1), 1.0);
        assert_eq!(harmonic(2), 1.5);
        // H_10 = 7381/2520
        assert!((harmonic(10) - 7381.0 / 2520.0).abs() < 1e-15);
        assert!((harmonic(4) - 25.0 / 12.0).abs() < 1e-15);
        assert_eq!(harmonic(0), 0.0);
    }

    #[test]
    fn principal_vector_closed_forms() {
        let v4 = principal_eigenvector(4).unwrap();
        let want4: Vec<f64> = [3.0, 6.0, 9.0, 12.0, 20.0, 15.0]
            .iter()
            .map(|x| x / 65.0)
            .collect();
        for (got, want) in v4.components().iter().zip(&want4) {
            assert!((got - want).abs() < 1e-14);
        }

        let v3 = principal_eigenvector(3).unwrap();
        let want3 = [0.1, 0.2, 0.3, 0.4];
        for (got, want) in v3.components().iter().zip(&want3) {
            assert!((got - want).abs() < 1e-14);
        }

        let v2 = principal_eigenvector(2).unwrap();
        assert_eq!(v2.components(), &[1.0 / 3.0, 2.0 / 3.0]);

        assert!(principal_eigenvector(1).is_err());
    }

    #[test]
    fn principal_vector_sums_to_one_and_is_positive() {
        for m in 3..=40 {
            let v = principal_eigenvector(m).unwrap();
            assert_eq!(v.components().len(), 2 * m - 2);
            let sum: f64 = v.components().iter().sum();
            assert!((sum - 1.0).abs() < 1e-12, "m={m}: sum={sum}");
            assert!(v.components().iter().all(|&x| x > 0.0));
        }
    }

    #[test]
    fn principal_vector_is_a_fixed_point() {
        for m in 2..=40 {
            let a = ReplacementMatrix::new(m).unwrap();
            let v = principal_eigenvector(m).unwrap();
            let v = v.components();
            let size = a.size();
            let mut worst = 0.0f64;
            for i in 1..=size {
                let mut acc = 0.0;
                for j in 1..=size {
                    acc += a.entry(j, i) as f64 * v[j - 1];
                }
                worst = worst.max((acc - v[i - 1]).abs());
            }
            assert!(worst < 1e-10, "m={m}: residual {worst}");
        }
    }

    #[test]
    fn binary_spectrum_is_exact() {
        let rep = eigen_spectrum(2).unwrap();
        assert_eq!(rep.eigenvalues().len(), 2);
        assert!((rep.lambda1() - 1.0).abs() < 1e-12);
        assert!((rep.lambda2_re() + 2.0).abs() < 1e-9);
        assert_eq!(rep.regime(), Regime::Gaussian);
    }

    #[test]
    fn lambda2_spot_values() {
        // three-decimal reference points for the second eigenvalue
        for (m, want) in [(14usize, 0.040f64), (26, 0.499), (27, 0.516)] {
            let rep = eigen_spectrum(m).unwrap();
            assert!(
                (rep.lambda2_re() - want).abs() < 1e-3,
                "m={m}: got {}",
                rep.lambda2_re()
            );
        }
    }

    #[test]
    fn regime_flips_at_27() {
        assert_eq!(regime(2).unwrap(), Regime::Gaussian);
        assert_eq!(regime(26).unwrap(), Regime::Gaussian);
        assert_eq!(regime(27).unwrap(), Regime::NonGaussian);
    }

    #[test]
    fn spectrum_size_and_conjugation() {
        for m in [3usize, 8, 19, 33] {
            let rep = eigen_spectrum(m).unwrap();
            assert_eq!(rep.eigenvalues().len(), 2 * m - 2);
            // closed under conjugation: imaginary parts cancel
            let im_sum: f64 = rep.eigenvalues().iter().map(|c| c.im).sum();
            assert!(im_sum.abs() < 1e-8, "m={m}");
            // lambda1 = 1 with multiplicity-respecting sort
            assert!((rep.lambda1() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn principal_eigenvalue_is_one_across_the_range() {
        // the whole supported range must converge with the Perron root at 1
        for m in 2..=M_MAX {
            let rep = eigen_spectrum(m).unwrap();
            assert!((rep.lambda1() - 1.0).abs() < 1e-9, "m={m}");
            assert_eq!(rep.eigenvalues().len(), 2 * m - 2);
        }
    }

    #[test]
    fn unsupported_range_is_rejected() {
        assert!(eigen_spectrum(1).is_err());
        assert!(eigen_spectrum(65).is_err());
        assert!(eigen_spectrum(64).is_ok());
    }
}
