//! Diagonal Hilbert-scale machinery.
//!
//! The scale is generated by a diagonal operator `B` with strictly positive
//! multipliers `b_n`, bounded away from zero. Fractional powers act
//! coordinate-wise, which gives the whole family of norms
//! `||u||_tau = (sum_n b_n^{2 tau} u_n^2)^{1/2}` for any real `tau`, and the
//! smoothing operator `G = B^{-(2a+2)}` with eigenvalues
//! `g_n = b_n^{-(2a+2)}` accumulating at zero.

use crate::error::{Error, Result};
use crate::seq::SeqVector;

/// Multiplier sequence of the generator `B` together with the degree of
/// ill-posedness `a`.
#[derive(Clone, Debug)]
pub struct DiagonalScale {
    multipliers: Vec<f64>,
    degree_a: f64,
}

/// `b^tau` computed in log space; `b^{2(2a+2)}` reaches 6000^8 for the
/// standard scale, so plain repeated multiplication is avoided.
#[inline]
pub(crate) fn pow_log(b: f64, tau: f64) -> f64 {
    if tau == 0.0 || b == 1.0 {
        1.0
    } else {
        (tau * b.ln()).exp()
    }
}

impl DiagonalScale {
    /// Builds a scale from explicit multipliers.
    ///
    /// The multipliers must be strictly positive (and hence bounded below
    /// by some `m > 0`), and the degree `a` must be positive.
    pub fn new(multipliers: Vec<f64>, degree_a: f64) -> Result<Self> {
        if !(degree_a > 0.0) || !degree_a.is_finite() {
            return Err(Error::InvalidParameter {
                name: "degree_a",
                value: degree_a,
                reason: "must be positive and finite",
            });
        }
        if multipliers.is_empty() {
            return Err(Error::InvalidParameter {
                name: "multipliers",
                value: 0.0,
                reason: "must be non-empty",
            });
        }
        if multipliers.iter().any(|&b| !(b > 0.0) || !b.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "multipliers",
                value: f64::NAN,
                reason: "must be strictly positive and finite",
            });
        }
        Ok(Self {
            multipliers,
            degree_a,
        })
    }

    /// The standard scale with `b_n = n` for `n = 1..=n_len`.
    pub fn standard(n_len: usize, degree_a: f64) -> Result<Self> {
        Self::new((1..=n_len).map(|n| n as f64).collect(), degree_a)
    }

    pub fn len(&self) -> usize {
        self.multipliers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.multipliers.is_empty()
    }

    pub fn multipliers(&self) -> &[f64] {
        &self.multipliers
    }

    pub fn degree_a(&self) -> f64 {
        self.degree_a
    }

    /// Exponent of `B` that realizes `G`, i.e. `-(2a + 2)`.
    pub fn g_exponent(&self) -> f64 {
        -(2.0 * self.degree_a + 2.0)
    }

    /// Eigenvalue `g_n = b_n^{-(2a+2)}` of the smoothing operator
    /// (zero-based index).
    pub fn g_eigenvalue(&self, i: usize) -> f64 {
        pow_log(self.multipliers[i], self.g_exponent())
    }

    /// Scale norm `||u||_tau = (sum_n b_n^{2 tau} u_n^2)^{1/2}`.
    ///
    /// Negative `tau` is permitted; the spaces coincide with the base space
    /// there and only the norm changes.
    pub fn norm_tau(&self, u: &SeqVector, tau: f64) -> Result<f64> {
        assert_eq!(u.len(), self.len(), "length mismatch in norm_tau");
        let mut sum = 0.0;
        for (c, b) in u.coords().iter().zip(&self.multipliers) {
            sum += pow_log(*b, 2.0 * tau) * c * c;
        }
        let norm = sum.sqrt();
        if !norm.is_finite() {
            return Err(Error::Overflow {
                context: "norm_tau",
            });
        }
        Ok(norm)
    }

    /// Applies the fractional power `B^tau` coordinate-wise:
    /// `(B^tau u)_n = b_n^tau u_n`.
    pub fn apply_b_power(&self, u: &SeqVector, tau: f64) -> SeqVector {
        assert_eq!(u.len(), self.len(), "length mismatch in apply_b_power");
        SeqVector::from_fn(u.len(), |i| pow_log(self.multipliers[i], tau) * u[i])
    }

    /// Applies the Tikhonov spectral filter of the smoothing operator,
    /// `G (G + alpha I)^{-1}`, coordinate-wise as `(g_n / (g_n + alpha)) u_n`.
    ///
    /// Every filter factor lies in `(0, 1)`, so no output coordinate can
    /// exceed the input in magnitude.
    pub fn apply_g_filter(&self, u: &SeqVector, alpha: f64) -> Result<SeqVector> {
        assert_eq!(u.len(), self.len(), "length mismatch in apply_g_filter");
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::InvalidParameter {
                name: "alpha",
                value: alpha,
                reason: "must be positive and finite",
            });
        }
        Ok(SeqVector::from_fn(u.len(), |i| {
            let g = self.g_eigenvalue(i);
            g / (g + alpha) * u[i]
        }))
    }
}
