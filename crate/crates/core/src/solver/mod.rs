//! Exact global minimization of the Tikhonov functional for the diagonal
//! problem families.
//!
//! For both operator kinds the functional separates per coordinate. The
//! quadratic family yields a quartic polynomial in each coordinate whose
//! global minimum is found by enumerating the real stationary points (a
//! cubic); the linear family reduces to a scalar quadratic. The ball
//! constraint is checked after the unconstrained solve and enforced, when
//! active, by bisecting a Lagrange multiplier.

pub mod cubic;

use crate::error::{Error, Result};
use crate::model::{NoisySample, OperatorKind, ProblemSpec};
use crate::seq::SeqVector;

/// A regularized solution together with its diagnostics.
///
/// `alpha` may be `f64::INFINITY` as a sentinel for "solution pinned to the
/// initial guess"; the Tikhonov value then degenerates to the squared
/// misfit because the penalty vanishes.
#[derive(Clone, Debug)]
pub struct RegResult {
    pub u: SeqVector,
    pub alpha: f64,
    /// `|| F(u) - f_delta ||`
    pub misfit: f64,
    /// `|| u - u_bar ||_1`
    pub penalty: f64,
    /// `misfit^2 + alpha * penalty^2`
    pub tikhonov_value: f64,
}

pub(crate) fn tikhonov_value(misfit: f64, alpha: f64, penalty: f64) -> f64 {
    if alpha.is_infinite() && penalty == 0.0 {
        misfit * misfit
    } else {
        misfit * misfit + alpha * penalty * penalty
    }
}

/// Tolerance for pinning the constrained solution onto the ball boundary.
const BALL_TOL: f64 = 1e-10;

/// Maximum bisection steps for the Lagrange multiplier.
const BALL_MAX_ITER: usize = 200;

/// Global minimizer of one coordinate of the quadratic-family functional
/// `(a (c x + x^2) - f)^2 + w (x - ubar)^2 + lambda x^2`.
///
/// The stationary points solve the cubic
/// `2 a^2 x^3 + 3 a^2 c x^2 + (a^2 c^2 - 2 a f + w + lambda) x - (a f c + w ubar) = 0`;
/// the minimum over them is the global minimum since the quartic opens
/// upwards. Ties are broken towards `ubar`.
fn minimize_quartic_coord(a: f64, c: f64, f: f64, w: f64, ubar: f64, lambda: f64) -> Result<f64> {
    let a2 = a * a;
    let roots = cubic::real_roots(
        2.0 * a2,
        3.0 * a2 * c,
        a2 * c * c - 2.0 * a * f + w + lambda,
        -(a * f * c + w * ubar),
    );
    if roots.is_empty() {
        // unreachable for finite coefficients; a cubic has a real root
        return Err(Error::Internal("cubic solver returned no real root"));
    }
    let objective = |x: f64| {
        let r = a * (c * x + x * x) - f;
        let d = x - ubar;
        r * r + w * d * d + lambda * x * x
    };
    let mut best = f64::NAN;
    let mut best_val = f64::INFINITY;
    for &x in roots.as_slice() {
        let v = objective(x);
        let better = v < best_val
            || (v == best_val && (x - ubar).abs() < (best - ubar).abs());
        if better {
            best = x;
            best_val = v;
        }
    }
    Ok(best)
}

/// Minimizer of one coordinate of the linear-family functional
/// `(a x - f)^2 + w (x - ubar)^2 + lambda x^2` (closed form).
fn minimize_quadratic_coord(a: f64, f: f64, w: f64, ubar: f64, lambda: f64) -> f64 {
    (a * f + w * ubar) / (a * a + w + lambda)
}

/// Unconstrained separable minimizer with an extra `lambda ||u||^2` term.
fn minimize_separable(
    p: &ProblemSpec,
    f_delta: &SeqVector,
    alpha: f64,
    lambda: f64,
) -> Result<SeqVector> {
    let n = p.n();
    let mult = p.forward_multipliers();
    let b = p.scale().multipliers();
    let ubar = p.initial_guess();
    let c = p.linear_coefficient();
    let mut coords = Vec::with_capacity(n);
    for i in 0..n {
        let w = alpha * b[i] * b[i];
        let x = match p.kind() {
            OperatorKind::DiagonalQuadratic => {
                minimize_quartic_coord(mult[i], c, f_delta[i], w, ubar[i], lambda)?
            }
            OperatorKind::DiagonalLinear => {
                minimize_quadratic_coord(mult[i], f_delta[i], w, ubar[i], lambda)
            }
        };
        coords.push(x);
    }
    SeqVector::new(coords)
}

fn assemble(p: &ProblemSpec, f_delta: &SeqVector, alpha: f64, u: SeqVector) -> Result<RegResult> {
    let misfit = p.forward(&u).sub(f_delta).l2_norm();
    let penalty = p.scale().norm_tau(&u.sub(p.initial_guess()), 1.0)?;
    Ok(RegResult {
        tikhonov_value: tikhonov_value(misfit, alpha, penalty),
        u,
        alpha,
        misfit,
        penalty,
    })
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0) || alpha.is_nan() {
        return Err(Error::InvalidParameter {
            name: "alpha",
            value: alpha,
            reason: "must be positive",
        });
    }
    Ok(())
}

/// Global minimizer of
/// `|| F(u) - f_delta ||^2 + alpha || u - u_bar ||_1^2` over the domain
/// ball `||u|| <= rho`.
///
/// The unconstrained separable solution is used whenever it already lies
/// in the ball; otherwise the multiplier of the ball constraint is
/// bisected until the norm meets the radius within `1e-10`.
pub fn minimize_tikhonov(p: &ProblemSpec, f_delta: &SeqVector, alpha: f64) -> Result<RegResult> {
    check_alpha(alpha)?;
    assert_eq!(f_delta.len(), p.n(), "data length mismatch");
    let rho = p.domain_radius();
    let u = minimize_separable(p, f_delta, alpha, 0.0)?;
    if u.l2_norm() <= rho {
        return assemble(p, f_delta, alpha, u);
    }

    // ball constraint active: bisect lambda >= 0 so that ||u(lambda)|| = rho
    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    while minimize_separable(p, f_delta, alpha, hi)?.l2_norm() > rho {
        hi *= 4.0;
        if !hi.is_finite() {
            return Err(Error::Internal("ball multiplier bracketing diverged"));
        }
    }
    let mut u_hi = minimize_separable(p, f_delta, alpha, hi)?;
    for _ in 0..BALL_MAX_ITER {
        let mid = 0.5 * (lo + hi);
        let u_mid = minimize_separable(p, f_delta, alpha, mid)?;
        let norm = u_mid.l2_norm();
        if (norm - rho).abs() <= BALL_TOL {
            return assemble(p, f_delta, alpha, u_mid);
        }
        if norm > rho {
            lo = mid;
        } else {
            hi = mid;
            u_hi = u_mid;
        }
    }
    // fall back to the feasible side of the bracket
    assemble(p, f_delta, alpha, u_hi)
}

/// Closed-form solve of the linear-family normal equation
/// `(A* A + alpha B^2) u = A* f_delta + alpha B^2 u_bar`, i.e. the
/// first-order condition of the Tikhonov functional with penalty
/// `|| u - u_bar ||_1^2`, coordinate-wise
/// `u_n = (a_n f_n + alpha b_n^2 ubar_n) / (a_n^2 + alpha b_n^2)`.
pub fn solve_linear_fractional(
    p: &ProblemSpec,
    f_delta: &SeqVector,
    alpha: f64,
) -> Result<RegResult> {
    if p.kind() != OperatorKind::DiagonalLinear {
        return Err(Error::WrongOperatorKind {
            expected: "diagonal linear",
        });
    }
    check_alpha(alpha)?;
    assert_eq!(f_delta.len(), p.n(), "data length mismatch");
    let mult = p.forward_multipliers();
    let b = p.scale().multipliers();
    let ubar = p.initial_guess();
    let u = SeqVector::from_fn(p.n(), |i| {
        let w = alpha * b[i] * b[i];
        (mult[i] * f_delta[i] + w * ubar[i]) / (mult[i] * mult[i] + w)
    })
    .coords()
    .to_vec();
    assemble(p, f_delta, alpha, SeqVector::new(u)?)
}

/// Misfit `|| F(u_alpha) - f_delta ||` of the freshly computed minimizer.
/// Deterministic: identical `(sample, alpha)` always produce bit-identical
/// values.
pub fn misfit_at(p: &ProblemSpec, sample: &NoisySample, alpha: f64) -> Result<f64> {
    minimize_tikhonov(p, sample.data(), alpha).map(|r| r.misfit)
}
