//! Regularization-parameter choice: the a priori power rule and the
//! sequential discrepancy principle.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::model::{NoisySample, ProblemSpec};
use crate::solver::{minimize_tikhonov, tikhonov_value, RegResult};

/// A parameter-choice strategy.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ChoiceRule {
    /// `alpha = c0 * delta^kappa`.
    APriori { c0: f64, kappa: f64 },
    /// Sequential discrepancy principle on the geometric grid
    /// `alpha0 * theta^{+-k}` with threshold `b * delta`.
    Discrepancy { b: f64, theta: f64, alpha0: f64 },
}

/// Convergence regime of the a priori exponent for a given degree `a`:
/// the power rule yields convergent regularized solutions exactly for
/// `0 < kappa < 2 + 2/a`, with the boundary as the borderline case.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KappaRegime {
    Convergent,
    Borderline,
    NonConvergent,
}

/// Classifies an a priori exponent.
pub fn kappa_regime(kappa: f64, degree_a: f64) -> KappaRegime {
    let limit = 2.0 + 2.0 / degree_a;
    if kappa > 0.0 && kappa < limit {
        KappaRegime::Convergent
    } else if kappa == limit {
        KappaRegime::Borderline
    } else {
        KappaRegime::NonConvergent
    }
}

/// The a priori power rule `alpha = c0 * delta^kappa`, flagged with its
/// convergence regime.
pub fn choose_apriori(delta: f64, c0: f64, kappa: f64, degree_a: f64) -> (f64, KappaRegime) {
    (c0 * delta.powf(kappa), kappa_regime(kappa, degree_a))
}

/// Which branch of the sequential search produced the selection.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GridBranch {
    /// The initial guess already satisfies the discrepancy threshold.
    InfiniteAlpha,
    /// Walked `alpha0, alpha0/theta, ...` downwards to the first crossing.
    DescendingGrid,
    /// Walked `alpha0, alpha0*theta, ...` upwards to the last grid point
    /// below the threshold.
    AscendingGrid,
}

/// Outcome of a discrepancy selection.
#[derive(Clone, Debug)]
pub struct ChoiceOutcome {
    /// Selected parameter; `f64::INFINITY` when the guess already fits.
    pub alpha_selected: f64,
    /// The companion grid point `alpha'` with
    /// `misfit(alpha_selected) <= b delta <= misfit(alpha')` and
    /// `alpha_selected <= alpha' <= theta * alpha_selected`; absent on the
    /// infinite branch.
    pub alpha_companion: Option<f64>,
    pub result: RegResult,
    /// Grid steps taken beyond the initial point.
    pub iterations: usize,
    pub branch: GridBranch,
}

/// Parameters of the sequential discrepancy principle; `b` and `theta`
/// must exceed one.
#[derive(Clone, Copy, Debug)]
pub struct DiscrepancyParams {
    pub b: f64,
    pub theta: f64,
    pub alpha0: f64,
    pub max_steps: usize,
}

impl Default for DiscrepancyParams {
    fn default() -> Self {
        Self {
            b: 4.0,
            theta: 10.0,
            alpha0: 1.0,
            max_steps: 60,
        }
    }
}

impl DiscrepancyParams {
    fn validate(&self) -> Result<()> {
        if !(self.b > 1.0) {
            return Err(Error::InvalidParameter {
                name: "b",
                value: self.b,
                reason: "must exceed 1",
            });
        }
        if !(self.theta > 1.0) {
            return Err(Error::InvalidParameter {
                name: "theta",
                value: self.theta,
                reason: "must exceed 1",
            });
        }
        if !(self.alpha0 > 0.0) {
            return Err(Error::InvalidParameter {
                name: "alpha0",
                value: self.alpha0,
                reason: "must be positive",
            });
        }
        Ok(())
    }
}

/// Memoizing misfit evaluator over the geometric grid; every probe is a
/// full solve, so ascending/descending walks never recompute a grid point.
struct GridMisfit<'a> {
    p: &'a ProblemSpec,
    sample: &'a NoisySample,
    alpha0: f64,
    theta: f64,
    cache: HashMap<i64, f64>,
}

impl GridMisfit<'_> {
    fn alpha(&self, k: i64) -> f64 {
        // alpha0 * theta^{-k}: positive k descends
        self.alpha0 * self.theta.powi(-k as i32)
    }

    fn misfit(&mut self, k: i64) -> Result<f64> {
        if let Some(&m) = self.cache.get(&k) {
            return Ok(m);
        }
        let m = minimize_tikhonov(self.p, self.sample.data(), self.alpha(k))?.misfit;
        self.cache.insert(k, m);
        Ok(m)
    }
}

/// Sequential discrepancy principle.
///
/// If the initial guess already satisfies `|| F(u_bar) - f_delta || <= b
/// delta`, the selection is the infinite-parameter sentinel with the guess
/// itself as solution. Otherwise the geometric grid is walked down (or up)
/// from `alpha0` until the misfit first crosses the threshold, and the grid
/// point on the feasible side of the crossing is selected, so that
/// `misfit(alpha) <= b delta <= misfit(alpha')` holds for the recorded pair
/// with `alpha <= alpha' <= theta * alpha`.
pub fn choose_discrepancy(
    p: &ProblemSpec,
    sample: &NoisySample,
    params: DiscrepancyParams,
) -> Result<ChoiceOutcome> {
    params.validate()?;
    if !(sample.delta() > 0.0) {
        return Err(Error::InvalidParameter {
            name: "delta",
            value: sample.delta(),
            reason: "discrepancy principle needs a positive noise level",
        });
    }
    let threshold = params.b * sample.delta();

    // step (a): does the initial guess already fit the data?
    let guess_misfit = p
        .forward(p.initial_guess())
        .sub(sample.data())
        .l2_norm();
    if guess_misfit <= threshold {
        let penalty = 0.0;
        return Ok(ChoiceOutcome {
            alpha_selected: f64::INFINITY,
            alpha_companion: None,
            result: RegResult {
                u: p.initial_guess().clone(),
                alpha: f64::INFINITY,
                misfit: guess_misfit,
                penalty,
                tikhonov_value: tikhonov_value(guess_misfit, f64::INFINITY, penalty),
            },
            iterations: 0,
            branch: GridBranch::InfiniteAlpha,
        });
    }

    let mut grid = GridMisfit {
        p,
        sample,
        alpha0: params.alpha0,
        theta: params.theta,
        cache: HashMap::new(),
    };

    let m0 = grid.misfit(0)?;
    let (selected_k, companion_k, iterations, branch) = if m0 >= threshold {
        // descend until the misfit first drops to the threshold
        let mut k = 0i64;
        loop {
            k += 1;
            if k as usize > params.max_steps {
                return Err(Error::NoCrossing {
                    steps: params.max_steps,
                });
            }
            if grid.misfit(k)? <= threshold {
                break (k, k - 1, k as usize, GridBranch::DescendingGrid);
            }
        }
    } else {
        // ascend until the misfit first reaches the threshold, select the
        // point one step before
        let mut k = 0i64;
        loop {
            k -= 1;
            if (-k) as usize > params.max_steps {
                return Err(Error::NoCrossing {
                    steps: params.max_steps,
                });
            }
            if grid.misfit(k)? >= threshold {
                break (k + 1, k, (-k) as usize, GridBranch::AscendingGrid);
            }
        }
    };

    let alpha_selected = grid.alpha(selected_k);
    let alpha_companion = grid.alpha(companion_k);
    let result = minimize_tikhonov(p, sample.data(), alpha_selected)?;
    Ok(ChoiceOutcome {
        alpha_selected,
        alpha_companion: Some(alpha_companion),
        result,
        iterations,
        branch,
    })
}
