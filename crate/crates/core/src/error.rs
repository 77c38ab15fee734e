//! Error type shared by all solver and model operations.

/// Errors produced by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A norm or power computation left the finite range of `f64`.
    #[error("overflow: non-finite value in {context}")]
    Overflow { context: &'static str },

    /// A parameter violated its domain (e.g. `alpha <= 0`).
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// An operation was called on a problem of the wrong operator kind.
    #[error("operation requires a {expected} problem")]
    WrongOperatorKind { expected: &'static str },

    /// The discrepancy grid search ran out of steps without bracketing
    /// the threshold.
    #[error(
        "no crossing of the discrepancy threshold after {steps} grid steps \
         (noise level inconsistent with data, or the misfit jumps across the grid)"
    )]
    NoCrossing { steps: usize },

    /// `phi` was evaluated beyond its validity cutoff.
    #[error("index function evaluated at t = {t} beyond cutoff {cutoff}")]
    BeyondCutoff { t: f64, cutoff: f64 },

    /// `psi_inverse` was asked for a noise level outside the range of `psi`.
    #[error("delta = {delta} outside the range of psi (max {max})")]
    OutOfRange { delta: f64, max: f64 },

    /// An internal consistency check failed; indicates a numerical bug.
    #[error("internal error: {0}")]
    Internal(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
