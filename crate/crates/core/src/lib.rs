//! Tikhonov regularization with oversmoothing penalties in Hilbert scales.
//!
//! The crate implements, for diagonal problem families in a truncated
//! sequence space:
//!
//! - the Hilbert-scale machinery (fractional-power norms, spectral filter
//!   of the smoothing operator) — [`hilbert`];
//! - problem instances with exact data and seeded noise — [`model`];
//! - exact global minimization of the Tikhonov functional — [`solver`];
//! - auxiliary elements and computable error bounds — [`auxiliary`];
//! - a priori and sequential-discrepancy parameter choice — [`param_choice`];
//! - logarithmic index-function calculus for low-order rates — [`rates`].
//!
//! All values are immutable once constructed and all operations are pure
//! functions of their inputs, so everything here is safe to share across
//! threads.

pub mod auxiliary;
pub mod error;
pub mod hilbert;
pub mod model;
pub mod param_choice;
pub mod rates;
pub mod seq;
pub mod solver;

pub use auxiliary::{auxiliary_element, error_bound, rate_functions, AuxDiagnostics};
pub use error::{Error, Result};
pub use hilbert::DiagonalScale;
pub use model::{
    generate_noise, verify_norm_equivalence, BenchmarkParams, NoiseKind, NoisySample,
    OperatorKind, ProblemSpec,
};
pub use param_choice::{
    choose_apriori, choose_discrepancy, kappa_regime, ChoiceOutcome, ChoiceRule,
    DiscrepancyParams, GridBranch, KappaRegime,
};
pub use rates::{psi_inverse, qualification_check, rate_ratio, IndexFunction, QualificationReport};
pub use seq::SeqVector;
pub use solver::{minimize_tikhonov, misfit_at, solve_linear_fractional, RegResult};
