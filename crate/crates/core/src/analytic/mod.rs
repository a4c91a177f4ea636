//! Numerical checks of the analytic side: gamma factors, `2F1`, Whittaker
//! functions, truncated Maass expansions, the Mellin formula and the
//! H-function identity.

pub mod expansion;
pub mod mellin;
pub mod quad;
pub mod suite;
pub mod special;

pub mod whittaker;

use num_complex::Complex64;

pub use expansion::{
    completed_l, eisenstein_series, euler_expand, fricke_residual, gamma_arguments, gamma_factors, transform_residual,
    Action, AnalyticParams, CoefficientSeries, CompletedL, EulerExpansion, EulerVariant, Expansion, GammaFactors,
    GammaVariant, TransformResult,
};
pub use mellin::{h_function, h_identity_residual, h_zero_residual, mellin_residual, HIdentity, MellinResult, Reading};
pub use quad::QuadError;
pub use suite::{run_suite, EvalGrid, GridTolerances, SeriesSpec, SuiteInput};
pub use special::{bessel_k, gamma, gamma_c, gamma_r, hyp2f1, hyp2f1_series, xi, rgamma, rgamma_r, sinpi, zeta, Hyp2f1Error};

pub use whittaker::{whittaker, whittaker_checked, Whittaker, WhittakerError};

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum AnalyticError {
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error("gamma factor has a pole at {at}")]
    Pole { at: Complex64 },
    #[error("point {0} is not in the upper half-plane")]
    NotInUpperHalfPlane(Complex64),
    #[error("height {y} is below the reliable truncation region; use y >= {y_min}")]
    Region { y: f64, y_min: f64 },
    #[error("missing a_p for primes {0:?}")]
    MissingPrimes(Vec<u64>),
    #[error("|a_{n}| = {value} exceeds the declared bound {bound}")]
    CoefficientBound { n: usize, value: f64, bound: f64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Whittaker(#[from] WhittakerError),
    #[error(transparent)]
    Hyp2f1(#[from] Hyp2f1Error),
    #[error(transparent)]
    Quad(#[from] QuadError),
}
