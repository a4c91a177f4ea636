//! Numerical tolerances used by the verification suites.

/// Relative accuracy target for complex gamma.
pub const GAMMA_REL: f64 = 1e-12;
/// Relative accuracy target for the hypergeometric series.
pub const HYP2F1_REL: f64 = 1e-10;
/// Relative accuracy target for Whittaker functions.
pub const WHITTAKER_REL: f64 = 1e-8;
/// Local error tolerance of the Taylor stepper used for Whittaker functions.
pub const WHITTAKER_STEP_TOL: f64 = 1e-16;
/// Gauss-sum identities over primitive characters.
pub const GAUSS_IDENTITY: f64 = 1e-10;
/// Additive-twist residual.
pub const TWIST_RESIDUAL: f64 = 1e-10;
/// H-function identity residual.
pub const H_IDENTITY: f64 = 1e-8;
/// `H^0(eps nu, w) = 1` check.
pub const H_ZERO: f64 = 1e-10;
/// Normalized Mellin-formula residual.
pub const MELLIN_RESIDUAL: f64 = 1e-5;
/// Relative tolerance of the adaptive quadrature.
pub const QUAD_REL: f64 = 1e-11;
/// Whittaker against modified Bessel.
pub const WHITTAKER_BESSEL: f64 = 1e-8;
/// Eisenstein transformation residual.
pub const EISENSTEIN_RESIDUAL: f64 = 1e-6;
/// Spread of the finite-difference Laplacian ratio.
pub const EIGEN_RATIO_SPREAD: f64 = 1e-4;
/// Numeric cross-check of fixed points in the lemma-hypothesis checker.
pub const FIXED_POINT_NUMERIC: f64 = 1e-9;
/// Quadratic residual of a computed elliptic fixed point.
pub const FIXED_POINT_RESIDUAL: f64 = 1e-12;
/// Truncated expansions: neglected terms below this relative size.
pub const EXPANSION_TAIL: f64 = 1e-12;
