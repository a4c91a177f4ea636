//! Verification toolkit for Hecke congruence subgroups `Gamma0(N)` and the
//! analytic objects attached to converse theorems for Maass forms.
//!
//! Exact parts (matrices, coset enumeration, group-ring certificates,
//! character tables) use arbitrary-precision integers and rationals. Numerical
//! parts (gamma, hypergeometric and Whittaker functions, Mellin transforms)
//! use `f64` complex arithmetic with documented tolerances.

pub mod analytic;
pub mod arith;
pub mod characters;
pub mod elliptic;
pub mod groupring;
pub mod mat2;
pub mod modgroup;
pub mod report;
pub mod tolerances;

pub use mat2::{eval_word, find_word, make_special, Letter, ProjMat, SpecialWord, Token};
