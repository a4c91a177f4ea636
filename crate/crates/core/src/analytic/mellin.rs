//! The hypergeometric functions `H^l(s, w)`, the Mellin formula for the
//! weight-one expansion along the line `x = wy + alpha`, and the reflection
//! identity of `H^l`.

use num_complex::Complex64;
use serde::Serialize;

use super::expansion::{AnalyticParams, Expansion};
use super::quad::integrate;
use super::special::{gamma_r, hyp2f1, is_gamma_pole, rgamma_r};
use super::AnalyticError;
use crate::characters::cos_derivative;
use crate::tolerances::QUAD_REL;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn sg(l: u32) -> f64 {
    if l % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Arguments of `gamma^{+-}(s) = Gamma_R(x_1) Gamma_R(x_2)`.
fn gpm_args(sign: f64, s: Complex64, p: &AnalyticParams) -> [Complex64; 2] {
    let eps = p.eps as f64;
    let sk = if p.k % 2 == 0 { 1.0 } else { -1.0 };
    [s + p.nu + (1.0 - sign * sk * eps) / 2.0, s - p.nu + (1.0 - sign * eps) / 2.0]
}

/// `gamma^{+-}(s)`; `None` at a pole.
pub fn gamma_pm(sign: f64, s: Complex64, p: &AnalyticParams) -> Option<Complex64> {
    let args = gpm_args(sign, s, p);
    if args.iter().any(|a| is_gamma_pole(a / 2.0)) {
        return None;
    }
    Some(gamma_r(args[0]) * gamma_r(args[1]))
}

fn rgamma_pm(sign: f64, s: Complex64, p: &AnalyticParams) -> Complex64 {
    let args = gpm_args(sign, s, p);
    rgamma_r(args[0]) * rgamma_r(args[1])
}

/// `H^l(s, w)` for `l in {0, 1}`:
/// `(-i)^l [F(a1, b1; 1/2; -w^2) + 2 pi i w gamma^{sg(l+1)}(s+1) / gamma^{sg(l)}(s) F(a2, b2; 3/2; -w^2)]`.
/// The quotient of gamma factors uses the entire reciprocal in the
/// denominator, so zeros of `1/gamma` are handled exactly.
pub fn h_function(l: u32, s: Complex64, w: f64, p: &AnalyticParams) -> Result<Complex64, AnalyticError> {
    let eps = p.eps as f64;
    let el = sg(l) * eps;
    let a1 = (s + p.nu + (1.0 + el) / 2.0) / 2.0;
    let b1 = (s - p.nu + (1.0 - el) / 2.0) / 2.0;
    let a2 = (s + p.nu + (3.0 - el) / 2.0) / 2.0;
    let b2 = (s - p.nu + (3.0 + el) / 2.0) / 2.0;
    let x = -w * w;
    let f1 = hyp2f1(a1, b1, c(0.5, 0.0), x)?;
    let mut total = f1;
    if w != 0.0 {
        let num = gamma_pm(sg(l + 1), s + 1.0, p).ok_or_else(|| AnalyticError::Pole { at: s + 1.0 })?;
        let ratio = num * rgamma_pm(sg(l), s, p);
        if ratio != c(0.0, 0.0) {
            total += c(0.0, 2.0 * std::f64::consts::PI * w) * ratio * hyp2f1(a2, b2, c(1.5, 0.0), x)?;
        }
    }
    Ok(c(0.0, -1.0).powu(l) * total)
}

/// Which spectral parameter enters the right-hand side of the reflection identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reading {
    /// Same `(eps, nu)` on both sides.
    AsPrinted,
    /// Right-hand side evaluated at `-nu`.
    DualSpectral,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HIdentity {
    Residual(f64),
    /// A gamma factor has a pole at the sample point.
    Skip(String),
}

/// `|H^l(1-s, w) - i (|w+i|/(w+i)) (1+w^2)^{s-1/2} H^l(s, -w)|`.
pub fn h_identity_residual(s: Complex64, w: f64, p: &AnalyticParams, l: u32, reading: Reading) -> HIdentity {
    let mut q = p.clone();
    if reading == Reading::DualSpectral {
        q.nu = -p.nu;
    }
    let lhs = h_function(l, 1.0 - s, w, p);
    let rhs = h_function(l, s, -w, &q);
    match (lhs, rhs) {
        (Ok(lhs), Ok(rhs)) => {
            let wi = c(w, 1.0);
            let factor = c(0.0, 1.0) * wi.norm() / wi * c(1.0 + w * w, 0.0).powc(s - 0.5);
            HIdentity::Residual((lhs - factor * rhs).norm())
        }
        (Err(e), _) | (_, Err(e)) => HIdentity::Skip(e.to_string()),
    }
}

/// `|H^0(eps nu, w) - 1|`.
pub fn h_zero_residual(w: f64, p: &AnalyticParams) -> Result<f64, AnalyticError> {
    let s = p.nu * p.eps as f64;
    Ok((h_function(0, s, w, p)? - 1.0).norm())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MellinResult {
    pub lhs: Complex64,
    pub rhs: Complex64,
    /// `|lhs - rhs| / (1 + |rhs|)`.
    pub residual: f64,
    pub y_max: f64,
}

/// Compare `int_0^inf f~(wy + alpha + iy) y^{s-1/2} dy/y` with
/// `sum_n a_n n^{-s} sum_l H^l(s, w) gamma^{sg(l)}(s) cos^{(l)}(2 pi n alpha)`
/// for a weight-one expansion; constant terms are left out of both sides.
pub fn mellin_residual(f: &Expansion, alpha: (i64, i64), w: f64, s: Complex64) -> Result<MellinResult, AnalyticError> {
    let p = &f.params;
    if p.k != 1 {
        return Err(AnalyticError::Precondition("the Mellin formula is stated for weight one".into()));
    }
    if f.series.n_max() > 10 {
        return Err(AnalyticError::Precondition(format!("n_max = {} exceeds 10", f.series.n_max())));
    }
    if s.re < p.sigma + 3.0 {
        return Err(AnalyticError::Precondition(format!("Re s = {} is below sigma + 3 = {}", s.re, p.sigma + 3.0)));
    }
    if alpha.1 <= 0 {
        return Err(AnalyticError::BadParams("alpha must have a positive denominator".into()));
    }
    let alpha_f = alpha.0 as f64 / alpha.1 as f64;
    let mut rhs = c(0.0, 0.0);
    let mut n0 = None;
    let h: Vec<Complex64> = vec![h_function(0, s, w, p)?, h_function(1, s, w, p)?];
    let g: Vec<Complex64> = [1.0, -1.0]
        .iter()
        .map(|&sign| gamma_pm(sign, s, p).ok_or(AnalyticError::Pole { at: s }))
        .collect::<Result<_, _>>()?;
    for (i, a) in f.series.a.iter().enumerate() {
        if *a == c(0.0, 0.0) {
            continue;
        }
        let n = (i + 1) as i64;
        n0.get_or_insert(n);
        let mut inner = c(0.0, 0.0);
        for l in 0..2u32 {
            inner += h[l as usize] * g[l as usize] * cos_derivative(l, n * alpha.0, alpha.1);
        }
        rhs += a * c(n as f64, 0.0).powc(-s) * inner;
    }
    let Some(n0) = n0 else {
        return Ok(MellinResult { lhs: c(0.0, 0.0), rhs, residual: rhs.norm() / (1.0 + rhs.norm()), y_max: 0.0 });
    };
    // beyond y_max the integrand is below e^{-45} of its scale
    let decay = 2.0 * std::f64::consts::PI * n0 as f64;
    let mut y_max = 10.0;
    while decay * y_max - s.re.max(1.0) * y_max.ln() < 45.0 {
        y_max *= 1.5;
    }
    let points: Vec<f64> = [0.0, 0.05, 0.5, 2.0, 10.0].iter().copied().filter(|&t| t < y_max).chain([y_max]).collect();
    let sm = s - 1.5;
    let integrand = |y: f64| -> Complex64 {
        match f.eval_nonconstant(c(w * y + alpha_f, y)) {
            Ok(v) => v * c(y, 0.0).powc(sm),
            Err(_) => c(f64::NAN, 0.0),
        }
    };
    let lhs = integrate(&integrand, &points, QUAD_REL, 4000)?;
    Ok(MellinResult { lhs, rhs, residual: (lhs - rhs).norm() / (1.0 + rhs.norm()), y_max })
}
