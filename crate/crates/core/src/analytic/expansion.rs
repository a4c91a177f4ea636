//! Parameters, coefficient series and truncated Fourier-Whittaker expansions.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::special::{gamma_c, gamma_r, is_gamma_pole};
use super::whittaker::Whittaker;
use super::AnalyticError;
use crate::arith::{factorize, is_prime, prime_divisors};
use crate::characters::DirichletChar;
use crate::mat2::ProjMat;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `e(x) = exp(2 pi i x)`.
pub fn e(x: f64) -> Complex64 {
    c(0.0, 2.0 * PI * x).exp()
}

/// Data shared by every analytic check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalyticParams {
    pub eps: i8,
    pub nu: Complex64,
    #[serde(rename = "N")]
    pub level: u64,
    /// 0 or 1 for the unitary action; even `k >= 2` selects holomorphic forms.
    pub k: u32,
    /// Growth exponent: `|a_n| <= C n^sigma`.
    pub sigma: f64,
    #[serde(default)]
    pub excluded_primes: BTreeSet<u64>,
}

impl AnalyticParams {
    /// Validated parameters; the excluded set always contains 2 and the
    /// primes dividing the level.
    pub fn new(eps: i8, nu: Complex64, level: u64, k: u32, sigma: f64) -> Result<AnalyticParams, AnalyticError> {
        let mut p = AnalyticParams { eps, nu, level, k, sigma, excluded_primes: BTreeSet::new() };
        p.normalize()?;
        Ok(p)
    }

    /// Check field ranges and complete the excluded-prime set.
    pub fn normalize(&mut self) -> Result<(), AnalyticError> {
        if self.eps != 1 && self.eps != -1 {
            return Err(AnalyticError::BadParams(format!("eps must be +1 or -1, got {}", self.eps)));
        }
        if self.level == 0 {
            return Err(AnalyticError::BadParams("level must be positive".into()));
        }
        if self.k > 1 && self.k % 2 == 1 {
            return Err(AnalyticError::BadParams(format!("weight {} is neither 0, 1 nor even", self.k)));
        }
        if !self.nu.re.is_finite() || !self.nu.im.is_finite() || !self.sigma.is_finite() {
            return Err(AnalyticError::BadParams("nu and sigma must be finite".into()));
        }
        self.excluded_primes.insert(2);
        self.excluded_primes.extend(prime_divisors(self.level));
        Ok(())
    }

    /// Maass forms of the first converse theorem need `nu != 0`.
    pub fn require_nonzero_nu(&self) -> Result<(), AnalyticError> {
        if self.nu == c(0.0, 0.0) {
            return Err(AnalyticError::BadParams("nu = 0 is excluded for weight-one Maass forms".into()));
        }
        Ok(())
    }

    /// True at the boundary case `nu = 0`, which is flagged in reports.
    pub fn nu_degenerate(&self) -> bool {
        self.nu.norm() == 0.0
    }

    pub fn is_holomorphic(&self) -> bool {
        self.k >= 2
    }

    fn eps_f(&self) -> f64 {
        self.eps as f64
    }
}

/// Truncated coefficient data `a_1 .. a_{n_max}` of a form, with the two
/// constant-term coefficients. Negative-index coefficients are derived.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoefficientSeries {
    pub a: Vec<Complex64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<Complex64>>,
    /// Coefficient of `y^{1/2 - eps nu}` in the constant term.
    #[serde(default)]
    pub c_minus: Complex64,
    /// Coefficient of `y^{1/2 + eps nu}` in the constant term.
    #[serde(default)]
    pub c_plus: Complex64,
    /// The constant `C` of the growth bound.
    #[serde(default = "one")]
    pub bound: f64,
}

fn one() -> f64 {
    1.0
}

impl CoefficientSeries {
    pub fn new(a: Vec<Complex64>) -> CoefficientSeries {
        CoefficientSeries { a, b: None, c_minus: c(0.0, 0.0), c_plus: c(0.0, 0.0), bound: 1.0 }
    }

    pub fn with_constant_term(mut self, c_minus: Complex64, c_plus: Complex64) -> CoefficientSeries {
        self.c_minus = c_minus;
        self.c_plus = c_plus;
        self
    }

    /// Smallest admissible `C` for the declared growth exponent.
    pub fn with_tight_bound(mut self, sigma: f64) -> CoefficientSeries {
        self.bound = self
            .a
            .iter()
            .enumerate()
            .map(|(i, a)| a.norm() / ((i + 1) as f64).powf(sigma))
            .fold(0.0, f64::max)
            * (1.0 + 1e-12);
        self
    }

    pub fn n_max(&self) -> usize {
        self.a.len()
    }

    /// `a_n` for `n != 0`, with `a_{-n} = eps nu a_n`.
    pub fn coefficient(&self, n: i64, params: &AnalyticParams) -> Complex64 {
        let idx = n.unsigned_abs() as usize;
        if idx == 0 || idx > self.a.len() {
            return c(0.0, 0.0);
        }
        let an = self.a[idx - 1];
        if n > 0 {
            an
        } else {
            an * params.nu * params.eps_f()
        }
    }

    /// Check `|a_n| <= C n^sigma` for every stored coefficient.
    pub fn check_bound(&self, sigma: f64) -> Result<(), AnalyticError> {
        for (i, a) in self.a.iter().enumerate() {
            let n = (i + 1) as f64;
            let limit = self.bound * n.powf(sigma);
            if a.norm() > limit {
                return Err(AnalyticError::CoefficientBound { n: i + 1, value: a.norm(), bound: limit });
            }
        }
        Ok(())
    }

    /// Rough size of the neglected terms `n > n_max` at height `y`, from the
    /// declared growth and the exponential decay of the Whittaker functions.
    pub fn tail_estimate(&self, params: &AnalyticParams, y: f64) -> f64 {
        let n0 = self.a.len() + 1;
        let mut total = 0.0;
        for n in n0..n0 + 400 {
            let nf = n as f64;
            let t = if params.is_holomorphic() {
                self.bound * nf.powf(params.sigma) * (-2.0 * PI * nf * y).exp()
            } else {
                let arg = 4.0 * PI * nf * y;
                self.bound * nf.powf(params.sigma) / (PI * nf).sqrt()
                    * (1.0 + params.nu.norm())
                    * 2.0
                    * (-arg / 2.0).exp()
                    * arg.max(1.0).sqrt()
            };
            total += t;
            if t < 1e-30 * total.max(1e-300) {
                break;
            }
        }
        total
    }

    /// Smallest height where [`tail_estimate`](Self::tail_estimate) is below `tol`.
    pub fn y_min(&self, params: &AnalyticParams, tol: f64) -> f64 {
        let (mut lo, mut hi) = (1e-6, 1.0);
        while self.tail_estimate(params, hi) > tol {
            hi *= 2.0;
            if hi > 1e6 {
                return f64::INFINITY;
            }
        }
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if self.tail_estimate(params, mid) > tol {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        hi
    }
}

/// Evaluator for the truncated expansion of one series.
///
/// * `k = 1`: `f0(y) + sum (a_n / sqrt(pi n)) (W_{1/2,nu}(4 pi n y) e(nx) + eps nu W_{-1/2,nu}(4 pi n y) e(-nx))`.
/// * `k = 0` (classical Eisenstein-type test vectors only):
///   `f0(y) + sum (a_n / sqrt(pi n)) W_{0,nu}(4 pi n y) (e(nx) + eps e(-nx))`.
/// * even `k >= 2`: holomorphic `c_plus + sum a_n e(nz)`.
///
/// In the Maass cases `f0(y) = c_minus y^{1/2 - eps nu} + c_plus y^{1/2 + eps nu}`.
#[derive(Clone, Debug)]
pub struct Expansion {
    pub series: CoefficientSeries,
    pub params: AnalyticParams,
    w_plus: Option<Whittaker>,
    w_minus: Option<Whittaker>,
}

impl Expansion {
    pub fn new(series: CoefficientSeries, params: AnalyticParams) -> Result<Expansion, AnalyticError> {
        series.check_bound(params.sigma)?;
        let (w_plus, w_minus) = match params.k {
            1 => (Some(Whittaker::new(0.5, params.nu)?), Some(Whittaker::new(-0.5, params.nu)?)),
            0 => (Some(Whittaker::new(0.0, params.nu)?), None),
            _ => (None, None),
        };
        Ok(Expansion { series, params, w_plus, w_minus })
    }

    fn constant_term(&self, y: f64) -> Complex64 {
        if self.params.is_holomorphic() {
            return self.series.c_plus;
        }
        let en = self.params.nu * self.params.eps_f();
        let yc = c(y, 0.0);
        self.series.c_minus * yc.powc(0.5 - en) + self.series.c_plus * yc.powc(0.5 + en)
    }

    /// `y`-dependent factors of the `n`-th terms attached to `e(nx)` and `e(-nx)`.
    fn radial(&self, n: usize, y: f64) -> Result<(Complex64, Complex64), AnalyticError> {
        let p = &self.params;
        let an = self.series.a[n - 1];
        if an == c(0.0, 0.0) {
            return Ok((c(0.0, 0.0), c(0.0, 0.0)));
        }
        let nf = n as f64;
        if p.is_holomorphic() {
            return Ok((an * (-2.0 * PI * nf * y).exp(), c(0.0, 0.0)));
        }
        let t = 4.0 * PI * nf * y;
        let norm = an / (PI * nf).sqrt();
        let wp = self.w_plus.as_ref().expect("maass mode").eval(t)?;
        if p.k == 1 {
            let wm = self.w_minus.as_ref().expect("weight one").eval(t)?;
            Ok((norm * wp, norm * wm * p.nu * p.eps_f()))
        } else {
            Ok((norm * wp, norm * wp * p.eps_f()))
        }
    }

    /// `f(z)`.
    pub fn eval(&self, z: Complex64) -> Result<Complex64, AnalyticError> {
        self.eval_dx(z, 0)
    }

    /// `d^j/dx^j f(z)`, using the exact derivative of `e(+-nx)`.
    pub fn eval_dx(&self, z: Complex64, j: u32) -> Result<Complex64, AnalyticError> {
        if !(z.im > 0.0) {
            return Err(AnalyticError::NotInUpperHalfPlane(z));
        }
        let (x, y) = (z.re, z.im);
        let mut total = if j == 0 { self.constant_term(y) } else { c(0.0, 0.0) };
        for n in 1..=self.series.n_max() {
            let (rp, rm) = self.radial(n, y)?;
            let nf = n as f64;
            let dp = c(0.0, 2.0 * PI * nf).powu(j);
            let dm = c(0.0, -2.0 * PI * nf).powu(j);
            total += rp * dp * e(nf * x) + rm * dm * e(-nf * x);
        }
        Ok(total)
    }

    /// Only the non-constant part `f~(z)`.
    pub fn eval_nonconstant(&self, z: Complex64) -> Result<Complex64, AnalyticError> {
        Ok(self.eval(z)? - self.constant_term(z.im))
    }

    /// Finite-difference ratio `(Delta_k f)(z) / f(z)` with
    /// `Delta_k = -y^2 (d_x^2 + d_y^2) + i k y d_x`; the `x`-derivatives are
    /// exact and `d_y^2` uses a fourth-order central stencil with step `h`.
    pub fn laplace_ratio(&self, z: Complex64, h: f64) -> Result<Complex64, AnalyticError> {
        let y = z.im;
        if y <= 2.0 * h {
            return Err(AnalyticError::NotInUpperHalfPlane(z));
        }
        let f = |dy: f64| self.eval(c(z.re, y + dy));
        let f0 = f(0.0)?;
        let fyy = (-f(2.0 * h)? + f(h)? * 16.0 - f0 * 30.0 + f(-h)? * 16.0 - f(-2.0 * h)?) / (12.0 * h * h);
        let fxx = self.eval_dx(z, 2)?;
        let fx = self.eval_dx(z, 1)?;
        let k = self.params.k as f64;
        let lap = -(fxx + fyy) * (y * y) + c(0.0, k * y) * fx;
        Ok(lap / f0)
    }
}

/// Which completed L-function is meant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GammaVariant {
    /// Shifts `(1 + psi(-1) eps)/2 + nu` and `(1 - psi(-1) eps)/2 - nu`.
    Symmetric,
    /// Shifts `(1 - (-1)^k psi(-1) eps)/2 + nu` and `(1 - psi(-1) eps)/2 - nu`.
    WeightParity,
    /// `Gamma_C(s)`.
    Holomorphic,
}

/// Arguments and values of the archimedean factors; the product is the
/// full gamma factor.
#[derive(Clone, Debug, PartialEq)]
pub struct GammaFactors {
    /// Arguments passed to `Gamma_R` (two) or `Gamma_C` (one).
    pub args: Vec<Complex64>,
    pub values: Vec<Complex64>,
}

impl GammaFactors {
    pub fn product(&self) -> Complex64 {
        self.values.iter().product()
    }
}

/// Arguments of the `Gamma_R` pair (or the single `Gamma_C` argument).
pub fn gamma_arguments(s: Complex64, params: &AnalyticParams, psi_parity: i8, variant: GammaVariant) -> Vec<Complex64> {
    let pe = (psi_parity as f64) * params.eps_f();
    match variant {
        GammaVariant::Symmetric => vec![s + (1.0 + pe) / 2.0 + params.nu, s + (1.0 - pe) / 2.0 - params.nu],
        GammaVariant::WeightParity => {
            let sk = if params.k % 2 == 0 { 1.0 } else { -1.0 };
            vec![s + (1.0 - sk * pe) / 2.0 + params.nu, s + (1.0 - pe) / 2.0 - params.nu]
        }
        GammaVariant::Holomorphic => vec![s],
    }
}

/// Gamma factors of the completed L-function; a pole is an error carrying
/// its location.
pub fn gamma_factors(
    s: Complex64,
    params: &AnalyticParams,
    psi_parity: i8,
    variant: GammaVariant,
) -> Result<GammaFactors, AnalyticError> {
    let args = gamma_arguments(s, params, psi_parity, variant);
    let mut values = Vec::with_capacity(args.len());
    for &a in &args {
        let (pole, v) = match variant {
            GammaVariant::Holomorphic => (is_gamma_pole(a), gamma_c(a)),
            _ => (is_gamma_pole(a / 2.0), gamma_r(a)),
        };
        if pole {
            return Err(AnalyticError::Pole { at: a });
        }
        values.push(v);
    }
    Ok(GammaFactors { args, values })
}

/// Shape of the local factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EulerVariant {
    /// `(1 - a_p p^{-s} + p^{-2s})^{-1}` at good primes.
    Maass,
    /// `(1 - a_p p^{-s} + p^{k+1-2s})^{-1}` at good primes.
    Holomorphic,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EulerExpansion {
    /// `a_1 .. a_{n_max}`.
    pub coeffs: Vec<Complex64>,
    /// Human-readable description of the normalization used.
    pub convention: String,
}

/// Coefficients of a multiplicative series with the given Hecke eigenvalues.
///
/// Good primes follow `a_{p^{m+1}} = a_p a_{p^m} - t_p a_{p^{m-1}}` with
/// `t_p = 1` (Maass) or `t_p = p^{k+1}` (holomorphic). For `p || N` the
/// prime powers are `1` (Maass) or `p^{(k/2-1) m}` (holomorphic); for
/// `p^2 | N` they vanish.
pub fn euler_expand(
    ap: &BTreeMap<u64, Complex64>,
    params: &AnalyticParams,
    n_max: usize,
    variant: EulerVariant,
) -> Result<EulerExpansion, AnalyticError> {
    if n_max == 0 {
        return Err(AnalyticError::BadParams("n_max must be at least 1".into()));
    }
    let level = factorize(params.level);
    let level_exp = |p: u64| level.iter().find(|(q, _)| *q == p).map_or(0, |(_, e)| *e);
    let primes: Vec<u64> = (2..=n_max as u64).filter(|&p| is_prime(p)).collect();
    let missing: Vec<u64> = primes
        .iter()
        .copied()
        .filter(|&p| level_exp(p) == 0 && !ap.contains_key(&p))
        .collect();
    if !missing.is_empty() {
        return Err(AnalyticError::MissingPrimes(missing));
    }
    let k = params.k as f64;
    let mut prime_powers: BTreeMap<u64, Complex64> = BTreeMap::new();
    for &p in &primes {
        let mut powers = vec![c(1.0, 0.0)];
        let mut pm = p;
        let mut m = 1;
        while pm <= n_max as u64 {
            let v = match (level_exp(p), variant) {
                (0, _) => {
                    let t = match variant {
                        EulerVariant::Maass => 1.0,
                        EulerVariant::Holomorphic => (p as f64).powf(k + 1.0),
                    };
                    let prev2 = if m >= 2 { powers[m - 2] } else { c(0.0, 0.0) };
                    ap[&p] * powers[m - 1] - prev2 * t
                }
                (1, EulerVariant::Maass) => c(1.0, 0.0),
                (1, EulerVariant::Holomorphic) => c((p as f64).powf((k / 2.0 - 1.0) * m as f64), 0.0),
                _ => c(0.0, 0.0),
            };
            powers.push(v);
            prime_powers.insert(pm, v);
            pm *= p;
            m += 1;
        }
    }
    let mut coeffs = Vec::with_capacity(n_max);
    for n in 1..=n_max as u64 {
        let mut v = c(1.0, 0.0);
        for (p, e) in factorize(n) {
            v *= prime_powers[&p.pow(e)];
        }
        coeffs.push(v);
    }
    let convention = match variant {
        EulerVariant::Maass => "maass: t_p = 1 at good primes; a_{p^m} = 1 for p || N; 0 for p^2 | N".to_string(),
        EulerVariant::Holomorphic => format!(
            "holomorphic weight {}: t_p = p^(k+1) at good primes; a_{{p^m}} = p^((k/2-1)m) for p || N; 0 for p^2 | N",
            params.k
        ),
    };
    Ok(EulerExpansion { coeffs, convention })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompletedL {
    pub value: Complex64,
    pub gamma: GammaFactors,
    pub dirichlet: Complex64,
    /// Bound for the neglected terms of the Dirichlet series (times the gamma factor).
    pub tail_bound: f64,
}

/// Truncated completed L-function `gamma(s) sum_{n <= n_max} psi(n) a_n n^{-s}`.
pub fn completed_l(
    series: &CoefficientSeries,
    params: &AnalyticParams,
    psi: &DirichletChar,
    s: Complex64,
    variant: GammaVariant,
) -> Result<CompletedL, AnalyticError> {
    if s.re < params.sigma + 2.0 {
        return Err(AnalyticError::Precondition(format!(
            "Re s = {} is below sigma + 2 = {}",
            s.re,
            params.sigma + 2.0
        )));
    }
    let gamma = gamma_factors(s, params, psi.parity(), variant)?;
    let mut dirichlet = c(0.0, 0.0);
    for (i, a) in series.a.iter().enumerate() {
        let n = (i + 1) as f64;
        dirichlet += psi.value((i + 1) as i64) * a * c(n, 0.0).powc(-s);
    }
    let excess = s.re - params.sigma - 1.0;
    let nm = series.n_max().max(1) as f64;
    let tail = series.bound * nm.powf(-excess) / excess;
    let g = gamma.product();
    Ok(CompletedL { value: g * dirichlet, tail_bound: tail * g.norm(), gamma, dirichlet })
}

/// Slash action used by [`transform_residual`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Action {
    /// `exp(-i k arg(cz + d)) f(gamma z)`.
    Unitary(u32),
    /// `det^{k/2} (cz + d)^{-k} f(gamma z)`.
    Holomorphic(u32),
}

#[derive(Clone, Debug, PartialEq)]
pub struct TransformResult {
    pub residual: f64,
    /// Truncation estimate at the lower of the two heights.
    pub tail_estimate: f64,
    pub y_min: f64,
}

fn mobius(m: [f64; 4], z: Complex64) -> Complex64 {
    (z * m[0] + m[1]) / (z * m[2] + m[3])
}

fn region_check(f: &Expansion, heights: &[f64], tol: f64) -> Result<(f64, f64), AnalyticError> {
    let y_min = f.series.y_min(&f.params, tol);
    let low = heights.iter().copied().fold(f64::INFINITY, f64::min);
    if low < y_min {
        return Err(AnalyticError::Region { y: low, y_min });
    }
    Ok((f.series.tail_estimate(&f.params, low), y_min))
}

/// `|(f|gamma)(z) - f(z)| / (1 + |f(z)|)`. Both `z` and `gamma z` must lie
/// where the truncation estimate is below `tail_tol`.
pub fn transform_residual(
    f: &Expansion,
    gamma: &ProjMat,
    action: Action,
    z: Complex64,
    tail_tol: f64,
) -> Result<TransformResult, AnalyticError> {
    if !(z.im > 0.0) {
        return Err(AnalyticError::NotInUpperHalfPlane(z));
    }
    if gamma.det() <= 0.into() {
        return Err(AnalyticError::BadParams(format!("{gamma} does not have positive determinant")));
    }
    let m = gamma.to_f64();
    let gz = mobius(m, z);
    let (tail, y_min) = region_check(f, &[z.im, gz.im], tail_tol)?;
    let j = z * m[2] + m[3];
    let factor = match action {
        Action::Unitary(k) => c(0.0, -(k as f64) * j.arg()).exp(),
        Action::Holomorphic(k) => {
            let det = m[0] * m[3] - m[1] * m[2];
            c(det.powf(k as f64 / 2.0), 0.0) * j.powi(-(k as i32))
        }
    };
    let fz = f.eval(z)?;
    let slashed = factor * f.eval(gz)?;
    Ok(TransformResult { residual: (slashed - fz).norm() / (1.0 + fz.norm()), tail_estimate: tail, y_min })
}

/// `|f(z) - (iz/|z|) g(-1/(Nz))|` for a pair related by the Fricke involution.
pub fn fricke_residual(f: &Expansion, g: &Expansion, z: Complex64, tail_tol: f64) -> Result<TransformResult, AnalyticError> {
    if !(z.im > 0.0) {
        return Err(AnalyticError::NotInUpperHalfPlane(z));
    }
    let n = f.params.level as f64;
    let w = -(z * n).inv();
    let (t1, y1) = region_check(f, &[z.im], tail_tol)?;
    let (t2, y2) = region_check(g, &[w.im], tail_tol)?;
    let rhs = c(0.0, 1.0) * z / z.norm() * g.eval(w)?;
    Ok(TransformResult { residual: (f.eval(z)? - rhs).norm(), tail_estimate: t1 + t2, y_min: y1.max(y2) })
}

/// Coefficients `sqrt(pi) n^nu sigma_{-2nu}(n)` and constant terms of the
/// completed weight-zero Eisenstein series `E*(z, 1/2 + nu)`, for use with
/// `k = 0`, `eps = 1`.
pub fn eisenstein_series(nu: Complex64, n_max: usize) -> CoefficientSeries {
    use super::special::xi;
    let a = (1..=n_max as u64)
        .map(|n| {
            let sig: Complex64 = crate::arith::divisors(n).iter().map(|&d| c(d as f64, 0.0).powc(-2.0 * nu)).sum();
            c(PI.sqrt(), 0.0) * c(n as f64, 0.0).powc(nu) * sig
        })
        .collect();
    CoefficientSeries::new(a)
        .with_constant_term(xi(1.0 - 2.0 * nu), xi(1.0 + 2.0 * nu))
        .with_tight_bound(nu.re.abs() + 1e-9)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::enumerate_chars;

    fn maass(eps: i8) -> AnalyticParams {
        AnalyticParams::new(eps, c(0.0, 0.3), 1, 1, 0.5).unwrap()
    }

    #[test]
    fn params_validation() {
        let p = AnalyticParams::new(1, c(0.0, 0.3), 18, 1, 0.5).unwrap();
        assert_eq!(p.excluded_primes.iter().copied().collect::<Vec<_>>(), vec![2, 3]);
        assert!(AnalyticParams::new(0, c(0.0, 0.3), 1, 1, 0.5).is_err());
        assert!(AnalyticParams::new(1, c(0.0, 0.3), 1, 3, 0.5).is_err());
        let z = AnalyticParams::new(1, c(0.0, 0.0), 1, 1, 0.5).unwrap();
        assert!(z.require_nonzero_nu().is_err() && z.nu_degenerate());
    }

    #[test]
    fn zero_series_is_zero() {
        let f = Expansion::new(CoefficientSeries::new(vec![c(0.0, 0.0); 5]), maass(1)).unwrap();
        assert_eq!(f.eval(c(0.2, 0.7)).unwrap(), c(0.0, 0.0));
        assert!(matches!(f.eval(c(0.2, -0.1)), Err(AnalyticError::NotInUpperHalfPlane(_))));
    }

    #[test]
    fn single_term_at_i() {
        let p = maass(1);
        let f = Expansion::new(CoefficientSeries::new(vec![c(1.0, 0.0)]), p.clone()).unwrap();
        let t = 4.0 * PI;
        let wp = super::super::whittaker(0.5, p.nu, t).unwrap();
        let wm = super::super::whittaker(-0.5, p.nu, t).unwrap();
        let want = (wp + p.nu * wm) / PI.sqrt();
        assert!((f.eval(c(0.0, 1.0)).unwrap() - want).norm() < 1e-15);
    }

    #[test]
    fn bound_violation() {
        let s = CoefficientSeries::new(vec![c(1.0, 0.0), c(5.0, 0.0)]);
        assert!(matches!(s.check_bound(0.5), Err(AnalyticError::CoefficientBound { n: 2, .. })));
        assert!(s.with_tight_bound(0.5).check_bound(0.5).is_ok());
    }

    #[test]
    fn negative_index_rule() {
        let p = maass(-1);
        let s = CoefficientSeries::new(vec![c(2.0, 0.0)]);
        assert_eq!(s.coefficient(-1, &p), c(2.0, 0.0) * p.nu * -1.0);
        assert_eq!(s.coefficient(1, &p), c(2.0, 0.0));
    }

    #[test]
    fn gamma_factor_shapes() {
        let p = AnalyticParams::new(1, c(0.0, 0.3), 1, 0, 0.5).unwrap();
        let s = c(2.0, 0.5);
        let a = gamma_arguments(s, &p, 1, GammaVariant::WeightParity);
        assert!((a[0] - p.nu - a[1] - p.nu).norm() < 1e-15);
        let even = gamma_arguments(s, &maass(1), 1, GammaVariant::Symmetric);
        let odd = gamma_arguments(s, &maass(1), -1, GammaVariant::Symmetric);
        assert!((even[0] - s - p.nu - 1.0).norm() < 1e-15);
        assert!((odd[0] - s - p.nu).norm() < 1e-15);
        assert!((odd[1] - s + p.nu - 1.0).norm() < 1e-15);
        let pole = gamma_factors(c(-2.0, -0.3), &maass(1), -1, GammaVariant::Symmetric);
        assert!(matches!(pole, Err(AnalyticError::Pole { .. })), "{pole:?}");
        let h = gamma_factors(c(1.0, 0.0), &maass(1), 1, GammaVariant::Holomorphic).unwrap();
        assert!((h.product() - 1.0 / (2.0 * PI)).norm() < 1e-15);
    }

    #[test]
    fn euler_maass() {
        let p = AnalyticParams::new(1, c(0.0, 0.3), 1, 1, 0.5).unwrap();
        let ap: BTreeMap<u64, Complex64> = [2, 3, 5, 7, 11, 13, 17, 19, 23].iter().map(|&q| (q, c(0.0, 0.0))).collect();
        let e = euler_expand(&ap, &p, 10, EulerVariant::Maass).unwrap();
        assert_eq!(e.coeffs[0], c(1.0, 0.0));
        assert_eq!(e.coeffs[3], c(-1.0, 0.0));
        assert_eq!(e.coeffs[7], c(0.0, 0.0));
        let p3 = AnalyticParams::new(1, c(0.0, 0.3), 3, 1, 0.5).unwrap();
        let ap3: BTreeMap<u64, Complex64> = [2, 5, 7, 11, 13, 17, 19, 23].iter().map(|&q| (q, c(0.5, 0.0))).collect();
        let e3 = euler_expand(&ap3, &p3, 27, EulerVariant::Maass).unwrap();
        assert_eq!((e3.coeffs[2], e3.coeffs[8], e3.coeffs[26]), (c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)));
        let p9 = AnalyticParams::new(1, c(0.0, 0.3), 9, 1, 0.5).unwrap();
        let e9 = euler_expand(&ap3, &p9, 9, EulerVariant::Maass).unwrap();
        assert_eq!(e9.coeffs[2], c(0.0, 0.0));
        let missing = euler_expand(&BTreeMap::new(), &p, 6, EulerVariant::Maass);
        assert_eq!(missing.unwrap_err(), AnalyticError::MissingPrimes(vec![2, 3, 5]));
    }

    #[test]
    fn euler_holomorphic_convention() {
        let p = AnalyticParams::new(1, c(0.0, 0.0), 2, 2, 1.5).unwrap();
        let ap: BTreeMap<u64, Complex64> = [(3, c(1.0, 0.0)), (5, c(0.0, 0.0)), (7, c(0.0, 0.0))].into_iter().collect();
        let e = euler_expand(&ap, &p, 9, EulerVariant::Holomorphic).unwrap();
        assert_eq!(e.coeffs[8], c(1.0 - 27.0, 0.0));
        assert_eq!(e.coeffs[1], c(1.0, 0.0));
        assert!(e.convention.contains("p^(k+1)"));
    }

    #[test]
    fn completed_l_trivial() {
        let p = maass(1);
        let triv = enumerate_chars(1).unwrap().remove(0);
        let s = c(3.0, 0.4);
        let l = completed_l(&CoefficientSeries::new(vec![c(1.0, 0.0), c(0.0, 0.0)]), &p, &triv, s, GammaVariant::Symmetric).unwrap();
        let g = gamma_factors(s, &p, 1, GammaVariant::Symmetric).unwrap().product();
        assert!((l.value - g).norm() < 1e-15);
        assert!(completed_l(&CoefficientSeries::new(vec![]), &p, &triv, c(1.0, 0.0), GammaVariant::Symmetric).is_err());
    }

    #[test]
    fn periodicity_and_identity() {
        let p = maass(1);
        let s = CoefficientSeries::new(vec![c(1.0, 0.0), c(-0.3, 0.2), c(0.1, 0.0)]).with_constant_term(c(0.2, 0.0), c(0.0, 0.1));
        let f = Expansion::new(s, p).unwrap();
        let z = c(0.31, 1.2);
        let id = transform_residual(&f, &ProjMat::lit(1, 0, 0, 1), Action::Unitary(1), z, 1e-3).unwrap();
        assert_eq!(id.residual, 0.0);
        let t = transform_residual(&f, &ProjMat::lit(1, 1, 0, 1), Action::Unitary(1), z, 1e-3).unwrap();
        assert!(t.residual < 1e-12, "{}", t.residual);
    }

    #[test]
    fn eisenstein_modularity() {
        let nu = c(0.0, 0.3);
        let p = AnalyticParams::new(1, nu, 1, 0, nu.re.abs() + 1e-9).unwrap();
        let f = Expansion::new(eisenstein_series(nu, 30), p).unwrap();
        let z = c(0.3, 0.4);
        let v = f.eval(z).unwrap();
        assert!((v - c(-1.3484110369437423, 0.0)).norm() < 1e-9, "{v}");
        let r = transform_residual(&f, &ProjMat::lit(0, -1, 1, 0), Action::Unitary(0), z, 1e-12).unwrap();
        assert!(r.residual < 1e-6, "{}", r.residual);
        let low = transform_residual(&f, &ProjMat::lit(0, -1, 1, 0), Action::Unitary(0), c(0.3, 0.01), 1e-12);
        assert!(matches!(low, Err(AnalyticError::Region { .. })));
    }

    #[test]
    fn holomorphic_e4() {
        let a: Vec<Complex64> = (1..=12u64)
            .map(|n| c(240.0 * crate::arith::divisors(n).iter().map(|&d| (d * d * d) as f64).sum::<f64>(), 0.0))
            .collect();
        let s = CoefficientSeries::new(a).with_constant_term(c(0.0, 0.0), c(1.0, 0.0)).with_tight_bound(3.0 + 1e-9);
        let p = AnalyticParams::new(1, c(0.0, 0.0), 1, 4, 3.0 + 1e-9).unwrap();
        let f = Expansion::new(s, p).unwrap();
        let r = transform_residual(&f, &ProjMat::lit(0, -1, 1, 0), Action::Holomorphic(4), c(0.1, 1.05), 1e-6).unwrap();
        assert!(r.residual < 1e-8, "{}", r.residual);
    }
}
