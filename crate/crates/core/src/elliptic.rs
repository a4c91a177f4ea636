//! Classification of Moebius matrices by normalized trace, elliptic fixed
//! points, the `M(q, s, r)` construction and the prime decomposition of
//! elements of `Gamma0(N)`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::arith::is_prime;
use crate::mat2::{make_special, Letter, ProjMat, RatMat};
use crate::modgroup::{is_member, SubgroupFlavor};
use crate::tolerances::{FIXED_POINT_NUMERIC, FIXED_POINT_RESIDUAL};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EllipticError {
    #[error("{0} has non-square determinant and nonzero trace; it cannot be normalized to SL2 with rational trace")]
    CannotNormalize(String),
    #[error("second matrix is required when k = 0")]
    MissingSecondMatrix,
    #[error("k must be 0 or 1, got {0}")]
    BadWeight(u32),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("no decomposition found within |u|, |v| <= {0}")]
    NotFound(i64),
}

/// Kind of a Moebius transformation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EllipticKind {
    /// The classes of `I` and `-I`.
    Identity,
    Parabolic,
    Hyperbolic,
    /// Finite order; `order` is the order of an `SL2` lift, `psl2_order` of its image.
    EllipticFinite { order: u32, psl2_order: u32 },
    EllipticInfinite,
}

impl EllipticKind {
    pub fn label(&self) -> String {
        match self {
            EllipticKind::Identity => "identity".into(),
            EllipticKind::Parabolic => "parabolic".into(),
            EllipticKind::Hyperbolic => "hyperbolic".into(),
            EllipticKind::EllipticFinite { order, .. } => format!("elliptic-finite(order {order})"),
            EllipticKind::EllipticInfinite => "elliptic-infinite".into(),
        }
    }

    pub fn is_elliptic(&self) -> bool {
        matches!(
            self,
            EllipticKind::EllipticFinite { .. } | EllipticKind::EllipticInfinite
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EllipticClass {
    pub kind: EllipticKind,
    /// Trace of the determinant-one normalization.
    pub trace: BigRational,
    /// `trace / 2 = cos(pi theta)`.
    pub cos_angle: BigRational,
    /// Fixed point in the upper half-plane, when elliptic.
    pub fixed_point: Option<Complex64>,
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Normalized trace `tr(M)/sqrt(det M)` when rational.
pub fn normalized_trace(m: &ProjMat) -> Result<BigRational, EllipticError> {
    let t = m.trace();
    if t.is_zero() {
        return Ok(BigRational::zero());
    }
    let det = m.det();
    let root = det.sqrt();
    if &root * &root != det {
        return Err(EllipticError::CannotNormalize(m.to_string()));
    }
    Ok(BigRational::new(t, root))
}

/// Fixed point in the upper half-plane of an elliptic matrix:
/// `z = (a - d)/(2c) + i sqrt(4 det - tr^2)/(2|c|)`.
pub fn elliptic_fixed_point(m: &ProjMat) -> Option<Complex64> {
    let [a, _, c, d] = m.to_f64();
    let disc: BigInt = BigInt::from(4) * m.det() - m.trace() * m.trace();
    if !disc.is_positive() || m.c().is_zero() {
        return None;
    }
    let disc = disc.to_f64()?;
    Some(Complex64::new((a - d) / (2.0 * c), disc.sqrt() / (2.0 * c.abs())))
}

/// `|c z^2 + (d - a) z - b|` relative to the entry scale.
pub fn fixed_point_residual(m: &ProjMat, z: Complex64) -> f64 {
    let [a, b, c, d] = m.to_f64();
    let scale = a.abs().max(b.abs()).max(c.abs()).max(d.abs());
    (c * z * z + (d - a) * z - b).norm() / scale
}

/// Classify by normalized trace. Finite-order elliptic elements are detected
/// exactly: a rational `2 cos(pi theta)` with `theta` rational lies in
/// `{0, +-1, +-2}`.
pub fn classify(m: &ProjMat) -> Result<EllipticClass, EllipticError> {
    let tr = normalized_trace(m)?;
    let two = rat(2);
    let abs = tr.abs();
    let kind = if m.is_scalar() {
        EllipticKind::Identity
    } else if abs > two {
        EllipticKind::Hyperbolic
    } else if abs == two {
        EllipticKind::Parabolic
    } else if tr.is_zero() {
        EllipticKind::EllipticFinite { order: 4, psl2_order: 2 }
    } else if tr == rat(1) {
        EllipticKind::EllipticFinite { order: 6, psl2_order: 3 }
    } else if tr == rat(-1) {
        EllipticKind::EllipticFinite { order: 3, psl2_order: 3 }
    } else {
        EllipticKind::EllipticInfinite
    };
    let fixed_point = if kind.is_elliptic() {
        elliptic_fixed_point(m)
    } else {
        None
    };
    if let Some(z) = fixed_point {
        debug_assert!(fixed_point_residual(m, z) < FIXED_POINT_RESIDUAL);
    }
    Ok(EllipticClass {
        kind,
        cos_angle: &tr / &two,
        trace: tr,
        fixed_point,
    })
}

/// Smallest `j <= max_exp` with `M^j` in the class of `+-I`.
pub fn scalar_power(m: &ProjMat, max_exp: u32) -> Option<u32> {
    let mut acc = m.clone();
    for j in 1..=max_exp {
        if acc.is_scalar() {
            return Some(j);
        }
        acc = acc.mul(m);
    }
    None
}

/// Möbius action on a complex point.
pub fn mobius(m: &ProjMat, z: Complex64) -> Complex64 {
    let [a, b, c, d] = m.to_f64();
    (a * z + b) / (c * z + d)
}

/// Result of the lemma-hypothesis checker.
#[derive(Clone, Debug, PartialEq)]
pub struct HypothesisCheck {
    pub pass: bool,
    pub diagnostics: Vec<String>,
}

/// `k = 1`: `E1` must be elliptic of infinite order. `k = 0`: additionally,
/// `E2` must not fix the fixed point of `E1`.
pub fn check_lemma_hypotheses(
    k: u32,
    e1: &ProjMat,
    e2: Option<&ProjMat>,
) -> Result<HypothesisCheck, EllipticError> {
    if k > 1 {
        return Err(EllipticError::BadWeight(k));
    }
    let mut diagnostics = Vec::new();
    let c1 = classify(e1)?;
    let mut pass = c1.kind == EllipticKind::EllipticInfinite;
    diagnostics.push(format!(
        "E1 = {e1}: {} with normalized trace {}",
        c1.kind.label(),
        c1.trace
    ));
    if k == 0 {
        let e2 = e2.ok_or(EllipticError::MissingSecondMatrix)?;
        let fixes = fixes_fixed_point_exact(e1, e2);
        if let (Some(z), true) = (c1.fixed_point, pass) {
            let moved = (mobius(e2, z) - z).norm();
            let numeric_fixes = moved < FIXED_POINT_NUMERIC;
            if numeric_fixes != fixes {
                return Err(EllipticError::Consistency(format!(
                    "exact and numeric fixed-point tests disagree (displacement {moved:e})"
                )));
            }
            diagnostics.push(format!("E2 = {e2} moves z1 = {z} by {moved:.3e}"));
        }
        if fixes {
            diagnostics.push("E2 fixes the fixed point of E1".into());
            pass = false;
        } else {
            diagnostics.push("E2 does not fix the fixed point of E1".into());
        }
    }
    Ok(HypothesisCheck { pass, diagnostics })
}

/// Exact test of whether `e2` fixes the (non-real) fixed point of `e1`: the
/// fixed-point quadratics `(c, d - a, -b)` must be proportional, or `e2` scalar.
pub fn fixes_fixed_point_exact(e1: &ProjMat, e2: &ProjMat) -> bool {
    if e2.is_scalar() {
        return true;
    }
    let v = |m: &ProjMat| [m.c().clone(), m.d() - m.a(), -m.b().clone()];
    let (x, y) = (v(e1), v(e2));
    // Proportional iff all 2x2 minors vanish.
    (&x[0] * &y[1] - &x[1] * &y[0]).is_zero()
        && (&x[0] * &y[2] - &x[2] * &y[0]).is_zero()
        && (&x[1] * &y[2] - &x[2] * &y[1]).is_zero()
}

/// Output of [`make_m_qsr`].
#[derive(Clone, Debug, PartialEq)]
pub struct MqsrResult {
    pub r: BigInt,
    pub r_tilde: BigInt,
    pub a_plus: ProjMat,
    pub a_minus: ProjMat,
    pub m: ProjMat,
    pub trace: BigRational,
    pub class: EllipticClass,
}

/// Build `M(q, s, r) = A_+^{-1} P_{2r/s} A_- P_{2r/q}` with
/// `A_+- = (q, +-r; +-r~ N, s)`. The default factorization is `r~ = 1`,
/// `r = (qs - 1)/N`; `custom` supplies `(r, r~)` instead.
pub fn make_m_qsr(
    q: u64,
    s: u64,
    n: u64,
    custom: Option<(i64, i64)>,
) -> Result<MqsrResult, EllipticError> {
    let pre = |msg: String| Err(EllipticError::Precondition(msg));
    if n == 0 {
        return pre("N must be positive".into());
    }
    if q == s {
        return pre(format!("q and s must differ (both {q})"));
    }
    if !is_prime(q) || !is_prime(s) {
        return pre(format!("q = {q} and s = {s} must be prime"));
    }
    if n % q == 0 || n % s == 0 {
        return pre(format!("q and s must not divide N = {n}"));
    }
    let qs = (q as u128) * (s as u128);
    if (qs - 1) % n as u128 != 0 {
        return pre(format!("qs = {qs} is not 1 mod {n}"));
    }
    let (r, rt) = match custom {
        Some((r, rt)) => {
            if (r as i128) * (rt as i128) * (n as i128) != qs as i128 - 1 {
                return pre(format!("qs - 1 != r r~ N for r = {r}, r~ = {rt}"));
            }
            (BigInt::from(r), BigInt::from(rt))
        }
        None => (BigInt::from((qs - 1) / n as u128), BigInt::one()),
    };
    let qb = BigInt::from(q);
    let sb = BigInt::from(s);
    let nb = BigInt::from(n);
    let i = |x: &BigInt| BigRational::from_integer(x.clone());
    let a_plus = RatMat::new(i(&qb), i(&r), i(&(&rt * &nb)), i(&sb));
    let a_minus = RatMat::new(i(&qb), -i(&r), -i(&(&rt * &nb)), i(&sb));
    let two_r = BigInt::from(2) * &r;
    let p = |x: BigRational| RatMat::new(rat(1), x, rat(0), rat(1));
    let p_s = p(BigRational::new(two_r.clone(), sb.clone()));
    let p_q = p(BigRational::new(two_r.clone(), qb.clone()));
    let m = a_plus
        .inverse()
        .ok_or_else(|| EllipticError::Consistency("A_+ is singular".into()))?
        .mul(&p_s)
        .mul(&a_minus)
        .mul(&p_q);
    let qs_r = BigRational::from_integer(&qb * &sb);
    let closed = RatMat::new(
        rat(1),
        BigRational::new(two_r.clone(), qb.clone()),
        -BigRational::new(BigInt::from(2) * &rt * &nb, sb.clone()),
        rat(-3) + rat(4) / qs_r.clone(),
    );
    if m != closed {
        return Err(EllipticError::Consistency(format!(
            "M(q,s,r) differs from the closed form for q={q}, s={s}, N={n}"
        )));
    }
    let trace = m.trace();
    let expected_trace = rat(-2) + rat(4) / qs_r;
    if trace != expected_trace {
        return Err(EllipticError::Consistency("trace mismatch".into()));
    }
    let mp = m
        .to_proj()
        .map_err(|e| EllipticError::Consistency(e.to_string()))?;
    let class = classify(&mp)?;
    Ok(MqsrResult {
        r,
        r_tilde: rt,
        a_plus: a_plus.to_proj().map_err(|e| EllipticError::Consistency(e.to_string()))?,
        a_minus: a_minus.to_proj().map_err(|e| EllipticError::Consistency(e.to_string()))?,
        m: mp,
        trace,
        class,
    })
}

/// A decomposition `gamma = P_u (q, r; cN, s) P_v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decomposition {
    /// `c = 0`: `gamma = +-P_b`; `u = b`, `v = 0`.
    Trivial { u: BigInt, v: BigInt },
    Primes {
        u: i64,
        v: i64,
        q: u64,
        s: u64,
        r: BigInt,
    },
}

/// Integers in the order `0, 1, -1, 2, -2, ...` up to `bound` in absolute value.
pub fn signed_search_order(bound: i64) -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..=bound).flat_map(|k| [k, -k]))
}

fn as_prime(x: &BigInt, excluded: &[u64]) -> Option<u64> {
    let v = x.to_u64()?;
    if is_prime(v) && !excluded.contains(&v) {
        Some(v)
    } else {
        None
    }
}

/// Write `gamma` in `Gamma0(N)` as `P_u (q, r; cN, s) P_v` with distinct
/// primes `q = a - u cN`, `s = d - v cN` outside `excluded`. The search runs
/// `u` (outer) then `v` (inner) through `0, 1, -1, 2, -2, ...`.
pub fn decompose_gamma(
    gamma: &ProjMat,
    n: u64,
    excluded: &[u64],
    bound: i64,
) -> Result<Decomposition, EllipticError> {
    if !is_member(gamma, SubgroupFlavor::Gamma0(n)) {
        return Err(EllipticError::Precondition(format!("{gamma} is not in Gamma0({n})")));
    }
    let (a, b, cn, d) = (gamma.a(), gamma.b(), gamma.c(), gamma.d());
    if cn.is_zero() {
        let dec = Decomposition::Trivial { u: b * a, v: BigInt::zero() };
        return Ok(dec);
    }
    for u in signed_search_order(bound) {
        let q = a - BigInt::from(u) * cn;
        let Some(qp) = as_prime(&q, excluded) else { continue };
        for v in signed_search_order(bound) {
            let s = d - BigInt::from(v) * cn;
            let Some(sp) = as_prime(&s, excluded) else { continue };
            if sp == qp {
                continue;
            }
            let (ub, vb) = (BigInt::from(u), BigInt::from(v));
            let r = b - a * &vb + &ub * &vb * cn - &ub * d;
            let dec = Decomposition::Primes { u, v, q: qp, s: sp, r };
            verify_decomposition(gamma, &dec)?;
            return Ok(dec);
        }
    }
    Err(EllipticError::NotFound(bound))
}

/// Exact reconstruction check of a decomposition.
pub fn verify_decomposition(gamma: &ProjMat, dec: &Decomposition) -> Result<(), EllipticError> {
    match dec {
        Decomposition::Trivial { u, .. } => {
            let p = ProjMat::new(BigInt::one(), u.clone(), BigInt::zero(), BigInt::one())
                .expect("unipotent matrix");
            if &p == gamma || p.negate() == *gamma {
                Ok(())
            } else {
                Err(EllipticError::Consistency(format!("{gamma} is not +-P_{u}")))
            }
        }
        Decomposition::Primes { u, v, q, s, r } => {
            let cn = gamma.c().clone();
            let (qb, sb) = (BigInt::from(*q), BigInt::from(*s));
            if &qb * &sb - r * &cn != BigInt::one() {
                return Err(EllipticError::Consistency("qs - r cN != 1".into()));
            }
            let mid = ProjMat::new(qb, r.clone(), cn, sb)
                .map_err(|e| EllipticError::Consistency(e.to_string()))?;
            let pu = make_special(&Letter::p_int(*u)).expect("P_u");
            let pv = make_special(&Letter::p_int(*v)).expect("P_v");
            let prod = pu.mul(&mid).mul(&pv);
            if &prod == gamma {
                Ok(())
            } else {
                Err(EllipticError::Consistency(format!(
                    "P_u M P_v = {prod}, expected {gamma}"
                )))
            }
        }
    }
}

/// `{2} ∪ {p | N}`.
pub fn default_excluded(n: u64) -> Vec<u64> {
    let mut v = vec![2];
    for p in crate::arith::prime_divisors(n) {
        if p != 2 {
            v.push(p);
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &str) -> ProjMat {
        s.parse::<crate::mat2::SpecialWord>().unwrap().eval().unwrap()
    }

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn classify_examples() {
        let s = classify(&ProjMat::lit(0, -1, 1, 0)).unwrap();
        assert_eq!(s.kind, EllipticKind::EllipticFinite { order: 4, psl2_order: 2 });
        let e = classify(&"1,-2/3;11/2,-8/3".parse().unwrap()).unwrap();
        assert_eq!(e.kind, EllipticKind::EllipticInfinite);
        assert_eq!(e.trace, q(-5, 3));
        let d = classify(&word("D^-1 P3/5")).unwrap();
        assert_eq!(d.kind, EllipticKind::EllipticInfinite);
        assert_eq!(d.trace, q(-2, 5));
        let c = classify(&word("C^-1 P1/3 L20^2")).unwrap();
        assert_eq!(c.kind, EllipticKind::EllipticInfinite);
        assert_eq!(c.trace, q(5, 3));
        assert_eq!(classify(&ProjMat::lit(1, 1, 0, 1)).unwrap().kind, EllipticKind::Parabolic);
        assert_eq!(classify(&ProjMat::lit(2, 1, 1, 1)).unwrap().kind, EllipticKind::Hyperbolic);
        assert_eq!(classify(&ProjMat::minus_identity()).unwrap().kind, EllipticKind::Identity);
        assert!(matches!(
            classify(&make_special(&Letter::J(18)).unwrap()),
            Err(EllipticError::CannotNormalize(_))
        ));
    }

    #[test]
    fn fixed_point_of_elliptic() {
        let m = ProjMat::lit(6, -4, 33, -16);
        let z = classify(&m).unwrap().fixed_point.unwrap();
        assert!(z.im > 0.0);
        assert!(fixed_point_residual(&m, z) < 1e-12);
        assert!((mobius(&m, z) - z).norm() < 1e-12);
    }

    #[test]
    fn hypotheses() {
        let e1 = ProjMat::lit(6, -4, 33, -16);
        let y_printed_inv = "2,-1;11,5".parse::<ProjMat>().unwrap().inverse();
        assert!(check_lemma_hypotheses(0, &e1, Some(&y_printed_inv)).unwrap().pass);
        assert!(!check_lemma_hypotheses(0, &e1, Some(&e1)).unwrap().pass);
        assert!(check_lemma_hypotheses(1, &word("D^-1 P3/5"), None).unwrap().pass);
        assert!(!check_lemma_hypotheses(1, &ProjMat::lit(0, -1, 1, 0), None).unwrap().pass);
        assert_eq!(
            check_lemma_hypotheses(0, &e1, None),
            Err(EllipticError::MissingSecondMatrix)
        );
    }

    #[test]
    fn m_qsr_examples() {
        let r = make_m_qsr(5, 7, 17, None).unwrap();
        assert_eq!(r.r, BigInt::from(2));
        assert_eq!(r.trace, q(-66, 35));
        assert_eq!(r.class.kind, EllipticKind::EllipticInfinite);
        let r = make_m_qsr(3, 5, 7, None).unwrap();
        assert_eq!(r.trace, q(-26, 15));
        assert!(make_m_qsr(3, 5, 4, None).is_err());
        // Alternative factorization qs - 1 = r r~ N.
        let r = make_m_qsr(5, 7, 17, Some((1, 2))).unwrap();
        assert_eq!(r.trace, q(-66, 35));
    }

    #[test]
    fn decomposition_examples() {
        let a = ProjMat::lit(7, -1, 36, -5);
        let dec = decompose_gamma(&a, 18, &[2, 3], 10_000).unwrap();
        assert_eq!(
            dec,
            Decomposition::Primes { u: 0, v: -1, q: 7, s: 31, r: BigInt::from(6) }
        );
        // The tuple (-1, -1, 43, 31, 37) is also a valid decomposition.
        let alt = Decomposition::Primes { u: -1, v: -1, q: 43, s: 31, r: BigInt::from(37) };
        verify_decomposition(&a, &alt).unwrap();
        let w = ProjMat::lit(1, 0, 18, 1);
        let dec = decompose_gamma(&w, 18, &[2, 3], 10_000).unwrap();
        assert_eq!(
            dec,
            Decomposition::Primes { u: -1, v: -2, q: 19, s: 37, r: BigInt::from(39) }
        );
        let p5 = ProjMat::lit(1, 5, 0, 1);
        assert!(matches!(
            decompose_gamma(&p5, 18, &[2, 3], 10).unwrap(),
            Decomposition::Trivial { .. }
        ));
    }
}
