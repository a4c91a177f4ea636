//! The group ring `Q(i)[symbols][GL2+(Q)]` modulo positive scalars, the
//! relation families that generate the annihilator ideal of an automorphic
//! function, and an exact checker for ideal-membership certificates.
//!
//! A certificate asserts `claim = sum body(rel_j) * m_j`. Because the
//! annihilator is a right ideal, any such sum annihilates the function, so a
//! valid certificate proves `claim ≡ 0`.

mod coeff;
pub mod tables;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::mat2::ProjMat;

pub use coeff::{parse_rational_str, rational_str, GaussRat, Monomial, SymbolicCoeff};
pub use tables::{verify_tables, TableOptions, TableReport};

#[derive(Debug, Error)]
pub enum GroupRingError {
    #[error("certificate parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("invalid relation {name}: {message}")]
    BadRelation { name: String, message: String },
    #[error("unsupported level {0}")]
    UnsupportedLevel(u64),
    #[error(transparent)]
    Mat(#[from] crate::mat2::Mat2Error),
}

/// Finite formal sum of projective matrices. Zero coefficients are dropped.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupRingElem {
    terms: BTreeMap<ProjMat, SymbolicCoeff>,
}

impl GroupRingElem {
    pub fn zero() -> GroupRingElem {
        GroupRingElem::default()
    }

    pub fn one() -> GroupRingElem {
        GroupRingElem::from_mat(ProjMat::identity())
    }

    pub fn from_mat(m: ProjMat) -> GroupRingElem {
        GroupRingElem::term(SymbolicCoeff::one(), m)
    }

    pub fn term(c: SymbolicCoeff, m: ProjMat) -> GroupRingElem {
        let mut g = GroupRingElem::zero();
        g.add_term(m, c);
        g
    }

    /// Build from `(integer coefficient, matrix)` pairs.
    pub fn from_pairs(pairs: &[(i64, ProjMat)]) -> GroupRingElem {
        let mut g = GroupRingElem::zero();
        for (c, m) in pairs {
            g.add_term(m.clone(), SymbolicCoeff::int(*c));
        }
        g
    }

    pub fn scalar(c: SymbolicCoeff) -> GroupRingElem {
        GroupRingElem::term(c, ProjMat::identity())
    }

    pub fn add_term(&mut self, m: ProjMat, c: SymbolicCoeff) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&m) {
            Some(old) => old + &c,
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &ProjMat) -> SymbolicCoeff {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ProjMat, &SymbolicCoeff)> {
        self.terms.iter()
    }

    /// Multiply every coefficient by `c` (on the left; coefficients commute).
    pub fn scale(&self, c: &SymbolicCoeff) -> GroupRingElem {
        let mut out = GroupRingElem::zero();
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    /// Coefficient-wise numeric substitution.
    pub fn eval_coeffs(
        &self,
        subst: &BTreeMap<String, Complex64>,
    ) -> Option<BTreeMap<ProjMat, Complex64>> {
        self.terms
            .iter()
            .map(|(m, c)| Some((m.clone(), c.eval(subst)?)))
            .collect()
    }

    /// Indeterminates appearing in any coefficient.
    pub fn symbols(&self) -> Vec<String> {
        let mut out: Vec<String> = self.terms.values().flat_map(|c| c.symbols()).collect();
        out.sort();
        out.dedup();
        out
    }
}

/// Bilinear extension of the matrix product.
pub fn gr_mul(x: &GroupRingElem, y: &GroupRingElem) -> GroupRingElem {
    let mut out = GroupRingElem::zero();
    for (m1, c1) in &x.terms {
        for (m2, c2) in &y.terms {
            out.add_term(m1.mul(m2), c1 * c2);
        }
    }
    out
}

impl Add for &GroupRingElem {
    type Output = GroupRingElem;
    fn add(self, o: &GroupRingElem) -> GroupRingElem {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Neg for &GroupRingElem {
    type Output = GroupRingElem;
    fn neg(self) -> GroupRingElem {
        self.scale(&SymbolicCoeff::int(-1))
    }
}

impl Sub for &GroupRingElem {
    type Output = GroupRingElem;
    fn sub(self, o: &GroupRingElem) -> GroupRingElem {
        self + &(-o)
    }
}

impl Mul for &GroupRingElem {
    type Output = GroupRingElem;
    fn mul(self, o: &GroupRingElem) -> GroupRingElem {
        gr_mul(self, o)
    }
}

impl fmt::Display for GroupRingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("[{c}]·({m})"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Symbol for the Hecke eigenvalue at `p`.
pub fn hecke_symbol(p: u64) -> String {
    format!("a_{p}")
}

/// Generators of the annihilator ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `1 - P_r`.
    Periodic { r: i64 },
    /// `H_N - lam_H`.
    Fricke { n: u64 },
    /// `a_p - T_p`, with `T_p` unnormalized.
    Hecke { p: u64 },
    /// The `U_p` operator body; its shape depends on whether `p^2 | N`.
    Up { p: u64, n: u64 },
    /// `Q - lam_Q`.
    MinusId,
}

impl Relation {
    pub fn name(&self) -> &'static str {
        match self {
            Relation::Periodic { .. } => "periodic",
            Relation::Fricke { .. } => "fricke",
            Relation::Hecke { .. } => "hecke",
            Relation::Up { .. } => "u_p",
            Relation::MinusId => "minus_id",
        }
    }

    pub fn validate(&self) -> Result<(), GroupRingError> {
        let bad = |msg: &str| {
            Err(GroupRingError::BadRelation {
                name: self.name().to_string(),
                message: msg.to_string(),
            })
        };
        match *self {
            Relation::Fricke { n } if n == 0 => bad("level must be positive"),
            Relation::Hecke { p } if !crate::arith::is_prime(p) => bad("p must be prime"),
            Relation::Up { p, n } => {
                if !crate::arith::is_prime(p) {
                    bad("p must be prime")
                } else if n == 0 || n % p != 0 {
                    bad("p must divide N")
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }

    /// The group-ring element this relation asserts to be `≡ 0`.
    pub fn body(&self) -> GroupRingElem {
        let one = GroupRingElem::one();
        match *self {
            Relation::Periodic { r } => {
                &one - &GroupRingElem::from_mat(ProjMat::lit(1, r, 0, 1))
            }
            Relation::Fricke { n } => {
                let h = ProjMat::lit(0, -1, n as i64, 0);
                &GroupRingElem::from_mat(h) - &GroupRingElem::scalar(SymbolicCoeff::symbol("lam_H"))
            }
            Relation::Hecke { p } => {
                let p = p as i64;
                let mut g = GroupRingElem::scalar(SymbolicCoeff::symbol(&hecke_symbol(p as u64)));
                g.add_term(ProjMat::lit(p, 0, 0, 1), SymbolicCoeff::int(-1));
                for a in 0..p {
                    g.add_term(ProjMat::lit(1, a, 0, p), SymbolicCoeff::int(-1));
                }
                g
            }
            Relation::Up { p, n } => {
                let pi = p as i64;
                let mut g = GroupRingElem::zero();
                for a in 0..pi {
                    g.add_term(ProjMat::lit(pi, a, 0, pi), SymbolicCoeff::one());
                }
                if n % (p * p) != 0 {
                    g.add_term(ProjMat::lit(pi, 0, 0, 1), SymbolicCoeff::int(-1));
                }
                g
            }
            Relation::MinusId => {
                &GroupRingElem::from_mat(ProjMat::minus_identity())
                    - &GroupRingElem::scalar(SymbolicCoeff::symbol("lam_Q"))
            }
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Relation::Periodic { r } => write!(f, "periodic({r})"),
            Relation::Fricke { n } => write!(f, "fricke({n})"),
            Relation::Hecke { p } => write!(f, "hecke({p})"),
            Relation::Up { p, n } => write!(f, "u_p({p},{n})"),
            Relation::MinusId => write!(f, "minus_id"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateMeta {
    #[serde(default)]
    pub level: u64,
    #[serde(default)]
    pub weight: i64,
    /// Human-readable meaning of each action scalar used, e.g. `lam_H: "i^-k"`.
    #[serde(default, rename = "scalar-assignments")]
    pub scalar_assignments: BTreeMap<String, String>,
    #[serde(default)]
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub claim: GroupRingElem,
    pub witness: Vec<(Relation, GroupRingElem)>,
    pub meta: CertificateMeta,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub matrix: ProjMat,
    pub claimed: SymbolicCoeff,
    pub derived: SymbolicCoeff,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateCheck {
    pub valid: bool,
    pub mismatch: Option<Mismatch>,
    pub derived: GroupRingElem,
}

impl fmt::Display for CertificateCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.mismatch {
            None => write!(f, "valid ({} terms)", self.derived.len()),
            Some(m) => write!(
                f,
                "invalid: at ({}) claim has {} but witness gives {}",
                m.matrix, m.claimed, m.derived
            ),
        }
    }
}

impl Certificate {
    /// `sum body(rel) * multiplier` over the witness.
    pub fn witness_sum(&self) -> GroupRingElem {
        let mut acc = GroupRingElem::zero();
        for (rel, m) in &self.witness {
            acc = &acc + &gr_mul(&rel.body(), m);
        }
        acc
    }

    /// Relations in the witness whose bodies involve each declared scalar.
    pub fn scalars_used(&self) -> Vec<String> {
        let mut s = self.claim.symbols();
        for (rel, m) in &self.witness {
            s.extend(rel.body().symbols());
            s.extend(m.symbols());
        }
        s.sort();
        s.dedup();
        s
    }
}

/// Exact comparison of the witness sum with the claim.
pub fn check_certificate(c: &Certificate) -> CertificateCheck {
    let derived = c.witness_sum();
    let diff = &c.claim - &derived;
    let mismatch = diff.terms().next().map(|(m, _)| Mismatch {
        matrix: m.clone(),
        claimed: c.claim.coeff(m),
        derived: derived.coeff(m),
    });
    CertificateCheck {
        valid: mismatch.is_none(),
        mismatch,
        derived,
    }
}

// ---------------------------------------------------------------------------
// Serialized form.

#[derive(Serialize, Deserialize)]
struct TermJson {
    monomial: BTreeMap<String, u32>,
    re: String,
    im: String,
}

#[derive(Serialize, Deserialize)]
struct CoeffJson {
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct RelationJson {
    name: String,
    #[serde(default)]
    params: BTreeMap<String, i64>,
}

#[derive(Serialize, Deserialize)]
struct WitnessJson {
    relation: RelationJson,
    multiplier: Vec<(CoeffJson, String)>,
}

#[derive(Serialize, Deserialize)]
struct CertificateJson {
    claim: Vec<(CoeffJson, String)>,
    witness: Vec<WitnessJson>,
    #[serde(default)]
    meta: CertificateMeta,
}

fn parse_err(location: impl Into<String>, message: impl Into<String>) -> GroupRingError {
    GroupRingError::Parse {
        location: location.into(),
        message: message.into(),
    }
}

fn coeff_from_json(c: &CoeffJson, loc: &str) -> Result<SymbolicCoeff, GroupRingError> {
    let mut out = SymbolicCoeff::zero();
    for (i, t) in c.terms.iter().enumerate() {
        let here = format!("{loc}.terms[{i}]");
        let re = parse_rational_str(&t.re)
            .ok_or_else(|| parse_err(&here, format!("bad rational {:?}", t.re)))?;
        let im = parse_rational_str(&t.im)
            .ok_or_else(|| parse_err(&here, format!("bad rational {:?}", t.im)))?;
        out.add_term(t.monomial.clone(), GaussRat::new(re, im));
    }
    Ok(out)
}

fn coeff_to_json(c: &SymbolicCoeff) -> CoeffJson {
    CoeffJson {
        terms: c
            .terms()
            .map(|(m, g)| TermJson {
                monomial: m.clone(),
                re: rational_str(&g.re),
                im: rational_str(&g.im),
            })
            .collect(),
    }
}

fn elem_from_json(
    pairs: &[(CoeffJson, String)],
    loc: &str,
) -> Result<GroupRingElem, GroupRingError> {
    let mut g = GroupRingElem::zero();
    for (i, (c, m)) in pairs.iter().enumerate() {
        let here = format!("{loc}[{i}]");
        let coeff = coeff_from_json(c, &here)?;
        let mat: ProjMat = m
            .parse()
            .map_err(|e: crate::mat2::Mat2Error| parse_err(&here, e.to_string()))?;
        g.add_term(mat, coeff);
    }
    Ok(g)
}

fn elem_to_json(g: &GroupRingElem) -> Vec<(CoeffJson, String)> {
    g.terms()
        .map(|(m, c)| (coeff_to_json(c), m.to_string()))
        .collect()
}

fn relation_from_json(r: &RelationJson, loc: &str) -> Result<Relation, GroupRingError> {
    let get = |k: &str| {
        r.params
            .get(k)
            .copied()
            .ok_or_else(|| parse_err(loc, format!("relation {} needs parameter {k}", r.name)))
    };
    let positive = |k: &str| -> Result<u64, GroupRingError> {
        let v = get(k)?;
        u64::try_from(v)
            .ok()
            .filter(|v| *v > 0)
            .ok_or_else(|| parse_err(loc, format!("parameter {k} must be positive")))
    };
    let rel = match r.name.as_str() {
        "periodic" => Relation::Periodic { r: get("r")? },
        "fricke" => Relation::Fricke { n: positive("N")? },
        "hecke" => Relation::Hecke { p: positive("p")? },
        "u_p" => Relation::Up {
            p: positive("p")?,
            n: positive("N")?,
        },
        "minus_id" => Relation::MinusId,
        other => return Err(parse_err(loc, format!("unknown relation {other:?}"))),
    };
    rel.validate().map_err(|e| parse_err(loc, e.to_string()))?;
    Ok(rel)
}

fn relation_to_json(r: &Relation) -> RelationJson {
    let mut params = BTreeMap::new();
    match *r {
        Relation::Periodic { r } => {
            params.insert("r".to_string(), r);
        }
        Relation::Fricke { n } => {
            params.insert("N".to_string(), n as i64);
        }
        Relation::Hecke { p } => {
            params.insert("p".to_string(), p as i64);
        }
        Relation::Up { p, n } => {
            params.insert("p".to_string(), p as i64);
            params.insert("N".to_string(), n as i64);
        }
        Relation::MinusId => {}
    }
    RelationJson {
        name: r.name().to_string(),
        params,
    }
}

impl Certificate {
    pub fn from_json(text: &str) -> Result<Certificate, GroupRingError> {
        let raw: CertificateJson = serde_json::from_str(text).map_err(|e| {
            parse_err(format!("line {} column {}", e.line(), e.column()), e.to_string())
        })?;
        let claim = elem_from_json(&raw.claim, "claim")?;
        let mut witness = Vec::with_capacity(raw.witness.len());
        for (i, w) in raw.witness.iter().enumerate() {
            let rel = relation_from_json(&w.relation, &format!("witness[{i}].relation"))?;
            let mult = elem_from_json(&w.multiplier, &format!("witness[{i}].multiplier"))?;
            witness.push((rel, mult));
        }
        Ok(Certificate {
            claim,
            witness,
            meta: raw.meta,
        })
    }

    pub fn to_json(&self) -> String {
        let raw = CertificateJson {
            claim: elem_to_json(&self.claim),
            witness: self
                .witness
                .iter()
                .map(|(r, m)| WitnessJson {
                    relation: relation_to_json(r),
                    multiplier: elem_to_json(m),
                })
                .collect(),
            meta: self.meta.clone(),
        };
        serde_json::to_string_pretty(&raw).expect("certificate serializes")
    }
}

/// A certificate bundled with the crate.
pub struct ShippedCertificate {
    pub name: &'static str,
    pub text: &'static str,
}

macro_rules! shipped {
    ($($name:literal),* $(,)?) => {
        &[$(ShippedCertificate {
            name: $name,
            text: include_str!(concat!("../../data/certificates/", $name, ".json")),
        }),*]
    };
}

pub const SHIPPED: &[ShippedCertificate] = shipped!(
    "periodic_1",
    "periodic_shift_2",
    "minus_id",
    "hecke_3_shift",
    "fricke_w_4",
    "fricke_w_11",
    "fricke_w_18",
    "fricke_w_20",
    "fricke_w_24",
    "l_chain_20",
    "l_chain_24",
    "u3_chain_18",
    "u3_chain_18_j",
    "u3_chain_18_jpj",
);

/// Parse every bundled certificate.
pub fn shipped_certificates() -> Result<Vec<(&'static str, Certificate)>, GroupRingError> {
    SHIPPED
        .iter()
        .map(|s| Ok((s.name, Certificate::from_json(s.text)?)))
        .collect()
}

/// Bundled certificates relevant at level `n` (level 0 means level-free).
pub fn certificates_for_level(
    n: u64,
) -> Result<Vec<(&'static str, Certificate)>, GroupRingError> {
    Ok(shipped_certificates()?
        .into_iter()
        .filter(|(_, c)| c.meta.level == 0 || c.meta.level == n)
        .collect())
}

/// `P_r` as an exact projective matrix for rational `r = num/den`.
pub fn p_mat(num: i64, den: i64) -> ProjMat {
    let r = BigRational::new(BigInt::from(num), BigInt::from(den));
    crate::mat2::RatMat::new(
        BigRational::from_integer(1.into()),
        r,
        BigRational::from_integer(0.into()),
        BigRational::from_integer(1.into()),
    )
    .to_proj()
    .expect("translation has positive determinant")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_example() {
        let p13 = GroupRingElem::from_mat(p_mat(1, 3));
        let x = &GroupRingElem::one() - &p13;
        let got = gr_mul(&x, &p13);
        let expect = &p13 - &GroupRingElem::from_mat(p_mat(2, 3));
        assert_eq!(got, expect);
    }

    #[test]
    fn hecke_body_has_five_terms() {
        let b = Relation::Hecke { p: 3 }.body();
        assert_eq!(b.len(), 5);
        assert_eq!(b.coeff(&ProjMat::identity()), SymbolicCoeff::symbol("a_3"));
        for m in ["3,0;0,1", "1,0;0,3", "1,1;0,3", "1,2;0,3"] {
            assert_eq!(b.coeff(&m.parse().unwrap()), SymbolicCoeff::int(-1));
        }
    }

    #[test]
    fn two_one_minus_terms() {
        let one = GroupRingElem::one();
        let x = GroupRingElem::from_mat(ProjMat::lit(3, -1, 40, -13).mul(&p_mat(1, 3)));
        let y = GroupRingElem::from_mat(ProjMat::lit(3, -2, 20, -13).mul(&p_mat(2, 3)));
        let s = &(&one - &x) + &(&one - &y);
        // X·P(1/3) = (9,0;120,1) and Y·P(2/3) = (9,0;60,1) are distinct, and
        // both identity terms merge.
        assert_eq!(s.coeff(&ProjMat::identity()), SymbolicCoeff::int(2));
        assert_eq!(s.coeff(&ProjMat::lit(9, 0, 120, 1)), SymbolicCoeff::int(-1));
        assert_eq!(s.coeff(&ProjMat::lit(9, 0, 60, 1)), SymbolicCoeff::int(-1));
        assert_eq!(s.len(), 3);
    }

    #[test]
    fn up_bodies() {
        let sq = Relation::Up { p: 2, n: 20 }.body();
        assert_eq!(sq.len(), 2);
        let simple = Relation::Up { p: 5, n: 20 }.body();
        assert_eq!(simple.len(), 6);
        assert!(Relation::Up { p: 3, n: 20 }.validate().is_err());
    }

    #[test]
    fn trivial_certificates() {
        let c = Certificate {
            claim: Relation::Periodic { r: 1 }.body(),
            witness: vec![(Relation::Periodic { r: 1 }, GroupRingElem::one())],
            meta: CertificateMeta::default(),
        };
        assert!(check_certificate(&c).valid);
        let empty = Certificate {
            claim: GroupRingElem::zero(),
            witness: vec![],
            meta: CertificateMeta::default(),
        };
        assert!(check_certificate(&empty).valid);
        let back = Certificate::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn parse_errors_have_locations() {
        let bad = r#"{"claim": [[{"terms": []}, "1,2;3"]], "witness": []}"#;
        let e = Certificate::from_json(bad).unwrap_err().to_string();
        assert!(e.contains("claim[0]"), "{e}");
        let syntax = "{\"claim\": [,]}";
        let e = Certificate::from_json(syntax).unwrap_err().to_string();
        assert!(e.contains("line 1"), "{e}");
    }

    #[test]
    fn shipped_certificates_validate() {
        for (name, c) in shipped_certificates().unwrap() {
            let r = check_certificate(&c);
            assert!(r.valid, "{name}: {r}");
        }
    }
}
