//! Polynomial coefficients over the Gaussian rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact element of `Q(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> GaussRat {
        GaussRat { re, im }
    }

    pub fn int(x: i64) -> GaussRat {
        GaussRat::new(BigRational::from_integer(x.into()), BigRational::zero())
    }

    pub fn i() -> GaussRat {
        GaussRat::new(BigRational::zero(), BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn to_complex(&self) -> Complex64 {
        let f = |x: &BigRational| x.to_f64().unwrap_or(f64::NAN);
        Complex64::new(f(&self.re), f(&self.im))
    }
}

impl Add for &GaussRat {
    type Output = GaussRat;
    fn add(self, o: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Mul for &GaussRat {
    type Output = GaussRat;
    fn mul(self, o: &GaussRat) -> GaussRat {
        GaussRat::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat::new(-&self.re, -&self.im)
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                write!(f, "({}{}{}i)", self.re, sign, self.im.abs())
            }
        }
    }
}

/// Product of indeterminates with positive exponents, ordered by name.
pub type Monomial = BTreeMap<String, u32>;

fn mono_mul(x: &Monomial, y: &Monomial) -> Monomial {
    let mut out = x.clone();
    for (s, e) in y {
        *out.entry(s.clone()).or_insert(0) += e;
    }
    out
}

/// Sparse polynomial in named indeterminates with `Q(i)` coefficients.
/// Zero terms are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymbolicCoeff {
    terms: BTreeMap<Monomial, GaussRat>,
}

impl SymbolicCoeff {
    pub fn zero() -> SymbolicCoeff {
        SymbolicCoeff::default()
    }

    pub fn constant(c: GaussRat) -> SymbolicCoeff {
        let mut s = SymbolicCoeff::zero();
        s.add_term(Monomial::new(), c);
        s
    }

    pub fn int(x: i64) -> SymbolicCoeff {
        SymbolicCoeff::constant(GaussRat::int(x))
    }

    pub fn one() -> SymbolicCoeff {
        SymbolicCoeff::int(1)
    }

    /// A single indeterminate.
    pub fn symbol(name: &str) -> SymbolicCoeff {
        let mut m = Monomial::new();
        m.insert(name.to_string(), 1);
        let mut s = SymbolicCoeff::zero();
        s.add_term(m, GaussRat::int(1));
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussRat)> {
        self.terms.iter()
    }

    /// Add `c * m` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: GaussRat) {
        if c.is_zero() {
            return;
        }
        let m: Monomial = m.into_iter().filter(|(_, e)| *e > 0).collect();
        let entry = self.terms.entry(m.clone()).or_insert_with(|| GaussRat::int(0));
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// Names of all indeterminates that occur.
    pub fn symbols(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .terms
            .keys()
            .flat_map(|m| m.keys().cloned())
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Numeric value after substituting every indeterminate; `None` if one is
    /// missing from `subst`.
    pub fn eval(&self, subst: &BTreeMap<String, Complex64>) -> Option<Complex64> {
        let mut total = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut v = c.to_complex();
            for (s, e) in m {
                v *= subst.get(s)?.powi(*e as i32);
            }
            total += v;
        }
        Some(total)
    }
}

impl Add for &SymbolicCoeff {
    type Output = SymbolicCoeff;
    fn add(self, o: &SymbolicCoeff) -> SymbolicCoeff {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Neg for &SymbolicCoeff {
    type Output = SymbolicCoeff;
    fn neg(self) -> SymbolicCoeff {
        SymbolicCoeff {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Sub for &SymbolicCoeff {
    type Output = SymbolicCoeff;
    fn sub(self, o: &SymbolicCoeff) -> SymbolicCoeff {
        self + &(-o)
    }
}

impl Mul for &SymbolicCoeff {
    type Output = SymbolicCoeff;
    fn mul(self, o: &SymbolicCoeff) -> SymbolicCoeff {
        let mut out = SymbolicCoeff::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(mono_mul(m1, m2), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for SymbolicCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> = m
                .iter()
                .map(|(s, e)| if *e == 1 { s.clone() } else { format!("{s}^{e}") })
                .collect();
            let is_one = c == &GaussRat::int(1);
            match (mono.is_empty(), is_one) {
                (true, _) => write!(f, "{c}")?,
                (false, true) => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "{c}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

/// Parse `"p/q"` or `"p"` as an exact rational.
pub fn parse_rational_str(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(BigRational::new(p, q))
            }
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// Render an exact rational as `"p/q"` or `"p"`.
pub fn rational_str(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let l = SymbolicCoeff::symbol("lam_H");
        let one = SymbolicCoeff::one();
        let x = &l + &one;
        let y = &l - &one;
        let prod = &x * &y;
        let expect = &(&l * &l) - &one;
        assert_eq!(prod, expect);
        assert!((&x - &x).is_zero());
        assert_eq!(expect.to_string(), "-1 + lam_H^2");
    }

    #[test]
    fn gaussian() {
        let i = SymbolicCoeff::constant(GaussRat::i());
        assert_eq!(&i * &i, SymbolicCoeff::int(-1));
    }

    #[test]
    fn substitution() {
        let a3 = SymbolicCoeff::symbol("a_3");
        let c = &(&a3 * &a3) + &SymbolicCoeff::int(2);
        let mut s = BTreeMap::new();
        s.insert("a_3".to_string(), Complex64::new(0.0, 1.0));
        assert_eq!(c.eval(&s), Some(Complex64::new(1.0, 0.0)));
        assert_eq!(c.eval(&BTreeMap::new()), None);
    }
}
