//! Exact 2x2 matrices with positive determinant, taken up to positive scalars.
//!
//! A [`ProjMat`] stores the canonical integer representative of the class
//! `{t*M : t > 0 rational}`: denominators are cleared and the entries are divided
//! by their gcd. No sign normalization is applied, so `M` and `-M` stay distinct
//! and `Q = -I` is a genuine element.
//!
//! The module also holds the alphabet of named matrices (`P_r`, `H_N`, `Q`, `W_N`,
//! `J_N`, `L_N`, `A`, `B`, `C`, `D` and literal matrices), word evaluation, and a
//! bounded iterative-deepening word search.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Mat2Error {
    #[error("matrix has non-positive determinant ({0})")]
    NonPositiveDeterminant(String),
    #[error("cannot parse matrix `{input}`: {reason}")]
    ParseMatrix { input: String, reason: String },
    #[error("cannot parse word token `{token}`: {reason}")]
    ParseToken { token: String, reason: String },
    #[error("invalid parameter for {token}: {reason}")]
    InvalidParameter { token: String, reason: String },
}

/// Exact rational 2x2 matrix (no projective quotient).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMat {
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
    pub d: BigRational,
}

impl RatMat {
    pub fn new(a: BigRational, b: BigRational, c: BigRational, d: BigRational) -> Self {
        RatMat { a, b, c, d }
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Self {
        let r = |x: i64| BigRational::from_integer(BigInt::from(x));
        RatMat::new(r(a), r(b), r(c), r(d))
    }

    pub fn identity() -> Self {
        RatMat::from_i64(1, 0, 0, 1)
    }

    pub fn det(&self) -> BigRational {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn trace(&self) -> BigRational {
        &self.a + &self.d
    }

    pub fn mul(&self, o: &RatMat) -> RatMat {
        RatMat {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    /// Exact inverse, `None` when singular.
    pub fn inverse(&self) -> Option<RatMat> {
        let det = self.det();
        if det.is_zero() {
            return None;
        }
        Some(RatMat {
            a: &self.d / &det,
            b: -&self.b / &det,
            c: -&self.c / &det,
            d: &self.a / &det,
        })
    }

    pub fn scale(&self, t: &BigRational) -> RatMat {
        RatMat {
            a: &self.a * t,
            b: &self.b * t,
            c: &self.c * t,
            d: &self.d * t,
        }
    }

    /// Canonical projective class; fails unless the determinant is positive.
    pub fn to_proj(&self) -> Result<ProjMat, Mat2Error> {
        let det = self.det();
        if !det.is_positive() {
            return Err(Mat2Error::NonPositiveDeterminant(det.to_string()));
        }
        let ents = [&self.a, &self.b, &self.c, &self.d];
        let mut l = BigInt::one();
        for e in ents {
            l = l.lcm(e.denom());
        }
        let ints: Vec<BigInt> = ents
            .iter()
            .map(|e| (*e * BigRational::from_integer(l.clone())).to_integer())
            .collect();
        Ok(ProjMat::canonical_from(
            ints[0].clone(),
            ints[1].clone(),
            ints[2].clone(),
            ints[3].clone(),
        ))
    }
}

/// Canonical integer representative of a positive-scalar class of matrices
/// with positive determinant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjMat {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl ProjMat {
    fn canonical_from(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> ProjMat {
        let g = a.gcd(&b).gcd(&c).gcd(&d);
        debug_assert!(!g.is_zero());
        if g.is_one() {
            ProjMat { a, b, c, d }
        } else {
            ProjMat {
                a: a / &g,
                b: b / &g,
                c: c / &g,
                d: d / &g,
            }
        }
    }

    /// Build from integer entries; the result is canonicalized.
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<ProjMat, Mat2Error> {
        let det = &a * &d - &b * &c;
        if !det.is_positive() {
            return Err(Mat2Error::NonPositiveDeterminant(det.to_string()));
        }
        Ok(ProjMat::canonical_from(a, b, c, d))
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Result<ProjMat, Mat2Error> {
        ProjMat::new(a.into(), b.into(), c.into(), d.into())
    }

    /// Shorthand for literals known to have positive determinant.
    ///
    /// # Panics
    /// Panics if the determinant is not positive.
    pub fn lit(a: i64, b: i64, c: i64, d: i64) -> ProjMat {
        ProjMat::from_i64(a, b, c, d).expect("literal matrix must have positive determinant")
    }

    pub fn identity() -> ProjMat {
        ProjMat::lit(1, 0, 0, 1)
    }

    /// The class of `-I`.
    pub fn minus_identity() -> ProjMat {
        ProjMat::lit(-1, 0, 0, -1)
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }
    pub fn b(&self) -> &BigInt {
        &self.b
    }
    pub fn c(&self) -> &BigInt {
        &self.c
    }
    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    pub fn mul(&self, o: &ProjMat) -> ProjMat {
        ProjMat::canonical_from(
            &self.a * &o.a + &self.b * &o.c,
            &self.a * &o.b + &self.b * &o.d,
            &self.c * &o.a + &self.d * &o.c,
            &self.c * &o.b + &self.d * &o.d,
        )
    }

    /// The adjugate, which is a positive multiple of the inverse.
    pub fn inverse(&self) -> ProjMat {
        ProjMat::canonical_from(
            self.d.clone(),
            -&self.b,
            -&self.c,
            self.a.clone(),
        )
    }

    pub fn pow(&self, e: i64) -> ProjMat {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = ProjMat::identity();
        let mut sq = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&sq);
            }
            n >>= 1;
            if n > 0 {
                sq = sq.mul(&sq);
            }
        }
        acc
    }

    /// `Q * M`, i.e. the class of `-M`.
    pub fn negate(&self) -> ProjMat {
        ProjMat {
            a: -&self.a,
            b: -&self.b,
            c: -&self.c,
            d: -&self.d,
        }
    }

    /// True for the classes of `I` and `-I`.
    pub fn is_scalar(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.a == self.d
    }

    pub fn is_identity(&self) -> bool {
        self.is_scalar() && self.a.is_positive()
    }

    pub fn is_minus_identity(&self) -> bool {
        self.is_scalar() && self.a.is_negative()
    }

    pub fn to_ratmat(&self) -> RatMat {
        let r = |x: &BigInt| BigRational::from_integer(x.clone());
        RatMat::new(r(&self.a), r(&self.b), r(&self.c), r(&self.d))
    }

    /// Entries as floats (lossy for huge entries).
    pub fn to_f64(&self) -> [f64; 4] {
        let f = |x: &BigInt| x.to_f64().unwrap_or(f64::NAN);
        [f(&self.a), f(&self.b), f(&self.c), f(&self.d)]
    }

    /// Entries as `i64` when they all fit.
    pub fn to_i64(&self) -> Option<[i64; 4]> {
        Some([
            self.a.to_i64()?,
            self.b.to_i64()?,
            self.c.to_i64()?,
            self.d.to_i64()?,
        ])
    }
}

impl std::ops::Mul for &ProjMat {
    type Output = ProjMat;
    fn mul(self, rhs: &ProjMat) -> ProjMat {
        ProjMat::mul(self, rhs)
    }
}

impl fmt::Display for ProjMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{};{},{}", self.a, self.b, self.c, self.d)
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p, q))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// Parse the `"a,b;c,d"` text format into an exact rational matrix.
pub fn parse_ratmat(input: &str) -> Result<RatMat, Mat2Error> {
    let err = |reason: &str| Mat2Error::ParseMatrix {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    let (top, bottom) = input.split_once(';').ok_or_else(|| err("expected `a,b;c,d`"))?;
    let row = |r: &str| -> Result<(BigRational, BigRational), Mat2Error> {
        let (x, y) = r.split_once(',').ok_or_else(|| err("each row needs two entries"))?;
        let x = parse_rational(x).ok_or_else(|| err("bad entry"))?;
        let y = parse_rational(y).ok_or_else(|| err("bad entry"))?;
        Ok((x, y))
    };
    let (a, b) = row(top)?;
    let (c, d) = row(bottom)?;
    Ok(RatMat::new(a, b, c, d))
}

impl FromStr for ProjMat {
    type Err = Mat2Error;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_ratmat(s)?.to_proj()
    }
}

/// Parse a matrix list: one matrix per line, `#` starts a comment.
pub fn parse_matrix_list(text: &str) -> Result<Vec<ProjMat>, Mat2Error> {
    let mut out = Vec::new();
    for line in text.lines() {
        let line = match line.split_once('#') {
            Some((pre, _)) => pre,
            None => line,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        out.push(line.parse()?);
    }
    Ok(out)
}

/// One letter of the special-matrix alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    /// `P_r = (1, r; 0, 1)`.
    P(BigRational),
    /// Fricke matrix `H_N = (0, -1; N, 0)`.
    H(u64),
    /// `-I`.
    Q,
    /// `W_N = (1, 0; N, 1)`.
    W(u64),
    /// `J_N`, only for even `N`.
    J(u64),
    /// `L_N`, only for `4 | N`.
    L(u64),
    A,
    B,
    C,
    D,
    Lit(ProjMat),
}

impl Letter {
    /// `P_r` for an integer `r`.
    pub fn p_int(r: i64) -> Letter {
        Letter::P(BigRational::from_integer(r.into()))
    }

    /// `P_{p/q}`.
    pub fn p_frac(p: i64, q: i64) -> Letter {
        Letter::P(BigRational::new(p.into(), q.into()))
    }

    /// Level tied to the fixed matrices `A`..`D`, if any.
    pub fn fixed_level(&self) -> Option<u64> {
        match self {
            Letter::A | Letter::B => Some(18),
            Letter::C => Some(20),
            Letter::D => Some(24),
            _ => None,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::P(r) => write!(f, "P{}", r),
            Letter::H(n) => write!(f, "H{}", n),
            Letter::Q => write!(f, "Q"),
            Letter::W(n) => write!(f, "W{}", n),
            Letter::J(n) => write!(f, "J{}", n),
            Letter::L(n) => write!(f, "L{}", n),
            Letter::A => write!(f, "A"),
            Letter::B => write!(f, "B"),
            Letter::C => write!(f, "C"),
            Letter::D => write!(f, "D"),
            Letter::Lit(m) => write!(f, "M[{}]", m),
        }
    }
}

/// A letter raised to a nonzero integer power.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Token {
    pub letter: Letter,
    pub exp: i64,
}

impl Token {
    pub fn new(letter: Letter, exp: i64) -> Token {
        Token { letter, exp }
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 1 {
            write!(f, "{}", self.letter)
        } else {
            write!(f, "{}^{}", self.letter, self.exp)
        }
    }
}

/// The canonical matrix of a letter.
pub fn make_special(letter: &Letter) -> Result<ProjMat, Mat2Error> {
    let bad = |reason: &str| Mat2Error::InvalidParameter {
        token: letter.to_string(),
        reason: reason.to_string(),
    };
    let level = |n: u64| -> Result<BigInt, Mat2Error> {
        if n == 0 {
            Err(bad("level must be positive"))
        } else {
            Ok(BigInt::from(n))
        }
    };
    let z = BigInt::zero;
    let o = BigInt::one;
    Ok(match letter {
        Letter::P(r) => {
            let rm = RatMat::new(
                BigRational::one(),
                r.clone(),
                BigRational::zero(),
                BigRational::one(),
            );
            rm.to_proj()?
        }
        Letter::H(n) => ProjMat::new(z(), -o(), level(*n)?, z())?,
        Letter::Q => ProjMat::minus_identity(),
        Letter::W(n) => ProjMat::new(o(), z(), level(*n)?, o())?,
        Letter::J(n) => {
            let nn = level(*n)?;
            if n % 2 != 0 {
                return Err(bad("J_N requires even N"));
            }
            // (1/sqrt 2)(-2, 1; N, -(N+2)/2); the scalar is positive and dropped.
            ProjMat::new(BigInt::from(-2), o(), nn.clone(), -(nn + BigInt::from(2)) / BigInt::from(2))?
        }
        Letter::L(n) => {
            let nn = level(*n)?;
            if n % 4 != 0 {
                return Err(bad("L_N requires 4 | N"));
            }
            // 2 * (N/4 - 1, -1/2; N/2, -1)
            ProjMat::new(&nn / 2 - 2, -o(), nn, BigInt::from(-2))?
        }
        Letter::A => ProjMat::lit(7, -1, 36, -5),
        Letter::B => ProjMat::lit(13, -8, 18, -11),
        Letter::C => ProjMat::lit(13, -2, 20, -3),
        Letter::D => ProjMat::lit(19, -4, 24, -5),
        Letter::Lit(m) => m.clone(),
    })
}

/// An ordered product of powers of named matrices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SpecialWord {
    pub tokens: Vec<Token>,
}

impl SpecialWord {
    pub fn new(tokens: Vec<Token>) -> SpecialWord {
        SpecialWord { tokens }
    }

    pub fn empty() -> SpecialWord {
        SpecialWord::default()
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Product of the letters' matrices, left to right.
    pub fn eval(&self) -> Result<ProjMat, Mat2Error> {
        let mut acc = ProjMat::identity();
        for t in &self.tokens {
            acc = acc.mul(&make_special(&t.letter)?.pow(t.exp));
        }
        Ok(acc)
    }

    /// The word for the inverse element.
    pub fn inverse(&self) -> SpecialWord {
        SpecialWord::new(
            self.tokens
                .iter()
                .rev()
                .map(|t| Token::new(t.letter.clone(), -t.exp))
                .collect(),
        )
    }

    pub fn concat(&self, other: &SpecialWord) -> SpecialWord {
        let mut tokens = self.tokens.clone();
        tokens.extend(other.tokens.iter().cloned());
        SpecialWord::new(tokens)
    }

    /// Reject the level-bound letters `A`, `B` (level 18), `C` (20), `D` (24)
    /// when used at another level.
    pub fn check_level(&self, n: u64) -> Result<(), Mat2Error> {
        for t in &self.tokens {
            if let Some(l) = t.letter.fixed_level() {
                if l != n {
                    return Err(Mat2Error::InvalidParameter {
                        token: t.letter.to_string(),
                        reason: format!("only defined at level {l}, not {n}"),
                    });
                }
            }
        }
        Ok(())
    }
}

/// Evaluate a word to its canonical matrix.
pub fn eval_word(w: &SpecialWord) -> Result<ProjMat, Mat2Error> {
    w.eval()
}

impl fmt::Display for SpecialWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.tokens.is_empty() {
            return write!(f, "1");
        }
        for (i, t) in self.tokens.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", t)?;
        }
        Ok(())
    }
}

fn parse_level(tok: &str, s: &str) -> Result<u64, Mat2Error> {
    s.parse::<u64>().ok().filter(|&n| n > 0).ok_or_else(|| Mat2Error::ParseToken {
        token: tok.to_string(),
        reason: "expected a positive integer level".to_string(),
    })
}

fn parse_token(tok: &str) -> Result<Token, Mat2Error> {
    let bad = |reason: &str| Mat2Error::ParseToken {
        token: tok.to_string(),
        reason: reason.to_string(),
    };
    // Split off the exponent, taking care that literal matrices contain no '^'.
    let (body, exp) = match tok.rfind('^') {
        Some(pos) if !tok[pos..].contains(']') => {
            let e: i64 = tok[pos + 1..].parse().map_err(|_| bad("bad exponent"))?;
            if e == 0 {
                return Err(bad("exponent must be nonzero"));
            }
            (&tok[..pos], e)
        }
        _ => (tok, 1),
    };
    let mut chars = body.chars();
    let head = chars.next().ok_or_else(|| bad("empty token"))?;
    let rest = chars.as_str();
    let letter = match head {
        'P' => {
            if rest.is_empty() {
                // Bare "P" is read as P_1.
                Letter::p_int(1)
            } else {
                Letter::P(parse_rational(rest).ok_or_else(|| bad("bad rational parameter"))?)
            }
        }
        'H' => Letter::H(parse_level(tok, rest)?),
        'W' => Letter::W(parse_level(tok, rest)?),
        'J' => Letter::J(parse_level(tok, rest)?),
        'L' => Letter::L(parse_level(tok, rest)?),
        'Q' | 'A' | 'B' | 'C' | 'D' if !rest.is_empty() => {
            return Err(bad("this letter takes no parameter"));
        }
        'Q' => Letter::Q,
        'A' => Letter::A,
        'B' => Letter::B,
        'C' => Letter::C,
        'D' => Letter::D,
        'M' => {
            let inner = rest
                .strip_prefix('[')
                .and_then(|r| r.strip_suffix(']'))
                .ok_or_else(|| bad("literal must look like M[a,b;c,d]"))?;
            let m: ProjMat = inner.parse().map_err(|e: Mat2Error| bad(&e.to_string()))?;
            Letter::Lit(m)
        }
        _ => return Err(bad("unknown letter")),
    };
    // Validate parameters eagerly so errors name the token.
    make_special(&letter)?;
    Ok(Token::new(letter, exp))
}

impl FromStr for SpecialWord {
    type Err = Mat2Error;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        // Isolate parentheses outside `M[...]` so that `(x y)^k` groups can be
        // split on whitespace; a closing `)` keeps its exponent attached.
        let mut spaced = String::with_capacity(s.len() + 8);
        let mut depth = 0usize;
        for ch in s.chars() {
            match ch {
                '[' => {
                    depth += 1;
                    spaced.push(ch);
                }
                ']' => {
                    depth = depth.saturating_sub(1);
                    spaced.push(ch);
                }
                '(' if depth == 0 => spaced.push_str(" ( "),
                ')' if depth == 0 => spaced.push_str(" )"),
                _ => spaced.push(ch),
            }
        }
        let pieces: Vec<&str> = spaced.split_whitespace().collect();
        let mut pos = 0;
        let tokens = parse_group(&pieces, &mut pos, false)?;
        if pos != pieces.len() {
            return Err(group_err(s, "unbalanced ')'"));
        }
        Ok(SpecialWord::new(tokens))
    }
}

fn group_err(token: &str, reason: &str) -> Mat2Error {
    Mat2Error::ParseToken {
        token: token.to_string(),
        reason: reason.to_string(),
    }
}

fn parse_group(pieces: &[&str], pos: &mut usize, nested: bool) -> Result<Vec<Token>, Mat2Error> {
    let mut out = Vec::new();
    while *pos < pieces.len() {
        let p = pieces[*pos];
        if p == "(" {
            *pos += 1;
            let inner = parse_group(pieces, pos, true)?;
            let close = pieces
                .get(*pos)
                .ok_or_else(|| group_err("(", "unclosed '('"))?;
            *pos += 1;
            let exp: i64 = match close.strip_prefix(')').unwrap_or("") {
                "" => 1,
                e => e
                    .strip_prefix('^')
                    .and_then(|x| x.parse().ok())
                    .ok_or_else(|| group_err(close, "bad group exponent"))?,
            };
            let base = SpecialWord::new(inner);
            let unit = if exp < 0 { base.inverse() } else { base };
            for _ in 0..exp.unsigned_abs() {
                out.extend(unit.tokens.iter().cloned());
            }
        } else if p.starts_with(')') {
            if !nested {
                return Err(group_err(p, "unbalanced ')'"));
            }
            return Ok(out);
        } else {
            out.push(parse_token(p)?);
            *pos += 1;
        }
    }
    if nested {
        return Err(group_err("(", "unclosed '('"));
    }
    Ok(out)
}

/// Shortest word (then first in alphabet order) of length at most `max_len`
/// over the alphabet and its inverses that evaluates to `target`.
///
/// Letters are tried in the order `x1, x1^-1, x2, x2^-1, ...`; an inverse is
/// skipped when it equals its letter (for example `Q`).
pub fn find_word(
    target: &ProjMat,
    alphabet: &[Letter],
    max_len: usize,
) -> Result<Option<SpecialWord>, Mat2Error> {
    let mut moves: Vec<(Token, ProjMat)> = Vec::new();
    for l in alphabet {
        let m = make_special(l)?;
        let inv = m.inverse();
        let same = inv == m;
        moves.push((Token::new(l.clone(), 1), m));
        if !same {
            moves.push((Token::new(l.clone(), -1), inv));
        }
    }
    for limit in 0..=max_len {
        let mut search = Search {
            target,
            moves: &moves,
            limit,
            seen: HashMap::new(),
            path: Vec::new(),
        };
        let start = ProjMat::identity();
        search.seen.insert(start.clone(), 0);
        if search.dfs(&start, 0) {
            let tokens = search
                .path
                .iter()
                .map(|&i| moves[i].0.clone())
                .collect();
            return Ok(Some(SpecialWord::new(tokens)));
        }
    }
    Ok(None)
}

struct Search<'a> {
    target: &'a ProjMat,
    moves: &'a [(Token, ProjMat)],
    limit: usize,
    seen: HashMap<ProjMat, usize>,
    path: Vec<usize>,
}

impl Search<'_> {
    fn dfs(&mut self, cur: &ProjMat, depth: usize) -> bool {
        if depth == self.limit {
            return cur == self.target;
        }
        for i in 0..self.moves.len() {
            let next = cur.mul(&self.moves[i].1);
            match self.seen.get(&next) {
                Some(&d) if d <= depth + 1 => continue,
                _ => {}
            }
            self.seen.insert(next.clone(), depth + 1);
            self.path.push(i);
            if self.dfs(&next, depth + 1) {
                return true;
            }
            self.path.pop();
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> ProjMat {
        s.parse::<SpecialWord>().unwrap().eval().unwrap()
    }

    #[test]
    fn special_matrices() {
        assert_eq!(make_special(&Letter::p_int(1)).unwrap(), ProjMat::lit(1, 1, 0, 1));
        assert_eq!(make_special(&Letter::H(18)).unwrap(), ProjMat::lit(0, -1, 18, 0));
        assert_eq!(make_special(&Letter::L(20)).unwrap(), ProjMat::lit(8, -1, 20, -2));
        assert_eq!(make_special(&Letter::J(18)).unwrap(), ProjMat::lit(-2, 1, 18, -10));
        assert_eq!(make_special(&Letter::p_frac(1, 3)).unwrap(), ProjMat::lit(3, 1, 0, 3));
        assert!(make_special(&Letter::L(18)).is_err());
        assert!(make_special(&Letter::J(9)).is_err());
    }

    #[test]
    fn rational_input_canonicalizes() {
        let m: ProjMat = "4,-1/2;10,-1".parse().unwrap();
        assert_eq!(m, ProjMat::lit(8, -1, 20, -2));
        let e: ProjMat = "1,-2/3;11/2,-8/3".parse().unwrap();
        assert_eq!(e, ProjMat::lit(6, -4, 33, -16));
        assert!("1,2;3,4".parse::<ProjMat>().is_err());
        assert!("1,2;3".parse::<ProjMat>().is_err());
    }

    #[test]
    fn sign_is_not_quotiented() {
        assert_ne!(ProjMat::identity(), ProjMat::minus_identity());
        assert_eq!(ProjMat::lit(-2, 0, 0, -2), ProjMat::minus_identity());
    }

    #[test]
    fn word_examples() {
        assert_eq!(w("H11 P-1 H11^-1"), ProjMat::lit(1, 0, 11, 1));
        assert_eq!(w("P1/2 H24 P1/2 H24"), ProjMat::lit(10, -1, 24, -2));
    }

    #[test]
    fn word_examples_exact() {
        assert_eq!(w("P1/2 H24 P1/2 H24"), make_special(&Letter::L(24)).unwrap());
        assert_eq!(w("A W18"), ProjMat::lit(-11, -1, -54, -5));
        assert_eq!(w("M[7,-2;18,-5]^2"), ProjMat::lit(13, -4, 36, -11));
        assert_eq!(w("P^-1"), ProjMat::lit(1, -1, 0, 1));
    }

    #[test]
    fn level_checks() {
        let word: SpecialWord = "A B W18".parse().unwrap();
        assert!(word.check_level(18).is_ok());
        assert!(word.check_level(20).is_err());
    }

    #[test]
    fn find_word_examples() {
        let id = find_word(&ProjMat::identity(), &[Letter::Q], 3).unwrap().unwrap();
        assert!(id.is_empty());
        let w4 = make_special(&Letter::W(4)).unwrap();
        let found = find_word(&w4, &[Letter::p_int(-1), Letter::H(4)], 3)
            .unwrap()
            .unwrap();
        assert_eq!(found.len(), 3);
        assert_eq!(found.eval().unwrap(), w4);
        assert!(find_word(&w4, &[Letter::p_int(-1)], 4).unwrap().is_none());
    }
}
