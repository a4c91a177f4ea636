//! Dirichlet characters, Gauss sums, the additive-twist decomposition of
//! `cos^(m)(2 pi n a / q)` into primitive characters, and the special-prime
//! search for `Gamma1(N)` generator lists.
//!
//! Character values are stored exactly as exponents of a root of unity of
//! order `L` (the exponent of the unit group); floating point only enters in
//! Gauss sums and residuals.

use std::f64::consts::PI;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::arith::{crt_pair, factorize, gcd, is_prime, pow_mod, Congruence};
use crate::mat2::ProjMat;
use crate::modgroup::{
    is_member, reduce_generators, verify_generates_flavor, SubgroupFlavor,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharError {
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("generator {index} ({matrix}) is not in Gamma1({level})")]
    NotInGamma1 {
        index: usize,
        matrix: String,
        level: u64,
    },
    #[error("entry too large for the congruence solver: {0}")]
    Overflow(String),
    #[error("generator conditioning failed: {0}")]
    Conditioning(String),
}

/// `exp(2 pi i num / den)` with the angle reduced exactly first.
pub fn root_of_unity(num: i128, den: i128) -> Complex64 {
    let r = num.rem_euclid(den);
    // Map to (-den/2, den/2] so the float angle stays small.
    let r = if 2 * r > den { r - den } else { r };
    let theta = 2.0 * PI * (r as f64) / (den as f64);
    Complex64::new(theta.cos(), theta.sin())
}

/// Structure of `(Z/q)^x` as a product of cyclic groups, one (or two, for
/// `2^e`, `e >= 3`) per prime-power factor.
#[derive(Clone, Debug)]
struct UnitGroup {
    modulus: u64,
    /// Generator residues mod `modulus` and their orders.
    gens: Vec<(u64, u64)>,
    /// Exponent of the group (lcm of the orders).
    exponent: u64,
    /// Discrete logarithms: `dlog[n]` is the exponent vector of `n`.
    dlog: Vec<Option<Vec<u64>>>,
}

fn crt_lift(residue: u64, pe: u64, q: u64) -> u64 {
    // The element that is `residue` mod `pe` and 1 mod `q / pe`.
    let rest = q / pe;
    if rest == 1 {
        return residue % q;
    }
    let c = Congruence::new(residue as i128, pe as i128);
    let d = Congruence::new(1, rest as i128);
    crt_pair(c, d)
        .ok()
        .flatten()
        .map(|x| x.residue as u64)
        .expect("coprime moduli")
}

fn primitive_root(p: u64) -> u64 {
    let phi = p - 1;
    let fs = factorize(phi);
    (2..p)
        .find(|&g| fs.iter().all(|&(r, _)| pow_mod(g, phi / r, p) != 1))
        .unwrap_or(1)
}

impl UnitGroup {
    fn new(q: u64) -> UnitGroup {
        let mut gens = Vec::new();
        for (p, e) in factorize(q) {
            let pe = p.pow(e);
            if p == 2 {
                match e {
                    1 => {}
                    2 => gens.push((crt_lift(3, pe, q), 2)),
                    _ => {
                        gens.push((crt_lift(pe - 1, pe, q), 2));
                        gens.push((crt_lift(5, pe, q), pe / 4));
                    }
                }
            } else {
                let mut g = primitive_root(p);
                if e > 1 && pow_mod(g, p - 1, p * p) == 1 {
                    g += p;
                }
                gens.push((crt_lift(g, pe, q), pe / p * (p - 1)));
            }
        }
        let exponent = gens
            .iter()
            .fold(1u64, |l, &(_, o)| l / gcd(l, o) * o);
        let mut dlog = vec![None; q as usize];
        // Enumerate all products of generator powers.
        let mut vec = vec![0u64; gens.len()];
        loop {
            let mut x = 1 % q;
            for (i, &(g, _)) in gens.iter().enumerate() {
                x = (x as u128 * pow_mod(g, vec[i], q) as u128 % q as u128) as u64;
            }
            dlog[x as usize] = Some(vec.clone());
            let mut i = 0;
            loop {
                if i == gens.len() {
                    return UnitGroup {
                        modulus: q,
                        gens,
                        exponent,
                        dlog,
                    };
                }
                vec[i] += 1;
                if vec[i] < gens[i].1 {
                    break;
                }
                vec[i] = 0;
                i += 1;
            }
        }
    }
}

/// A Dirichlet character modulo `modulus`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirichletChar {
    modulus: u64,
    /// `psi(g_i) = e(exps[i] / ord_i)` for the fixed unit-group generators.
    exps: Vec<u64>,
    /// Root-of-unity order used for `table`.
    order: u64,
    /// `table[n]` is `Some(k)` with `psi(n) = e(k / order)`, `None` when
    /// `gcd(n, modulus) > 1`.
    table: Vec<Option<u64>>,
    parity: i8,
    conductor: u64,
}

impl DirichletChar {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn exponent_vector(&self) -> &[u64] {
        &self.exps
    }

    /// `psi(-1)`.
    pub fn parity(&self) -> i8 {
        self.parity
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor == self.modulus
    }

    pub fn is_principal(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Value as a root-of-unity exponent `k` (meaning `e(k / order)`).
    pub fn exponent_at(&self, n: i64) -> Option<u64> {
        let q = self.modulus as i64;
        self.table[n.rem_euclid(q) as usize]
    }

    /// Order of the root of unity in which values are expressed.
    pub fn value_order(&self) -> u64 {
        self.order
    }

    pub fn value(&self, n: i64) -> Complex64 {
        match self.exponent_at(n) {
            Some(k) => root_of_unity(k as i128, self.order as i128),
            None => Complex64::new(0.0, 0.0),
        }
    }

    /// The complex-conjugate character.
    pub fn conj(&self) -> DirichletChar {
        let ug = UnitGroup::new(self.modulus);
        let exps = self
            .exps
            .iter()
            .zip(&ug.gens)
            .map(|(&e, &(_, o))| (o - e) % o)
            .collect();
        build_char(&ug, exps)
    }
}

impl fmt::Display for DirichletChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "chi mod {} exps {:?} (conductor {}, {})",
            self.modulus,
            self.exps,
            self.conductor,
            if self.parity > 0 { "even" } else { "odd" }
        )
    }
}

fn build_char(ug: &UnitGroup, exps: Vec<u64>) -> DirichletChar {
    let q = ug.modulus;
    let l = ug.exponent;
    let table: Vec<Option<u64>> = ug
        .dlog
        .iter()
        .map(|v| {
            v.as_ref().map(|v| {
                v.iter()
                    .zip(&exps)
                    .zip(&ug.gens)
                    .map(|((&x, &e), &(_, o))| (x * e % o) * (l / o))
                    .sum::<u64>()
                    % l
            })
        })
        .collect();
    let minus_one = table[((q as i64 - 1).rem_euclid(q as i64)) as usize].unwrap_or(0);
    let parity = if minus_one == 0 { 1 } else { -1 };
    // Smallest d | q such that psi is trivial on units congruent to 1 mod d.
    let conductor = crate::arith::divisors(q)
        .into_iter()
        .find(|&d| {
            (0..q).all(|n| {
                n % d != 1 % d || table[n as usize].map_or(true, |k| k == 0)
            })
        })
        .unwrap_or(q);
    DirichletChar {
        modulus: q,
        exps,
        order: l,
        table,
        parity,
        conductor,
    }
}

/// All `phi(q)` characters mod `q`, ordered lexicographically by exponent
/// vector. The position in this list is the stable index used by `q:index`.
pub fn enumerate_chars(q: u64) -> Result<Vec<DirichletChar>, CharError> {
    if q == 0 {
        return Err(CharError::ZeroModulus);
    }
    let ug = UnitGroup::new(q);
    let mut out = Vec::new();
    let mut vec = vec![0u64; ug.gens.len()];
    loop {
        out.push(build_char(&ug, vec.clone()));
        // Increment the last coordinate first so the order is lexicographic.
        let mut i = vec.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            vec[i] += 1;
            if vec[i] < ug.gens[i].1 {
                break;
            }
            vec[i] = 0;
        }
    }
}

/// Primitive characters mod `q`.
pub fn primitive_chars(q: u64) -> Result<Vec<DirichletChar>, CharError> {
    Ok(enumerate_chars(q)?
        .into_iter()
        .filter(|c| c.is_primitive())
        .collect())
}

/// Look up a character by its `q:index` designation.
pub fn char_by_index(q: u64, index: usize) -> Result<Option<DirichletChar>, CharError> {
    Ok(enumerate_chars(q)?.into_iter().nth(index))
}

/// `tau(psi) = sum_{a mod q} psi(a) e(a / q)`, one exact angle reduction per
/// term.
pub fn gauss_sum(psi: &DirichletChar) -> Complex64 {
    let q = psi.modulus as i128;
    let l = psi.order as i128;
    let mut s = Complex64::new(0.0, 0.0);
    for a in 0..q {
        if let Some(k) = psi.exponent_at(a as i64) {
            s += root_of_unity(k as i128 * q + a * l, l * q);
        }
    }
    s
}

/// `m`-th derivative of cosine at `2 pi num / den`, using exact reduction.
pub fn cos_derivative(m: u32, num: i64, den: i64) -> f64 {
    let z = root_of_unity(num as i128, den as i128);
    match m % 4 {
        0 => z.re,
        1 => -z.im,
        2 => -z.re,
        _ => z.im,
    }
}

/// Additive twist by `e(a/q)` differentiated `m` times.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwistSpec {
    pub q: u64,
    pub a: i64,
    pub m: u32,
}

impl TwistSpec {
    /// `true` for the `+` sign tag (even `m`).
    pub fn sign_plus(&self) -> bool {
        self.m % 2 == 0
    }
}

/// Precomputed primitive characters and Gauss sums for one prime modulus.
pub struct TwistTable {
    q: u64,
    prims: Vec<(DirichletChar, Complex64)>,
}

impl TwistTable {
    pub fn new(q: u64) -> Result<TwistTable, CharError> {
        if !is_prime(q) {
            return Err(CharError::NotPrime(q));
        }
        let prims = primitive_chars(q)?
            .into_iter()
            .map(|c| {
                let t = gauss_sum(&c.conj());
                (c, t)
            })
            .collect();
        Ok(TwistTable { q, prims })
    }

    /// Both sides of the decomposition at the `n`-th coefficient.
    pub fn sides(&self, spec: &TwistSpec, n: i64) -> (Complex64, Complex64) {
        let q = self.q as i64;
        let lhs = Complex64::new(cos_derivative(spec.m, n * spec.a, q), 0.0);
        let want = if spec.m % 2 == 0 { 1 } else { -1 };
        let mut sum = Complex64::new(0.0, 0.0);
        for (psi, tau_bar) in &self.prims {
            if psi.parity() == want {
                sum += tau_bar * psi.value(spec.a) * psi.value(n);
            }
        }
        let i_m = Complex64::new(0.0, 1.0).powu(spec.m);
        let mut rhs = i_m * sum / (q - 1) as f64;
        if spec.m % 2 == 0 {
            let sign = if (spec.m / 2) % 2 == 0 { 1.0 } else { -1.0 };
            let principal = if n.rem_euclid(q) != 0 { 1.0 } else { 0.0 };
            rhs += sign * (1.0 - q as f64 / (q - 1) as f64 * principal);
        }
        (lhs, rhs)
    }
}

/// `|LHS - RHS|` for the additive-twist decomposition.
pub fn additive_twist_residual(spec: &TwistSpec, n: i64) -> Result<f64, CharError> {
    let t = TwistTable::new(spec.q)?;
    let (l, r) = t.sides(spec, n);
    Ok((l - r).norm())
}

/// `theta_1` on `(Z/q)^x`: `+1` at `r`, `-1` at `-r`, zero elsewhere. Returned
/// as `(a, value)` for `a = 1..q-1`.
pub fn theta1(q: u64, r: i64) -> Result<Vec<(u64, i32)>, CharError> {
    if !is_prime(q) {
        return Err(CharError::NotPrime(q));
    }
    if q == 2 {
        return Err(CharError::Degenerate("q = 2 gives r = -r".into()));
    }
    let rr = r.rem_euclid(q as i64) as u64;
    if rr == 0 {
        return Err(CharError::Degenerate(format!("r = {r} is not a unit mod {q}")));
    }
    let neg = q - rr;
    Ok((1..q)
        .map(|a| {
            let v = if a == rr {
                1
            } else if a == neg {
                -1
            } else {
                0
            };
            (a, v)
        })
        .collect())
}

/// Congruence modulus convention for the special prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ModulusRule {
    /// `q ≡ A_j (mod N |C_j|)`.
    #[default]
    NC,
    /// `q ≡ A_j (mod q |C_j|)`, solved by testing primes directly.
    SelfReferential,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecialPrime {
    Found {
        q: u64,
        /// Combined residue class (default rule only).
        combined: Option<Congruence>,
    },
    Infeasible {
        first: (usize, Congruence),
        second: (usize, Congruence),
    },
    NotFound {
        combined: Option<Congruence>,
    },
}

fn to_i128(x: &BigInt) -> Result<i128, CharError> {
    x.to_i128().ok_or_else(|| CharError::Overflow(x.to_string()))
}

/// `(A_j, C_j)` for each generator written as `(A_j, B_j; C_j N, D_j)`.
pub fn generator_data(n: u64, gens: &[ProjMat]) -> Result<Vec<(i128, i128)>, CharError> {
    let flavor = SubgroupFlavor::Gamma1(n);
    gens.iter()
        .enumerate()
        .map(|(i, g)| {
            if !is_member(g, flavor) {
                return Err(CharError::NotInGamma1 {
                    index: i,
                    matrix: g.to_string(),
                    level: n,
                });
            }
            Ok((to_i128(g.a())?, to_i128(g.c())? / n as i128))
        })
        .collect()
}

/// Congruences imposed under the default rule, tagged by generator index.
pub fn special_congruences(
    n: u64,
    gens: &[ProjMat],
) -> Result<Vec<(usize, Congruence)>, CharError> {
    let data = generator_data(n, gens)?;
    let mut out = Vec::new();
    for (i, (a, c)) in data.into_iter().enumerate() {
        if c != 0 {
            let m = (n as i128)
                .checked_mul(c.abs())
                .ok_or_else(|| CharError::Overflow(format!("N*C for generator {i}")))?;
            out.push((i, Congruence::new(a, m)));
        }
    }
    Ok(out)
}

/// Merge congruences; on inconsistency return the first conflicting pair.
/// (Solvability of a system of congruences is decided pairwise.)
pub fn merge_congruences(
    cons: &[(usize, Congruence)],
) -> Result<Result<Option<Congruence>, ((usize, Congruence), (usize, Congruence))>, CharError> {
    let mut acc: Option<Congruence> = None;
    for (j, &(_, c)) in cons.iter().enumerate() {
        let next = match acc {
            None => Some(c),
            Some(x) => crt_pair(x, c).map_err(|_| CharError::Overflow("CRT modulus".into()))?,
        };
        match next {
            Some(x) => acc = Some(x),
            None => {
                for &(i, ci) in &cons[..j] {
                    if crt_pair(ci, c).ok().flatten().is_none() {
                        return Ok(Err(((i, ci), cons[j])));
                    }
                }
                unreachable!("pairwise-consistent congruences are jointly consistent");
            }
        }
    }
    Ok(Ok(acc))
}

fn admissible(q: u64, n: u64) -> bool {
    q > 2 && is_prime(q) && n % q != 0
}

/// Smallest admissible prime `q <= bound` (odd, not dividing `N`) meeting the
/// congruence conditions attached to `gens`.
pub fn special_prime(
    n: u64,
    gens: &[ProjMat],
    rule: ModulusRule,
    bound: u64,
) -> Result<SpecialPrime, CharError> {
    if bound < 2 {
        return Err(CharError::Degenerate("bound must be at least 2".into()));
    }
    match rule {
        ModulusRule::NC => {
            let cons = special_congruences(n, gens)?;
            let combined = match merge_congruences(&cons)? {
                Ok(c) => c,
                Err((first, second)) => return Ok(SpecialPrime::Infeasible { first, second }),
            };
            let (start, step) = match combined {
                Some(c) => (c.residue.rem_euclid(c.modulus), c.modulus),
                None => (0, 1),
            };
            let mut q = start;
            while q <= bound as i128 {
                if q >= 0 && admissible(q as u64, n) {
                    return Ok(SpecialPrime::Found {
                        q: q as u64,
                        combined,
                    });
                }
                q += step;
            }
            Ok(SpecialPrime::NotFound { combined })
        }
        ModulusRule::SelfReferential => {
            let data = generator_data(n, gens)?;
            for q in 3..=bound {
                if !admissible(q, n) {
                    continue;
                }
                let qi = q as i128;
                let ok = data
                    .iter()
                    .filter(|(_, c)| *c != 0)
                    .all(|&(a, c)| (qi - a).rem_euclid(qi * c.abs()) == 0);
                if ok {
                    return Ok(SpecialPrime::Found { q, combined: None });
                }
            }
            Ok(SpecialPrime::NotFound { combined: None })
        }
    }
}

/// Re-check a returned prime against every congruence (default rule).
pub fn recheck_special_prime(n: u64, gens: &[ProjMat], q: u64) -> Result<bool, CharError> {
    let cons = special_congruences(n, gens)?;
    Ok(admissible(q, n) && cons.iter().all(|(_, c)| c.holds(q as i128)))
}

/// Output of [`condition_generators`].
#[derive(Clone, Debug)]
pub struct ConditionedGenerators {
    /// Conditioned list, ending with `P_1` and `W_N`.
    pub gens: Vec<ProjMat>,
    /// Power `k` of `W_N` applied on the left of each kept generator.
    pub shifts: Vec<i64>,
    /// Number of generators removed as redundant.
    pub removed: usize,
}

/// Rewrite a generating list of `Gamma1(N)` so that its congruence system is
/// consistent: drop redundant generators, left-multiply each survivor by a
/// power of `W_N` (which keeps `A_j` and shifts `C_j` by `k A_j`), then append
/// `P_1` and `W_N`. The result is re-verified to generate `Gamma1(N)`.
pub fn condition_generators(n: u64, gens: &[ProjMat]) -> Result<ConditionedGenerators, CharError> {
    let flavor = SubgroupFlavor::Gamma1(n);
    generator_data(n, gens)?;
    let reduced = reduce_generators(flavor, gens);
    let removed = gens.len() - reduced.len();
    let w = ProjMat::lit(1, 0, n as i64, 1);
    let mut out = Vec::new();
    let mut shifts = Vec::new();
    let mut cons: Vec<(usize, Congruence)> = Vec::new();
    for (j, g) in reduced.iter().enumerate() {
        let mut placed = false;
        for k in crate::elliptic::signed_search_order(8) {
            let h = w.pow(k).mul(g);
            let data = generator_data(n, std::slice::from_ref(&h))?;
            let (a, c) = data[0];
            if c == 0 {
                continue;
            }
            let con = Congruence::new(a, n as i128 * c.abs());
            let mut trial = cons.clone();
            trial.push((j, con));
            if matches!(merge_congruences(&trial), Ok(Ok(_))) {
                cons = trial;
                out.push(h);
                shifts.push(k);
                placed = true;
                break;
            }
        }
        if !placed {
            return Err(CharError::Conditioning(format!(
                "no power W_{n}^k with |k| <= 8 makes ({g}) consistent"
            )));
        }
    }
    out.push(ProjMat::lit(1, 1, 0, 1));
    out.push(w);
    let rep = verify_generates_flavor(flavor, &out, None);
    if !rep.generates {
        return Err(CharError::Conditioning(rep.diagnostic));
    }
    Ok(ConditionedGenerators {
        gens: out,
        shifts,
        removed,
    })
}
