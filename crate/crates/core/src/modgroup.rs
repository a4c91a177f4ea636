//! The modular group: membership in `Gamma0(N)` / `Gamma1(N)`, indices,
//! words in the standard generators, Schreier generators and Todd-Coxeter
//! coset enumeration.
//!
//! Words are over the four letters `s, s^-1, t, t^-1` with
//! `s = (0,-1;1,0)` and `t = (1,1;0,1)`. `PSL2(Z)` is presented as
//! `<s, t | s^2, (st)^3>` and `SL2(Z)` as `<s, t | s^4, (st)^3 s^-2>`.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::arith::{euler_phi, gcd, prime_divisors};
use crate::mat2::ProjMat;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModGroupError {
    #[error("matrix {0} has no lift in SL2(Z)")]
    NotUnimodular(String),
    #[error("exponent too large in word decomposition")]
    ExponentOverflow,
    #[error("coset space of size {size} exceeds the guard {guard}")]
    TooLarge { size: u64, guard: u64 },
    #[error("level must be positive")]
    ZeroLevel,
}

/// Letter indices for coset tables: `s`, `s^-1`, `t`, `t^-1`.
pub const S: u8 = 0;
pub const S_INV: u8 = 1;
pub const T: u8 = 2;
pub const T_INV: u8 = 3;
const INV: [u8; 4] = [1, 0, 3, 2];

/// Guard on the size of explicitly enumerated coset spaces.
pub const COSET_GUARD: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SubgroupFlavor {
    Gamma0(u64),
    Gamma1(u64),
}

impl SubgroupFlavor {
    pub fn level(&self) -> u64 {
        match *self {
            SubgroupFlavor::Gamma0(n) | SubgroupFlavor::Gamma1(n) => n,
        }
    }
}

impl fmt::Display for SubgroupFlavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubgroupFlavor::Gamma0(n) => write!(f, "Gamma0({n})"),
            SubgroupFlavor::Gamma1(n) => write!(f, "Gamma1({n})"),
        }
    }
}

/// `N * prod_{p | N} (1 + 1/p)`.
pub fn index_gamma0_formula(n: u64) -> u64 {
    prime_divisors(n)
        .into_iter()
        .fold(n, |acc, p| acc / p * (p + 1))
}

/// Number of bottom rows `(c, d) mod N` with `gcd(c, d, N) = 1`, which is
/// `[SL2(Z) : Gamma1(N)]`.
pub fn count_primitive_rows(n: u64) -> u64 {
    let mut count = 0;
    for c in 0..n {
        let g = gcd(c, n);
        for d in 0..n {
            if gcd(g, d) == 1 {
                count += 1;
            }
        }
    }
    count
}

/// `|P^1(Z/N)|`, by enumerating bottom rows and cross-checking the product
/// formula.
pub fn index_gamma0(n: u64) -> u64 {
    assert!(n > 0, "level must be positive");
    if n == 1 {
        return 1;
    }
    let rows = count_primitive_rows(n);
    let idx = rows / euler_phi(n);
    assert_eq!(idx, index_gamma0_formula(n), "P^1(Z/N) count disagrees with formula");
    idx
}

/// Does some positive multiple of `m` lie in the subgroup?
///
/// A positive multiple with determinant one and integer entries exists only
/// when the canonical representative itself has determinant one.
pub fn is_member(m: &ProjMat, flavor: SubgroupFlavor) -> bool {
    let n = BigInt::from(flavor.level());
    if flavor.level() == 0 || !m.det().is_one() {
        return false;
    }
    if !(m.c() % &n).is_zero() {
        return false;
    }
    match flavor {
        SubgroupFlavor::Gamma0(_) => true,
        SubgroupFlavor::Gamma1(_) => {
            (m.a() - 1i32).mod_floor(&n).is_zero() && (m.d() - 1i32).mod_floor(&n).is_zero()
        }
    }
}

/// A power of `s` or `t` in a word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Syllable {
    S(i64),
    T(i64),
}

/// Word in `s`, `t` produced by [`psl2_word`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StWord(pub Vec<Syllable>);

impl StWord {
    /// Expand into coset-table letters.
    pub fn letters(&self) -> Vec<u8> {
        let mut out = Vec::new();
        for syl in &self.0 {
            let (pos, neg, e) = match *syl {
                Syllable::S(e) => (S, S_INV, e),
                Syllable::T(e) => (T, T_INV, e),
            };
            let l = if e > 0 { pos } else { neg };
            out.extend(std::iter::repeat_n(l, e.unsigned_abs() as usize));
        }
        out
    }

    /// Exact product as an integer matrix (sign kept).
    pub fn product(&self) -> ProjMat {
        letters_product(&self.letters())
    }
}

impl fmt::Display for StWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|s| match *s {
                Syllable::S(1) => "s".to_string(),
                Syllable::S(e) => format!("s^{e}"),
                Syllable::T(1) => "t".to_string(),
                Syllable::T(e) => format!("t^{e}"),
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

fn letter_matrix(l: u8) -> ProjMat {
    match l {
        S => ProjMat::lit(0, -1, 1, 0),
        S_INV => ProjMat::lit(0, 1, -1, 0),
        T => ProjMat::lit(1, 1, 0, 1),
        _ => ProjMat::lit(1, -1, 0, 1),
    }
}

/// Exact product of a letter sequence.
pub fn letters_product(ls: &[u8]) -> ProjMat {
    ls.iter()
        .fold(ProjMat::identity(), |acc, &l| acc.mul(&letter_matrix(l)))
}

/// Word in `s`, `t` whose product is `+M` or `-M` (Euclidean reduction on the
/// left column).
pub fn psl2_word(m: &ProjMat) -> Result<StWord, ModGroupError> {
    if !m.det().is_one() {
        return Err(ModGroupError::NotUnimodular(m.to_string()));
    }
    let (mut a, mut b, mut c, mut d) = (m.a().clone(), m.b().clone(), m.c().clone(), m.d().clone());
    let mut word = Vec::new();
    while !c.is_zero() {
        let k = a.div_floor(&c);
        if !k.is_zero() {
            // M <- t^-k M
            a -= &k * &c;
            b -= &k * &d;
            word.push(Syllable::T(k.to_i64().ok_or(ModGroupError::ExponentOverflow)?));
        }
        // M <- s^-1 M, s^-1 = (0,1;-1,0)
        let (na, nb, nc, nd) = (c.clone(), d.clone(), -&a, -&b);
        a = na;
        b = nb;
        c = nc;
        d = nd;
        word.push(Syllable::S(1));
    }
    // Now M = +-(1, n; 0, 1) with n = b * a.
    let n = &b * &a;
    if !n.is_zero() {
        word.push(Syllable::T(n.to_i64().ok_or(ModGroupError::ExponentOverflow)?));
    }
    Ok(StWord(word))
}

/// Letters whose product is exactly `M` (not just up to sign).
pub fn sl2_letters(m: &ProjMat) -> Result<Vec<u8>, ModGroupError> {
    let w = psl2_word(m)?;
    let mut ls = w.letters();
    if &letters_product(&ls) != m {
        ls.extend([S, S]);
    }
    debug_assert_eq!(&letters_product(&ls), m);
    Ok(ls)
}

/// Relators of a presentation on the generators `s`, `t`.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub relators: Vec<Vec<u8>>,
}

impl Presentation {
    /// `<s, t | s^2, (st)^3>`.
    pub fn psl2() -> Presentation {
        Presentation {
            relators: vec![vec![S, S], vec![S, T, S, T, S, T]],
        }
    }

    /// `<s, t | s^4, (st)^3 s^-2>`.
    pub fn sl2() -> Presentation {
        Presentation {
            relators: vec![vec![S, S, S, S], vec![S, T, S, T, S, T, S_INV, S_INV]],
        }
    }
}

/// Complete coset table after enumeration; coset 0 is the subgroup itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    /// `rows[i][x]` is the image of coset `i` under letter `x`.
    pub rows: Vec<[u32; 4]>,
    pub complete: bool,
}

impl CosetTable {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Image of coset `i` under a letter sequence.
    pub fn apply(&self, mut i: usize, word: &[u8]) -> usize {
        for &l in word {
            i = self.rows[i][l as usize] as usize;
        }
        i
    }
}

/// Result of a coset enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TcOutcome {
    Complete(CosetTable),
    CapExceeded { cap: usize },
}

const NONE: u32 = u32::MAX;

struct Enumerator {
    table: Vec<[u32; 4]>,
    parent: Vec<u32>,
    live: usize,
    cap: usize,
    max_total: usize,
    overflow: bool,
    queue: Vec<u32>,
}

impl Enumerator {
    fn new(cap: usize) -> Enumerator {
        Enumerator {
            table: vec![[NONE; 4]],
            parent: vec![0],
            live: 1,
            cap,
            max_total: cap.saturating_mul(200).max(10_000),
            overflow: false,
            queue: Vec::new(),
        }
    }

    fn rep(&mut self, k: u32) -> u32 {
        let mut r = k;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut x = k;
        while self.parent[x as usize] != r {
            let next = self.parent[x as usize];
            self.parent[x as usize] = r;
            x = next;
        }
        r
    }

    fn merge(&mut self, k: u32, l: u32) {
        let a = self.rep(k);
        let b = self.rep(l);
        if a != b {
            let (mu, nu) = if a < b { (a, b) } else { (b, a) };
            self.parent[nu as usize] = mu;
            self.live -= 1;
            self.queue.push(nu);
        }
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for x in 0..4usize {
                let d = self.table[g as usize][x];
                if d == NONE {
                    continue;
                }
                let xi = INV[x] as usize;
                if self.table[d as usize][xi] == g {
                    self.table[d as usize][xi] = NONE;
                }
                let mu = self.rep(g);
                let nu = self.rep(d);
                let mx = self.table[mu as usize][x];
                if mx != NONE {
                    self.merge(nu, mx);
                } else {
                    let nxi = self.table[nu as usize][xi];
                    if nxi != NONE {
                        self.merge(mu, nxi);
                    } else {
                        self.table[mu as usize][x] = nu;
                        self.table[nu as usize][xi] = mu;
                    }
                }
            }
        }
    }

    fn define(&mut self, a: u32, x: u8) -> bool {
        if self.live >= self.cap || self.table.len() >= self.max_total {
            self.overflow = true;
            return false;
        }
        let b = self.table.len() as u32;
        self.table.push([NONE; 4]);
        self.parent.push(b);
        self.live += 1;
        self.table[a as usize][x as usize] = b;
        self.table[b as usize][INV[x as usize] as usize] = a;
        true
    }

    fn scan_and_fill(&mut self, a: u32, w: &[u8]) {
        if w.is_empty() {
            return;
        }
        let mut f = a;
        let mut b = a;
        let mut i = 0usize;
        let mut j = w.len() as isize - 1;
        loop {
            while (i as isize) <= j && self.table[f as usize][w[i] as usize] != NONE {
                f = self.table[f as usize][w[i] as usize];
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return;
            }
            while j >= i as isize && self.table[b as usize][INV[w[j as usize] as usize] as usize] != NONE {
                b = self.table[b as usize][INV[w[j as usize] as usize] as usize];
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return;
            } else if j == i as isize {
                let x = w[i] as usize;
                self.table[f as usize][x] = b;
                self.table[b as usize][INV[x] as usize] = f;
                return;
            } else if !self.define(f, w[i]) {
                return;
            }
        }
    }

    fn is_live(&self, k: u32) -> bool {
        self.parent[k as usize] == k
    }
}

/// HLT-style Todd-Coxeter enumeration of the cosets of the subgroup generated
/// by `subgroup` (letter words) in the group given by `pres`. At most `cap`
/// live cosets are allowed at any time.
pub fn todd_coxeter(pres: &Presentation, subgroup: &[Vec<u8>], cap: usize) -> TcOutcome {
    let mut e = Enumerator::new(cap.max(1));
    for w in subgroup {
        e.scan_and_fill(0, w);
        if e.overflow {
            return TcOutcome::CapExceeded { cap };
        }
    }
    let mut a = 0usize;
    while a < e.table.len() {
        let a32 = a as u32;
        if e.is_live(a32) {
            for r in &pres.relators {
                e.scan_and_fill(a32, r);
                if e.overflow {
                    return TcOutcome::CapExceeded { cap };
                }
                if !e.is_live(a32) {
                    break;
                }
            }
            if e.is_live(a32) {
                for x in 0..4u8 {
                    if e.table[a][x as usize] == NONE && !e.define(a32, x) {
                        return TcOutcome::CapExceeded { cap };
                    }
                }
            }
        }
        a += 1;
    }
    // Compact live cosets into 0..n, preserving order.
    let mut map = vec![NONE; e.table.len()];
    let mut n = 0u32;
    for k in 0..e.table.len() {
        if e.is_live(k as u32) {
            map[k] = n;
            n += 1;
        }
    }
    let mut rows = Vec::with_capacity(n as usize);
    let mut complete = true;
    for k in 0..e.table.len() {
        if !e.is_live(k as u32) {
            continue;
        }
        let mut row = [NONE; 4];
        for x in 0..4 {
            let t = e.table[k][x];
            if t == NONE {
                complete = false;
            } else {
                let r = e.rep(t);
                row[x] = map[r as usize];
            }
        }
        rows.push(row);
    }
    TcOutcome::Complete(CosetTable { rows, complete })
}

/// Points of the coset space on which `SL2(Z)` acts on the right, with a
/// transversal.
struct CosetSpace {
    n: u64,
    flavor: SubgroupFlavor,
    units: Vec<u64>,
}

impl CosetSpace {
    fn new(flavor: SubgroupFlavor) -> CosetSpace {
        let n = flavor.level();
        let units = (1..=n).filter(|&u| gcd(u, n) == 1).map(|u| u % n).collect();
        CosetSpace { n, flavor, units }
    }

    fn normalize(&self, c: u64, d: u64) -> (u64, u64) {
        match self.flavor {
            SubgroupFlavor::Gamma1(_) => (c, d),
            SubgroupFlavor::Gamma0(_) => self
                .units
                .iter()
                .map(|&u| ((u * c) % self.n, (u * d) % self.n))
                .min()
                .unwrap_or((0, 0)),
        }
    }

    fn act(&self, p: (u64, u64), g: &[i64; 4]) -> (u64, u64) {
        let n = self.n as i64;
        let (c, d) = (p.0 as i64, p.1 as i64);
        let nc = (c * g[0] + d * g[2]).rem_euclid(n) as u64;
        let nd = (c * g[1] + d * g[3]).rem_euclid(n) as u64;
        self.normalize(nc, nd)
    }
}

/// Schreier generators of `Gamma0(N)` or `Gamma1(N)` from a breadth-first
/// transversal of the right action of `s`, `t` on bottom rows.
pub fn schreier_generators(flavor: SubgroupFlavor) -> Result<Vec<ProjMat>, ModGroupError> {
    let n = flavor.level();
    if n == 0 {
        return Err(ModGroupError::ZeroLevel);
    }
    let size = match flavor {
        SubgroupFlavor::Gamma0(_) => index_gamma0(n),
        SubgroupFlavor::Gamma1(_) => count_primitive_rows(n),
    };
    if size > COSET_GUARD {
        return Err(ModGroupError::TooLarge { size, guard: COSET_GUARD });
    }
    if n == 1 {
        return Ok(vec![ProjMat::lit(0, -1, 1, 0), ProjMat::lit(1, 1, 0, 1)]);
    }
    let space = CosetSpace::new(flavor);
    let gens: [([i64; 4], ProjMat); 4] = [
        ([0, -1, 1, 0], letter_matrix(S)),
        ([1, 1, 0, 1], letter_matrix(T)),
        ([0, 1, -1, 0], letter_matrix(S_INV)),
        ([1, -1, 0, 1], letter_matrix(T_INV)),
    ];
    let base = space.normalize(0, 1 % n);
    let mut trans: HashMap<(u64, u64), ProjMat> = HashMap::new();
    trans.insert(base, ProjMat::identity());
    let mut order = vec![base];
    let mut queue = VecDeque::from([base]);
    while let Some(x) = queue.pop_front() {
        for (g, gm) in &gens {
            let y = space.act(x, g);
            if !trans.contains_key(&y) {
                let ty = trans[&x].mul(gm);
                trans.insert(y, ty);
                order.push(y);
                queue.push_back(y);
            }
        }
    }
    debug_assert_eq!(order.len() as u64, size);
    let mut out: Vec<ProjMat> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for x in &order {
        for (g, gm) in gens.iter().take(2) {
            let y = space.act(*x, g);
            let h = trans[x].mul(gm).mul(&trans[&y].inverse());
            if h.is_identity() {
                continue;
            }
            if seen.insert(h.clone()) {
                out.push(h);
            }
        }
    }
    Ok(out)
}

/// Outcome of a generation check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenerationReport {
    pub generates: bool,
    pub expected_index: u64,
    /// Index found by the `PSL2(Z)` enumeration, `None` if the cap was hit.
    pub index_found: Option<u64>,
    /// Index found by the `SL2(Z)` enumeration, `None` if the cap was hit.
    pub sl2_index_found: Option<u64>,
    /// Whether `-I` lies in the generated subgroup (when decidable).
    pub contains_minus_identity: Option<bool>,
    pub cap: usize,
    pub diagnostic: String,
}

impl GenerationReport {
    pub fn index_label(&self) -> String {
        match self.index_found {
            Some(i) => i.to_string(),
            None => "exceeded-cap".to_string(),
        }
    }
}

/// Does `list` generate `Gamma0(N)`? Coset cap defaults to ten times the index.
pub fn verify_generates(n: u64, list: &[ProjMat], cap: Option<usize>) -> GenerationReport {
    verify_generates_flavor(SubgroupFlavor::Gamma0(n), list, cap)
}

/// Generation check for either flavor.
///
/// The `PSL2(Z)` enumeration certifies the image of the list; a second
/// enumeration in `SL2(Z)` with exact words decides whether `-I` is generated.
pub fn verify_generates_flavor(
    flavor: SubgroupFlavor,
    list: &[ProjMat],
    cap: Option<usize>,
) -> GenerationReport {
    let n = flavor.level();
    let sl2_expected = match flavor {
        SubgroupFlavor::Gamma0(_) => index_gamma0(n),
        SubgroupFlavor::Gamma1(_) => count_primitive_rows(n),
    };
    let minus_in_group = is_member(&ProjMat::minus_identity(), flavor);
    let expected = if minus_in_group { sl2_expected } else { sl2_expected / 2 };
    let cap = cap.unwrap_or(10 * expected as usize);
    let mut rep = GenerationReport {
        generates: false,
        expected_index: expected,
        index_found: None,
        sl2_index_found: None,
        contains_minus_identity: None,
        cap,
        diagnostic: String::new(),
    };
    for m in list {
        if !is_member(m, flavor) {
            rep.diagnostic = format!("{m} is not in {flavor}");
            return rep;
        }
    }
    let mut psl_words = Vec::new();
    let mut sl_words = Vec::new();
    for m in list {
        // Membership was checked, so these cannot fail.
        psl_words.push(psl2_word(m).map(|w| w.letters()).unwrap_or_default());
        sl_words.push(sl2_letters(m).unwrap_or_default());
    }
    match todd_coxeter(&Presentation::psl2(), &psl_words, cap) {
        TcOutcome::Complete(t) => rep.index_found = Some(t.len() as u64),
        TcOutcome::CapExceeded { .. } => {
            rep.diagnostic = format!("coset enumeration exceeded the cap of {cap} cosets");
            return rep;
        }
    }
    let sl_cap = 2 * cap;
    match todd_coxeter(&Presentation::sl2(), &sl_words, sl_cap) {
        TcOutcome::Complete(t) => {
            let sl_idx = t.len() as u64;
            rep.sl2_index_found = Some(sl_idx);
            if let Some(psl_idx) = rep.index_found {
                rep.contains_minus_identity = Some(sl_idx == psl_idx);
            }
        }
        TcOutcome::CapExceeded { .. } => {
            rep.diagnostic = format!("SL2 enumeration exceeded the cap of {sl_cap} cosets");
        }
    }
    let psl_ok = rep.index_found == Some(expected);
    let sign_ok = rep.contains_minus_identity == Some(minus_in_group);
    rep.generates = psl_ok && sign_ok;
    if rep.diagnostic.is_empty() {
        rep.diagnostic = if rep.generates {
            format!("index {expected} in PSL2(Z)")
        } else if !psl_ok {
            format!(
                "generated subgroup has index {} (expected {expected})",
                rep.index_label()
            )
        } else {
            "the -I bookkeeping does not match the target group".to_string()
        };
    }
    rep
}

/// Reduce a Schreier or user list by dropping generators that are not needed,
/// keeping the generated subgroup (checked by enumeration after every drop).
pub fn reduce_generators(flavor: SubgroupFlavor, list: &[ProjMat]) -> Vec<ProjMat> {
    let mut kept: Vec<ProjMat> = list.to_vec();
    for g in list {
        let trial: Vec<ProjMat> = kept.iter().filter(|h| *h != g).cloned().collect();
        if trial.len() == kept.len() {
            continue;
        }
        if verify_generates_flavor(flavor, &trial, None).generates {
            kept = trial;
        }
    }
    kept
}

/// Bottom-left entry divided by the level, for matrices in `Gamma0(N)`.
pub fn lower_left_quotient(m: &ProjMat, n: u64) -> BigInt {
    m.c() / BigInt::from(n)
}

/// Sign helper for reporting: `+1` or `-1` for a nonzero big integer.
pub fn signum(x: &BigInt) -> i32 {
    if x.is_negative() {
        -1
    } else if x.is_positive() {
        1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indices() {
        assert_eq!(index_gamma0(1), 1);
        assert_eq!(index_gamma0(18), 36);
        assert_eq!(index_gamma0(20), 36);
        assert_eq!(index_gamma0(24), 48);
        assert_eq!(index_gamma0(11), 12);
        for n in 1..=100 {
            assert_eq!(index_gamma0(n), index_gamma0_formula(n));
        }
    }

    #[test]
    fn membership() {
        assert!(is_member(&ProjMat::lit(7, -1, 36, -5), SubgroupFlavor::Gamma0(18)));
        assert!(is_member(&ProjMat::lit(1, 1, 0, 1), SubgroupFlavor::Gamma0(7)));
        assert!(!is_member(&ProjMat::lit(0, -1, 1, 0), SubgroupFlavor::Gamma0(2)));
        assert!(is_member(&ProjMat::lit(1, 0, 5, 1), SubgroupFlavor::Gamma1(5)));
        assert!(!is_member(&ProjMat::lit(-1, 0, -5, -1), SubgroupFlavor::Gamma1(5)));
        assert!(!is_member(&ProjMat::lit(2, 0, 0, 1), SubgroupFlavor::Gamma0(1)));
    }

    #[test]
    fn words() {
        let t = ProjMat::lit(1, 1, 0, 1);
        assert_eq!(psl2_word(&t).unwrap().to_string(), "t");
        let s = ProjMat::lit(0, -1, 1, 0);
        assert_eq!(psl2_word(&s).unwrap().to_string(), "s");
        let m = ProjMat::lit(1, 0, 2, 1);
        let p = psl2_word(&m).unwrap().product();
        assert!(p == m || p == m.negate());
        let expected = ProjMat::lit(0, -1, 1, 0)
            .mul(&t.pow(-2))
            .mul(&ProjMat::lit(0, 1, -1, 0));
        assert!(expected == m || expected == m.negate());
        assert_eq!(letters_product(&sl2_letters(&m).unwrap()), m);
        assert!(psl2_word(&ProjMat::lit(2, 0, 0, 1)).is_err());
    }

    #[test]
    fn small_generation_checks() {
        let g4 = [ProjMat::lit(1, 1, 0, 1), ProjMat::lit(1, 0, 4, 1), ProjMat::minus_identity()];
        let r = verify_generates(4, &g4, None);
        assert!(r.generates, "{r:?}");
        assert_eq!(r.index_found, Some(6));
        let r = verify_generates(2, &[ProjMat::lit(1, 1, 0, 1), ProjMat::minus_identity()], None);
        assert!(!r.generates);
        assert_eq!(r.index_label(), "exceeded-cap");
    }

    #[test]
    fn minus_identity_bookkeeping() {
        // Without -I the PSL2 image of Gamma0(4) is still generated, but the
        // SL2 check notices the missing sign.
        let g4 = [ProjMat::lit(1, 1, 0, 1), ProjMat::lit(1, 0, 4, 1)];
        let r = verify_generates(4, &g4, None);
        assert_eq!(r.index_found, Some(6));
        assert_eq!(r.contains_minus_identity, Some(false));
        assert!(!r.generates);
    }

    #[test]
    fn schreier_round_trip_small() {
        for n in 1..=12 {
            for flavor in [SubgroupFlavor::Gamma0(n), SubgroupFlavor::Gamma1(n)] {
                let gens = schreier_generators(flavor).unwrap();
                assert!(gens.iter().all(|g| is_member(g, flavor)), "{flavor}");
                let r = verify_generates_flavor(flavor, &gens, None);
                assert!(r.generates, "{flavor}: {r:?}");
            }
        }
    }

    #[test]
    fn relators_act_trivially() {
        let gens = schreier_generators(SubgroupFlavor::Gamma0(6)).unwrap();
        let words: Vec<Vec<u8>> = gens.iter().map(|g| psl2_word(g).unwrap().letters()).collect();
        let TcOutcome::Complete(t) = todd_coxeter(&Presentation::psl2(), &words, 1000) else {
            panic!("enumeration failed");
        };
        assert!(t.complete);
        assert_eq!(t.len(), 12);
        for i in 0..t.len() {
            for r in &Presentation::psl2().relators {
                assert_eq!(t.apply(i, r), i);
            }
        }
    }
}
