//! Generator tables for `Gamma0(N)`, `N` in {18, 20, 24}, the level-11
//! commutator argument, and the end-to-end verifier that checks them.
//!
//! Three first-table rows and one level-11 matrix as printed have determinant
//! different from 1. They are kept verbatim and flagged as errata; by default
//! the checks run on the determinant-one completion, and `printed` mode runs
//! them on the literal entries instead.


use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::{certificates_for_level, check_certificate, GroupRingError};
use crate::elliptic::{check_lemma_hypotheses, classify, EllipticKind};
use crate::mat2::{find_word, make_special, Letter, ProjMat, RatMat, SpecialWord};
use crate::modgroup::{is_member, verify_generates, SubgroupFlavor};
use crate::report::{all_ok, Check};

/// One row of a first table: the printed matrix and, for errata, the
/// determinant-one replacement.
#[derive(Clone, Debug)]
pub struct TableRow {
    pub printed: [i64; 4],
    pub corrected: Option<[i64; 4]>,
    pub word: &'static str,
}

impl TableRow {
    pub fn matrix(&self, printed: bool) -> ProjMat {
        let e = if printed {
            self.printed
        } else {
            self.corrected.unwrap_or(self.printed)
        };
        ProjMat::lit(e[0], e[1], e[2], e[3])
    }
}

const fn row(printed: [i64; 4], word: &'static str) -> TableRow {
    TableRow {
        printed,
        corrected: None,
        word,
    }
}

const fn erratum(printed: [i64; 4], corrected: [i64; 4], word: &'static str) -> TableRow {
    TableRow {
        printed,
        corrected: Some(corrected),
        word,
    }
}

/// First-table generators paired with second-table words, in table order.
pub fn table_rows(n: u64) -> Option<Vec<TableRow>> {
    let rows = match n {
        18 => vec![
            row([1, 1, 0, 1], "P1"),
            row([-1, 0, 0, -1], "Q"),
            row([7, -1, 36, -5], "A"),
            row([13, -8, 18, -11], "B"),
            erratum(
                [71, -15, 90, -9],
                [71, -15, 90, -19],
                "B H18 J18 W18 J18 H18^-1 W18^-1 A^-1",
            ),
            row([55, -13, 72, -17], "Q B J18^-2 W18^-1 A^-1"),
            row([7, -2, 18, -5], "Q (W18 J18)^-2 A^-1"),
            row([31, -25, 36, -29], "Q P1 H18 J18^-1 W18^-1 J18^-1 H18^-1 B^-1"),
        ],
        20 => vec![
            row([1, 1, 0, 1], "P1"),
            row([-1, 0, 0, -1], "Q"),
            row([13, -2, 20, -3], "C"),
            row([49, -9, 60, -11], "C L20^-2 W20^-1 L20^-1 C Q"),
            row([31, -7, 40, -9], "C L20^-2 C L20^-1"),
            row([29, -8, 40, -11], "C L20^-1 W20^-1 L20^-1 C L20^-1 Q"),
            row([31, -9, 100, -29], "L20^2 C^-1 W20^-1 L20^-1 C L20^-1"),
            row([17, -6, 20, -7], "C L20^-3"),
        ],
        24 => vec![
            row([1, 1, 0, 1], "P1"),
            row([-1, 0, 0, -1], "Q"),
            row([19, -4, 24, -5], "D"),
            row([19, -2, 48, -5], "L24^2"),
            row([61, -7, 96, -11], "L24 W24 P1^-1 D L24"),
            row([59, -8, 96, -13], "Q P1/2 L24^-1 D^-1 P1/2 L24"),
            row([13, -2, 72, -11], "H24 P1^-1 D P1/2^-1 D P1/2 H24^-1"),
            row([17, -5, 24, -7], "Q P1/2 D^-1 P1/2"),
            erratum([61, -25, 144, -5], [61, -25, 144, -59], "L24 P1^-1 L24^-1"),
            row([13, -6, 24, -11], "L24 W24 L24^-1"),
            erratum([-5, -2, 48, -19], [-5, -2, 48, 19], "(W24^-1 L24^-1 P1)^2"),
        ],
        _ => return None,
    };
    Some(rows)
}

/// The shorter level-20 generating list.
pub const SIMPLIFIED_20: [&str; 8] = [
    "P1",
    "Q",
    "C",
    "L20 W20 L20^-1",
    "L20^-1 W20 L20",
    "L20 C L20^-1",
    "L20^-1 C L20",
    "L20^3",
];

/// Level-11 matrices: `X` and the conjugator `Y` (printed and corrected).
pub const N11_X: [i64; 4] = [3, -1, -11, 4];
pub const N11_Y_PRINTED: [i64; 4] = [2, -1, 11, 5];
pub const N11_Y_CORRECTED: [i64; 4] = [2, -1, 11, -5];

/// All single-entry changes that bring an integer matrix to determinant 1,
/// as `(entry index, new value)`.
pub fn det_one_completions(m: [i64; 4]) -> Vec<(usize, i64)> {
    let [a, b, c, d] = m;
    let mut out = Vec::new();
    // Each entry appears linearly in ad - bc = 1.
    let solve = |num: i64, den: i64| (den != 0 && num % den == 0).then(|| num / den);
    let candidates = [
        (0, solve(1 + b * c, d)),
        (1, solve(a * d - 1, c)),
        (2, solve(a * d - 1, b)),
        (3, solve(1 + b * c, a)),
    ];
    for (i, v) in candidates {
        if let Some(v) = v {
            if v != m[i] {
                out.push((i, v));
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, Default)]
pub struct TableOptions {
    /// Also check the shorter level-20 list.
    pub simplified: bool,
    /// Use the matrices exactly as printed, without errata corrections.
    pub printed: bool,
    /// Coset cap override for the generation checks.
    pub cap: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct TableReport {
    pub level: u64,
    pub checks: Vec<Check>,
}

impl TableReport {
    pub fn ok(&self) -> bool {
        all_ok(&self.checks)
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }
}

fn word(s: &str) -> SpecialWord {
    s.parse().expect("built-in word parses")
}

fn eval(s: &str) -> ProjMat {
    word(s).eval().expect("built-in word evaluates")
}

fn ratmat(m: [i64; 4]) -> RatMat {
    RatMat::from_i64(m[0], m[1], m[2], m[3])
}

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

fn entry_distance(x: &ProjMat, y: &ProjMat) -> BigInt {
    x.entries()
        .iter()
        .zip(y.entries().iter())
        .map(|(a, b)| (*a - *b).abs())
        .sum()
}

/// Alphabet of elements known to act trivially, used for identifications.
fn trivial_alphabet(n: u64) -> Vec<Letter> {
    let mut al = vec![Letter::p_int(1), Letter::Q, Letter::W(n)];
    if n % 4 == 0 {
        al.push(Letter::L(n));
    }
    al
}

/// Check `g ≡ h`: exact equality, or `g h^-1` is a short word in the
/// trivially-acting alphabet.
fn identification(id: &str, n: u64, g: &ProjMat, h_word: &str) -> Check {
    let h = eval(h_word);
    if *g == h {
        return Check::new(id, true, format!("({g}) = {h_word} exactly"));
    }
    let u = g.mul(&h.inverse());
    match find_word(&u, &trivial_alphabet(n), 4) {
        Ok(Some(w)) => Check::new(
            id,
            true,
            format!("({g}) = [{w}]·{h_word}, matrix-level check with left factor acting trivially"),
        ),
        Ok(None) => Check::new(
            id,
            false,
            format!("({g}) vs {h_word}: quotient ({u}) is not a word of length <= 4 in P1, Q, W{n}, L{n}"),
        ),
        Err(e) => Check::new(id, false, e.to_string()),
    }
}

fn elliptic_check(id: &str, m: &ProjMat, label: &str, trace: BigRational) -> Check {
    match classify(m) {
        Ok(c) => {
            let ok = c.kind == EllipticKind::EllipticInfinite && c.trace == trace;
            Check::new(
                id,
                ok,
                format!(
                    "{label} = ({m}): {} with normalized trace {} (expected elliptic-infinite, {})",
                    c.kind.label(),
                    c.trace,
                    trace
                ),
            )
        }
        Err(e) => Check::new(id, false, format!("{label}: {e}")),
    }
}

fn generation_check(id: &str, n: u64, list: &[ProjMat], cap: Option<usize>) -> Check {
    let rep = verify_generates(n, list, cap);
    Check::new(
        id,
        rep.generates,
        format!(
            "{} generators: index {} (expected {}), -I {}; {}",
            list.len(),
            rep.index_label(),
            rep.expected_index,
            match rep.contains_minus_identity {
                Some(true) => "generated",
                Some(false) => "not generated",
                None => "undecided",
            },
            rep.diagnostic
        ),
    )
}

fn table_checks(n: u64, opts: &TableOptions, out: &mut Vec<Check>) {
    let rows = table_rows(n).expect("table level");
    let firsts: Vec<ProjMat> = rows.iter().map(|r| r.matrix(opts.printed)).collect();
    let values: Vec<ProjMat> = rows.iter().map(|r| eval(r.word)).collect();

    for (i, r) in rows.iter().enumerate() {
        if let (Some(c), false) = (r.corrected, opts.printed) {
            let p = r.printed;
            let det = p[0] * p[3] - p[1] * p[2];
            let comps = det_one_completions(p);
            let listed: Vec<String> = comps
                .iter()
                .map(|(k, v)| format!("{}={v}", ["a", "b", "c", "d"][*k]))
                .collect();
            out.push(Check::skip(
                format!("erratum/row-{}", i + 1),
                format!(
                    "printed ({}) has det {det}; det-1 single-entry completions: {}; using ({}), which equals the word value",
                    ProjMat::lit(p[0], p[1], p[2], p[3]),
                    listed.join(", "),
                    ProjMat::lit(c[0], c[1], c[2], c[3]),
                ),
            ));
        }
    }

    let mut matched = 0;
    for (i, (g, v)) in firsts.iter().zip(&values).enumerate() {
        let ok = g == v;
        matched += ok as usize;
        let details = if ok {
            format!("{} = ({g})", rows[i].word)
        } else {
            let nearest = firsts
                .iter()
                .enumerate()
                .min_by_key(|(_, h)| entry_distance(h, v))
                .map(|(j, h)| {
                    if h == v {
                        format!("equals row {}", j + 1)
                    } else {
                        format!("nearest row {} ({h})", j + 1)
                    }
                })
                .unwrap_or_default();
            format!(
                "{} evaluates to ({v}) but row {} is ({g}); {nearest}",
                rows[i].word,
                i + 1
            )
        };
        out.push(Check::new(format!("match/row-{}", i + 1), ok, details));
    }
    out.push(Check::new(
        "match/count",
        matched == rows.len(),
        format!("{matched}/{} second-table words match", rows.len()),
    ));

    out.push(generation_check("generates/first-table", n, &firsts, opts.cap));
    out.push(generation_check("generates/second-table", n, &values, opts.cap));
    if opts.simplified {
        if n == 20 {
            let list: Vec<ProjMat> = SIMPLIFIED_20.iter().map(|w| eval(w)).collect();
            out.push(generation_check("generates/simplified", n, &list, opts.cap));
        } else {
            out.push(Check::skip(
                "generates/simplified",
                "a simplified list is only given at level 20",
            ));
        }
    }
}

fn step_checks_18(opts: &TableOptions, out: &mut Vec<Check>) {
    let a = make_special(&Letter::A).unwrap();
    let b = make_special(&Letter::B).unwrap();
    let w = make_special(&Letter::W(18)).unwrap();
    let target = ProjMat::lit(-11, -1, -54, -5);
    let aw = a.to_ratmat().mul(&w.to_ratmat());
    out.push(Check::new(
        "step/a-w18",
        aw == target.to_ratmat(),
        format!("A·W18 = ({}) exactly", aw.to_proj().map(|m| m.to_string()).unwrap_or_default()),
    ));
    // B = P H A H^-1 P^-1 with H^-1 the true inverse (0, 1/18; -1, 0).
    let p = ratmat([1, 1, 0, 1]);
    let h = ratmat([0, -1, 18, 0]);
    let conj = p
        .mul(&h)
        .mul(&a.to_ratmat())
        .mul(&h.inverse().unwrap())
        .mul(&p.inverse().unwrap());
    out.push(Check::new(
        "step/b-conjugate",
        conj == b.to_ratmat(),
        "B = P·H18·A·H18^-1·P^-1 exactly",
    ));
    // Terms of the relation obtained from the U_3 chain.
    let x = eval("P1/3 J18 P1/3 J18^-1");
    out.push(Check::new(
        "step/u3-display-first",
        x == target,
        format!("P1/3·J18·P1/3·J18^-1 = ({x}); matrix-level check"),
    ));
    let z = eval("J18 P2/3 J18^-1");
    let z_target = RatMat::new(rat(13, 1), rat(4, 3), rat(-108, 1), rat(-11, 1));
    out.push(Check::new(
        "step/u3-display-third",
        Some(z.clone()) == z_target.to_proj().ok(),
        format!("J18·P2/3·J18^-1 = ({z}); matrix-level check"),
    ));
    let y = RatMat::new(rat(25, 1), rat(-7, 3), rat(-54, 1), rat(-5, 1));
    let det = y.det();
    if opts.printed {
        out.push(Check::new(
            "step/u3-display-second",
            det.is_positive(),
            format!("printed (25,-7/3;-54,-5) has det {det}, not an element of GL2+(Q)"),
        ));
    } else {
        out.push(Check::skip(
            "erratum/u3-display-second",
            format!("printed (25,-7/3;-54,-5) has det {det} < 0; the chain is certified by the U_3 certificates instead"),
        ));
    }
}

fn step_checks_l(n: u64, out: &mut Vec<Check>) {
    let nn = n as i64;
    let l = RatMat::new(rat(nn - 4, 4), rat(-1, 2), rat(nn, 2), rat(-1, 1));
    let ph = RatMat::new(rat(1, 1), rat(1, 2), rat(0, 1), rat(1, 1)).mul(&ratmat([0, -1, nn, 0]));
    let sq = ph.mul(&ph);
    let lhs = l.scale(&rat(nn, 1));
    out.push(Check::new(
        format!("step/l{n}-square"),
        lhs == sq && l.det().is_one(),
        format!("{n}·L{n} = (P1/2·H{n})^2 exactly, det L{n} = {}", l.det()),
    ));
    let canon = make_special(&Letter::L(n)).unwrap();
    out.push(Check::new(
        format!("step/l{n}-canonical"),
        l.to_proj().ok() == Some(canon.clone()),
        format!("L{n} canonical form ({canon})"),
    ));
}

fn identification_checks(n: u64, out: &mut Vec<Check>) {
    let pairs: &[([i64; 4], &str)] = match n {
        20 => &[([3, -1, 40, -13], "C L20^-2"), ([3, -2, 20, -13], "C^-1")],
        24 => &[
            ([5, -4, 24, -19], "Q D^-1"),
            ([5, 4, -24, -19], "D P1"),
            ([5, -2, 48, -19], "Q L24^-2"),
            ([5, 2, -48, -19], "Q (W24^-1 L24^-1 P1)^2"),
        ],
        _ => &[],
    };
    for (i, (m, w)) in pairs.iter().enumerate() {
        let g = ProjMat::lit(m[0], m[1], m[2], m[3]);
        out.push(identification(&format!("ident/{}", i + 1), n, &g, w));
    }
    let membership = pairs.iter().all(|(m, _)| {
        is_member(&ProjMat::lit(m[0], m[1], m[2], m[3]), SubgroupFlavor::Gamma0(n))
    });
    if !pairs.is_empty() {
        out.push(Check::new(
            "ident/membership",
            membership,
            format!("identified matrices lie in Gamma0({n})"),
        ));
    }
}

fn closing_checks(n: u64, out: &mut Vec<Check>) {
    let (label, trace) = match n {
        20 => ("C^-1 P1/3 L20^2", rat(5, 3)),
        24 => ("D^-1 P3/5", rat(-2, 5)),
        _ => return,
    };
    let m = eval(label);
    out.push(elliptic_check("elliptic/closing", &m, label, trace));
    match check_lemma_hypotheses(1, &m, None) {
        Ok(h) => out.push(Check::new(
            "elliptic/one-circle-hypotheses",
            h.pass,
            h.diagnostics.join("; "),
        )),
        Err(e) => out.push(Check::new("elliptic/one-circle-hypotheses", false, e.to_string())),
    }
}

fn level_11_checks(opts: &TableOptions, out: &mut Vec<Check>) {
    let x = ProjMat::lit(N11_X[0], N11_X[1], N11_X[2], N11_X[3]);
    let yp = ProjMat::lit(N11_Y_PRINTED[0], N11_Y_PRINTED[1], N11_Y_PRINTED[2], N11_Y_PRINTED[3]);
    let yc = ProjMat::lit(
        N11_Y_CORRECTED[0],
        N11_Y_CORRECTED[1],
        N11_Y_CORRECTED[2],
        N11_Y_CORRECTED[3],
    );
    let y = if opts.printed { yp.clone() } else { yc.clone() };
    if !opts.printed {
        let comps: Vec<String> = det_one_completions(N11_Y_PRINTED)
            .iter()
            .map(|(k, v)| format!("{}={v}", ["a", "b", "c", "d"][*k]))
            .collect();
        out.push(Check::skip(
            "erratum/y",
            format!(
                "printed ({yp}) has det {}; det-1 single-entry completions: {}; using ({yc})",
                yp.det(),
                comps.join(", ")
            ),
        ));
    }
    let p = ProjMat::lit(1, 1, 0, 1);
    let w11 = make_special(&Letter::W(11)).unwrap();
    // Exact product in SL2(Q), not only projectively.
    let prod = y
        .to_ratmat()
        .mul(&p.to_ratmat())
        .mul(&x.to_ratmat())
        .mul(&y.to_ratmat().inverse().unwrap())
        .mul(&x.to_ratmat().inverse().unwrap());
    let exact = prod == w11.to_ratmat();
    out.push(Check::new(
        "step/commutator",
        exact,
        format!(
            "Y·P·X·Y^-1·X^-1 = ({}) with Y = ({y}); W11 = ({w11})",
            prod.to_proj().map(|m| m.to_string()).unwrap_or_default()
        ),
    ));
    let f = SubgroupFlavor::Gamma0(11);
    out.push(Check::new(
        "step/factors-in-gamma0",
        is_member(&x, f) && is_member(&y, f),
        format!(
            "X in Gamma0(11): {}; Y in Gamma0(11): {}",
            is_member(&x, f),
            is_member(&y, f)
        ),
    ));
    let list = vec![p.clone(), ProjMat::minus_identity(), x.clone(), y.clone()];
    out.push(generation_check("generates/standard-list", 11, &list, opts.cap));

    let e = RatMat::new(rat(1, 1), rat(-2, 3), rat(11, 2), rat(-8, 3))
        .to_proj()
        .unwrap();
    out.push(elliptic_check("elliptic/closing", &e, "E", rat(-5, 3)));
    for (id, k, second) in [
        ("elliptic/one-circle-hypotheses", 1, None),
        ("elliptic/two-circle-hypotheses", 0, Some(y.inverse())),
    ] {
        match check_lemma_hypotheses(k, &e, second.as_ref()) {
            Ok(h) => out.push(Check::new(id, h.pass, h.diagnostics.join("; "))),
            Err(err) => out.push(Check::new(id, false, err.to_string())),
        }
    }
}

fn certificate_checks(n: u64, out: &mut Vec<Check>) {
    match certificates_for_level(n) {
        Ok(certs) => {
            for (name, c) in certs {
                let r = check_certificate(&c);
                let scalars = c.scalars_used();
                out.push(Check::new(
                    format!("certificate/{name}"),
                    r.valid,
                    if scalars.is_empty() {
                        r.to_string()
                    } else {
                        format!("{r}; declared scalars: {}", scalars.join(", "))
                    },
                ));
            }
        }
        Err(e) => out.push(Check::new("certificate/load", false, e.to_string())),
    }
}

/// Run every check available at level `n` (11, 18, 20 or 24).
pub fn verify_tables(n: u64, opts: &TableOptions) -> Result<TableReport, GroupRingError> {
    if ![11, 18, 20, 24].contains(&n) {
        return Err(GroupRingError::UnsupportedLevel(n));
    }
    let mut checks = Vec::new();
    if n == 11 {
        level_11_checks(opts, &mut checks);
    } else {
        table_checks(n, opts, &mut checks);
        match n {
            18 => step_checks_18(opts, &mut checks),
            _ => {
                step_checks_l(n, &mut checks);
                identification_checks(n, &mut checks);
                closing_checks(n, &mut checks);
            }
        }
    }
    certificate_checks(n, &mut checks);
    Ok(TableReport { level: n, checks })
}

/// Number of word/row matches for a table (used for summaries).
pub fn match_count(n: u64, printed: bool) -> Option<(usize, usize)> {
    let rows = table_rows(n)?;
    let hits = rows
        .iter()
        .filter(|r| r.matrix(printed) == eval(r.word))
        .count();
    Some((hits, rows.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn completions() {
        assert_eq!(det_one_completions([71, -15, 90, -9]), vec![(3, -19)]);
        assert_eq!(det_one_completions([-5, -2, 48, -19]), vec![(0, 5), (2, -47), (3, 19)]);
        let c = det_one_completions(N11_Y_PRINTED);
        assert!(c.contains(&(3, -5)));
    }

    #[test]
    fn printed_tables_report_errata_rows() {
        assert_eq!(match_count(18, true), Some((7, 8)));
        assert_eq!(match_count(20, true), Some((8, 8)));
        assert_eq!(match_count(24, true), Some((9, 11)));
        assert_eq!(match_count(18, false), Some((8, 8)));
        assert_eq!(match_count(24, false), Some((11, 11)));
    }

    #[test]
    fn level_18_passes() {
        let r = verify_tables(18, &TableOptions::default()).unwrap();
        for c in &r.checks {
            assert!(!c.failed(), "{}: {}", c.id, c.details);
        }
    }

    #[test]
    fn levels_20_and_24_pass() {
        let opts = TableOptions {
            simplified: true,
            ..Default::default()
        };
        for n in [20, 24] {
            let r = verify_tables(n, &opts).unwrap();
            for c in &r.checks {
                assert!(!c.failed(), "{n} {}: {}", c.id, c.details);
            }
        }
    }

    #[test]
    fn level_11_printed_fails() {
        let opts = TableOptions {
            printed: true,
            ..Default::default()
        };
        let r = verify_tables(11, &opts).unwrap();
        assert!(r.get("step/commutator").unwrap().failed());
        let r = verify_tables(11, &TableOptions::default()).unwrap();
        assert!(r.ok(), "{:?}", r.checks);
    }
}
