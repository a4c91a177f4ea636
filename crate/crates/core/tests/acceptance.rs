//! Acceptance criteria, one test per criterion. Each test prints a single
//! `criterion N: PASS|FAIL` line (run with `--nocapture` to see them) and
//! then asserts the outcome.

mod common;

use std::time::{Duration, Instant};

use gamma0_core::analytic::{run_suite, SuiteInput};
use gamma0_core::characters::{
    additive_twist_residual, condition_generators, gauss_sum, primitive_chars, recheck_special_prime, special_prime,
    ModulusRule, SpecialPrime, TwistSpec,
};
use gamma0_core::elliptic::{
    classify, decompose_gamma, default_excluded, make_m_qsr, scalar_power, verify_decomposition, Decomposition,
    EllipticKind,
};
use gamma0_core::arith::is_prime;
use gamma0_core::groupring::{
    check_certificate, shipped_certificates, tables::match_count, verify_tables, SymbolicCoeff, TableOptions,
};
use gamma0_core::mat2::{eval_word, find_word, Letter, ProjMat, RatMat};
use gamma0_core::modgroup::{schreier_generators, SubgroupFlavor};
use gamma0_core::report::Check;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn report(n: u32, ok: bool, elapsed: Duration, budget: Duration, detail: &str) {
    let ok = ok && elapsed < budget;
    println!(
        "criterion {n}: {} ({:.3} s, budget {:.0} s) {detail}",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        budget.as_secs_f64()
    );
    assert!(ok, "criterion {n} failed: {detail}");
}

fn failures(checks: &[Check]) -> Vec<String> {
    checks
        .iter()
        .filter(|c| c.failed())
        .map(|c| format!("{}: {}", c.id, c.details))
        .collect()
}

fn frac(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[test]
fn criterion_01_tables() {
    let t = Instant::now();
    let mut detail = Vec::new();
    let mut ok = true;
    for (n, want) in [(18u64, 8usize), (20, 8), (24, 11)] {
        let (hits, total) = match_count(n, false).expect("table exists");
        ok &= hits == want && total == want;
        let rep = verify_tables(n, &TableOptions::default()).unwrap();
        let rows: Vec<&Check> = rep.checks.iter().filter(|c| c.id.starts_with("match/row-")).collect();
        for c in rows.iter().filter(|c| !c.passed()) {
            println!("  N={n} {}: {}", c.id, c.details);
            ok = false;
        }
        detail.push(format!("N={n} {hits}/{total}"));
    }
    report(1, ok, t.elapsed(), Duration::from_secs(1), &detail.join(", "));
}

#[test]
fn criterion_02_generation() {
    let mut detail = Vec::new();
    let mut ok = true;
    let mut slowest = Duration::ZERO;
    let opts = TableOptions { simplified: true, ..TableOptions::default() };
    let wanted: [(u64, &str); 5] = [
        (18, "generates/first-table"),
        (20, "generates/first-table"),
        (24, "generates/first-table"),
        (20, "generates/simplified"),
        (11, "generates/standard-list"),
    ];
    for (n, id) in wanted {
        let t = Instant::now();
        let rep = verify_tables(n, &opts).unwrap();
        slowest = slowest.max(t.elapsed());
        let c = rep.get(id).expect("generation check present");
        ok &= c.passed();
        detail.push(format!("N={n} {id}: {}", c.details.split(';').next().unwrap_or("")));
    }
    report(2, ok, slowest, Duration::from_secs(5), &detail.join(" | "));
}

#[test]
fn criterion_03_step_identities() {
    let t = Instant::now();
    let mut ok = true;
    let mut count = 0;
    let mut expect = |n: u64, ids: &[&str]| {
        let rep = verify_tables(n, &TableOptions::default()).unwrap();
        for id in ids {
            let c = rep.get(id).unwrap_or_else(|| panic!("N={n}: missing {id}"));
            if !c.passed() {
                println!("  N={n} {id}: {}", c.details);
                ok = false;
            }
            count += 1;
        }
    };
    expect(18, &["step/a-w18", "step/b-conjugate"]);
    expect(20, &["step/l20-square", "ident/1", "ident/2", "ident/membership"]);
    expect(24, &["step/l24-square", "ident/1", "ident/2", "ident/3", "ident/4", "ident/membership"]);
    expect(11, &["step/commutator", "step/factors-in-gamma0"]);
    // The first of these is also checked directly here.
    let aw = eval_word(&"A W18".parse().unwrap()).unwrap();
    ok &= aw == ProjMat::lit(-11, -1, -54, -5);
    report(3, ok, t.elapsed(), Duration::from_secs(5), &format!("{count} exact identities"));
}

#[test]
fn criterion_04_ellipticity() {
    let t = Instant::now();
    let mut ok = true;
    let named: Vec<(&str, ProjMat, BigRational)> = vec![
        (
            "(1,-2/3;11/2,-8/3)",
            RatMat::new(frac(1, 1), frac(-2, 3), frac(11, 2), frac(-8, 3)).to_proj().unwrap(),
            frac(-5, 3),
        ),
        ("C^-1 P1/3 L20^2", eval_word(&"C^-1 P1/3 L20^2".parse().unwrap()).unwrap(), frac(5, 3)),
        ("D^-1 P3/5", eval_word(&"D^-1 P3/5".parse().unwrap()).unwrap(), frac(-2, 5)),
    ];
    for (name, m, tr) in &named {
        let c = classify(m).unwrap();
        let good = c.kind == EllipticKind::EllipticInfinite && &c.trace == tr && scalar_power(m, 100).is_none();
        if !good {
            println!("  {name}: {:?}, trace {}", c.kind, c.trace);
        }
        ok &= good;
    }
    let mut count = 0;
    for n in [11u64, 18, 20, 24] {
        for q in (3..=333u64).filter(|&q| is_prime(q) && n % q != 0) {
            for s in (3..=1000 / q).filter(|&s| s != q && is_prime(s) && n % s != 0 && (q * s - 1) % n == 0) {
                let r = make_m_qsr(q, s, n, None).unwrap();
                let want = frac(-2, 1) + frac(4, (q * s) as i64);
                let good = r.trace == want
                    && r.class.kind == EllipticKind::EllipticInfinite
                    && scalar_power(&r.m, 100).is_none();
                if !good {
                    println!("  M({q},{s},{n}): trace {}", r.trace);
                }
                ok &= good;
                count += 1;
            }
        }
    }
    ok &= count > 0;
    report(4, ok, t.elapsed(), Duration::from_secs(60), &format!("3 named matrices, {count} M(q,s,N) with qs <= 1000"));
}

#[test]
fn criterion_05_certificates() {
    let t = Instant::now();
    let certs = shipped_certificates().unwrap();
    let mut ok = true;
    let mut flipped = 0;
    for (name, cert) in &certs {
        if !check_certificate(cert).valid {
            println!("  {name}: invalid");
            ok = false;
        }
        let mut mutated = cert.clone();
        let (m, _) = cert.claim.terms().next().expect("non-empty claim");
        mutated.claim.add_term(m.clone(), SymbolicCoeff::one());
        if check_certificate(&mutated).valid {
            println!("  {name}: mutation still validates");
            ok = false;
        } else {
            flipped += 1;
        }
    }
    let names: Vec<&str> = certs.iter().map(|(n, _)| *n).collect();
    for needed in ["periodic_1", "fricke_w_18", "l_chain_20", "l_chain_24", "u3_chain_18", "u3_chain_18_jpj"] {
        ok &= names.contains(&needed);
    }
    report(
        5,
        ok,
        t.elapsed(),
        Duration::from_secs(10),
        &format!("{} certificates valid, {flipped} mutations rejected", certs.len()),
    );
}

#[test]
fn criterion_06_characters() {
    let t = Instant::now();
    let mut worst_tau = 0.0f64;
    for q in 2..=50u64 {
        for psi in primitive_chars(q).unwrap() {
            let tau = gauss_sum(&psi);
            worst_tau = worst_tau.max((tau.norm_sqr() - q as f64).abs());
            let prod = tau * gauss_sum(&psi.conj());
            worst_tau = worst_tau.max((prod - psi.parity() as f64 * q as f64).norm());
        }
    }
    let mut worst_twist = 0.0f64;
    for q in (2..=13u64).filter(|&q| is_prime(q)) {
        for a in 1..q as i64 {
            for m in 0..=3 {
                for n in 1..=200 {
                    worst_twist = worst_twist.max(additive_twist_residual(&TwistSpec { q, a, m }, n).unwrap());
                }
            }
        }
    }
    let ok = worst_tau < 1e-10 && worst_twist < 1e-10;
    report(
        6,
        ok,
        t.elapsed(),
        Duration::from_secs(10),
        &format!("max tau deviation {worst_tau:.2e}, max twist residual {worst_twist:.2e}"),
    );
}

#[test]
fn criterion_07_analytic() {
    let t = Instant::now();
    let checks = run_suite(&SuiteInput::default());
    for c in &checks {
        let value = c.numeric.as_ref().map(|n| format!(" ({:.3e} < {:.0e})", n.value, n.tolerance)).unwrap_or_default();
        println!("  [{:?}] {}{value}", c.status, c.id);
    }
    let bad = failures(&checks);
    let detail = if bad.is_empty() { format!("{} checks", checks.len()) } else { bad.join("; ") };
    report(7, bad.is_empty(), t.elapsed(), Duration::from_secs(60), &detail);
}

#[test]
fn criterion_08_decomposition() {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut ok = true;
    let mut nontrivial = 0;
    for n in [11u64, 18, 20, 24] {
        let ex = default_excluded(n);
        for _ in 0..100 {
            let g = common::random_gamma0(&mut rng, n, 50);
            let dec = decompose_gamma(&g, n, &ex, 100_000).unwrap();
            if let Decomposition::Primes { q, s, .. } = &dec {
                ok &= !ex.contains(q) && !ex.contains(s);
                nontrivial += 1;
            }
            if let Err(e) = verify_decomposition(&g, &dec) {
                println!("  N={n} {g}: {e}");
                ok = false;
            }
        }
    }
    report(8, ok, t.elapsed(), Duration::from_secs(5), &format!("400 elements ({nontrivial} with c != 0)"));
}

#[test]
fn criterion_09_word_search() {
    let t = Instant::now();
    let mut ok = true;
    let mut found = Vec::new();
    let cases: [(ProjMat, Vec<Letter>); 2] = [
        (ProjMat::lit(7, -2, 18, -5), vec![Letter::Q, Letter::W(18), Letter::J(18), Letter::A]),
        (eval_word(&"W4".parse().unwrap()).unwrap(), vec![Letter::P(frac(-1, 1)), Letter::H(4)]),
    ];
    for (target, alphabet) in &cases {
        match find_word(target, alphabet, 7).unwrap() {
            Some(w) => {
                ok &= eval_word(&w).unwrap() == *target && w.len() <= 7;
                found.push(format!("{target} = {w}"));
            }
            None => {
                ok = false;
                found.push(format!("{target}: none"));
            }
        }
    }
    report(9, ok, t.elapsed(), Duration::from_secs(30), &found.join("; "));
}

#[test]
fn criterion_10_special_prime() {
    let t = Instant::now();
    let mut ok = true;
    let mut detail = Vec::new();
    for n in [5u64, 7, 11] {
        let gens = schreier_generators(SubgroupFlavor::Gamma1(n)).unwrap();
        let raw = special_prime(n, &gens, ModulusRule::NC, 10_000_000_000).unwrap();
        let list = match raw {
            SpecialPrime::Found { q, .. } => {
                ok &= recheck_special_prime(n, &gens, q).unwrap();
                detail.push(format!("N={n}: q={q}"));
                continue;
            }
            SpecialPrime::Infeasible { first, second } => {
                // The conflicting pair must really be inconsistent.
                let g = num_integer::gcd(first.1.modulus, second.1.modulus);
                ok &= first.0 != second.0 && (first.1.residue - second.1.residue).rem_euclid(g) != 0;
                detail.push(format!(
                    "N={n}: raw list infeasible (generators {} and {})",
                    first.0 + 1,
                    second.0 + 1
                ));
                condition_generators(n, &gens).unwrap().gens
            }
            SpecialPrime::NotFound { .. } => {
                ok = false;
                detail.push(format!("N={n}: no prime below bound"));
                continue;
            }
        };
        match special_prime(n, &list, ModulusRule::NC, 10_000_000_000).unwrap() {
            SpecialPrime::Found { q, .. } => {
                ok &= recheck_special_prime(n, &list, q).unwrap();
                detail.push(format!("conditioned q={q}"));
            }
            other => {
                ok = false;
                detail.push(format!("conditioned: {other:?}"));
            }
        }
    }
    report(10, ok, t.elapsed(), Duration::from_secs(60), &detail.join(", "));
}
