//! Subcommand implementations. Each returns the ordered list of checks, or
//! a message for usage/input errors (exit code 2).

use std::path::Path;

use gamma0_core::analytic::{run_suite, GridTolerances, SuiteInput};
use gamma0_core::characters::{
    condition_generators, gauss_sum, primitive_chars, recheck_special_prime, special_prime, ModulusRule,
    SpecialPrime, TwistSpec, TwistTable,
};
use gamma0_core::elliptic::{classify, decompose_gamma, default_excluded, scalar_power, verify_decomposition, Decomposition, EllipticKind};
use gamma0_core::groupring::tables::{verify_tables, TableOptions};
use gamma0_core::groupring::{check_certificate, shipped_certificates, Certificate};
use gamma0_core::mat2::{find_word, parse_matrix_list, ProjMat, SpecialWord};
use gamma0_core::modgroup::{
    count_primitive_rows, index_gamma0, is_member, schreier_generators, verify_generates_flavor, SubgroupFlavor,
};
use gamma0_core::report::Check;
use num_complex::Complex64;

use crate::{
    AnalyticCmd, CharsArgs, CharsCmd, ClassifyArgs, Command, DecomposeArgs, FindWordArgs, Flavor, Rule,
    SpecialPrimeArgs, SubgroupArgs, SubgroupCmd, VerifyCmd,
};

type Out = Result<Vec<Check>, String>;

pub fn run(cmd: &Command) -> Out {
    match cmd {
        Command::Verify(VerifyCmd::Tables(a)) => {
            let level: u64 = a.level.parse().map_err(|e| format!("bad level: {e}"))?;
            let opts = TableOptions { simplified: a.simplified, printed: a.printed, cap: None };
            Ok(verify_tables(level, &opts).map_err(|e| e.to_string())?.checks)
        }
        Command::Verify(VerifyCmd::Certificates(a)) => certificates(a.file.as_deref()),
        Command::Classify(a) => classify_cmd(a),
        Command::Subgroup(s) => subgroup(s),
        Command::Chars(CharsCmd::Gauss(a)) => gauss(a),
        Command::Chars(CharsCmd::TwistIdentity(a)) => twist(a),
        Command::SpecialPrime(a) => special(a),
        Command::Analytic(AnalyticCmd::Suite(a)) => {
            let mut input = match &a.grid {
                Some(p) => serde_json::from_str::<SuiteInput>(&read(p)?)
                    .map_err(|e| format!("{}: {e}", p.display()))?,
                None => SuiteInput::default(),
            };
            if let Some(t) = a.tol {
                input.grid.tolerances = GridTolerances::uniform(t);
            }
            Ok(run_suite(&input))
        }
        Command::Decompose(a) => decompose(a),
        Command::FindWord(a) => find(a),
    }
}

fn read(p: &Path) -> Result<String, String> {
    std::fs::read_to_string(p).map_err(|e| format!("cannot read {}: {e}", p.display()))
}

fn parse_mat(s: &str) -> Result<ProjMat, String> {
    s.parse().map_err(|e| format!("bad matrix {s:?}: {e}"))
}

fn parse_word(s: &str) -> Result<SpecialWord, String> {
    s.parse().map_err(|e| format!("bad word {s:?}: {e}"))
}

fn certificates(file: Option<&Path>) -> Out {
    let certs: Vec<(String, Certificate)> = match file {
        Some(p) => {
            let c = Certificate::from_json(&read(p)?).map_err(|e| format!("{}: {e}", p.display()))?;
            vec![(p.display().to_string(), c)]
        }
        None => shipped_certificates()
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(|(n, c)| (n.to_string(), c))
            .collect(),
    };
    Ok(certs
        .iter()
        .map(|(name, c)| {
            let r = check_certificate(c);
            Check::new(format!("certificate/{name}"), r.valid, r.to_string())
        })
        .collect())
}

fn classify_cmd(a: &ClassifyArgs) -> Out {
    let (m, label) = match (&a.matrix, &a.word) {
        (Some(s), _) => (parse_mat(s)?, s.clone()),
        (None, Some(w)) => (parse_word(w)?.eval().map_err(|e| e.to_string())?, w.clone()),
        _ => return Err("one of --matrix or --word is required".into()),
    };
    let class = classify(&m).map_err(|e| e.to_string())?;
    let mut details = format!("{label} = ({m}): {}, normalized trace {}", class.kind.label(), class.trace);
    if let Some(z) = class.fixed_point {
        details.push_str(&format!(", fixed point {:.12}{:+.12}i", z.re, z.im));
    }
    let mut checks = vec![Check::new("classify", true, details)];
    if class.kind == EllipticKind::EllipticInfinite {
        let hit = scalar_power(&m, 100);
        checks.push(Check::new(
            "classify/power-cross-check",
            hit.is_none(),
            match hit {
                None => "no power up to 100 is +-I".to_string(),
                Some(j) => format!("power {j} is +-I"),
            },
        ));
    }
    Ok(checks)
}

fn flavor(a: &SubgroupArgs) -> Result<SubgroupFlavor, String> {
    if a.level == 0 {
        return Err("level must be positive".into());
    }
    Ok(match a.flavor {
        Flavor::Gamma0 => SubgroupFlavor::Gamma0(a.level),
        Flavor::Gamma1 => SubgroupFlavor::Gamma1(a.level),
    })
}

fn subgroup(cmd: &SubgroupCmd) -> Out {
    match cmd {
        SubgroupCmd::Index(a) => {
            let f = flavor(a)?;
            let sl2 = match f {
                SubgroupFlavor::Gamma0(n) => index_gamma0(n),
                SubgroupFlavor::Gamma1(n) => count_primitive_rows(n),
            };
            let gens = schreier_generators(f).map_err(|e| e.to_string())?;
            let rep = verify_generates_flavor(f, &gens, None);
            Ok(vec![
                Check::new("index", true, format!("[SL2(Z) : {f}] = {sl2}")),
                Check::new(
                    "index/coset-enumeration",
                    rep.generates,
                    format!("Schreier generators enumerate to PSL2 index {} (expected {})", rep.index_label(), rep.expected_index),
                ),
            ])
        }
        SubgroupCmd::Generators(a) => {
            let f = flavor(a)?;
            let gens = schreier_generators(f).map_err(|e| e.to_string())?;
            let list: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
            let rep = verify_generates_flavor(f, &gens, None);
            Ok(vec![
                Check::new("generators", true, format!("{} Schreier generators: {}", gens.len(), list.join(" | "))),
                Check::new("generators/generates", rep.generates, rep.diagnostic),
            ])
        }
        SubgroupCmd::CheckGenerates(a) => {
            let f = flavor(a)?;
            let Some(p) = &a.file else { return Err("--file is required for check-generates".into()) };
            let list = parse_matrix_list(&read(p)?).map_err(|e| format!("{}: {e}", p.display()))?;
            let mut checks: Vec<Check> = list
                .iter()
                .enumerate()
                .filter(|(_, m)| !is_member(m, f))
                .map(|(i, m)| Check::new(format!("membership/{}", i + 1), false, format!("({m}) is not in {f}")))
                .collect();
            let rep = verify_generates_flavor(f, &list, None);
            checks.push(Check::new("generates", rep.generates, rep.diagnostic));
            Ok(checks)
        }
    }
}

fn gauss(a: &CharsArgs) -> Out {
    let prims = primitive_chars(a.modulus).map_err(|e| e.to_string())?;
    let q = a.modulus as f64;
    let (mut worst_abs, mut worst_pair): (f64, f64) = (0.0, 0.0);
    for psi in &prims {
        let t = gauss_sum(psi);
        worst_abs = worst_abs.max((t.norm_sqr() - q).abs());
        let prod = t * gauss_sum(&psi.conj());
        worst_pair = worst_pair.max((prod - Complex64::new(psi.parity() as f64 * q, 0.0)).norm());
    }
    let n = prims.len();
    Ok(vec![
        Check::bounded("gauss/abs-square", worst_abs, 1e-10, format!("|tau|^2 = q over {n} primitive characters mod {}", a.modulus)),
        Check::bounded("gauss/conjugate-product", worst_pair, 1e-10, format!("tau(psi) tau(conj psi) = psi(-1) q over {n} characters")),
    ])
}

fn twist(a: &CharsArgs) -> Out {
    let q = a.modulus;
    let table = TwistTable::new(q).map_err(|e| e.to_string())?;
    let mut checks = Vec::new();
    for m in 0..=3u32 {
        let mut worst: f64 = 0.0;
        for av in 1..q as i64 {
            let spec = TwistSpec { q, a: av, m };
            for n in 1..=a.max_n {
                let (l, r) = table.sides(&spec, n);
                worst = worst.max((l - r).norm());
            }
        }
        checks.push(Check::bounded(
            format!("twist/m{m}"),
            worst,
            1e-10,
            format!("all units a mod {q}, 1 <= n <= {}", a.max_n),
        ));
    }
    Ok(checks)
}

fn special_outcome(id: &str, n: u64, gens: &[ProjMat], res: &SpecialPrime) -> Result<Check, String> {
    Ok(match res {
        SpecialPrime::Found { q, combined } => {
            let ok = recheck_special_prime(n, gens, *q).map_err(|e| e.to_string())?;
            let sys = combined.map_or("no congruences".to_string(), |c| format!("q = {} mod {}", c.residue, c.modulus));
            Check::new(id, ok, format!("q = {q} ({sys}); re-check {}", if ok { "passed" } else { "failed" }))
        }
        SpecialPrime::Infeasible { first, second } => Check::skip(
            id,
            format!(
                "inconsistent congruences: generator {} (q = {} mod {}) and generator {} (q = {} mod {})",
                first.0 + 1,
                first.1.residue,
                first.1.modulus,
                second.0 + 1,
                second.1.residue,
                second.1.modulus
            ),
        ),
        SpecialPrime::NotFound { combined } => Check::new(
            id,
            false,
            format!("no admissible prime below the bound{}", combined.map_or(String::new(), |c| format!(" (q = {} mod {})", c.residue, c.modulus))),
        ),
    })
}

fn special(a: &SpecialPrimeArgs) -> Out {
    let n = a.level;
    let gens = match &a.gens {
        Some(p) => parse_matrix_list(&read(p)?).map_err(|e| format!("{}: {e}", p.display()))?,
        None => schreier_generators(SubgroupFlavor::Gamma1(n)).map_err(|e| e.to_string())?,
    };
    let rule = match a.modulus_rule {
        Rule::Nc => ModulusRule::NC,
        Rule::SelfReferential => ModulusRule::SelfReferential,
    };
    let raw = special_prime(n, &gens, rule, a.bound).map_err(|e| e.to_string())?;
    let mut checks = vec![special_outcome("special-prime/raw", n, &gens, &raw)?];
    if matches!(raw, SpecialPrime::Infeasible { .. }) && !a.no_condition {
        let cond = condition_generators(n, &gens).map_err(|e| e.to_string())?;
        let res = special_prime(n, &cond.gens, rule, a.bound).map_err(|e| e.to_string())?;
        let mut c = special_outcome("special-prime/conditioned", n, &cond.gens, &res)?;
        if matches!(res, SpecialPrime::Infeasible { .. }) {
            c = Check::new(c.id, false, c.details);
        }
        c.details = format!(
            "{}; {} generators ({} removed, W_N shifts {:?})",
            c.details,
            cond.gens.len(),
            cond.removed,
            cond.shifts
        );
        checks.push(c);
    }
    Ok(checks)
}

fn decompose(a: &DecomposeArgs) -> Out {
    let m = parse_mat(&a.matrix)?;
    let dec = decompose_gamma(&m, a.level, &default_excluded(a.level), a.bound).map_err(|e| e.to_string())?;
    let ok = verify_decomposition(&m, &dec).is_ok();
    let details = match &dec {
        Decomposition::Trivial { u, .. } => format!("({m}) = +-P_{u}"),
        Decomposition::Primes { u, v, q, s, r } => {
            format!("({m}) = P_{u} ({q}, {r}; {}, {s}) P_{v}; u={u}, v={v}, q={q}, s={s}, r={r}", m.c())
        }
    };
    Ok(vec![Check::new("decompose", ok, details)])
}

fn find(a: &FindWordArgs) -> Out {
    let target = parse_mat(&a.target)?;
    let letters: Vec<_> = parse_word(&a.alphabet)?.tokens.into_iter().map(|t| t.letter).collect();
    let found = find_word(&target, &letters, a.max_len).map_err(|e| e.to_string())?;
    Ok(vec![match found {
        Some(w) => {
            let ok = w.eval().map(|m| m == target).unwrap_or(false);
            Check::new("find-word", ok, format!("({target}) = {w} (length {})", w.len()))
        }
        None => Check::new("find-word", false, format!("no word of length <= {} found", a.max_len)),
    }])
}
