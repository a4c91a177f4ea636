//! `gamma0`: command-line front end for the verification suites.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::Report;

#[derive(Parser, Debug)]
#[command(name = "gamma0", version, about = "Verification suites for Gamma0(N) generators, group-ring certificates and Maass-form expansions")]
struct Cli {
    /// Also write the JSON report to PATH (`-` for stdout instead of the text summary).
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Table and certificate verification.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Classify a matrix (given directly or as a word).
    Classify(ClassifyArgs),
    /// Index, generators and generation checks for Gamma0(N) / Gamma1(N).
    #[command(subcommand)]
    Subgroup(SubgroupCmd),
    /// Dirichlet-character identities.
    #[command(subcommand)]
    Chars(CharsCmd),
    /// Search for the special prime attached to a Gamma1(N) generator list.
    SpecialPrime(SpecialPrimeArgs),
    /// Numerical checks of the analytic formulas.
    #[command(subcommand)]
    Analytic(AnalyticCmd),
    /// Write an element of Gamma0(N) as P_u (q, r; cN, s) P_v with prime q, s.
    Decompose(DecomposeArgs),
    /// Shortest word over an alphabet of special matrices.
    FindWord(FindWordArgs),
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    /// Check the generator tables of a level.
    Tables(TablesArgs),
    /// Check group-ring certificates (all bundled ones without --file).
    Certificates(CertArgs),
}

#[derive(Args, Debug)]
struct TablesArgs {
    #[arg(long, value_parser = ["11", "18", "20", "24"])]
    level: String,
    /// Also check the shorter level-20 list.
    #[arg(long)]
    simplified: bool,
    /// Use the matrices exactly as printed (no errata corrections).
    #[arg(long)]
    printed: bool,
}

#[derive(Args, Debug)]
struct CertArgs {
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct ClassifyArgs {
    /// Matrix as "a,b;c,d" (rational entries allowed).
    #[arg(long)]
    matrix: Option<String>,
    /// Word in special matrices, e.g. "D^-1 P3/5".
    #[arg(long)]
    word: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Flavor {
    Gamma0,
    Gamma1,
}

#[derive(Args, Debug)]
struct SubgroupArgs {
    #[arg(long)]
    level: u64,
    #[arg(long, value_enum, default_value = "gamma0")]
    flavor: Flavor,
    /// Matrix list file (one "a,b;c,d" per line).
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum SubgroupCmd {
    Index(SubgroupArgs),
    Generators(SubgroupArgs),
    CheckGenerates(SubgroupArgs),
}

#[derive(Args, Debug)]
struct CharsArgs {
    #[arg(long)]
    modulus: u64,
    #[arg(long, default_value_t = 200)]
    max_n: i64,
}

#[derive(Subcommand, Debug)]
enum CharsCmd {
    /// |tau|^2 = q and tau(psi) tau(conj psi) = psi(-1) q for primitive characters.
    Gauss(CharsArgs),
    /// Expansion of cos^(m)(2 pi a n / q) in even/odd characters.
    TwistIdentity(CharsArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Rule {
    #[value(name = "nC", alias = "nc")]
    Nc,
    /// `q = A_j (mod q |C_j|)`.
    #[value(name = "paper")]
    SelfReferential,
}

#[derive(Args, Debug)]
struct SpecialPrimeArgs {
    #[arg(long)]
    level: u64,
    /// Generator list; defaults to Schreier generators of Gamma1(N).
    #[arg(long)]
    gens: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "nC")]
    modulus_rule: Rule,
    #[arg(long)]
    bound: u64,
    /// Do not retry with conditioned generators when the raw system is inconsistent.
    #[arg(long)]
    no_condition: bool,
}

#[derive(Subcommand, Debug)]
enum AnalyticCmd {
    Suite(SuiteArgs),
}

#[derive(Args, Debug)]
struct SuiteArgs {
    /// Series/grid document.
    #[arg(long)]
    grid: Option<PathBuf>,
    /// Replace every tolerance of the suite by T.
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args, Debug)]
struct DecomposeArgs {
    #[arg(long)]
    level: u64,
    #[arg(long)]
    matrix: String,
    /// Search bound for u and v.
    #[arg(long, default_value_t = 10_000)]
    bound: i64,
}

#[derive(Args, Debug)]
struct FindWordArgs {
    #[arg(long)]
    target: String,
    /// Space-separated letters, e.g. "Q W18 J18 A".
    #[arg(long)]
    alphabet: String,
    #[arg(long, default_value_t = 6)]
    max_len: usize,
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let checks = match commands::run(&cli.command) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let report = Report::new(argv.into_iter().skip(1).collect(), checks);
    match cli.json.as_deref() {
        Some(p) if p.as_os_str() == "-" => print!("{}", report.to_json()),
        Some(p) => {
            print!("{}", report.to_text());
            if let Err(e) = std::fs::write(p, report.to_json()) {
                eprintln!("error: cannot write {}: {e}", p.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{}", report.to_text()),
    }
    ExitCode::from(report.exit_code() as u8)
}
