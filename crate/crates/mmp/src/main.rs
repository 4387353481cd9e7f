//! `mmp`: command-line front-end for the MMP^k statistic toolkit.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;

use mmp::biject::{
    border_from_mmp, border_to_mmp, main2_forward, main2_inverse, rstir_forward, rstir_inverse,
    thm_main_delete_map, CaseTag,
};
use mmp::oracle::{run_suite, Suite, SuiteConfig};
use mmp::pattern::mmp_matches;
use mmp::perm::Permutation;
use mmp::poly::{arrow_table, p_poly, r_poly, IntPolynomial};
use mmp::stirling::{
    harmonic_iterated, harmonic_nested, r_stirling, stirling1_negative, stirling1_signed,
    stirling1_unsigned,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Latex,
}

#[derive(Debug, Parser)]
#[command(name = "mmp", about = "Exact arithmetic for the MMP^k permutation statistic", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the distribution polynomial P_n^k (primed) or R_n^k
    Dist(DistArgs),
    /// Print Stirling and r-Stirling numbers
    Stirling(StirlingArgs),
    /// Print iterated or nested harmonic sums
    Harmonic(HarmonicArgs),
    /// Print the arrow table of P_n^k rows for k = 2..=n+1
    Table(TableArgs),
    /// Print the MMP^k match report for one permutation
    Match(MatchArgs),
    /// Apply one of the constructive correspondences
    Biject(BijectArgs),
    /// Run the brute-force verification suites
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct DistArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    /// Use the primed statistic mmp^{k'} (P_n^k); default is mmp^k (R_n^k)
    #[arg(long)]
    primed: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StirlingKind {
    /// Unsigned first kind c(n,k)
    C,
    /// Signed first kind s(n,k)
    S,
    /// r-Stirling [n m]_r
    R,
    /// Negative-index s(-n,k)
    Neg,
}

#[derive(Debug, Args)]
struct StirlingArgs {
    #[arg(long, value_enum)]
    which: StirlingKind,
    #[arg(long)]
    n: usize,
    /// Number of left-to-right maxima (m) or second index (k)
    #[arg(long)]
    m: usize,
    /// Top values constrained to be maxima (r-Stirling only)
    #[arg(long)]
    r: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Args)]
struct HarmonicArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    j: usize,
    /// Nesting level for H^k_{n,j}; omitted means iterated H_n^{(j)}
    #[arg(long)]
    level: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Args)]
struct MatchArgs {
    /// Permutation in one-line notation, e.g. "13548762" or "1,3,5,4,8,7,6,2"
    #[arg(long)]
    perm: String,
    #[arg(long)]
    k: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Correspondence {
    /// r-Stirling fiber of a source permutation
    RstirFwd,
    /// Unique r-Stirling source of an arbitrary permutation
    RstirInv,
    /// Swap map sigma -> pi_q (requires --q)
    Main2Fwd,
    /// Inverse swap map pi -> (sigma, q)
    Main2Inv,
    /// Delete-1 recursion map
    Delete,
    /// Border pattern p to MMP
    BorderFwd,
    /// MMP back to border pattern p (requires --q as the p-count k)
    BorderInv,
}

#[derive(Debug, Args)]
struct BijectArgs {
    #[arg(long, value_enum)]
    which: Correspondence,
    #[arg(long)]
    perm: String,
    #[arg(long)]
    k: usize,
    /// Swap index for main2-fwd, border p-count for border-inv
    #[arg(long)]
    q: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Exhaustive bound for S_n sweeps
    #[arg(long, default_value_t = 7)]
    max_n: usize,
    /// Comma-separated suite names; default runs everything
    #[arg(long, value_delimiter = ',')]
    suites: Vec<Suite>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

/// Usage-level failure: print to stderr, exit 2.
struct UsageError(String);

macro_rules! usage_from {
    ($($ty:ty),*) => {$(
        impl From<$ty> for UsageError {
            fn from(e: $ty) -> Self {
                UsageError(e.to_string())
            }
        }
    )*};
}

usage_from!(
    mmp::perm::PermError,
    mmp::pattern::PatternError,
    mmp::poly::PolyError,
    mmp::stirling::IdentityError,
    mmp::biject::BijectError
);

fn poly_output(poly: &IntPolynomial, format: Format) -> String {
    match format {
        Format::Text | Format::Latex => poly.to_string(),
        Format::Json => json!({ "coefficients": poly.to_json() }).to_string(),
        Format::Csv => {
            let mut out = String::from("degree,coefficient\n");
            for (d, c) in poly.coeffs().iter().enumerate() {
                out.push_str(&format!("{d},{c}\n"));
            }
            out.trim_end().to_string()
        }
    }
}

fn scalar_output(label: &str, value: &str, format: Format) -> String {
    match format {
        Format::Json => json!({ label: value }).to_string(),
        _ => value.to_string(),
    }
}

fn run_dist(args: &DistArgs) -> Result<String, UsageError> {
    let poly = if args.primed {
        p_poly(args.n, args.k)?
    } else {
        r_poly(args.n, args.k)?
    };
    Ok(poly_output(&poly, args.format))
}

fn run_stirling(args: &StirlingArgs) -> Result<String, UsageError> {
    let value: String = match args.which {
        StirlingKind::C => stirling1_unsigned(args.n, args.m).to_string(),
        StirlingKind::S => stirling1_signed(args.n, args.m).to_string(),
        StirlingKind::R => {
            let r = args.r.ok_or_else(|| UsageError("--r is required for r-Stirling".into()))?;
            r_stirling(args.n, args.m, r)?.to_string()
        }
        StirlingKind::Neg => stirling1_negative(args.n, args.m)?.to_string(),
    };
    Ok(scalar_output("value", &value, args.format))
}

fn run_harmonic(args: &HarmonicArgs) -> Result<String, UsageError> {
    let value = match args.level {
        Some(level) => harmonic_nested(args.n, args.j, level)?,
        None => harmonic_iterated(args.n, args.j),
    };
    Ok(scalar_output("value", &value.to_string(), args.format))
}

fn run_table(args: &TableArgs) -> Result<String, UsageError> {
    let table = arrow_table(args.n)?;
    Ok(match args.format {
        Format::Latex => table.to_latex().trim_end().to_string(),
        Format::Json => json!({
            "n": args.n.to_string(),
            "rows": table.rows.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
            "arrows": table.arrows.iter().map(|a| json!({
                "k": a.k.to_string(),
                "vertical": a.vertical.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                "diagonal": a.diagonal.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
        .to_string(),
        _ => {
            let mut out = String::new();
            for (idx, row) in table.rows.iter().enumerate() {
                out.push_str(&format!("P_{}^{}(x) = {row}\n", args.n, idx + 2));
                if idx < table.arrows.len() {
                    let arrow = &table.arrows[idx];
                    let vertical: Vec<String> =
                        arrow.vertical.iter().map(BigInt::to_string).collect();
                    let diagonal: Vec<String> =
                        arrow.diagonal.iter().map(BigInt::to_string).collect();
                    out.push_str(&format!(
                        "  vertical: {}  diagonal: {}\n",
                        vertical.join(" "),
                        diagonal.join(" ")
                    ));
                }
            }
            out.trim_end().to_string()
        }
    })
}

fn run_match(args: &MatchArgs) -> Result<String, UsageError> {
    let sigma = Permutation::parse(&args.perm)?;
    let report = mmp_matches(&sigma, args.k)?;
    Ok(match args.format {
        Format::Json => json!({
            "perm": sigma.to_string(),
            "k": args.k.to_string(),
            "matched_positions": report.matched_positions.iter().map(usize::to_string).collect::<Vec<_>>(),
            "zero_matches": report.zero_matches,
            "mmp": report.count_unprimed.to_string(),
            "mmp_primed": report.count_primed.to_string(),
        })
        .to_string(),
        _ => format!(
            "perm: {sigma}\nmatched positions: {:?}\n0 matches: {}\nmmp^{{{}}} = {}\nmmp^{{{}'}}= {}",
            report.matched_positions,
            report.zero_matches,
            args.k,
            report.count_unprimed,
            args.k,
            report.count_primed
        ),
    })
}

fn perm_list(perms: &[Permutation]) -> Vec<String> {
    perms.iter().map(Permutation::to_string).collect()
}

fn run_biject(args: &BijectArgs) -> Result<String, UsageError> {
    let sigma = Permutation::parse(&args.perm)?;
    let k = args.k;
    let (text, value) = match args.which {
        Correspondence::RstirFwd => {
            let fiber = rstir_forward(&sigma, k)?;
            let case = match fiber.case_tag {
                CaseTag::Case1 => "case1",
                CaseTag::Case2 => "case2",
            };
            (
                format!(
                    "j = {} ({case})\nimages: {}",
                    fiber.j,
                    perm_list(&fiber.images).join(" ")
                ),
                json!({
                    "j": fiber.j.to_string(),
                    "case": case,
                    "images": perm_list(&fiber.images),
                }),
            )
        }
        Correspondence::RstirInv => {
            let source = rstir_inverse(&sigma, k)?;
            (source.to_string(), json!({ "source": source.to_string() }))
        }
        Correspondence::Main2Fwd => {
            let q = args.q.ok_or_else(|| UsageError("--q is required for main2-fwd".into()))?;
            let witness = main2_forward(&sigma, k, q)?;
            (
                witness.pi_q.to_string(),
                json!({ "pi_q": witness.pi_q.to_string(), "q": q.to_string() }),
            )
        }
        Correspondence::Main2Inv => {
            let (source, q) = main2_inverse(&sigma, k)?;
            (
                format!("{source} q = {q}"),
                json!({ "sigma": source.to_string(), "q": q.to_string() }),
            )
        }
        Correspondence::Delete => {
            let image = thm_main_delete_map(&sigma, k)?;
            (image.to_string(), json!({ "image": image.to_string() }))
        }
        Correspondence::BorderFwd => {
            let phi = border_to_mmp(&sigma)?;
            (phi.to_string(), json!({ "phi": phi.to_string() }))
        }
        Correspondence::BorderInv => {
            let q = args
                .q
                .ok_or_else(|| UsageError("--q (the border p-count) is required for border-inv".into()))?;
            let source = border_from_mmp(&sigma, q)?;
            (source.to_string(), json!({ "sigma": source.to_string() }))
        }
    };
    Ok(match args.format {
        Format::Json => value.to_string(),
        _ => text,
    })
}

fn run_verify(args: &VerifyArgs) -> (String, bool) {
    let config = SuiteConfig {
        max_n: args.max_n,
        suites: if args.suites.is_empty() {
            Suite::ALL.to_vec()
        } else {
            args.suites.clone()
        },
    };
    let report = run_suite(&config);
    let out = match args.format {
        Format::Json => report.to_json().to_string(),
        _ => report.to_string(),
    };
    (out, report.pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result: Result<String, UsageError> = match &cli.command {
        Command::Dist(args) => run_dist(args),
        Command::Stirling(args) => run_stirling(args),
        Command::Harmonic(args) => run_harmonic(args),
        Command::Table(args) => run_table(args),
        Command::Match(args) => run_match(args),
        Command::Biject(args) => run_biject(args),
        Command::Verify(args) => {
            let (out, pass) = run_verify(args);
            println!("{out}");
            return if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
        }
    };
    match result {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
