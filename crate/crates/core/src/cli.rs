//! The `spo` command-line front end.
//!
//! Every subcommand prints one JSON document. Exit status is 0 on success,
//! 1 for invalid input and 2 when a verification finds a violation.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::borelwalk::{self, ReflectionOutcome};
use crate::chevalley::{self, ChevalleyBasis, ChevalleyError};
use crate::classify::{self, SteinbergOutcome};
use crate::kostant::{self, KostantEngine};
use crate::partitions::Partition;
use crate::rootdata::{Parity, Root, RootSystem, Weight};
use crate::CheckReport;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_CHECK_FAILED: i32 = 2;

const SYNOPSIS: &str = "\
JSON conventions:
  weight     {\"neg\": [l_-n, ..., l_-1], \"pos\": [l_1, ..., l_m]}
  partition  [5,4,3,3,1,1]
  sqrt2 ints [a, b] for a + b sqrt2
  p          0 (characteristic zero) or an odd prime";

#[derive(Debug, Parser)]
#[command(name = "spo", version, about = "Ortho-symplectic supergroup toolkit", after_help = SYNOPSIS)]
pub struct Cli {
    /// Write the JSON result to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone, Copy)]
pub struct SystemArgs {
    /// Rank of the symplectic part.
    #[arg(long)]
    pub n: usize,
    /// Size of the orthogonal part.
    #[arg(long)]
    pub ell: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Positive and simple roots.
    Roots(SystemArgs),
    /// Chevalley basis matrices.
    Basis(SystemArgs),
    /// Structure constants of the Chevalley basis.
    BracketTable(SystemArgs),
    /// Membership, integrality, Jacobi and the (r+1) rule.
    VerifyChevalley {
        #[command(flatten)]
        system: SystemArgs,
        /// Skip the cubic super Jacobi scan.
        #[arg(long)]
        no_jacobi: bool,
    },
    /// ad(X^[p]) = (ad X)^p for the even basis elements.
    RestrictedCheck {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long)]
        p: u64,
    },
    /// Integrality of products of Kostant monomials.
    KostantCheck {
        #[command(flatten)]
        system: SystemArgs,
        /// Bound on divided-power and binomial exponents.
        #[arg(long, default_value_t = 2)]
        max_exp: u8,
        /// Number of random pairs when the full square exceeds it.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Mullineux image of a restricted partition.
    Mullineux {
        #[arg(long)]
        p: u32,
        /// Partition as a JSON array.
        #[arg(long)]
        mu: String,
    },
    /// j, J and the removable cells of a partition.
    Jmap {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        mu: String,
    },
    /// Walk a highest weight through odd reflections.
    OddReflect {
        /// Weight over I(N|M) as JSON.
        #[arg(long)]
        weight: String,
        /// `w`, `z`, or a JSON list of odd roots.
        #[arg(long)]
        seq: String,
        #[arg(long)]
        p: u64,
        /// Head length n for the w-sequence.
        #[arg(long, default_value_t = 1)]
        head: usize,
        /// Orthogonal size of the ambient system; defaults to 2M+1.
        #[arg(long)]
        ell: Option<usize>,
    },
    /// Dominance and X-dagger membership of one weight.
    Classify {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        weight: String,
    },
    /// X-dagger inside a coordinate box.
    Enumerate {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long)]
        p: u64,
        /// Bound on every |lambda_i|.
        #[arg(long = "box")]
        bound: u32,
    },
    /// Greedy Steinberg decomposition and its validation.
    Steinberg {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        weight: String,
    },
}

/// Outcome of a subcommand before printing.
struct Output {
    value: Value,
    check_failed: bool,
}

impl Output {
    fn ok<T: Serialize>(value: &T) -> Result<Output, Failure> {
        Ok(Output {
            value: serde_json::to_value(value).map_err(|e| Failure::Internal(e.to_string()))?,
            check_failed: false,
        })
    }

    fn report(value: Value, passed: bool) -> Result<Output, Failure> {
        Ok(Output {
            value,
            check_failed: !passed,
        })
    }
}

enum Failure {
    Invalid(String),
    Check(String),
    Internal(String),
}

fn invalid(e: impl std::fmt::Display) -> Failure {
    Failure::Invalid(e.to_string())
}

fn chevalley_failure(e: ChevalleyError) -> Failure {
    match e {
        ChevalleyError::NonIntegralConstant { .. }
        | ChevalleyError::NotInSpan(_)
        | ChevalleyError::NotMember(_)
        | ChevalleyError::NotWeightVector(_) => Failure::Check(e.to_string()),
        _ => Failure::Invalid(e.to_string()),
    }
}

fn system(args: SystemArgs) -> Result<RootSystem, Failure> {
    RootSystem::new(args.n, args.ell).map_err(invalid)
}

fn parse_weight(text: &str, rs: &RootSystem) -> Result<Weight, Failure> {
    let w: Weight =
        serde_json::from_str(text).map_err(|e| invalid(format!("bad weight JSON: {e}")))?;
    rs.check_shape(&w).map_err(invalid)?;
    Ok(w)
}

fn parse_partition(text: &str) -> Result<Partition, Failure> {
    serde_json::from_str(text).map_err(|e| invalid(format!("bad partition JSON: {e}")))
}

fn check_p(p: u64) -> Result<(), Failure> {
    if p == 0 || crate::is_odd_prime(p) {
        Ok(())
    } else {
        Err(invalid(format!("p must be 0 or an odd prime, got {p}")))
    }
}

fn report_value(report: &CheckReport) -> Value {
    json!({ "checked": report.checked, "violations": report.violations })
}

fn roots(rs: &RootSystem) -> Value {
    let weights = |rs: &[Root]| rs.iter().map(|r| r.weight.clone()).collect::<Vec<_>>();
    json!({
        "system": rs.name(),
        "even_positive": weights(rs.pos_even()),
        "odd_positive": weights(rs.pos_odd()),
        "simple": rs.simple(),
    })
}

fn verify_chevalley(rs: &RootSystem, jacobi: bool) -> Result<Output, Failure> {
    let basis = ChevalleyBasis::new(rs).map_err(chevalley_failure)?;
    let table = basis.bracket_table().map_err(chevalley_failure)?;
    let antisymmetry = table.check_antisymmetry();
    let property = chevalley::chevalley_property_check(&basis, &table);
    let mut passed = antisymmetry.passed() && property.passed();
    let mut value = json!({
        "system": rs.name(),
        "basis_size": basis.len(),
        "membership": { "checked": basis.len(), "violations": [] },
        "integrality": { "checked": basis.len() * basis.len(), "violations": [] },
        "antisymmetry": report_value(&antisymmetry),
        "root_string_rule": report_value(&property),
    });
    if jacobi {
        let report = table.check_jacobi();
        passed &= report.passed();
        value["jacobi"] = report_value(&report);
    }
    Output::report(value, passed)
}

fn odd_reflect(
    weight: &str,
    seq: &str,
    p: u64,
    head: usize,
    ell: Option<usize>,
) -> Result<Output, Failure> {
    check_p(p)?;
    let lam: Weight =
        serde_json::from_str(weight).map_err(|e| invalid(format!("bad weight JSON: {e}")))?;
    let (big_n, big_m) = (lam.neg_rank(), lam.pos_rank());
    let roots: Vec<Root> = match seq {
        "w" => borelwalk::w_sequence(big_n, head, big_m).map_err(invalid)?,
        "z" => {
            if big_n != 1 {
                return Err(invalid(
                    "the z-sequence needs exactly one negative coordinate",
                ));
            }
            borelwalk::z_sequence(big_m)
        }
        list => {
            let weights: Vec<Weight> = serde_json::from_str(list)
                .map_err(|e| invalid(format!("bad root list JSON: {e}")))?;
            weights
                .into_iter()
                .map(|weight| Root {
                    weight,
                    parity: Parity::Odd,
                })
                .collect()
        }
    };
    let rs = RootSystem::new(big_n, ell.unwrap_or(2 * big_m + 1)).map_err(invalid)?;
    rs.check_shape(&lam).map_err(invalid)?;
    let (end, trace): (Weight, Vec<ReflectionOutcome>) =
        borelwalk::walk(&rs, &lam, &roots, p).map_err(invalid)?;
    Output::ok(&json!({ "system": rs.name(), "start": lam, "end": end, "trace": trace }))
}

fn execute(command: Command) -> Result<Output, Failure> {
    match command {
        Command::Roots(args) => Output::ok(&roots(&system(args)?)),
        Command::Basis(args) => {
            let rs = system(args)?;
            let basis = ChevalleyBasis::new(&rs).map_err(chevalley_failure)?;
            Output::ok(&json!({ "system": rs.name(), "elements": basis.elements() }))
        }
        Command::BracketTable(args) => {
            let rs = system(args)?;
            let basis = ChevalleyBasis::new(&rs).map_err(chevalley_failure)?;
            let table = basis.bracket_table().map_err(chevalley_failure)?;
            Output::ok(&table.rows())
        }
        Command::VerifyChevalley {
            system: args,
            no_jacobi,
        } => verify_chevalley(&system(args)?, !no_jacobi),
        Command::RestrictedCheck { system: args, p } => {
            let rs = system(args)?;
            let basis = ChevalleyBasis::new(&rs).map_err(chevalley_failure)?;
            let table = basis.bracket_table().map_err(chevalley_failure)?;
            let report =
                chevalley::restricted_check(&basis, &table, p).map_err(chevalley_failure)?;
            Output::report(report_value(&report), report.passed())
        }
        Command::KostantCheck {
            system: args,
            max_exp,
            samples,
            seed,
        } => {
            if max_exp == 0 {
                return Err(invalid("--max-exp must be at least 1"));
            }
            let rs = system(args)?;
            let engine = KostantEngine::new(&rs).map_err(invalid)?;
            let report = kostant::kostant_closure_check(&engine, max_exp, max_exp, samples, seed);
            Output::report(report_value(&report), report.passed())
        }
        Command::Mullineux { p, mu } => {
            let mu = parse_partition(&mu)?;
            let image = mu.mullineux(p).map_err(invalid)?;
            Output::ok(&json!({ "result": image }))
        }
        Command::Jmap { p, mu } => {
            if p < 2 {
                return Err(invalid(format!("p must be at least 2, got {p}")));
            }
            let mu = parse_partition(&mu)?;
            let segments = mu.p_segments(p).map_err(invalid)?;
            Output::ok(&json!({
                "mu": mu,
                "little_j": mu.little_j(p).map_err(invalid)?,
                "big_j": mu.big_j(p).map_err(invalid)?,
                "removable": mu.removable_cells(p).map_err(invalid)?,
                "segments": segments.segments.len(),
            }))
        }
        Command::OddReflect {
            weight,
            seq,
            p,
            head,
            ell,
        } => odd_reflect(&weight, &seq, p, head, ell),
        Command::Classify {
            system: args,
            p,
            weight,
        } => {
            check_p(p)?;
            let rs = system(args)?;
            let lam = parse_weight(&weight, &rs)?;
            Output::ok(&classify::classify(&lam, &rs, p).map_err(invalid)?)
        }
        Command::Enumerate {
            system: args,
            p,
            bound,
        } => {
            check_p(p)?;
            let rs = system(args)?;
            let records: Vec<_> = classify::enumerate_xdag(&rs, p, bound)
                .map_err(invalid)?
                .iter()
                .map(|w| classify::classify(w, &rs, p))
                .collect::<Result<_, _>>()
                .map_err(invalid)?;
            Output::ok(&records)
        }
        Command::Steinberg {
            system: args,
            p,
            weight,
        } => {
            check_p(p)?;
            let rs = system(args)?;
            let lam = parse_weight(&weight, &rs)?;
            let outcome = classify::steinberg_decompose(&lam, &rs, p).map_err(invalid)?;
            let valid = match &outcome {
                SteinbergOutcome::Decomposed(d) => classify::validate_decomposition(d, &lam, &rs),
                SteinbergOutcome::NoDecomposition { .. } => false,
            };
            let mut value =
                serde_json::to_value(&outcome).map_err(|e| Failure::Internal(e.to_string()))?;
            value["valid"] = json!(valid);
            Output::ok(&value)
        }
    }
}

/// Caps the global rayon pool at `SPO_THREADS` workers when set.
pub fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("SPO_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .map_err(|_| format!("SPO_THREADS must be a positive integer, got {raw:?}"))?;
    if threads == 0 {
        return Err("SPO_THREADS must be a positive integer, got 0".to_string());
    }
    // a second call in the same process keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global();
    Ok(())
}

/// Parses `args`, runs the subcommand and writes JSON to `stdout` or the
/// `--out` file. Returns the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{rendered}");
            } else {
                let _ = write!(stdout, "{rendered}");
            }
            return code;
        }
    };
    if let Err(msg) = configure_threads() {
        let _ = writeln!(stderr, "error: {msg}");
        return EXIT_INVALID;
    }
    let output = match execute(cli.command) {
        Ok(output) => output,
        Err(Failure::Invalid(msg)) => {
            let _ = writeln!(stderr, "error: {msg}\n\n{SYNOPSIS}");
            return EXIT_INVALID;
        }
        Err(Failure::Check(msg)) => {
            let _ = writeln!(stderr, "check failed: {msg}");
            return EXIT_CHECK_FAILED;
        }
        Err(Failure::Internal(msg)) => {
            let _ = writeln!(stderr, "internal error: {msg}");
            return EXIT_CHECK_FAILED;
        }
    };
    let mut text = match serde_json::to_string_pretty(&output.value) {
        Ok(text) => text,
        Err(e) => {
            let _ = writeln!(stderr, "internal error: {e}");
            return EXIT_CHECK_FAILED;
        }
    };
    text.push('\n');
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display())),
        None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(msg) = written {
        let _ = writeln!(stderr, "error: {msg}");
        return EXIT_INVALID;
    }
    if output.check_failed {
        EXIT_CHECK_FAILED
    } else {
        EXIT_OK
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["spo"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    fn parse(text: &str) -> Value {
        serde_json::from_str(text).unwrap()
    }

    #[test]
    fn mullineux_example() {
        let (code, out, _) = call(&["mullineux", "--p", "3", "--mu", "[2,1]"]);
        assert_eq!(code, 0);
        assert_eq!(parse(&out), json!({ "result": [1, 1, 1] }));
    }

    #[test]
    fn classify_example() {
        let (code, out, _) = call(&[
            "classify",
            "--n",
            "1",
            "--ell",
            "3",
            "--p",
            "3",
            "--weight",
            r#"{"neg":[0],"pos":[1]}"#,
        ]);
        assert_eq!(code, 0);
        assert_eq!(parse(&out)["in_Xdag"], json!(false));
    }

    #[test]
    fn roots_b01() {
        let (code, out, _) = call(&["roots", "--n", "1", "--ell", "1"]);
        assert_eq!(code, 0);
        let v = parse(&out);
        assert_eq!(v["odd_positive"], json!([{ "neg": [1], "pos": [] }]));
        assert_eq!(v["even_positive"], json!([{ "neg": [2], "pos": [] }]));
    }

    #[test]
    fn usage_errors_exit_one() {
        let (code, _, err) = call(&["frobnicate"]);
        assert_eq!(code, 1);
        assert!(!err.is_empty());
        let (code, _, _) = call(&["mullineux", "--p", "3", "--mu", "[1,2]"]);
        assert_eq!(code, 1);
        let (code, _, err) = call(&[
            "classify", "--n", "1", "--ell", "3", "--p", "4", "--weight", "{}",
        ]);
        assert_eq!(code, 1);
        assert!(err.contains("odd prime"));
        let (code, _, _) = call(&["roots", "--n", "0", "--ell", "1"]);
        assert_eq!(code, 1);
    }

    #[test]
    fn verification_failures_exit_two() {
        let (code, out, _) = call(&["verify-chevalley", "--n", "1", "--ell", "3", "--no-jacobi"]);
        assert_eq!(code, 2);
        let v = parse(&out);
        assert_eq!(
            v["root_string_rule"]["violations"]
                .as_array()
                .unwrap()
                .len(),
            4
        );
        let (code, _, _) = call(&["verify-chevalley", "--n", "1", "--ell", "1"]);
        assert_eq!(code, 0);
    }

    #[test]
    fn output_is_deterministic() {
        let args = ["bracket-table", "--n", "1", "--ell", "2"];
        assert_eq!(call(&args).1, call(&args).1);
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("kostant-check"));
    }
}
