//! Thin command-line wrapper around the `semideg` library.
//!
//! Subcommands map one-to-one onto library capabilities: `eval` evaluates
//! the semidegree on one polynomial, `keyforms` prints the key-form
//! sequence, `classify` prints the geometry report, `expand` writes a
//! polynomial in the key-form basis, and `scan` samples the value set.
//!
//! Exit codes: 0 success; 1 output I/O failure; 2 invalid datum or
//! invalid request; 3 parse error (including unreadable datum files);
//! 4 internal assertion (e.g. a mixed leading coefficient or a failed
//! cross-check).

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use semideg::conescan::{self, EmitFormat, ScanBudget, ScanResult};
use semideg::expansion::{adic_expand, weight, Presentation};
use semideg::geometry::build_report;
use semideg::keyforms::{compute_key_forms, KeyFormSequence, KeyFormsError};
use semideg::parse::{parse_datum, parse_expr, parse_puiseux, ParseError};
use semideg::rat::{format_rat, parse_rat};
use semideg::semidegree::{auto_scale_value, EvalError, SemidegreeSpec};

#[derive(Parser)]
#[command(
    name = "semideg",
    version,
    about = "Exact divisorial semidegrees on the plane: evaluation, key forms, \
             classification, expansion, and value-set scans."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct DatumArgs {
    /// Series part of the datum, e.g. "x^(5/2) + x^(-1)" (use "0" for none).
    #[arg(long, required_unless_present = "datum", allow_hyphen_values = true)]
    phi: Option<String>,
    /// Generic exponent: a rational strictly below every exponent of phi.
    #[arg(long, required_unless_present = "datum", allow_hyphen_values = true)]
    r: Option<String>,
    /// Positive integer scale, or "auto" for the minimal integral one.
    #[arg(long, default_value = "auto")]
    scale: String,
    /// Datum file with "phi = ...; r = ...; scale = ..." instead of flags.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["phi", "r", "scale"])]
    datum: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the semidegree on one Laurent polynomial.
    Eval {
        #[command(flatten)]
        datum: DatumArgs,
        /// Polynomial to evaluate, e.g. "x*y^2 - x^6 - 2*y".
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Print the key forms with values, multipliers, exponents, and ratios.
    Keyforms {
        #[command(flatten)]
        datum: DatumArgs,
        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Print the geometry report: d, m, pairs, skewness, matrices, verdicts.
    Classify {
        #[command(flatten)]
        datum: DatumArgs,
        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Expand a polynomial in the key forms and report its weight.
    Expand {
        #[command(flatten)]
        datum: DatumArgs,
        /// Polynomial to expand.
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Evaluate the semidegree across low-degree polynomial candidates.
    Scan {
        #[command(flatten)]
        datum: DatumArgs,
        /// Largest candidate total degree.
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
        max_degree: u32,
        /// Largest number of terms in one random candidate.
        #[arg(long, default_value_t = 4)]
        max_terms: u32,
        /// Number of seeded random candidates.
        #[arg(long, default_value_t = 64)]
        samples: u32,
        /// Seed for the random candidates; fixed seed, fixed output.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file (stdout when absent).
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn io(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }

    fn datum(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn parse(message: impl Into<String>) -> Self {
        Failure {
            code: 3,
            message: message.into(),
        }
    }

    fn internal(message: impl Into<String>) -> Self {
        Failure {
            code: 4,
            message: message.into(),
        }
    }
}

impl From<ParseError> for Failure {
    fn from(error: ParseError) -> Self {
        Failure::parse(error.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(error) => {
            let code = if error.use_stderr() { 2 } else { 0 };
            let _ = error.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Eval {
            datum,
            poly,
            format,
        } => {
            let spec = resolve_spec(&datum)?;
            let f = parse_expr(&poly)?;
            let value = spec.evaluate(&f).map_err(|e| match e {
                EvalError::ZeroPolynomial => Failure::datum(e.to_string()),
                EvalError::NonIntegralValue { .. } => Failure::internal(e.to_string()),
            })?;
            match format {
                Format::Human => println!("{value}"),
                Format::Json => print_json(&json!({ "value": value.to_string() })),
                Format::Csv => return Err(csv_unsupported()),
            }
            Ok(())
        }
        Command::Keyforms { datum, format } => {
            let spec = resolve_spec(&datum)?;
            let seq = compute_sequence(&spec)?;
            match format {
                Format::Human => println!("{seq}"),
                Format::Json => print_json(&keyforms_json(&seq)),
                Format::Csv => return Err(csv_unsupported()),
            }
            Ok(())
        }
        Command::Classify { datum, format } => {
            let spec = resolve_spec(&datum)?;
            let seq = compute_sequence(&spec)?;
            let report = build_report(&seq).map_err(|e| Failure::internal(e.to_string()))?;
            match format {
                Format::Human => println!("{report}"),
                Format::Json => print_json(&report.to_json()),
                Format::Csv => return Err(csv_unsupported()),
            }
            Ok(())
        }
        Command::Expand {
            datum,
            poly,
            format,
        } => {
            let spec = resolve_spec(&datum)?;
            let seq = compute_sequence(&spec)?;
            let f = parse_expr(&poly)?;
            let presentation =
                adic_expand(&f, &seq).map_err(|e| Failure::datum(e.to_string()))?;
            let w = weight(&presentation, &seq.values())
                .expect("a nonzero polynomial has a nonempty presentation");
            let standard = presentation.is_standard(&seq);
            match format {
                Format::Human => {
                    println!("{presentation}");
                    println!("weight = {w}");
                    println!("standard = {standard}");
                }
                Format::Json => print_json(&expansion_json(&presentation, &w, standard)),
                Format::Csv => return Err(csv_unsupported()),
            }
            Ok(())
        }
        Command::Scan {
            datum,
            max_degree,
            max_terms,
            samples,
            seed,
            out,
            format,
        } => {
            let spec = resolve_spec(&datum)?;
            let seq = compute_sequence(&spec)?;
            let budget = ScanBudget {
                max_degree,
                max_terms,
                random_samples: samples,
                seed,
            };
            let result = conescan::scan(&seq, &budget).map_err(|e| {
                let message = e.to_string();
                match e {
                    conescan::ScanError::InvalidBudget => Failure::datum(message),
                    conescan::ScanError::FloorViolated { .. } => Failure::internal(message),
                }
            })?;
            match out {
                Some(path) => {
                    let mut file = fs::File::create(&path).map_err(|e| {
                        Failure::io(format!("cannot write {}: {e}", path.display()))
                    })?;
                    write_scan(&result, format, &mut file)
                }
                None => {
                    let stdout = io::stdout();
                    let mut lock = stdout.lock();
                    write_scan(&result, format, &mut lock)
                }
            }
        }
    }
}

fn csv_unsupported() -> Failure {
    Failure::datum("csv output is only available for scan")
}

fn resolve_spec(args: &DatumArgs) -> Result<SemidegreeSpec, Failure> {
    let spec = if let Some(path) = &args.datum {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::parse(format!("cannot read {}: {e}", path.display())))?;
        parse_datum(&text)?
    } else {
        let phi_text = args.phi.as_deref().expect("clap requires --phi without --datum");
        let r_text = args.r.as_deref().expect("clap requires --r without --datum");
        let phi = parse_puiseux(phi_text)?;
        let r = parse_rat(r_text).map_err(Failure::parse)?;
        let scale = if args.scale == "auto" {
            auto_scale_value(&phi, &r)
        } else {
            args.scale.parse::<BigInt>().map_err(|e| {
                Failure::parse(format!("invalid scale `{}`: {e}", args.scale))
            })?
        };
        SemidegreeSpec::new(phi, r, scale)
    };
    let violations = spec.validate();
    if violations.is_empty() {
        Ok(spec)
    } else {
        let rendered: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        Err(Failure::datum(format!(
            "invalid datum: {}",
            rendered.join("; ")
        )))
    }
}

fn compute_sequence(spec: &SemidegreeSpec) -> Result<KeyFormSequence, Failure> {
    compute_key_forms(spec).map_err(|e| match &e {
        KeyFormsError::InvalidSpec(_) => Failure::datum(e.to_string()),
        _ => Failure::internal(e.to_string()),
    })
}

fn print_json(value: &Value) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("reports serialize")
    );
}

fn keyforms_json(seq: &KeyFormSequence) -> Value {
    json!({
        "datum": seq.spec.to_string(),
        "steps": seq.steps.iter().map(|step| json!({
            "form": step.form.to_string(),
            "value": step.value.to_string(),
            "alpha": step.alpha.as_ref()
                .map(|a| Value::String(a.to_string())).unwrap_or(Value::Null),
            "beta": step.beta.as_ref()
                .map(|b| Value::Array(
                    b.iter().map(|e| Value::String(e.to_string())).collect(),
                ))
                .unwrap_or(Value::Null),
            "theta": step.theta.as_ref()
                .map(|t| Value::String(format_rat(t))).unwrap_or(Value::Null),
        })).collect::<Vec<_>>(),
    })
}

fn expansion_json(presentation: &Presentation, w: &BigInt, standard: bool) -> Value {
    json!({
        "terms": presentation.terms.iter().map(|((x_power, exponents), coefficient)| json!({
            "xPower": x_power.to_string(),
            "exponents": exponents.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
            "coefficient": format_rat(coefficient),
        })).collect::<Vec<_>>(),
        "weight": w.to_string(),
        "standard": standard,
    })
}

fn scan_human(result: &ScanResult) -> String {
    let mut out = String::new();
    out.push_str(&format!("points scanned: {}\n", result.points.len()));
    match &result.summary.min_slope {
        Some(q) => out.push_str(&format!("min slope = {}\n", format_rat(q))),
        None => out.push_str("min slope = (empty scan)\n"),
    }
    match &result.summary.predicted_inf {
        Some(q) => out.push_str(&format!("predicted inf = {}\n", format_rat(q))),
        None => out.push_str("predicted inf = (unknown from key forms)\n"),
    }
    match &result.summary.negative_witness {
        Some(w) => out.push_str(&format!("negative witness = {w}\n")),
        None => out.push_str("negative witness = (none found within budget)\n"),
    }
    let values: Vec<String> = result
        .summary
        .value_set
        .iter()
        .map(|v| v.to_string())
        .collect();
    out.push_str(&format!("value set: {{{}}}\n", values.join(", ")));
    out
}

fn write_scan<W: Write>(result: &ScanResult, format: Format, sink: &mut W) -> Result<(), Failure> {
    let outcome = match format {
        Format::Csv => conescan::emit(result, EmitFormat::Csv, sink),
        Format::Json => conescan::emit(result, EmitFormat::Json, sink),
        Format::Human => sink.write_all(scan_human(result).as_bytes()),
    };
    outcome.map_err(|e| Failure::io(format!("write failed: {e}")))
}
