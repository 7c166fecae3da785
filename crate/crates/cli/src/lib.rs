//! Argument parsing and rendering for the `chernorder` binary. Every number
//! printed here comes from the `chernorder` library.

mod render;

use std::env;

use chernorder::arith::{factor_with, FactorLimits};
use chernorder::bernoulli::{bernoulli, nk_cross_checked, DEFAULT_MAX_INDEX};
use chernorder::bounds::{build_ledger_with, reference, Context};
use chernorder::char_classes::{derham_chern_in_newton, derham_total_chern, todd_class, BundleSpec};
use chernorder::graded_ring::{format_rational, parse_monomial};
use chernorder::verify::{self, Suite};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::json;

/// Environment variable holding the Pollard-rho iteration cap.
pub const EFFORT_ENV: &str = "CHERNORDER_FACTOR_EFFORT";

/// Largest `--degree` accepted by `todd`.
pub const MAX_TODD_DEGREE: u32 = 30;

#[derive(Debug, Parser)]
#[command(name = "chernorder", version, about = "Exact Todd classes, de Rham Chern classes and torsion-order bounds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Basis {
    Lambda,
    Newton,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    All,
    Duality,
    OddVanishing,
    Hirzebruch,
    Nk,
    Newton,
    Oracle,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact Bernoulli number B_n (B_1 = -1/2).
    Bernoulli {
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// n_k, or the table for k = 1..=K with --table K.
    Nk {
        #[arg(required_unless_present = "table", conflicts_with = "table")]
        k: Option<u64>,
        #[arg(long, value_name = "K")]
        table: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Prime factorization of a positive integer.
    Factor {
        #[arg(allow_hyphen_values = true)]
        n: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// The Todd class up to weight N, or one of its coefficients.
    Todd {
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        rank: Option<u32>,
        /// A monomial such as c12^2 or c1*c3.
        #[arg(long)]
        coeff: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Chern classes of the de Rham bundle of a g-dimensional abelian scheme.
    Derham {
        #[arg(long)]
        g: u32,
        /// Truncation weight; defaults to 2g.
        #[arg(long)]
        degree: Option<u32>,
        #[arg(long, value_enum, default_value_t = Basis::Lambda)]
        basis: Basis,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Torsion-order bounds for c_2(H), ..., c_2g(H).
    Ledger {
        #[arg(long)]
        g: u32,
        /// Level n >= 3; sets d = g(g+1)/2 unless --d is given.
        #[arg(long)]
        level: Option<u64>,
        #[arg(long)]
        d: Option<u64>,
        /// Characteristic p of the base field.
        #[arg(long = "char", value_name = "P")]
        char_p: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Show the worked example's listed pairings beside the strict values.
        #[arg(long)]
        paper_comparison: bool,
    },
    /// Run property suites; exits 1 if any check fails.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long)]
        max_degree: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

/// What a command produced: text for stdout and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, stderr: String::new(), code: 0 }
    }

    fn failed(stdout: String) -> Self {
        Outcome { stdout, stderr: String::new(), code: 1 }
    }

    fn usage(msg: impl Into<String>) -> Self {
        Outcome { stdout: String::new(), stderr: format!("error: {}\n", msg.into()), code: 2 }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome::ok(text)
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            }
        }
    }
}

fn limits() -> Result<FactorLimits, String> {
    match env::var(EFFORT_ENV) {
        Err(_) => Ok(FactorLimits::default()),
        Ok(v) => v
            .trim()
            .parse::<u64>()
            .map(|rho_iterations| FactorLimits { rho_iterations })
            .map_err(|_| format!("{EFFORT_ENV}={v:?} is not a non-negative integer")),
    }
}

fn json_line(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json values serialize");
    s.push('\n');
    s
}

fn reject_csv(format: Format, what: &str) -> Result<(), Outcome> {
    if format == Format::Csv {
        return Err(Outcome::usage(format!("--format csv is only available for tables, not {what}")));
    }
    Ok(())
}

pub fn run(cli: &Cli) -> Outcome {
    match execute(&cli.command) {
        Ok(o) | Err(o) => o,
    }
}

fn execute(command: &Command) -> Result<Outcome, Outcome> {
    match command {
        Command::Bernoulli { n, format } => {
            reject_csv(*format, "bernoulli")?;
            let b = bernoulli(*n).map_err(|e| Outcome::usage(e.to_string()))?;
            let text = format_rational(&b);
            Ok(Outcome::ok(match format {
                Format::Json => json_line(&json!({ "n": n, "value": text })),
                _ => format!("{text}\n"),
            }))
        }
        Command::Nk { k, table, format } => match (k, table) {
            (Some(k), _) => {
                reject_csv(*format, "a single n_k")?;
                let nk = nk_cross_checked(*k).map_err(|e| Outcome::usage(e.to_string()))?;
                Ok(Outcome::ok(match format {
                    Format::Json => json_line(&serde_json::to_value(&nk).expect("serializable")),
                    _ => format!("n_{k} = {} = {}\n", nk.value.value(), nk.value),
                }))
            }
            (None, Some(max)) => {
                if *max == 0 || 2 * *max as usize > DEFAULT_MAX_INDEX {
                    return Err(Outcome::usage(format!("--table must be in 1..={}", DEFAULT_MAX_INDEX / 2)));
                }
                let mut rows = Vec::new();
                for k in 1..=*max {
                    let nk = nk_cross_checked(k).map_err(|e| Outcome::usage(e.to_string()))?;
                    let b = bernoulli(2 * k as usize).map_err(|e| Outcome::usage(e.to_string()))?;
                    rows.push((nk, b));
                }
                Ok(Outcome::ok(render::nk_table(&rows, *format)))
            }
            (None, None) => Err(Outcome::usage("give k or --table K")),
        },
        Command::Factor { n, format } => {
            reject_csv(*format, "factor")?;
            let value: BigInt = n.trim().parse().map_err(|_| Outcome::usage(format!("{n:?} is not an integer")))?;
            if value <= BigInt::zero() {
                return Err(Outcome::usage(format!("factor expects a positive integer, got {value}")));
            }
            let limits = limits().map_err(Outcome::usage)?;
            let f = factor_with(value.magnitude(), limits).map_err(|e| Outcome::usage(e.to_string()))?;
            Ok(Outcome::ok(match format {
                Format::Json => json_line(&serde_json::to_value(&f).expect("serializable")),
                _ if f.is_prime() => format!("{} = {} (prime)\n", f.value(), f),
                _ => format!("{} = {}\n", f.value(), f),
            }))
        }
        Command::Todd { degree, rank, coeff, format } => {
            reject_csv(*format, "todd")?;
            if *degree == 0 || *degree > MAX_TODD_DEGREE {
                return Err(Outcome::usage(format!("--degree must be in 1..={MAX_TODD_DEGREE}, got {degree}")));
            }
            let bundle = match rank {
                Some(r) => BundleSpec::new(*r, *degree).map_err(|e| Outcome::usage(e.to_string()))?,
                None => BundleSpec::universal(*degree),
            };
            let monomial = match coeff {
                Some(m) => {
                    let m = parse_monomial(m, "c").map_err(|e| Outcome::usage(format!("--coeff: {e}")))?;
                    if m.weight() > *degree {
                        return Err(Outcome::usage(format!("--coeff has weight {} above --degree {degree}", m.weight())));
                    }
                    Some(m)
                }
                None => None,
            };
            let td = todd_class(&bundle).map_err(|e| Outcome::usage(e.to_string()))?;
            Ok(Outcome::ok(render::todd(&td, monomial.as_ref(), *format)))
        }
        Command::Derham { g, degree, basis, format } => {
            reject_csv(*format, "derham")?;
            let n = degree.unwrap_or(2 * g);
            if *g == 0 || n == 0 {
                return Err(Outcome::usage("--g and --degree must be positive"));
            }
            match basis {
                Basis::Lambda => {
                    let c = derham_total_chern(*g, n).map_err(|e| Outcome::usage(e.to_string()))?;
                    Ok(Outcome::ok(match format {
                        Format::Json => json_line(&json!({ "g": g, "basis": "lambda", "truncation": n, "total": c.to_text("c") })),
                        _ => format!("{}\n", c.to_text("c")),
                    }))
                }
                Basis::Newton => {
                    let mut classes = Vec::new();
                    for i in 1..=(*g).min(n / 2) {
                        let c = derham_chern_in_newton(i, *g).map_err(|e| Outcome::usage(e.to_string()))?;
                        classes.push((2 * i, c));
                    }
                    Ok(Outcome::ok(render::derham_newton(*g, &classes, *format)))
                }
            }
        }
        Command::Ledger { g, level, d, char_p, format, paper_comparison } => {
            reject_csv(*format, "ledger")?;
            let ctx = Context::new(*g, *d, *char_p, *level).map_err(|e| Outcome::usage(e.to_string()))?;
            let limits = limits().map_err(Outcome::usage)?;
            let ledger = build_ledger_with(&ctx, limits).map_err(|e| Outcome::usage(e.to_string()))?;
            let comparison = if *paper_comparison {
                Some(reference::compare(&ledger).map_err(|e| Outcome::usage(e.to_string()))?)
            } else {
                None
            };
            Ok(Outcome::ok(match format {
                Format::Json => {
                    let mut value = serde_json::to_value(&ledger).expect("serializable");
                    if let Some(c) = &comparison {
                        value["comparison"] = serde_json::to_value(c).expect("serializable");
                    }
                    json_line(&value)
                }
                _ => {
                    let mut out = render::ledger(&ledger);
                    if let Some(c) = &comparison {
                        out.push_str(&render::comparison(c));
                    }
                    out
                }
            }))
        }
        Command::Verify { suite, max_degree, format } => {
            reject_csv(*format, "verify")?;
            let suites: Vec<Suite> = match suite {
                SuiteArg::All => Vec::new(),
                SuiteArg::Duality => vec![Suite::Duality],
                SuiteArg::OddVanishing => vec![Suite::OddVanishing],
                SuiteArg::Hirzebruch => vec![Suite::Hirzebruch],
                SuiteArg::Nk => vec![Suite::Nk],
                SuiteArg::Newton => vec![Suite::Newton],
                SuiteArg::Oracle => vec![Suite::Oracle],
            };
            let report = verify::run(&suites, *max_degree).map_err(|e| Outcome::usage(e.to_string()))?;
            let out = match format {
                Format::Json => json_line(&serde_json::to_value(&report).expect("serializable")),
                _ => render::verify(&report),
            };
            Ok(if report.passed { Outcome::ok(out) } else { Outcome::failed(out) })
        }
    }
}
