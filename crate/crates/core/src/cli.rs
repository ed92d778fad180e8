//! Command-line front end. `run` returns the process exit code:
//! 0 success, 1 verification failures, 2 usage or parse errors.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::closedform::{
    case_formula, closed_antipode, identity_sides, ShuffleIdentity, SigmaSpec,
};
use crate::error::{Error, Result};
use crate::hopf::antipode;
use crate::verify::{self, VerificationReport};
use crate::words::Permutation;
use crate::Element;

#[derive(Parser, Debug)]
#[command(name = "ssym", about = "Antipodes in the Hopf algebra of permutations")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Suppress timing fields so output is byte-identical across runs.
    #[arg(long, global = true)]
    pub deterministic: bool,
    /// Worker threads for verify and bench (0 = all cores).
    #[arg(long, default_value_t = 0, global = true)]
    pub jobs: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Records,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Recursive,
    Closed,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Campaign {
    Equivalence,
    Table2,
    Axioms,
    Lemmas,
    Sums,
    Cancellation,
    All,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Antipode of a permutation, e.g. `4312` or `10,2,1,...`; `e` is the empty permutation.
    Antipode {
        perm: String,
        #[arg(long, value_enum, default_value_t = Method::Recursive)]
        method: Method,
    },
    /// The permutation with descent a > b followed by the remaining letters in order.
    Sigma { n: usize, a: usize, b: usize },
    /// Closed-form component of the antipode ending in j, with the last letter stripped.
    Component {
        n: usize,
        a: usize,
        b: usize,
        j: usize,
    },
    /// Run a verification campaign.
    Verify {
        #[arg(value_enum)]
        campaign: Campaign,
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Recursive oracle vs closed form timings and term counts.
    Bench {
        #[arg(long, default_value_t = 8)]
        max_n_recursive: usize,
        #[arg(long, default_value_t = 10)]
        max_n_closed: usize,
    },
    /// Both sides of an alternating shuffle identity; with no parameters,
    /// checks every admissible tuple up to --max-n.
    Identities {
        kind: String,
        params: Vec<i64>,
        #[arg(long, default_value_t = 9)]
        max_n: i64,
    },
}

enum Outcome {
    Ok(String),
    Failed(String),
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    match pool.install(|| dispatch(&cli)) {
        Ok(Outcome::Ok(s)) => {
            let _ = writeln!(out, "{s}");
            0
        }
        Ok(Outcome::Failed(s)) => {
            let _ = writeln!(out, "{s}");
            1
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn records(e: &Element) -> serde_json::Value {
    serde_json::to_value(e.to_records()).expect("records serialize")
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    let text = cli.format == Format::Text;
    match &cli.command {
        Command::Antipode { perm, method } => {
            let p: Permutation = perm.parse()?;
            let s = match method {
                Method::Recursive => antipode(&p)?,
                Method::Closed => {
                    let spec = SigmaSpec::detect(&p).ok_or_else(|| {
                        Error::OutOfRange(format!("{p} is not a two-letter descent permutation"))
                    })?;
                    closed_antipode(spec)?
                }
            };
            Ok(Outcome::Ok(if text {
                s.to_string()
            } else {
                records(&s).to_string()
            }))
        }
        Command::Sigma { n, a, b } => {
            let p = SigmaSpec::new(*n, *a, *b)?.permutation();
            Ok(Outcome::Ok(if text {
                p.to_string()
            } else {
                json!({ "permutation": p.letters() }).to_string()
            }))
        }
        Command::Component { n, a, b, j } => {
            let f = case_formula(SigmaSpec::new(*n, *a, *b)?, *j)?;
            let e = f.evaluate()?;
            Ok(Outcome::Ok(if text {
                format!("case {}\n{e}", f.case)
            } else {
                json!({ "case": f.case.tag(), "terms": records(&e) }).to_string()
            }))
        }
        Command::Verify { campaign, max_n } => {
            let reports = match campaign {
                Campaign::Equivalence => {
                    vec![verify::sweep_oracle_equivalence(max_n.unwrap_or(8))?]
                }
                Campaign::Table2 => vec![verify::check_table2()?],
                Campaign::Axioms => vec![verify::sweep_axioms(max_n.unwrap_or(5))?],
                Campaign::Lemmas => vec![verify::sweep_lemmas(max_n.unwrap_or(9))?],
                Campaign::Sums => vec![verify::sweep_sum_formulas(max_n.unwrap_or(7))?],
                Campaign::Cancellation => vec![verify::audit_cancellation(max_n.unwrap_or(8))?],
                Campaign::All => verify::run_all(*max_n)?,
            };
            Ok(render_reports(reports, text, cli.deterministic))
        }
        Command::Bench {
            max_n_recursive,
            max_n_closed,
        } => {
            let mut r = verify::benchmark(*max_n_recursive, *max_n_closed)?;
            if cli.deterministic {
                r = r.without_timing();
            }
            Ok(Outcome::Ok(if text {
                r.to_string()
            } else {
                serde_json::to_string_pretty(&r).expect("serializes")
            }))
        }
        Command::Identities {
            kind,
            params,
            max_n,
        } => {
            let kind: ShuffleIdentity = kind.parse()?;
            if params.is_empty() {
                let tuples = kind.parameters(*max_n);
                let mut bad = Vec::new();
                for p in &tuples {
                    let (l, r) = identity_sides(kind, p)?;
                    if l != r {
                        bad.push(p.clone());
                    }
                }
                let body = if text {
                    let mut s = format!(
                        "{}: {} parameter tuples, {} failures",
                        kind.name(),
                        tuples.len(),
                        bad.len()
                    );
                    for p in &bad {
                        s.push_str(&format!("\n  {p:?}"));
                    }
                    s
                } else {
                    json!({ "identity": kind.name(), "checked": tuples.len(), "failures": bad })
                        .to_string()
                };
                return Ok(if bad.is_empty() {
                    Outcome::Ok(body)
                } else {
                    Outcome::Failed(body)
                });
            }
            let (l, r) = identity_sides(kind, params)?;
            let equal = l == r;
            let body = if text {
                format!(
                    "lhs: {l}\nrhs: {r}\n{}",
                    if equal { "equal" } else { "differ" }
                )
            } else {
                json!({ "identity": kind.name(), "params": params, "lhs": records(&l), "rhs": records(&r), "equal": equal })
                    .to_string()
            };
            Ok(if equal {
                Outcome::Ok(body)
            } else {
                Outcome::Failed(body)
            })
        }
    }
}

fn render_reports(reports: Vec<VerificationReport>, text: bool, deterministic: bool) -> Outcome {
    let reports: Vec<VerificationReport> = reports
        .into_iter()
        .map(|r| if deterministic { r.without_timing() } else { r })
        .collect();
    let passed = reports.iter().all(|r| r.passed());
    let body = if text {
        reports
            .iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
            .join("\n\n")
    } else if reports.len() == 1 {
        reports[0].to_json()
    } else {
        serde_json::to_string_pretty(&reports).expect("serializes")
    };
    if passed {
        Outcome::Ok(body)
    } else {
        Outcome::Failed(body)
    }
}
