//! Command-line front end.
//!
//! Exit codes: 0 when a result was computed (whatever its truth value), 2 for
//! parse and validation errors, 3 when a budget ran out or a verdict could not
//! be certified, 1 when `verify-example51` finds a mismatch.

pub mod format;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::arsys::{ARSystem, SyzygyBasis};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::git_tests::{
    is_nondegenerate, stability_check, BoundCheck, DegeneracyStatus, StabilityMode,
    StabilityStatus, StabilityVerdict,
};
use crate::ideals::Budget;
use crate::miso::{miso_equivalent, miso_invariant};
use crate::pencil::{to_input_output_order, PencilSystem};
use crate::poly::{HomPoly, HomPolyMatrix, RatMatrix};
use crate::realization::{left_coprime_mfd, left_coprime_mfd_with, to_hom_ar, Reduction};

pub use format::SystemFile;

/// Seed used when neither `--seed` nor `FBINV_SEED` is given.
pub const DEFAULT_SEED: u64 = 0;

#[derive(Parser, Debug)]
#[command(
    name = "fbinv",
    version,
    about = "Exact output-feedback invariants of linear systems"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,

    /// Seed for the generic-subspace draws.
    #[arg(long, global = true, env = "FBINV_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Maximum number of S-pairs per Groebner basis computation.
    #[arg(long, global = true)]
    budget: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Generic,
    Exhaustive,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Order {
    /// Columns (u; y), as in every other command.
    Uy,
    /// Columns (y; u), as produced by the elimination.
    Yu,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Left coprime factorization of a state-space system.
    Factorize {
        input: PathBuf,
        /// Reject unobservable systems instead of reducing them.
        #[arg(long)]
        strict: bool,
    },
    /// Homogeneous AR form of a factorization.
    Homogenize {
        input: PathBuf,
    },
    /// Minimal kernel basis Q with P Q^T = 0.
    Kernel {
        input: PathBuf,
    },
    /// Observable part of an AR system.
    ObservablePart {
        input: PathBuf,
    },
    /// Decides nondegeneracy; reports a rational witness K when one is found.
    Nondegenerate {
        input: PathBuf,
    },
    /// Graded rank bounds and the stability verdict.
    Stability {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
        mode: Mode,
    },
    /// Row space of the coefficient matrix of a single-output system.
    MisoInvariant {
        input: PathBuf,
        #[arg(long)]
        pluecker: bool,
    },
    /// Whether two MISO systems have the same invariant.
    Equivalent {
        first: PathBuf,
        second: PathBuf,
    },
    /// P -> P T^{-1}.
    Act {
        input: PathBuf,
        #[arg(long)]
        transform: PathBuf,
    },
    /// Graded row space of degree ell (default: the McMillan degree).
    Embed {
        input: PathBuf,
        #[arg(long)]
        ell: Option<usize>,
        #[arg(long)]
        pluecker: bool,
    },
    /// Admissibility and controllability of a pencil system.
    PencilCheck {
        input: PathBuf,
    },
    /// AR system obtained by eliminating the state of a pencil.
    PencilToAr {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Order::Uy)]
        order: Order,
    },
    /// Reproduces the degenerate-but-stable example end to end.
    VerifyExample51,
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    value: Value,
    code: i32,
}

impl Report {
    fn ok(value: Value) -> Self {
        Report { value, code: 0 }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let budget = match cli.budget {
        Some(max_pairs) => Budget {
            max_pairs,
            ..Budget::default()
        },
        None => Budget::default(),
    };
    match execute(&cli.command, cli.seed, budget) {
        Ok(report) => {
            let stdout = match cli.format {
                OutputFormat::Json => {
                    serde_json::to_string_pretty(&report.value).expect("serializable") + "\n"
                }
                OutputFormat::Text => render_text(&report.value),
            };
            Outcome {
                code: report.code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => {
            let code = if matches!(e, Error::BudgetExceeded(_)) {
                3
            } else {
                2
            };
            Outcome {
                code,
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            }
        }
    }
}

fn load(path: &Path) -> Result<SystemFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    SystemFile::parse(&text).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}

/// Any system file as an AR system in `(u; y)` order.
fn load_ar(path: &Path) -> Result<ARSystem> {
    match load(path)? {
        SystemFile::Ar(ar) => Ok(ar),
        SystemFile::Mfd(mfd) => to_hom_ar(&mfd),
        SystemFile::StateSpace(ss) => to_hom_ar(&left_coprime_mfd(&ss)?),
        SystemFile::Pencil(ps) => to_input_output_order(&ps.to_ar()?),
        SystemFile::Transform(_) => Err(Error::Parse(format!(
            "{}: expected a system, found a transform",
            path.display()
        ))),
    }
}

fn one_based(cols: &[usize]) -> Value {
    json!(cols.iter().map(|c| c + 1).collect::<Vec<_>>())
}

fn kernel_json(q: &SyzygyBasis) -> Value {
    json!({"kind": "kernel", "row_degrees": q.row_degrees, "Q": format::hom_matrix_to_json(&q.q)})
}

fn execute(command: &Command, seed: u64, budget: Budget) -> Result<Report> {
    use format::*;
    match command {
        Command::Factorize { input, strict } => {
            let SystemFile::StateSpace(ss) = load(input)? else {
                return Err(Error::Parse("factorize expects a state_space file".into()));
            };
            let mode = if *strict {
                Reduction::Strict
            } else {
                Reduction::Reduce
            };
            let fact = left_coprime_mfd_with(&ss, mode)?;
            let mut v = SystemFile::Mfd(fact.mfd).to_json();
            v["reduced"] = json!(fact.reduced);
            Ok(Report::ok(v))
        }
        Command::Homogenize { input } => Ok(Report::ok(ar_to_json(&load_ar(input)?))),
        Command::Kernel { input } => Ok(Report::ok(kernel_json(&load_ar(input)?.compute_q()?))),
        Command::ObservablePart { input } => {
            Ok(Report::ok(ar_to_json(&load_ar(input)?.observable_part()?)))
        }
        Command::Nondegenerate { input } => {
            let v = is_nondegenerate(&load_ar(input)?, budget);
            let code = if v.status == DegeneracyStatus::NotCertified {
                3
            } else {
                0
            };
            Ok(Report {
                value: json!({
                    "status": format!("{:?}", v.status),
                    "degenerate": v.status == DegeneracyStatus::Degenerate,
                    "witness": v.witness.as_ref().map(matrix_to_json),
                    "chart": v.chart.as_deref().map(one_based),
                }),
                code,
            })
        }
        Command::Stability { input, mode } => {
            let mode = match mode {
                Mode::Generic => StabilityMode::GenericSubspace,
                Mode::Exhaustive => StabilityMode::Exhaustive,
            };
            let v = stability_check(&load_ar(input)?, mode, seed, budget)?;
            let code = if v.status == StabilityStatus::NotCertified {
                3
            } else {
                0
            };
            Ok(Report {
                value: stability_json(&v, seed),
                code,
            })
        }
        Command::MisoInvariant { input, pluecker } => Ok(Report::ok(grassmann_to_json(
            &miso_invariant(&load_ar(input)?)?,
            *pluecker,
        ))),
        Command::Equivalent { first, second } => {
            let (a, b) = (load_ar(first)?, load_ar(second)?);
            Ok(Report::ok(json!({"equivalent": miso_equivalent(&a, &b)?})))
        }
        Command::Act { input, transform } => {
            let SystemFile::Transform(t) = load(transform)? else {
                return Err(Error::Parse(format!(
                    "{}: expected a transform file",
                    transform.display()
                )));
            };
            Ok(Report::ok(ar_to_json(&load_ar(input)?.act(&t)?)))
        }
        Command::Embed {
            input,
            ell,
            pluecker,
        } => {
            let ar = load_ar(input)?;
            let ell = ell.unwrap_or(ar.mcmillan_degree());
            let mut v = grassmann_to_json(&ar.rho_embedding(ell)?, *pluecker);
            v["ell"] = json!(ell);
            Ok(Report::ok(v))
        }
        Command::PencilCheck { input } => {
            let ps = match load(input)? {
                SystemFile::Pencil(ps) => ps,
                SystemFile::StateSpace(ss) => PencilSystem::from_state_space(&ss),
                other => {
                    return Err(Error::Parse(format!(
                        "pencil-check expects a pencil, found {}",
                        other.kind()
                    )))
                }
            };
            let admissible = ps.is_admissible();
            let controllable = if admissible {
                Some(ps.is_controllable()?)
            } else {
                None
            };
            Ok(Report::ok(
                json!({"admissible": admissible, "controllable": controllable}),
            ))
        }
        Command::PencilToAr { input, order } => {
            let ps = match load(input)? {
                SystemFile::Pencil(ps) => ps,
                SystemFile::StateSpace(ss) => PencilSystem::from_state_space(&ss),
                other => {
                    return Err(Error::Parse(format!(
                        "pencil-to-ar expects a pencil, found {}",
                        other.kind()
                    )))
                }
            };
            let ar = ps.to_ar()?;
            let ar = if *order == Order::Uy {
                to_input_output_order(&ar)?
            } else {
                ar
            };
            Ok(Report::ok(ar_to_json(&ar)))
        }
        Command::VerifyExample51 => verify_example51(seed, budget),
    }
}

fn check_json(c: BoundCheck) -> Value {
    json!(match c {
        BoundCheck::Holds => "holds",
        BoundCheck::Violated => "violated",
        BoundCheck::Undecided => "undecided",
    })
}

fn stability_json(v: &StabilityVerdict, seed: u64) -> Value {
    let details: Vec<Value> = v
        .details
        .iter()
        .map(|r| {
            json!({
                "h": r.bound.h,
                "strict_bound": r.bound.strict_bound,
                "weak_bound": r.bound.weak_bound,
                "achieved_rank": r.achieved,
                "strict": r.strict.map(check_json),
                "weak": r.weak.map(check_json),
            })
        })
        .collect();
    let witness = v.witness.as_ref().map(|w| {
        json!({
            "h": w.h,
            "max_rank": w.max_rank,
            "basis": w.basis.as_ref().map(format::matrix_to_json),
            "chart": one_based(&w.chart),
        })
    });
    json!({
        "status": format!("{:?}", v.status),
        "mode": format!("{:?}", v.mode),
        "seed": seed,
        "details": details,
        "witness": witness,
    })
}

fn verify_example51(seed: u64, budget: Budget) -> Result<Report> {
    let p = fixtures::degenerate_stable_system();
    let mut criteria = Vec::new();
    let mut record = |name: &str, pass: bool, detail: String| {
        criteria.push(json!({"name": name, "pass": pass, "detail": detail}));
        pass
    };

    let v = is_nondegenerate(&p, budget);
    let expected = RatMatrix::from_i64(&[&[0, 0, 1, 0, 0], &[0, 0, 0, 1, 0], &[0, 0, 0, 0, 1]]);
    let witness_ok = v.witness.as_ref().is_some_and(|k| {
        k == &expected
            && p.matrix()
                .vstack(&HomPolyMatrix::from_constant(k))
                .determinant()
                .is_ok_and(|d| d.is_zero())
    });
    let a = record(
        "degenerate with witness [e3; e4; e5]",
        v.status == DegeneracyStatus::Degenerate && witness_ok,
        match &v.chart {
            Some(chart) => format!("status {:?}, chart {}", v.status, one_based(chart)),
            None => format!("status {:?}", v.status),
        },
    );

    let q = p.compute_q()?;
    let mut degrees = q.row_degrees.clone();
    degrees.sort_unstable();
    let (published, published_degrees) = fixtures::published_kernel();
    let published = SyzygyBasis {
        q: published,
        row_degrees: published_degrees,
    };
    let b = record(
        "kernel degrees {1,1,2} and equal to the published module",
        degrees == [1, 1, 2] && q.same_module(&published),
        format!("row degrees {:?}", q.row_degrees),
    );

    let generic = stability_check(&p, StabilityMode::GenericSubspace, seed, budget)?;
    let rank = |h: usize| {
        generic
            .details
            .iter()
            .find(|r| r.bound.h == h)
            .map_or(0, |r| r.achieved)
    };
    let c = record(
        "generic ranks: h=3 at least 2, h=4 at least 3",
        rank(3) >= 2 && rank(4) >= 3,
        format!("h=3 rank {}, h=4 rank {}", rank(3), rank(4)),
    );

    let exhaustive = stability_check(&p, StabilityMode::Exhaustive, seed, budget)?;
    let d = record(
        "degenerate but stable (exhaustive)",
        a && exhaustive.status == StabilityStatus::StableCertified,
        format!("status {:?}", exhaustive.status),
    );

    let pass = a && b && c && d;
    let code = if pass {
        0
    } else if exhaustive.status == StabilityStatus::NotCertified {
        3
    } else {
        1
    };
    Ok(Report {
        value: json!({
            "criteria": criteria,
            "pass": pass,
            "verdict": if pass { "degenerate but stable" } else { "mismatch" },
            "stability": stability_json(&exhaustive, seed),
        }),
        code,
    })
}

/// Plain rendering of a report: one `key: value` per line, polynomials written out.
fn render_text(v: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v, 0);
    out
}

fn as_poly(v: &Value) -> Option<HomPoly> {
    let obj = v.as_object()?;
    if obj.len() == 2 && obj.contains_key("degree") && obj.contains_key("terms") {
        format::hompoly_from_json(v).ok()
    } else {
        None
    }
}

fn inline(v: &Value) -> Option<String> {
    if let Some(f) = as_poly(v) {
        return Some(f.to_string());
    }
    match v {
        Value::Null => Some("-".into()),
        Value::String(s) => Some(s.clone()),
        Value::Bool(_) | Value::Number(_) => Some(v.to_string()),
        Value::Array(items) => {
            let parts: Option<Vec<String>> = items
                .iter()
                .map(|x| {
                    if x.is_object() && as_poly(x).is_none() {
                        None
                    } else {
                        inline(x)
                    }
                })
                .collect();
            parts.map(|p| format!("[{}]", p.join(", ")))
        }
        Value::Object(_) => None,
    }
}

fn write_value(out: &mut String, v: &Value, indent: usize) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match inline(x) {
                    Some(s) if !matches!(x, Value::Array(a) if a.iter().any(Value::is_array)) => {
                        out.push_str(&format!("{pad}{k}: {s}\n"))
                    }
                    _ => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        write_value(out, x, indent + 2);
                    }
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                match inline(x) {
                    Some(s) => out.push_str(&format!("{pad}{s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        write_value(out, x, indent + 2);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", inline(other).unwrap_or_default())),
    }
}
