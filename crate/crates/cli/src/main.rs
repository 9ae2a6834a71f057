use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use isodiam::claims;
use isodiam::decomposition::fit_weights;
use isodiam::dr::{self, DRQuery, SearchOptions};
use isodiam::ellipsoid::{mvee_centered, mvee_general};
use isodiam::io::{self, fmt12};
use isodiam::positions::{behrend_normalize, isominwidth_normalize};
use isodiam::{tol, Error};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

const SCHEMAS: &str = "\
JSON formats:
  body           {\"dim\": n, \"vertices\": [[x1, ..., xn], ...]}   (\"points\" is accepted for \"vertices\")
  decomposition  {\"dim\": n, \"directions\": [[...], ...], \"weights\": [...], \"residual\": r}
  witness        decomposition + {\"j\": j, \"value\": v, \"subset\": [0-based indices]}
  ellipsoid      {\"dim\": n, \"shape\": [[...]], \"center\": [...]}   meaning (x-c)^T M (x-c) <= 1
  certificate    {\"kind\", \"map\", \"det\", \"quotient_before\", \"quotient_after\", \"decomposition\", \"residual\"}

Exit codes: 0 success, 1 verification failure, 2 input error, 3 solver non-convergence.
ISODIAM_FIXTURES overrides the fixture directory used by verify-paper.";

#[derive(Parser)]
#[command(name = "isodiam", version, about = "Isodiametric and isominwidth positions of polytopes", after_help = SCHEMAS)]
struct Cli {
    /// Write a run report (command, input digest, outputs, timing, version) to this file.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Isodiametric quotient vol/D^n of a body.
    Iq { body: PathBuf },
    /// Isominwidth quotient vol/w^n of a body.
    Iwq { body: PathBuf },
    /// Map a body to Behrend position.
    Behrend {
        body: PathBuf,
        #[arg(long, default_value_t = tol::MVEE_EPS)]
        eps: f64,
        /// Write the normalized body here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the position certificate here.
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Map a body to isominwidth position.
    Isominwidth {
        body: PathBuf,
        #[arg(long, default_value_t = tol::MVEE_EPS)]
        eps: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Minimal-volume enclosing ellipsoid of a point set.
    Mvee {
        points: PathBuf,
        /// Origin-centered ellipsoid of an origin-symmetric point set.
        #[arg(long)]
        centered: bool,
        #[arg(long, default_value_t = tol::MVEE_EPS)]
        eps: f64,
    },
    /// Verify a decomposition of the identity (reads stdin when the file is omitted or "-").
    CheckDecomposition {
        decomposition: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Lower bound on DR(m, n, j).
    DrBound {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        j: usize,
    },
    /// Table of DR lower bounds over all valid (m, j) for fixed n.
    DrTable {
        #[arg(long)]
        n: usize,
    },
    /// Annealing search for an upper bound on DR(m, n, n).
    DrSearch {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 64)]
        restarts: usize,
        #[arg(long, default_value_t = 5000)]
        iters: usize,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Print a stored witness configuration.
    Witness { name: String },
    /// Run the acceptance checks and print PASS/FAIL per criterion.
    VerifyPaper,
}

enum Failure {
    Input(String),
    Solver(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::MaxIterations { .. } | Error::Numerical(_) => Failure::Solver(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

struct Outcome {
    stdout: String,
    outputs: Value,
    verified: bool,
    inputs: Vec<u8>,
}

impl Outcome {
    fn ok(stdout: String, outputs: Value) -> Self {
        Self {
            stdout,
            outputs,
            verified: true,
            inputs: Vec::new(),
        }
    }
}

#[derive(Serialize)]
struct RunReport {
    command: Vec<String>,
    input_sha256: Option<String>,
    outputs: Value,
    elapsed_ms: f64,
    version: &'static str,
}

fn read_input(path: Option<&Path>) -> Result<Vec<u8>, Failure> {
    match path {
        Some(p) if p != Path::new("-") => {
            std::fs::read(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))
        }
        _ => {
            let mut buf = Vec::new();
            std::io::stdin()
                .read_to_end(&mut buf)
                .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
            Ok(buf)
        }
    }
}

fn text(bytes: &[u8]) -> Result<&str, Failure> {
    std::str::from_utf8(bytes).map_err(|e| Failure::Input(format!("input is not UTF-8: {e}")))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, format!("{contents}\n")).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn run(command: &Command) -> Result<Outcome, Failure> {
    match command {
        Command::Iq { body } | Command::Iwq { body } => {
            let bytes = read_input(Some(body))?;
            let p = io::body_from_json(text(&bytes)?)?;
            let (name, v) = match command {
                Command::Iq { .. } => ("iq", p.iq()),
                _ => ("iwq", p.iwq()?),
            };
            Ok(Outcome {
                inputs: bytes,
                ..Outcome::ok(fmt12(v), json!({ name: v }))
            })
        }
        Command::Behrend { body, eps, out, cert } | Command::Isominwidth { body, eps, out, cert } => {
            let bytes = read_input(Some(body))?;
            let p = io::body_from_json(text(&bytes)?)?;
            let behrend = matches!(command, Command::Behrend { .. });
            let r = if behrend {
                behrend_normalize(&p, *eps)?
            } else {
                isominwidth_normalize(&p, *eps)?
            };
            let c = &r.certificate;
            let limit = if behrend { tol::BEHREND_RESIDUAL } else { tol::ISOMINWIDTH_RESIDUAL };
            let quotient = if behrend { "iq" } else { "iwq" };
            let mut verified = c.residual <= limit;
            if !behrend {
                verified &= c.quotient_after <= 1.0 + 1e-6;
            }
            if let Some(path) = out {
                write_file(path, &io::body_to_json(&r.body))?;
            }
            let cert_json = io::certificate_json(c);
            if let Some(path) = cert {
                write_file(path, &io::to_json(&cert_json))?;
            }
            let stdout = format!(
                "{quotient} before {}\n{quotient} after  {}\nresidual   {} ({})",
                fmt12(c.quotient_before),
                fmt12(c.quotient_after),
                fmt12(c.residual),
                if verified { "certified" } else { "NOT certified" }
            );
            Ok(Outcome {
                stdout,
                outputs: serde_json::to_value(&cert_json).expect("serializable"),
                verified,
                inputs: bytes,
            })
        }
        Command::Mvee { points, centered, eps } => {
            let bytes = read_input(Some(points))?;
            let pts = io::points_from_json(text(&bytes)?)?;
            let sol = if *centered {
                mvee_centered(&pts, *eps)?
            } else {
                mvee_general(&pts, *eps)?
            };
            let value = json!({
                "ellipsoid": io::ellipsoid_json(&sol.ellipsoid),
                "contact": io::contact_json(&sol.contact),
                "iterations": sol.stats.iterations,
                "gap": sol.stats.gap,
            });
            Ok(Outcome {
                stdout: serde_json::to_string_pretty(&value).expect("serializable"),
                outputs: value,
                verified: true,
                inputs: bytes,
            })
        }
        Command::CheckDecomposition { decomposition, tol } => {
            let bytes = read_input(decomposition.as_deref())?;
            let d = io::decomposition_from_json(text(&bytes)?)?;
            let r = d.verify(*tol);
            let fit = fit_weights(d.directions(), *tol)?;
            let stdout = format!(
                "residual        {}\ntrace deviation {}\nbest refit      {}\n{}",
                fmt12(r.residual),
                fmt12(r.trace_deviation),
                fmt12(fit.residual()),
                if r.passed { "PASS" } else { "FAIL" }
            );
            Ok(Outcome {
                stdout,
                outputs: json!({
                    "residual": r.residual,
                    "trace_deviation": r.trace_deviation,
                    "refit_residual": fit.residual(),
                    "passed": r.passed,
                }),
                verified: r.passed,
                inputs: bytes,
            })
        }
        Command::DrBound { m, n, j } => {
            let q = DRQuery::new(*m, *n, *j)?;
            if let Some(note) = q.note() {
                eprintln!("note: {note}");
            }
            let v = dr::dr_lower_bound(q);
            Ok(Outcome::ok(fmt12(v), json!({ "m": q.m, "n": q.n, "j": q.j, "bound": v })))
        }
        Command::DrTable { n } => {
            if *n == 0 {
                return Err(Failure::Input("n must be at least 1".into()));
            }
            let mut lines = vec![format!("{:>4} {:>4} {:>4} {:>20}", "m", "n", "j", "bound")];
            let mut rows = Vec::new();
            for m in *n..=(n * (n + 1) / 2) {
                for j in 1..=*n {
                    let v = dr::dr_lower_bound(DRQuery::new(m, *n, j)?);
                    lines.push(format!("{m:>4} {n:>4} {j:>4} {:>20}", fmt12(v)));
                    rows.push(json!({ "m": m, "n": n, "j": j, "bound": v }));
                }
            }
            Ok(Outcome::ok(lines.join("\n"), Value::Array(rows)))
        }
        Command::DrSearch {
            m,
            n,
            seed,
            restarts,
            iters,
            threads,
        } => {
            let opts = SearchOptions {
                restarts: *restarts,
                iters: *iters,
                threads: (*threads).max(1),
                ..SearchOptions::default()
            };
            let w = dr::dr_search(*m, *n, *seed, &opts)?;
            let bound = DRQuery::new(*m, *n, *n).map(dr::dr_lower_bound).ok();
            eprintln!(
                "best value {} (lower bound {}, conjectured {} at m = C(n+1,2))",
                fmt12(w.value),
                bound.map(fmt12).unwrap_or_else(|| "n/a".into()),
                fmt12(dr::conjectured_value(*n))
            );
            let value = serde_json::to_value(io::witness_json(&w)).expect("serializable");
            Ok(Outcome::ok(serde_json::to_string_pretty(&value).expect("serializable"), value))
        }
        Command::Witness { name } => {
            let w = dr::witness_library(name)
                .map_err(|e| Failure::Input(format!("{e}; known: {}", dr::witness_names().join(", "))))?;
            let value = serde_json::to_value(io::witness_json(&w)).expect("serializable");
            Ok(Outcome::ok(serde_json::to_string_pretty(&value).expect("serializable"), value))
        }
        Command::VerifyPaper => {
            let (fixtures, source) = match std::env::var_os("ISODIAM_FIXTURES") {
                Some(dir) => {
                    let source = Path::new(&dir).display().to_string();
                    (claims::load_fixtures(Path::new(&dir)).map_err(Failure::Input)?, source)
                }
                None if Path::new("fixtures").is_dir() => {
                    (claims::load_fixtures(Path::new("fixtures")).map_err(Failure::Input)?, "fixtures".to_string())
                }
                None => (claims::builtin_fixtures(), "builtin".to_string()),
            };
            let results = claims::run_all(&fixtures);
            let failed = results.iter().filter(|r| !r.passed).count();
            let mut lines = vec![format!("fixtures: {} ({source})", fixtures.len())];
            lines.extend(results.iter().map(|r| r.line()));
            lines.push(format!("{} checks, {} failed", results.len(), failed));
            let outputs = results
                .iter()
                .map(|r| json!({ "id": r.id, "title": r.title, "passed": r.passed, "detail": r.detail }))
                .collect();
            Ok(Outcome {
                stdout: lines.join("\n"),
                outputs: Value::Array(outputs),
                verified: failed == 0,
                inputs: Vec::new(),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli.command) {
        Ok(outcome) => {
            println!("{}", outcome.stdout);
            if let Some(path) = &cli.report {
                let report = RunReport {
                    command: std::env::args().collect(),
                    input_sha256: (!outcome.inputs.is_empty()).then(|| hex::encode(Sha256::digest(&outcome.inputs))),
                    outputs: outcome.outputs,
                    elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
                    version: env!("CARGO_PKG_VERSION"),
                };
                let text = serde_json::to_string_pretty(&report).expect("serializable");
                if let Err(e) = std::fs::write(path, text + "\n") {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            if outcome.verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Solver(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
