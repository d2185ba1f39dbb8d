//! The `fper` command line.

pub mod format;
pub mod verify;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::homotopy::{decompose_field, graded_central_ring, minimize, FiltComplex};
use crate::linalg::BaseRing;
use crate::oracle::{closure_search, separate, SearchBounds};
use crate::spectrum::{emit_spectrum, in_ideal, support_report};
pub use format::{Item, ObjectFile};
pub use verify::{CheckReport, Suite};

#[derive(Parser, Debug)]
#[command(name = "fper", version, about = "Supports, ideals and membership in perfect filtered complexes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Supports of an object in both layers, as JSON.
    Analyze { file: PathBuf, object: String },
    /// Decide whether TARGET lies in the thick tensor ideal generated by GENS.
    Member {
        file: PathBuf,
        target: String,
        #[arg(required = true)]
        gens: Vec<String>,
        /// cross-check the decision against both the witness search and prime separation
        #[arg(long)]
        oracle: bool,
    },
    /// Table of Hom(R(0), R(n)) in the homotopy category.
    CentralRing {
        #[arg(long)]
        ring: BaseRing,
        #[arg(long, allow_hyphen_values = true)]
        from: i64,
        #[arg(long, allow_hyphen_values = true)]
        to: i64,
    },
    /// The two-layer spectrum as DOT.
    Spectrum {
        #[arg(long)]
        ring: BaseRing,
        #[arg(long, default_value_t = 7)]
        primes_up_to: u64,
        /// accepted for symmetry with the other emitters; DOT is the only output
        #[arg(long)]
        dot: bool,
    },
    /// A homotopy-equivalent complex with no invertible differential entries.
    Minimize { file: PathBuf, object: String },
    /// Indecomposable summands of a complex over a field.
    Decompose { file: PathBuf, object: String },
    /// Randomized self-checks.
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        cases: usize,
    },
}

/// Outcome of a command: text for stdout and whether the mathematics checked out.
pub struct Output {
    pub stdout: String,
    pub ok: bool,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output { stdout, ok: true }
    }
}

fn load(path: &PathBuf) -> Result<ObjectFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse { line: 0, message: format!("{}: {e}", path.display()) })?;
    ObjectFile::parse(&text)
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json") + "\n"
}

fn single(name: &str, c: FiltComplex) -> String {
    let mut f = ObjectFile::new(c.ring());
    f.push(name, Item::Complex(c));
    f.to_text()
}

fn member(file: &ObjectFile, target: &str, gens: &[String], oracle: bool) -> Result<Output> {
    let a = file.complex(target)?;
    let gs = gens.iter().map(|g| file.complex(g)).collect::<Result<Vec<_>>>()?;
    let decided = in_ideal(&a, &gs);
    let bounds = SearchBounds::default();
    let witness = (decided || oracle).then(|| closure_search(&a, &gs, &bounds)).flatten();
    let prime = (!decided || oracle).then(|| separate(&a, &gs)).flatten();
    let mut problems = Vec::new();
    if let Some(w) = &witness {
        if let Err(e) = w.verify() {
            problems.push(format!("witness does not verify: {e}"));
        }
        if !decided {
            problems.push("a witness exists for a non-member".into());
        }
    }
    match (decided, &prime) {
        (true, Some(p)) => problems.push(format!("{} separates a member", p.node_name())),
        (false, None) => problems.push("no separating prime for a non-member".into()),
        _ => {}
    }
    let v = json!({
        "ring": file.ring.to_string(),
        "target": target,
        "generators": gens,
        "verdict": if decided { "member" } else { "non-member" },
        "witness": witness.as_ref().map(|w| w.to_json()),
        "cone_steps": witness.as_ref().map(|w| w.cone_steps()),
        "witness_search": if decided && witness.is_none() { json!("exhausted bounds") } else { Value::Null },
        "separating_prime": prime.map(|p| p.node_name()),
        "consistent": problems.is_empty(),
        "problems": problems,
    });
    Ok(Output { stdout: pretty(&v), ok: problems.is_empty() })
}

fn central_table(ring: BaseRing, from: i64, to: i64) -> Result<Output> {
    if from > to {
        return Err(Error::Shape(format!("empty range {from}..{to}")));
    }
    let mut out = format!("# Hom(R(0), R(n)) over {ring}\n{:>4}  {:>4}  {:<8}  generator\n", "n", "rank", "torsion");
    for s in graded_central_ring(ring, from, to) {
        let gen = match s.free_rank {
            0 => "-".to_string(),
            _ if s.degree == 0 => "1".to_string(),
            _ if s.degree == 1 => "β".to_string(),
            _ => format!("β^{}", s.degree),
        };
        let tors = if s.torsion.is_empty() { "-".to_string() } else { s.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(",") };
        out.push_str(&format!("{:>4}  {:>4}  {:<8}  {gen}\n", s.degree, s.free_rank, tors));
    }
    Ok(Output::ok(out))
}

fn decompose(file: &ObjectFile, name: &str) -> Result<Output> {
    let c = file.complex(name)?;
    let d = decompose_field(&c)?;
    let mut f = ObjectFile::new(c.ring());
    for (i, s) in d.summands.iter().enumerate() {
        f.push(&format!("{name}_{i}"), Item::Complex(s.complex(c.ring())));
    }
    f.push(&format!("{name}_sum"), Item::Complex(d.sum.clone()));
    Ok(Output::ok(f.to_text()))
}

pub fn execute(cmd: &Command) -> Result<Output> {
    match cmd {
        Command::Analyze { file, object } => {
            let f = load(file)?;
            Ok(Output::ok(pretty(&support_report(&f.complex(object)?).to_json())))
        }
        Command::Member { file, target, gens, oracle } => member(&load(file)?, target, gens, *oracle),
        Command::CentralRing { ring, from, to } => central_table(*ring, *from, *to),
        Command::Spectrum { ring, primes_up_to, .. } => Ok(Output::ok(emit_spectrum(*ring, *primes_up_to))),
        Command::Minimize { file, object } => {
            let f = load(file)?;
            let red = minimize(&f.complex(object)?);
            Ok(Output::ok(single(object, red.complex)))
        }
        Command::Decompose { file, object } => decompose(&load(file)?, object),
        Command::Verify { suite, seed, cases } => {
            let reports = verify::run(*suite, *seed, *cases);
            let ok = reports.iter().all(|r| r.failure.is_none());
            let stdout = reports.iter().map(|r| format!("{r}\n")).collect();
            Ok(Output { stdout, ok })
        }
    }
}

/// Parse the process arguments, run, and return the exit code: 0 ok, 1 mathematical failure, 2 input error.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(out) => {
            print!("{}", out.stdout);
            if out.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn file(text: &str) -> ObjectFile {
        ObjectFile::parse(text).unwrap()
    }

    #[test]
    fn central_ring_over_z() {
        let out = central_table(BaseRing::Integers, -2, 3).unwrap().stdout;
        let ranks: Vec<&str> = out.lines().skip(2).map(|l| l.split_whitespace().nth(1).unwrap()).collect();
        assert_eq!(ranks, ["0", "0", "1", "1", "1", "1"]);
    }

    #[test]
    fn member_cone_beta_squared() {
        let f = file("ring Q\ncomplex cb2\ndegree -1 [0,1]\ndegree 0 [2,1]\nd -1 [2,0,0,0,1]\nend\ncomplex cb\ndegree -1 [0,1]\ndegree 0 [1,1]\nd -1 [1,0,0,0,1]\nend\n");
        let out = member(&f, "cb2", &["cb".into()], true).unwrap();
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert!(out.ok);
        assert_eq!(v["verdict"], "member");
        assert_eq!(v["cone_steps"], 1);
    }

    #[test]
    fn unit_is_not_in_cone_beta() {
        let f = file("ring Z\nsplit one = [0,1]\ncomplex cb\ndegree -1 [0,1]\ndegree 0 [1,1]\nd -1 [1,0,0,0,1]\nend\n");
        let out = member(&f, "one", &["cb".into()], false).unwrap();
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["verdict"], "non-member");
        assert!(v["separating_prime"].as_str().unwrap().starts_with("pi:"));
    }
}
