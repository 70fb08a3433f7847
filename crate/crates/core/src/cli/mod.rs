//! Command-line front end. Every command prints one line of key-sorted JSON.

pub mod parse;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cremona::{
    classify_db_squarefree_cremona_with, classify_squarefree_cremona_with, degree2_cremona_shape,
    duality_check, is_cremona_set, is_doubly_stochastic, ClassifyOptions, CremonaClass,
};
use crate::decide::{decide_with, degree2_graph, DecideOptions};
use crate::error::{Error, Result};
use crate::exactla::rank;
use crate::monomial::MonomialSet;
use crate::polymatroid::{has_linear_quotients_revlex, is_polymatroidal, revlex_order};
use crate::termmat::{
    audit_unit_minors, difference_matrix_and_digraph, linear_syzygy_matrix, specialize_ones,
    taylor_matrix, term_rank,
};
pub use parse::{parse_input, parse_monomials, Origin, ParsedInput};

/// Environment variable that turns on cross-checking in `decide`.
pub const VERIFY_ENV: &str = "MONOCREM_VERIFY";

#[derive(Debug, Parser)]
#[command(
    name = "monocrem",
    version,
    about = "Birationality and Cremona tools for monomial maps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct SetInput {
    /// Monomials, e.g. "x1*x2, x1*x3, x2*x3".
    set: Option<String>,
    /// Read sets from a file, one per line.
    #[arg(long, conflicts_with = "set")]
    file: Option<PathBuf>,
    /// Number of variables; defaults to the largest index used.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide birationality onto the Veronese subring.
    Decide(SetInput),
    /// Cremona test, with the degree-2 shape when it applies.
    Cremona(SetInput),
    /// Classify squarefree Cremona sets up to permutation.
    Classify {
        #[arg(long)]
        n: usize,
        #[arg(long, required_unless_present = "db")]
        d: Option<usize>,
        /// Doubly stochastic sets of every degree.
        #[arg(long, conflicts_with = "d")]
        db: bool,
        #[arg(long)]
        jobs: Option<usize>,
        /// Search degrees that the gcd obstruction rules out.
        #[arg(long)]
        no_prune: bool,
    },
    /// Dual complement and the duality identity.
    Dual(SetInput),
    /// Linear syzygy matrix and the difference matrix.
    Syzygies {
        #[command(flatten)]
        input: SetInput,
        /// Add the Taylor matrix and its small-minor audit.
        #[arg(long)]
        taylor: bool,
        /// Largest minor size audited with --taylor.
        #[arg(long, default_value_t = 3)]
        audit_size: usize,
    },
    /// Exchange property and linear quotients.
    Polymatroid(SetInput),
    /// Degree-2 graph facts.
    Graph(SetInput),
}

/// Runs the command line and returns the exit code and standard output.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => (0, e.to_string()),
                _ => (2, render(&usage_error(&e.to_string()))),
            };
        }
    };
    let verify = std::env::var(VERIFY_ENV).is_ok_and(|v| v == "1");
    let (ok, value) = execute(cli.command, verify);
    (if ok { 0 } else { 1 }, render(&value))
}

fn render(value: &Value) -> String {
    let mut s = serde_json::to_string(value).expect("JSON values serialize");
    s.push('\n');
    s
}

fn usage_error(message: &str) -> Value {
    let first = message
        .lines()
        .next()
        .unwrap_or("")
        .trim_start_matches("error: ");
    json!({ "code": "UsageError", "message": first })
}

/// JSON error object `{code, message, position?}`.
pub fn error_json(e: &Error) -> Value {
    let mut v = json!({ "code": e.code(), "message": e.to_string() });
    if let Some(p) = e.position() {
        v["position"] = json!(p);
    }
    v
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

/// Returns whether no error object was produced, and the output.
fn execute(command: Command, verify: bool) -> (bool, Value) {
    match command {
        Command::Decide(input) => per_set(&input, |f| {
            let report = decide_with(f, &DecideOptions { verify })?;
            Ok(to_value(&report))
        }),
        Command::Cremona(input) => per_set(&input, cremona_report),
        Command::Classify {
            n,
            d,
            db,
            jobs,
            no_prune,
        } => {
            let options = ClassifyOptions {
                jobs,
                prune_db_obstruction: !no_prune,
            };
            let result = if db {
                classify_db_squarefree_cremona_with(n, &options)
            } else {
                classify_squarefree_cremona_with(n, d.expect("clap requires d"), &options)
            };
            match result {
                Ok(classes) => (
                    true,
                    classify_report(n, if db { None } else { d }, &classes),
                ),
                Err(e) => (false, error_json(&e)),
            }
        }
        Command::Dual(input) => per_set(&input, dual_report),
        Command::Syzygies {
            input,
            taylor,
            audit_size,
        } => per_set(&input, |f| syzygy_report(f, taylor, audit_size)),
        Command::Polymatroid(input) => per_set(&input, |f| {
            let order: Vec<String> = revlex_order(f).iter().map(|m| m.to_string()).collect();
            Ok(json!({
                "input": to_value(f),
                "linear_quotients_revlex": has_linear_quotients_revlex(f),
                "polymatroidal": is_polymatroidal(f),
                "revlex_order": order,
            }))
        }),
        Command::Graph(input) => per_set(&input, graph_report),
    }
}

/// Applies `report` to the inline set, or to each line of `--file` (giving a
/// JSON array with error objects in place of failed lines).
fn per_set(input: &SetInput, report: impl Fn(&MonomialSet) -> Result<Value>) -> (bool, Value) {
    let one = |text: &str, origin: Origin| -> Result<Value> {
        let parsed = parse_input(text, input.n, origin)?;
        report(&parsed.set)
    };
    match (&input.set, &input.file) {
        (Some(text), None) => match one(text, Origin::Inline) {
            Ok(v) => (true, v),
            Err(e) => (false, error_json(&e)),
        },
        (None, Some(path)) => {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => {
                    return (
                        false,
                        error_json(&Error::Io(format!("{}: {}", path.display(), e))),
                    )
                }
            };
            let mut ok = true;
            let results: Vec<Value> = text
                .lines()
                .filter(|line| !line.trim().is_empty())
                .map(|line| match one(line, Origin::File) {
                    Ok(v) => v,
                    Err(e) => {
                        ok = false;
                        error_json(&e)
                    }
                })
                .collect();
            (ok, Value::Array(results))
        }
        _ => (
            false,
            json!({ "code": "UsageError", "message": "give a set or --file" }),
        ),
    }
}

fn cremona_report(f: &MonomialSet) -> Result<Value> {
    let cremona = is_cremona_set(f)?;
    let square = f.q() == f.n();
    let shape = if f.d() == 2 && square && f.is_cohesive() {
        Some(degree2_cremona_shape(f)?)
    } else {
        None
    };
    let db = if square {
        Some(is_doubly_stochastic(f)?)
    } else {
        None
    };
    Ok(json!({
        "degree2_shape": shape,
        "doubly_stochastic": db,
        "input": to_value(f),
        "is_cremona": cremona,
    }))
}

fn classify_report(n: usize, d: Option<usize>, classes: &[CremonaClass]) -> Value {
    json!({
        "classes": to_value(&classes),
        "count": classes.len(),
        "d": d,
        "db": d.is_none(),
        "n": n,
    })
}

fn dual_report(f: &MonomialSet) -> Result<Value> {
    let dual = f.dual_complement()?;
    let duality = if f.q() == f.n() && (f.d() as usize) < f.n() {
        Some(duality_check(f)?)
    } else {
        None
    };
    Ok(json!({
        "dual": to_value(&dual),
        "duality": to_value(&duality),
        "input": to_value(f),
    }))
}

fn syzygy_report(f: &MonomialSet, taylor: bool, audit_size: usize) -> Result<Value> {
    let ls = linear_syzygy_matrix(f);
    let s = specialize_ones(&ls);
    let (m, components) = difference_matrix_and_digraph(f);
    let mut v = json!({
        "components": components,
        "input": to_value(f),
        "linear_syzygy_matrix": ls.to_string_rows(),
        "m_matrix": to_value(&m),
        "rank_a": rank(&f.log_matrix()),
        "rank_ls": term_rank(&ls)?,
        "rank_m": rank(&m),
        "s_matrix": to_value(&s),
    });
    if taylor {
        let t = taylor_matrix(f);
        v["taylor"] = json!({
            "audit": to_value(&audit_unit_minors(&t, audit_size)?),
            "matrix": t.to_string_rows(),
            "rank": term_rank(&t)?,
        });
    }
    Ok(v)
}

fn graph_report(f: &MonomialSet) -> Result<Value> {
    let facts = degree2_graph(f)?;
    let shape = if f.q() == f.n() && f.is_normalized() && f.is_cohesive() {
        Some(degree2_cremona_shape(f)?)
    } else {
        None
    };
    let mut v = to_value(&facts);
    v["input"] = to_value(f);
    v["shape"] = to_value(&shape);
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_json(args: &[&str]) -> (i32, Value) {
        let (code, out) = run(std::iter::once("monocrem").chain(args.iter().copied()));
        (code, serde_json::from_str(&out).unwrap())
    }

    #[test]
    fn decide_cohesion_example() {
        let (code, v) = run_json(&["decide", "x1x2,x3x4"]);
        assert_eq!(code, 0);
        assert_eq!(v["verdict"], "NotBirational");
        assert_eq!(v["criterion"], "Cohesion");
    }

    #[test]
    fn dual_example() {
        let (code, v) = run_json(&["dual", "x1x2,x1x3,x2x3"]);
        assert_eq!(code, 0);
        assert_eq!(v["duality"]["identity_holds"], true);
        assert_eq!(v["dual"]["monomials"], json!(["x3", "x2", "x1"]));
    }

    #[test]
    fn errors_are_json() {
        let (code, v) = run_json(&["decide", "x1*y2"]);
        assert_eq!(code, 1);
        assert_eq!(v["code"], "SyntaxError");
        assert_eq!(v["position"], 3);
        let (code, v) = run_json(&["classify", "--n", "5"]);
        assert_eq!(code, 2);
        assert_eq!(v["code"], "UsageError");
        let (code, v) = run_json(&["decide", "x1, x4", "--n", "3"]);
        assert_eq!(code, 1);
        assert_eq!(v["code"], "IndexOutOfRange");
    }

    #[test]
    fn keys_are_sorted() {
        let (_, out) = run(["monocrem", "graph", "x1x2,x2x3,x3x1"]);
        let v: Value = serde_json::from_str(&out).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert!(out.find("\"bipartite\"").unwrap() < out.find("\"connected\"").unwrap());
    }
}
