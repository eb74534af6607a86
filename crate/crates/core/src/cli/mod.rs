//! Command-line surface: file parsing, dispatch and JSON output.

mod args;
mod parse;

pub use args::Cli;
pub use parse::{
    parse_cover, parse_edge_list, parse_factorization, parse_graph, parse_structured, GraphFormat,
    MAX_VERTICES,
};

use std::io::Read;
use std::path::PathBuf;
use std::time::Duration;

use serde_json::{json, Value};

use crate::closed_form::{build_complete_cover, katona_s, min_factor_sum, snt_rank, Method};
use crate::cover::{compare_edge_sets, validate_cover, Cover};
use crate::error::{Error, Result};
use crate::factor::{cover_to_factors, pattern_of, support_condition_check, triproduct, IntMatrix};
use crate::graph::Graph;
use crate::solver::{enumerate_optimal_covers, SolveResult, SolverOptions, Status};
use crate::uniqueness::classify_uniqueness;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;
pub const EXIT_INVALID: i32 = 4;

/// Where a document comes from. `-` on the command line reads stdin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Path(PathBuf),
    Stdin,
    Text(String),
}

impl Source {
    pub fn from_arg(arg: &str) -> Self {
        if arg == "-" {
            Source::Stdin
        } else {
            Source::Path(PathBuf::from(arg))
        }
    }

    fn read(&self) -> Result<String> {
        match self {
            Source::Text(t) => Ok(t.clone()),
            Source::Path(p) => std::fs::read_to_string(p)
                .map_err(|e| Error::parse(0, format!("cannot read {}: {e}", p.display()))),
            Source::Stdin => {
                let mut s = String::new();
                std::io::stdin()
                    .read_to_string(&mut s)
                    .map_err(|e| Error::parse(0, format!("cannot read stdin: {e}")))?;
                Ok(s)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    Cover(Source),
    Factors(Source),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verb {
    Rank(Source),
    Cover(Source),
    Enumerate {
        graph: Source,
        max_covers: Option<usize>,
    },
    Factorize(Source),
    Verify {
        graph: Source,
        evidence: Evidence,
    },
    Uniqueness(Source),
    Katona(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Options {
    pub method: Method,
    pub max_order: Option<usize>,
    pub time_limit: Option<Duration>,
    pub threads: usize,
    pub format: GraphFormat,
    pub human: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            method: Method::Auto,
            max_order: None,
            time_limit: None,
            threads: 1,
            format: GraphFormat::Auto,
            human: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Command {
    pub verb: Verb,
    pub options: Options,
}

/// Exit code and the text for standard output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

pub fn cover_json(c: &Cover) -> Value {
    let components: Vec<Vec<usize>> = c.components().iter().map(|k| k.labels()).collect();
    let joins: Vec<[usize; 2]> = c.joins().map(|(a, b)| [a, b]).collect();
    json!({ "order": c.order(), "components": components, "joins": joins })
}

pub fn graph_json(g: &Graph) -> Value {
    let edges: Vec<[usize; 2]> = g.edges().into_iter().map(|(u, v)| [u, v]).collect();
    json!({ "n": g.order(), "edges": edges })
}

fn matrix_json(m: &IntMatrix) -> Value {
    json!(m.to_rows())
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::InvalidArgument(_) => EXIT_PARSE,
        Error::Limit(_) | Error::Incomplete(_) | Error::Overflow(_) => EXIT_LIMIT,
    }
}

fn error_json(e: &Error) -> Value {
    let kind = match e {
        Error::Parse { .. } => "parse",
        Error::InvalidArgument(_) => "invalid_argument",
        Error::Limit(_) => "limit",
        Error::Incomplete(_) => "incomplete",
        Error::Overflow(_) => "overflow",
    };
    let mut v = json!({ "error": { "kind": kind, "message": e.to_string() } });
    if let Error::Parse { line, .. } = e {
        v["error"]["line"] = json!(line);
    }
    v
}

impl Options {
    fn solver(&self) -> SolverOptions {
        SolverOptions {
            max_order: self.max_order,
            time_limit: self.time_limit,
            threads: self.threads.max(1),
            ..Default::default()
        }
    }
}

fn status_code(s: Status) -> i32 {
    if s == Status::Exact {
        EXIT_OK
    } else {
        EXIT_LIMIT
    }
}

fn rank_fields(r: &SolveResult) -> Value {
    let mut v = json!({ "st_plus": r.rank, "status": r.status.as_str() });
    if r.status != Status::Exact {
        v["lower_bound"] = json!(r.lower_bound);
        v["upper_bound"] = json!(r.upper_bound);
    }
    v
}

fn load_graph(src: &Source, opts: &Options) -> Result<Graph> {
    parse_graph(&src.read()?, opts.format)
}

fn solve(src: &Source, opts: &Options) -> Result<(Graph, SolveResult)> {
    let g = load_graph(src, opts)?;
    let r = snt_rank(&g, &opts.solver(), opts.method)?;
    Ok((g, r))
}

fn execute(cmd: &Command) -> Result<(i32, Value)> {
    let opts = &cmd.options;
    match &cmd.verb {
        Verb::Rank(src) => {
            let (_, r) = solve(src, opts)?;
            Ok((status_code(r.status), rank_fields(&r)))
        }
        Verb::Cover(src) => {
            let (_, r) = solve(src, opts)?;
            let mut v = rank_fields(&r);
            v["cover"] = cover_json(&r.certificate);
            Ok((status_code(r.status), v))
        }
        Verb::Factorize(src) => {
            let (_, r) = solve(src, opts)?;
            let (b, c) = cover_to_factors(&r.certificate);
            let mut v = rank_fields(&r);
            v["cover"] = cover_json(&r.certificate);
            v["B"] = matrix_json(&b);
            v["C"] = matrix_json(&c);
            Ok((status_code(r.status), v))
        }
        Verb::Enumerate { graph, max_covers } => {
            let g = load_graph(graph, opts)?;
            let so = SolverOptions {
                max_covers: *max_covers,
                ..opts.solver()
            };
            let e = enumerate_optimal_covers(&g, &so)?;
            let covers: Vec<Value> = e.covers.iter().map(cover_json).collect();
            let v = json!({
                "st_plus": e.rank,
                "complete": e.complete,
                "count": covers.len(),
                "covers": covers,
            });
            Ok((if e.complete { EXIT_OK } else { EXIT_LIMIT }, v))
        }
        Verb::Uniqueness(src) => {
            let g = load_graph(src, opts)?;
            let r = classify_uniqueness(&g, &opts.solver())?;
            let mut v = r.summary_json();
            v["covers"] = json!(r.covers.iter().map(cover_json).collect::<Vec<_>>());
            v["cover_graphs"] = json!(r.cover_graphs.iter().map(graph_json).collect::<Vec<_>>());
            Ok((EXIT_OK, v))
        }
        Verb::Verify { graph, evidence } => {
            let g = load_graph(graph, opts)?;
            match evidence {
                Evidence::Cover(src) => {
                    let c = parse_cover(&src.read()?, g.order())?;
                    let rep = validate_cover(&g, &c)?;
                    let v = json!({
                        "valid": rep.valid,
                        "order": c.order(),
                        "missing": rep.missing,
                        "forbidden": rep.forbidden,
                    });
                    Ok((if rep.valid { EXIT_OK } else { EXIT_INVALID }, v))
                }
                Evidence::Factors(src) => {
                    let (b, c) = parse_factorization(&src.read()?)?;
                    verify_factors(&g, &b, &c)
                }
            }
        }
        Verb::Katona(n) => {
            let s = katona_s(*n)?;
            let (_, witness) = min_factor_sum(*n)?;
            let cover = build_complete_cover(*n)?;
            let v = json!({
                "s": s,
                "witness_factors": witness.factors(),
                "cover_order": cover.order(),
                "cover": cover_json(&cover),
            });
            Ok((EXIT_OK, v))
        }
    }
}

fn verify_factors(g: &Graph, b: &IntMatrix, c: &IntMatrix) -> Result<(i32, Value)> {
    if b.rows() != g.order() || c.rows() != b.cols() || !c.is_square() {
        return Err(Error::arg(format!(
            "B is {}x{} and C is {}x{}; expected {n}xk and kxk",
            b.rows(),
            b.cols(),
            c.rows(),
            c.cols(),
            n = g.order()
        )));
    }
    let a = triproduct(b, c)?;
    let rep = compare_edge_sets(g, &pattern_of(&a)?);
    let support = support_condition_check(&a, b, c)?;
    let valid = rep.valid && c.is_symmetric();
    let v = json!({
        "valid": valid,
        "symmetric_core": c.is_symmetric(),
        "support_condition": support,
        "missing": rep.missing,
        "forbidden": rep.forbidden,
    });
    Ok((if valid { EXIT_OK } else { EXIT_INVALID }, v))
}

fn human(v: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(map) = v {
        for (k, val) in map {
            match val {
                Value::Array(items)
                    if items.iter().all(|x| x.is_array() || x.is_object()) && !items.is_empty() =>
                {
                    out.push_str(&format!("{k}:\n"));
                    for item in items {
                        out.push_str(&format!("  {item}\n"));
                    }
                }
                Value::Object(_) => {
                    out.push_str(&format!("{k}:\n"));
                    for line in human(val).lines() {
                        out.push_str(&format!("  {line}\n"));
                    }
                }
                _ => out.push_str(&format!("{k}: {val}\n")),
            }
        }
    }
    out
}

/// Runs one command. Errors are reported as a JSON document as well.
pub fn run(cmd: &Command) -> Outcome {
    let (code, value) = match execute(cmd) {
        Ok(x) => x,
        Err(e) => (error_code(&e), error_json(&e)),
    };
    let stdout = if cmd.options.human {
        human(&value)
    } else {
        let mut s = serde_json::to_string_pretty(&value).expect("JSON values serialize");
        s.push('\n');
        s
    };
    Outcome { code, stdout }
}
