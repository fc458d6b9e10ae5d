//! Replays an operation script on a structure and on the exact oracle.
//!
//! Script grammar, one op per line, fields separated by whitespace:
//! `ins x y`, `del x y`, `q x y`. Rank structures take a single value for
//! `ins` and `del` (`ins 5`) and query points in the `(rank, value)` plane.
//! Blank lines and lines starting with `#` are ignored.

use std::fmt;

use dynhull::oracle::HullEdges;
use dynhull::{HullEdge, Point, Rational, Scalar};

use crate::subject::{dynamic, Rebuild, Subject};
use crate::{CliError, Structure};

#[derive(Clone, Debug, PartialEq)]
pub enum Op<S> {
    Ins(Point<S>),
    Del(Point<S>),
    Query(Point<S>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScriptOp<S> {
    pub line: usize,
    /// The line as written, whitespace normalized.
    pub text: String,
    pub op: Op<S>,
}

pub fn parse_script<S: Scalar>(text: &str, rank: bool) -> Result<Vec<ScriptOp<S>>, CliError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let fields: Vec<&str> = raw.split_whitespace().collect();
        if fields.is_empty() || fields[0].starts_with('#') {
            continue;
        }
        let err = |message: String| CliError::ScriptParse { line, message };
        let coord = |s: &str| S::parse_coord(s).ok_or_else(|| err(format!("bad coordinate {s:?}")));
        let update_arity = if rank { 1 } else { 2 };
        let arity = if fields[0] == "q" { 2 } else { update_arity };
        if !matches!(fields[0], "ins" | "del" | "q") {
            return Err(err(format!("unknown op {:?}, expected ins, del or q", fields[0])));
        }
        if fields.len() != arity + 1 {
            return Err(err(format!("{} takes {arity} coordinate(s), found {}", fields[0], fields.len() - 1)));
        }
        let p = if arity == 1 {
            Point::new(S::zero(), coord(fields[1])?)
        } else {
            Point::new(coord(fields[1])?, coord(fields[2])?)
        };
        let op = match fields[0] {
            "ins" => Op::Ins(p),
            "del" => Op::Del(p),
            _ => Op::Query(p),
        };
        out.push(ScriptOp { line, text: fields.join(" "), op });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass { ops: usize },
    /// `index` counts ops from 1, skipping comments and blank lines.
    Fail { index: usize, line: usize, op: String, reason: String },
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass { ops } => write!(f, "PASS: {ops} ops agree with the oracle"),
            Verdict::Fail { index, line, op, reason } => write!(f, "FAIL at op {index} (line {line}, `{op}`): {reason}"),
        }
    }
}

fn exact_point<S: Scalar>(p: &Point<S>) -> Point<Rational> {
    p.convert()
}

fn exact_hull<S: Scalar>(h: &HullEdges<S>) -> HullEdges<Rational> {
    let conv = |es: &[HullEdge<S>]| es.iter().map(|e| HullEdge::new(exact_point(&e.left), exact_point(&e.right))).collect();
    HullEdges { upper: conv(&h.upper), lower: conv(&h.lower) }
}

fn hull_difference(got: &HullEdges<Rational>, want: &HullEdges<Rational>) -> String {
    let fmt_edge = |e: &HullEdge<Rational>| {
        format!(
            "({}, {})-({}, {})",
            e.left.x.format_coord(),
            e.left.y.format_coord(),
            e.right.x.format_coord(),
            e.right.y.format_coord()
        )
    };
    for (name, g, w) in [("upper", &got.upper, &want.upper), ("lower", &got.lower, &want.lower)] {
        if let Some(i) = (0..g.len().max(w.len())).find(|&i| g.get(i) != w.get(i)) {
            let show = |e: Option<&HullEdge<Rational>>| e.map_or("nothing".to_string(), fmt_edge);
            return format!("{name} hull edge {i} is {}, oracle has {}", show(g.get(i)), show(w.get(i)));
        }
    }
    "hulls differ".to_string()
}

/// Loads `initial`, then replays `script`. Stops at the first op that is
/// invalid for the oracle or where the structure disagrees with it. The
/// oracle always computes with exact rationals.
pub fn replay<S: Scalar + 'static>(
    structure: Structure,
    initial: &[Point<S>],
    script: &[ScriptOp<S>],
) -> Result<Verdict, CliError> {
    let rank = structure.is_rank();
    let mut subject = dynamic::<S>(structure);
    let mut oracle = Rebuild::<Rational>::new(rank);
    for p in initial {
        if oracle.insert(exact_point(p)).is_ok() {
            subject.insert(p.clone())?;
        }
    }
    for (k, step) in script.iter().enumerate() {
        let fail = |reason: String| Verdict::Fail { index: k + 1, line: step.line, op: step.text.clone(), reason };
        let what = if rank { "value" } else { "point" };
        match &step.op {
            Op::Ins(p) => {
                if oracle.insert(exact_point(p)).is_err() {
                    return Ok(fail(format!("{what} already present")));
                }
                if let Err(e) = subject.insert(p.clone()) {
                    return Ok(fail(format!("structure rejected a valid insertion: {e}")));
                }
            }
            Op::Del(p) => {
                if oracle.delete(&exact_point(p)).is_err() {
                    return Ok(fail(format!("{what} not present")));
                }
                if let Err(e) = subject.delete(p) {
                    return Ok(fail(format!("structure rejected a valid deletion: {e}")));
                }
            }
            Op::Query(q) => {
                let (got, want) = (subject.query(q), oracle.query(&exact_point(q)));
                if got != want {
                    let word = |b: bool| if b { "inside" } else { "outside" };
                    return Ok(fail(format!("structure answered {}, oracle says {}", word(got), word(want))));
                }
                continue;
            }
        }
        let (got, want) = (exact_hull(&subject.hull()), oracle.hull());
        if got != want {
            return Ok(fail(hull_difference(&got, &want)));
        }
    }
    Ok(Verdict::Pass { ops: script.len() })
}
