//! JSON documents for instances, triangulations and flip sequences.
//!
//! Parsing goes through `serde_json`; serialization is hand-written so the
//! output is canonical: fixed key order, one point, polygon, edge or step per
//! line, two-space indent, trailing newline.

use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::morph::{FlipSequence, FlipStep};
use crate::triangulation::{Edge, Instance, Triangulation, VertexId};

pub const INSTANCE_FORMAT: &str = "fliptri-instance";
pub const TRIANGULATION_FORMAT: &str = "fliptri-triangulation";
pub const SEQUENCE_FORMAT: &str = "fliptri-sequence";
pub const VERSION: u64 = 1;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceDoc {
    format: String,
    version: u64,
    points: Vec<[i64; 2]>,
    border: Vec<Vec<VertexId>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TriangulationDoc {
    format: String,
    version: u64,
    instance: Value,
    edges: Vec<[VertexId; 2]>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StepDoc {
    removed: [VertexId; 2],
    added: [VertexId; 2],
    before: usize,
    after: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SequenceDoc {
    format: String,
    version: u64,
    instance: Value,
    start: Vec<[VertexId; 2]>,
    target: Vec<[VertexId; 2]>,
    steps: Vec<StepDoc>,
}

fn parse_json<'a, T: Deserialize<'a>>(doc: &'a [u8]) -> Result<T> {
    serde_json::from_slice(doc).map_err(|e| Error::Parse {
        location: format!("line {} column {}", e.line(), e.column()),
        message: e.to_string(),
    })
}

fn check_header(format: &str, version: u64, expected: &str) -> Result<()> {
    if format != expected {
        return Err(Error::Parse {
            location: "format".into(),
            message: format!("expected \"{expected}\", found \"{format}\""),
        });
    }
    if version != VERSION {
        return Err(Error::Parse {
            location: "version".into(),
            message: format!("unsupported version {version}, expected {VERSION}"),
        });
    }
    Ok(())
}

/// Turns a validation error into an [`Error::InvariantViolation`] located
/// under `prefix`.
fn located(prefix: &str, err: Error) -> Error {
    let message = err.to_string();
    match err {
        Error::InstanceInvalid(v) => {
            let first = v.first().map(ToString::to_string).unwrap_or_default();
            let loc = first.split(':').next().unwrap_or("").to_string();
            Error::InvariantViolation {
                location: if prefix.is_empty() {
                    loc
                } else {
                    format!("{prefix}.{loc}")
                },
                message,
            }
        }
        Error::TriangulationInvalid(_) => Error::InvariantViolation {
            location: format!("{prefix}edges"),
            message,
        },
        other => other,
    }
}

fn build_instance(
    points: Vec<[i64; 2]>,
    border: Vec<Vec<VertexId>>,
    prefix: &str,
) -> Result<Instance> {
    let points = points.into_iter().map(|[x, y]| Point::new(x, y)).collect();
    Instance::new(points, border).map_err(|e| located(prefix, e))
}

pub fn parse_instance(doc: &[u8]) -> Result<Instance> {
    let d: InstanceDoc = parse_json(doc)?;
    check_header(&d.format, d.version, INSTANCE_FORMAT)?;
    build_instance(d.points, d.border, "")
}

/// Resolves an inline instance object or a path string relative to `base`.
fn resolve_instance(value: Value, base: Option<&Path>) -> Result<Instance> {
    match value {
        Value::String(path) => {
            let p = match base {
                Some(dir) => dir.join(&path),
                None => path.clone().into(),
            };
            let bytes = std::fs::read(&p).map_err(|e| Error::Parse {
                location: "instance".into(),
                message: format!("cannot read {}: {e}", p.display()),
            })?;
            parse_instance(&bytes).map_err(|e| match e {
                Error::Parse { location, message } => Error::Parse {
                    location: format!("{} {location}", p.display()),
                    message,
                },
                other => other,
            })
        }
        Value::Object(_) => {
            let d: InstanceDoc = serde_json::from_value(value).map_err(|e| Error::Parse {
                location: "instance".into(),
                message: e.to_string(),
            })?;
            check_header(&d.format, d.version, INSTANCE_FORMAT).map_err(|e| match e {
                Error::Parse { location, message } => Error::Parse {
                    location: format!("instance.{location}"),
                    message,
                },
                other => other,
            })?;
            build_instance(d.points, d.border, "instance")
        }
        _ => Err(Error::Parse {
            location: "instance".into(),
            message: "expected an instance object or a path string".into(),
        }),
    }
}

/// Sorted, duplicate-free `[min, max]` pairs.
fn canonical_edges(pairs: &[[VertexId; 2]], field: &str) -> Result<Vec<Edge>> {
    let mut out: Vec<Edge> = Vec::with_capacity(pairs.len());
    for (i, &[u, v]) in pairs.iter().enumerate() {
        let bad = |message: String| Error::InvariantViolation {
            location: format!("{field}[{i}]"),
            message,
        };
        if u >= v {
            return Err(bad(format!("[{u}, {v}] is not a [min, max] pair")));
        }
        let e = Edge::new(u, v);
        if let Some(&prev) = out.last() {
            if prev == e {
                return Err(bad(format!("duplicate edge {e}")));
            }
            if prev > e {
                return Err(bad(format!("edge {e} out of order after {prev}")));
            }
        }
        out.push(e);
    }
    Ok(out)
}

/// Parses a triangulation without validating it; edges must still be
/// canonical. Path references resolve relative to `base`.
pub fn parse_triangulation_unchecked(doc: &[u8], base: Option<&Path>) -> Result<Triangulation> {
    let d: TriangulationDoc = parse_json(doc)?;
    check_header(&d.format, d.version, TRIANGULATION_FORMAT)?;
    let inst = Arc::new(resolve_instance(d.instance, base)?);
    let edges = canonical_edges(&d.edges, "edges")?;
    Ok(Triangulation::new_unchecked(inst, edges))
}

pub fn parse_triangulation(doc: &[u8], base: Option<&Path>) -> Result<Triangulation> {
    let t = parse_triangulation_unchecked(doc, base)?;
    let v = t.validate();
    if v.is_empty() {
        Ok(t)
    } else {
        Err(located("", Error::TriangulationInvalid(v)))
    }
}

/// Parses a flip sequence and checks that it replays with strictly
/// decreasing totals onto its target.
pub fn parse_sequence(doc: &[u8], base: Option<&Path>) -> Result<FlipSequence> {
    let d: SequenceDoc = parse_json(doc)?;
    check_header(&d.format, d.version, SEQUENCE_FORMAT)?;
    let inst = Arc::new(resolve_instance(d.instance, base)?);
    let build = |pairs: &[[VertexId; 2]], field: &str| -> Result<Triangulation> {
        let t = Triangulation::new_unchecked(inst.clone(), canonical_edges(pairs, field)?);
        let v = t.validate();
        if v.is_empty() {
            Ok(t)
        } else {
            Err(located(
                &format!("{field}."),
                Error::TriangulationInvalid(v),
            ))
        }
    };
    let start = build(&d.start, "start")?;
    let target = build(&d.target, "target")?;
    let mut steps = Vec::with_capacity(d.steps.len());
    for (i, s) in d.steps.iter().enumerate() {
        let edge = |[u, v]: [VertexId; 2], field: &str| {
            Edge::try_new(u, v).ok_or_else(|| Error::InvariantViolation {
                location: format!("steps[{i}].{field}"),
                message: format!("[{u}, {v}] is not an edge"),
            })
        };
        steps.push(FlipStep {
            removed: edge(s.removed, "removed")?,
            added: edge(s.added, "added")?,
            before: s.before,
            after: s.after,
        });
    }
    let seq = FlipSequence {
        start,
        target,
        steps,
    };
    seq.check()?;
    Ok(seq)
}

fn write_instance_body(out: &mut String, inst: &Instance, indent: &str) {
    let _ = writeln!(out, "{indent}\"format\": \"{INSTANCE_FORMAT}\",");
    let _ = writeln!(out, "{indent}\"version\": {VERSION},");
    let _ = writeln!(out, "{indent}\"points\": [");
    let pts = inst.points();
    for (i, p) in pts.iter().enumerate() {
        let sep = if i + 1 < pts.len() { "," } else { "" };
        let _ = writeln!(out, "{indent}  [{}, {}]{sep}", p.x, p.y);
    }
    let _ = writeln!(out, "{indent}],");
    let _ = writeln!(out, "{indent}\"border\": [");
    let border = inst.border();
    for (i, poly) in border.iter().enumerate() {
        let sep = if i + 1 < border.len() { "," } else { "" };
        let ids: Vec<String> = poly.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "{indent}  [{}]{sep}", ids.join(", "));
    }
    let _ = write!(out, "{indent}]");
}

fn write_edges(out: &mut String, key: &str, edges: &[Edge], indent: &str) {
    if edges.is_empty() {
        let _ = write!(out, "{indent}\"{key}\": []");
        return;
    }
    let _ = writeln!(out, "{indent}\"{key}\": [");
    for (i, e) in edges.iter().enumerate() {
        let sep = if i + 1 < edges.len() { "," } else { "" };
        let _ = writeln!(out, "{indent}  [{}, {}]{sep}", e.lo(), e.hi());
    }
    let _ = write!(out, "{indent}]");
}

pub fn serialize_instance(inst: &Instance) -> String {
    let mut out = String::from("{\n");
    write_instance_body(&mut out, inst, "  ");
    out.push_str("\n}\n");
    out
}

fn write_inline_instance(out: &mut String, inst: &Instance) {
    out.push_str("  \"instance\": {\n");
    write_instance_body(out, inst, "    ");
    out.push_str("\n  },\n");
}

/// Serializes with the instance inline.
pub fn serialize_triangulation(t: &Triangulation) -> String {
    let mut out = String::from("{\n");
    let _ = writeln!(out, "  \"format\": \"{TRIANGULATION_FORMAT}\",");
    let _ = writeln!(out, "  \"version\": {VERSION},");
    write_inline_instance(&mut out, t.instance());
    write_edges(&mut out, "edges", t.edges(), "  ");
    out.push_str("\n}\n");
    out
}

pub fn serialize_sequence(seq: &FlipSequence) -> String {
    let mut out = String::from("{\n");
    let _ = writeln!(out, "  \"format\": \"{SEQUENCE_FORMAT}\",");
    let _ = writeln!(out, "  \"version\": {VERSION},");
    write_inline_instance(&mut out, seq.start.instance());
    write_edges(&mut out, "start", seq.start.edges(), "  ");
    out.push_str(",\n");
    write_edges(&mut out, "target", seq.target.edges(), "  ");
    out.push_str(",\n");
    if seq.steps.is_empty() {
        out.push_str("  \"steps\": []\n}\n");
        return out;
    }
    out.push_str("  \"steps\": [\n");
    for (i, s) in seq.steps.iter().enumerate() {
        let sep = if i + 1 < seq.steps.len() { "," } else { "" };
        let _ = writeln!(
            out,
            "    {{\"removed\": [{}, {}], \"added\": [{}, {}], \"before\": {}, \"after\": {}}}{sep}",
            s.removed.lo(),
            s.removed.hi(),
            s.added.lo(),
            s.added.hi(),
            s.before,
            s.after
        );
    }
    out.push_str("  ]\n}\n");
    out
}
