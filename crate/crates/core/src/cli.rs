//! The `fliptri` command line.
//!
//! Exit codes: 0 on success, 1 on a domain error (invalid input, failed
//! audit, lemma violation), 2 on a usage, I/O or parse error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::formats::{
    parse_instance, parse_sequence, parse_triangulation, parse_triangulation_unchecked,
    serialize_instance, serialize_sequence, serialize_triangulation,
};
use crate::genharness::{generate_instance, generate_pair, GenSpec, Shape};
use crate::intersect::count_pair;
use crate::lemmas::audit_all;
use crate::morph::{intersection_upper_bound, morph};
use crate::oracle::{build_flip_graph, enumerate_triangulations_direct, exact_flip_distance};
use crate::render::{render_sequence, render_svg};
use crate::triangulation::{greedy_triangulate, Instance, Priority, Triangulation};

#[derive(Parser, Debug)]
#[command(
    name = "fliptri",
    version,
    about = "Constrained triangulations and crossing-reducing flip sequences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check an instance and, optionally, a triangulation of it.
    Validate {
        instance: PathBuf,
        triangulation: Option<PathBuf>,
    },
    /// Greedy triangulation of an instance.
    Triangulate {
        instance: PathBuf,
        /// `lex` or `random:SEED`.
        #[arg(long, default_value = "lex", value_parser = parse_priority)]
        priority: Priority,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Total and per-edge crossing counts of the first triangulation against the second.
    Count { t1: PathBuf, t2: PathBuf },
    /// Flip sequence from the first triangulation to the second.
    Morph {
        t1: PathBuf,
        t2: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Exact flip distance by breadth-first search.
    Distance { t1: PathBuf, t2: PathBuf },
    /// Count, and optionally list, all triangulations of an instance.
    Enumerate {
        instance: PathBuf,
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum, default_value_t = Method::Flips)]
        method: Method,
    },
    /// Run every structural audit on a pair.
    Audit { t1: PathBuf, t2: PathBuf },
    /// Draw a triangulation as SVG.
    Render {
        triangulation: Option<PathBuf>,
        #[arg(long)]
        overlay: Option<PathBuf>,
        /// Write one frame per step as `<stem>-NNNN.svg` next to the output.
        #[arg(long, conflicts_with_all = ["triangulation", "overlay"])]
        sequence: Option<PathBuf>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Generate a random instance, or a triangulation pair with `--pair`.
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        points: usize,
        /// `convex`, `simple` or `holes:K`.
        #[arg(long, default_value = "convex", value_parser = parse_shape)]
        shape: Shape,
        #[arg(long, default_value_t = 0)]
        interior: usize,
        /// Write two triangulations `<output>.t1.json` and `<output>.t2.json`.
        #[arg(long, requires = "output")]
        pair: Option<u64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Flips,
    Direct,
}

fn parse_priority(s: &str) -> Result<Priority, String> {
    match s.split_once(':') {
        None if s == "lex" => Ok(Priority::Lexicographic),
        Some(("random", seed)) => seed
            .parse()
            .map(Priority::Random)
            .map_err(|e| format!("bad seed {seed:?}: {e}")),
        _ => Err(format!("expected lex or random:SEED, got {s:?}")),
    }
}

fn parse_shape(s: &str) -> Result<Shape, String> {
    match s.split_once(':') {
        None if s == "convex" => Ok(Shape::ConvexGon),
        None if s == "simple" => Ok(Shape::RandomSimpleBorder),
        Some(("holes", k)) => k
            .parse()
            .map(Shape::WithHoles)
            .map_err(|e| format!("bad hole count {k:?}: {e}")),
        _ => Err(format!("expected convex, simple or holes:K, got {s:?}")),
    }
}

/// A failure with its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::Parse { .. }) {
            2
        } else {
            1
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: 2,
            message: e.to_string(),
        }
    }
}

type CliResult = Result<(), Failure>;

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    std::fs::read(path).map_err(|e| Failure {
        code: 2,
        message: format!("cannot read {}: {e}", path.display()),
    })
}

fn base_dir(path: &Path) -> Option<&Path> {
    path.parent().filter(|p| !p.as_os_str().is_empty())
}

fn load_instance(path: &Path) -> Result<Instance, Failure> {
    Ok(parse_instance(&read(path)?)?)
}

fn load_triangulation(path: &Path) -> Result<Triangulation, Failure> {
    Ok(parse_triangulation(&read(path)?, base_dir(path))?)
}

/// Loads two triangulations and makes them share one instance.
fn load_pair(p1: &Path, p2: &Path) -> Result<(Triangulation, Triangulation), Failure> {
    let t1 = load_triangulation(p1)?;
    let t2 = load_triangulation(p2)?;
    if !t1.same_instance(&t2) {
        return Err(Error::InstanceMismatch.into());
    }
    let t2 = Triangulation::new_unchecked(t1.instance().clone(), t2.edges().iter().copied());
    Ok((t1, t2))
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> CliResult {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn execute(cmd: Command, out: &mut dyn Write) -> CliResult {
    match cmd {
        Command::Validate {
            instance,
            triangulation,
        } => {
            let inst = load_instance(&instance)?;
            writeln!(
                out,
                "instance ok: n={} n_b={} h={}",
                inst.n(),
                inst.n_border(),
                inst.holes()
            )?;
            let pinched = inst.pinched_vertices();
            if !pinched.is_empty() {
                writeln!(out, "note: border polygons share vertices {pinched:?}")?;
            }
            if let Some(path) = triangulation {
                let t = parse_triangulation_unchecked(&read(&path)?, base_dir(&path))?;
                if **t.instance() != inst {
                    return Err(Error::InstanceMismatch.into());
                }
                let violations = t.validate();
                if violations.is_empty() {
                    writeln!(out, "triangulation ok: {} edges", t.edges().len())?;
                } else {
                    for v in &violations {
                        writeln!(out, "violation: {v}")?;
                    }
                    return Err(Failure {
                        code: 1,
                        message: format!("{} violations", violations.len()),
                    });
                }
            }
        }
        Command::Triangulate {
            instance,
            priority,
            output,
        } => {
            let inst = Arc::new(load_instance(&instance)?);
            let t = greedy_triangulate(&inst, &priority);
            emit(out, output.as_deref(), &serialize_triangulation(&t))?;
        }
        Command::Count { t1, t2 } => {
            let (t1, t2) = load_pair(&t1, &t2)?;
            let r = count_pair(&t1, &t2)?;
            writeln!(out, "total={}", r.total)?;
            let max: Vec<String> = r.max_edges.iter().map(ToString::to_string).collect();
            writeln!(out, "max={} edges=[{}]", r.max_count(), max.join(", "))?;
            for (e, c) in r.per_edge.iter().filter(|(_, &c)| c > 0) {
                writeln!(out, "{e} {c}")?;
            }
        }
        Command::Morph { t1, t2, output } => {
            let (t1, t2) = load_pair(&t1, &t2)?;
            let total = count_pair(&t1, &t2)?.total;
            let seq = morph(&t1, &t2)?;
            seq.check()?;
            if let Some(p) = output {
                std::fs::write(p, serialize_sequence(&seq))?;
            }
            let inst = t1.instance();
            let bound = intersection_upper_bound(inst.n(), inst.n_border(), inst.holes());
            writeln!(out, "steps={} crossings={total} bound={bound}", seq.len())?;
        }
        Command::Distance { t1, t2 } => {
            let (t1, t2) = load_pair(&t1, &t2)?;
            writeln!(out, "distance={}", exact_flip_distance(&t1, &t2)?)?;
        }
        Command::Enumerate {
            instance,
            all,
            method,
        } => {
            let inst = Arc::new(load_instance(&instance)?);
            let sets = match method {
                Method::Flips => {
                    build_flip_graph(&greedy_triangulate(&inst, &Priority::Lexicographic))?
                        .edge_sets()
                }
                Method::Direct => enumerate_triangulations_direct(&inst)?,
            };
            writeln!(out, "{} triangulations", sets.len())?;
            if all {
                for edges in &sets {
                    let interior: Vec<String> = edges
                        .iter()
                        .filter(|e| !inst.is_border_edge(**e))
                        .map(ToString::to_string)
                        .collect();
                    writeln!(out, "{}", interior.join(" "))?;
                }
            }
        }
        Command::Audit { t1, t2 } => {
            let (t1, t2) = load_pair(&t1, &t2)?;
            let report = audit_all(&t1, &t2)?;
            writeln!(out, "{report}")?;
            if !report.is_ok() {
                return Err(Failure {
                    code: 1,
                    message: format!("{} checks failed", report.failed()),
                });
            }
        }
        Command::Render {
            triangulation,
            overlay,
            sequence,
            output,
        } => {
            if let Some(path) = sequence {
                let seq = parse_sequence(&read(&path)?, base_dir(&path))?;
                let stem = output.with_extension("");
                for (i, frame) in render_sequence(&seq)?.iter().enumerate() {
                    let mut name = stem.clone().into_os_string();
                    name.push(format!("-{i:04}.svg"));
                    std::fs::write(PathBuf::from(name), frame)?;
                }
            } else {
                let Some(path) = triangulation else {
                    return Err(Failure {
                        code: 2,
                        message: "render needs a triangulation or --sequence".into(),
                    });
                };
                let svg = match overlay {
                    Some(o) => {
                        let (t1, t2) = load_pair(&path, &o)?;
                        render_svg(&t1, Some(&t2))?
                    }
                    None => render_svg(&load_triangulation(&path)?, None)?,
                };
                std::fs::write(output, svg)?;
            }
        }
        Command::Gen {
            seed,
            points,
            shape,
            interior,
            pair,
            output,
        } => {
            let spec = GenSpec {
                seed,
                n_points: points,
                shape,
                interior_points: interior,
            };
            match pair {
                Some(seed2) => {
                    let (t1, t2) = generate_pair(&spec, seed2)?;
                    let stem = output.expect("required by clap");
                    for (suffix, t) in [(".t1.json", &t1), (".t2.json", &t2)] {
                        let mut name = stem.clone().into_os_string();
                        name.push(suffix);
                        std::fs::write(PathBuf::from(name), serialize_triangulation(t))?;
                    }
                }
                None => {
                    let inst = generate_instance(&spec)?;
                    emit(out, output.as_deref(), &serialize_instance(&inst))?;
                }
            }
        }
    }
    Ok(())
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
