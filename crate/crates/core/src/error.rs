use thiserror::Error;

use crate::triangulation::{Edge, InstanceViolation, Violation};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid instance: {}", join(.0))]
    InstanceInvalid(Vec<InstanceViolation>),
    #[error("invalid triangulation: {}", join(.0))]
    TriangulationInvalid(Vec<Violation>),
    #[error("not a triangulation: {0}")]
    NotATriangulation(String),
    #[error("edge {0} is not in the triangulation")]
    EdgeNotInTriangulation(Edge),
    #[error("edge {0} is not flippable (no strictly convex quadrilateral)")]
    NotFlippable(Edge),
    #[error("quadrilateral with diagonal {0} is not part of the triangulation")]
    QuadNotInTriangulation(Edge),
    #[error("segment {0} does not lie in the constrained region")]
    SegmentOutsideRegion(Edge),
    #[error("triangulations belong to different instances")]
    InstanceMismatch,
    #[error("triangulations are already equal")]
    AlreadyEqual,
    #[error("no reducing flip among maximal edges: {0}")]
    LemmaViolation(String),
    #[error("flip graph exceeds {limit} nodes")]
    GraphTooLarge { limit: usize },
    #[error("target triangulation is not reachable by flips from the source")]
    Unreachable,
    #[error("instance has {points} points; exhaustive enumeration supports at most {limit}")]
    InstanceTooLarge { points: usize, limit: usize },
    #[error("infeasible generator spec: {0}")]
    InfeasibleSpec(String),
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("invariant violation at {location}: {message}")]
    InvariantViolation { location: String, message: String },
}

fn join<T: std::fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}
