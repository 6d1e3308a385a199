use std::sync::Arc;

use crate::geometry::Point;
use crate::triangulation::{Edge, Instance, Triangulation, VertexId};

pub fn instance(coords: &[(i64, i64)], border: Vec<Vec<VertexId>>) -> Arc<Instance> {
    let pts = coords.iter().map(|&(x, y)| Point::new(x, y)).collect();
    Arc::new(Instance::new(pts, border).unwrap())
}

pub fn square() -> Arc<Instance> {
    instance(&[(0, 0), (1, 0), (1, 1), (0, 1)], vec![vec![0, 1, 2, 3]])
}

/// Vertices of a regular `n`-gon of radius 10000, rounded.
pub fn convex_polygon(n: usize) -> Arc<Instance> {
    let coords: Vec<(i64, i64)> = (0..n)
        .map(|k| {
            let a = std::f64::consts::TAU * k as f64 / n as f64;
            (
                (10000.0 * a.cos()).round() as i64,
                (10000.0 * a.sin()).round() as i64,
            )
        })
        .collect();
    instance(&coords, vec![(0..n).collect()])
}

/// The border of `inst` plus the listed interior edges, validated.
pub fn triangulation_with(
    inst: &Arc<Instance>,
    interior: &[(VertexId, VertexId)],
) -> Triangulation {
    let edges = inst
        .border_edges()
        .iter()
        .copied()
        .chain(interior.iter().map(|&(u, v)| Edge::new(u, v)));
    Triangulation::new(inst.clone(), edges).unwrap()
}
