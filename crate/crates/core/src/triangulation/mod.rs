//! Constrained triangulations stored as canonical edge sets.
//!
//! A [`Triangulation`] is an immutable sorted edge list over a shared
//! [`Instance`]. Faces and quadrilaterals are derived on demand from the
//! angular order of the edges around each vertex.

mod greedy;
mod instance;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

pub use greedy::{greedy_triangulate, Priority};
pub use instance::{Edge, Instance, InstanceViolation, SegmentStatus, VertexId};

use crate::error::{Error, Result};
use crate::geometry::{
    angular_cmp, orient, point_on_open_segment, properly_intersect, Orientation,
};

/// Number of non-border edges of any triangulation of a region with `n`
/// points, border polygons of total length `n_border` and `holes` holes.
///
/// Follows from `n - e + f = 1 - h` and `3f = 2 e_int + n_b`.
pub fn interior_edge_count(n: usize, n_border: usize, holes: usize) -> i64 {
    3 * n as i64 - 2 * n_border as i64 - 3 + 3 * holes as i64
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    VertexOutOfRange(Edge),
    MissingBorderEdge(Edge),
    Crossing(Edge, Edge),
    VertexOnEdge {
        vertex: VertexId,
        edge: Edge,
    },
    OutsideRegion(Edge),
    /// A vertex pair that could be added without breaking planarity.
    NotMaximal(Edge),
    EdgeCount {
        expected: i64,
        actual: i64,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::VertexOutOfRange(e) => write!(f, "edge {e}: vertex does not exist"),
            Violation::MissingBorderEdge(e) => write!(f, "border edge {e} is missing"),
            Violation::Crossing(e1, e2) => write!(f, "planarity: edges {e1} and {e2} cross"),
            Violation::VertexOnEdge { vertex, edge } => {
                write!(f, "vertex {vertex} lies inside edge {edge}")
            }
            Violation::OutsideRegion(e) => write!(f, "edge {e} leaves the constrained region"),
            Violation::NotMaximal(e) => {
                write!(f, "maximality: {e} could be added without crossings")
            }
            Violation::EdgeCount { expected, actual } => {
                write!(f, "interior edge count is {actual}, expected {expected}")
            }
        }
    }
}

/// A triangular face, counter-clockwise, starting at its smallest vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Face(pub [VertexId; 3]);

impl Face {
    fn canonical(a: VertexId, b: VertexId, c: VertexId) -> Self {
        let m = a.min(b).min(c);
        if m == a {
            Face([a, b, c])
        } else if m == b {
            Face([b, c, a])
        } else {
            Face([c, a, b])
        }
    }
}

/// Two faces `abc` and `acd` sharing the diagonal `ac`; `a b c d` runs
/// counter-clockwise around the boundary and `a < c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Quadrilateral {
    pub a: VertexId,
    pub b: VertexId,
    pub c: VertexId,
    pub d: VertexId,
    pub strictly_convex: bool,
}

impl Quadrilateral {
    pub fn diagonal(&self) -> Edge {
        Edge::new(self.a, self.c)
    }

    pub fn opposite(&self) -> Edge {
        Edge::new(self.b, self.d)
    }

    pub fn corners(&self) -> [VertexId; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn sides(&self) -> [Edge; 4] {
        [
            Edge::new(self.a, self.b),
            Edge::new(self.b, self.c),
            Edge::new(self.c, self.d),
            Edge::new(self.d, self.a),
        ]
    }
}

#[derive(Clone)]
pub struct Triangulation {
    instance: Arc<Instance>,
    edges: Vec<Edge>,
    /// Neighbours of each vertex in counter-clockwise angular order.
    rotation: OnceLock<Vec<Vec<VertexId>>>,
}

impl fmt::Debug for Triangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Triangulation")
            .field("edges", &self.edges)
            .finish()
    }
}

impl PartialEq for Triangulation {
    fn eq(&self, other: &Self) -> bool {
        self.edges == other.edges && self.same_instance(other)
    }
}

impl Eq for Triangulation {}

impl Hash for Triangulation {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.edges.hash(state);
    }
}

impl Triangulation {
    /// Builds and validates a triangulation.
    pub fn new(instance: Arc<Instance>, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let t = Self::new_unchecked(instance, edges);
        let violations = t.validate();
        if violations.is_empty() {
            Ok(t)
        } else {
            Err(Error::TriangulationInvalid(violations))
        }
    }

    /// Builds the canonical edge set without validating it.
    pub fn new_unchecked(instance: Arc<Instance>, edges: impl IntoIterator<Item = Edge>) -> Self {
        let mut edges: Vec<Edge> = edges.into_iter().collect();
        edges.sort_unstable();
        edges.dedup();
        Triangulation {
            instance,
            edges,
            rotation: OnceLock::new(),
        }
    }

    pub fn instance(&self) -> &Arc<Instance> {
        &self.instance
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    pub fn interior_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges
            .iter()
            .copied()
            .filter(|e| !self.instance.is_border_edge(*e))
    }

    pub fn same_instance(&self, other: &Triangulation) -> bool {
        Arc::ptr_eq(&self.instance, &other.instance) || *self.instance == *other.instance
    }

    pub(crate) fn ensure_same_instance(&self, other: &Triangulation) -> Result<()> {
        if self.same_instance(other) {
            Ok(())
        } else {
            Err(Error::InstanceMismatch)
        }
    }

    /// Lists every violated triangulation invariant; empty iff valid.
    pub fn validate(&self) -> Vec<Violation> {
        let inst = &*self.instance;
        let n = inst.n();
        let mut out = Vec::new();
        for &e in &self.edges {
            if e.hi() >= n {
                out.push(Violation::VertexOutOfRange(e));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for &b in inst.border_edges() {
            if !self.contains(b) {
                out.push(Violation::MissingBorderEdge(b));
            }
        }
        for (i, &e1) in self.edges.iter().enumerate() {
            for &e2 in &self.edges[i + 1..] {
                if properly_intersect(inst.segment(e1), inst.segment(e2)) {
                    out.push(Violation::Crossing(e1, e2));
                }
            }
        }
        for &e in &self.edges {
            let seg = inst.segment(e);
            for (v, &p) in inst.points().iter().enumerate() {
                if !e.has_endpoint(v) && point_on_open_segment(p, seg) {
                    out.push(Violation::VertexOnEdge { vertex: v, edge: e });
                }
            }
            if matches!(
                inst.segment_status(e.lo(), e.hi()),
                SegmentStatus::CrossesBorder(_) | SegmentStatus::Exterior
            ) {
                out.push(Violation::OutsideRegion(e));
            }
        }
        for u in 0..n {
            for v in u + 1..n {
                let e = Edge::new(u, v);
                if self.contains(e) || !inst.segment_status(u, v).is_admissible() {
                    continue;
                }
                let seg = inst.segment(e);
                let blocked = self
                    .edges
                    .iter()
                    .any(|&f| properly_intersect(seg, inst.segment(f)));
                if !blocked {
                    out.push(Violation::NotMaximal(e));
                }
            }
        }
        // The count is implied by the checks above; report it only on its own.
        if out.is_empty() {
            let expected = interior_edge_count(n, inst.n_border(), inst.holes());
            let actual = self.interior_edges().count() as i64;
            if expected != actual {
                out.push(Violation::EdgeCount { expected, actual });
            }
        }
        out
    }

    fn rotation(&self) -> &[Vec<VertexId>] {
        self.rotation.get_or_init(|| {
            let inst = &*self.instance;
            let mut rot = vec![Vec::new(); inst.n()];
            for &e in &self.edges {
                rot[e.lo()].push(e.hi());
                rot[e.hi()].push(e.lo());
            }
            for (v, nbrs) in rot.iter_mut().enumerate() {
                let c = inst.point(v);
                nbrs.sort_by(|&p, &q| angular_cmp(c, inst.point(p), inst.point(q)));
            }
            rot
        })
    }

    /// Neighbours of `v` in counter-clockwise order from the positive x axis.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.rotation()[v]
    }

    /// Next vertex of the face boundary walked with the face on the left:
    /// after `u -> v` comes `v -> w`, `w` being the neighbour of `v` just
    /// clockwise from `u`.
    fn next_in_face(&self, u: VertexId, v: VertexId) -> Option<VertexId> {
        let nbrs = &self.rotation()[v];
        let pos = nbrs.iter().position(|&x| x == u)?;
        Some(nbrs[(pos + nbrs.len() - 1) % nbrs.len()])
    }

    /// Third vertex of the region triangle left of `u -> v`.
    pub(crate) fn apex_left(&self, u: VertexId, v: VertexId) -> Option<VertexId> {
        if !self.instance.region_on_left(u, v) {
            return None;
        }
        let w = self.next_in_face(u, v)?;
        if w == u || self.next_in_face(v, w)? != u {
            return None;
        }
        let inst = &self.instance;
        (orient(inst.point(u), inst.point(v), inst.point(w)) == Orientation::CounterClockwise)
            .then_some(w)
    }

    /// All triangular faces inside the region, sorted.
    pub fn faces(&self) -> Result<Vec<Face>> {
        let inst = &*self.instance;
        let mut seen = std::collections::HashSet::new();
        let mut faces = Vec::new();
        for &e in &self.edges {
            for (u, v) in [(e.lo(), e.hi()), (e.hi(), e.lo())] {
                if seen.contains(&(u, v)) {
                    continue;
                }
                let mut cycle = vec![u];
                let (mut p, mut q) = (u, v);
                while seen.insert((p, q)) {
                    let r = self.next_in_face(p, q).ok_or_else(|| {
                        Error::NotATriangulation(format!("broken rotation at {q}"))
                    })?;
                    (p, q) = (q, r);
                    cycle.push(p);
                }
                cycle.pop();
                if !inst.region_on_left(u, v) {
                    continue;
                }
                if cycle.len() != 3 {
                    return Err(Error::NotATriangulation(format!(
                        "face with {} sides through {u}-{v}",
                        cycle.len()
                    )));
                }
                let (a, b, c) = (cycle[0], cycle[1], cycle[2]);
                if orient(inst.point(a), inst.point(b), inst.point(c))
                    != Orientation::CounterClockwise
                {
                    return Err(Error::NotATriangulation(format!(
                        "face {a}-{b}-{c} is not counter-clockwise"
                    )));
                }
                faces.push(Face::canonical(a, b, c));
            }
        }
        faces.sort_unstable();
        Ok(faces)
    }

    /// The quadrilateral around `e`, or `None` for border edges.
    pub fn quadrilateral_of(&self, e: Edge) -> Result<Option<Quadrilateral>> {
        if !self.contains(e) {
            return Err(Error::EdgeNotInTriangulation(e));
        }
        if self.instance.is_border_edge(e) {
            return Ok(None);
        }
        let (a, c) = (e.lo(), e.hi());
        let (Some(d), Some(b)) = (self.apex_left(a, c), self.apex_left(c, a)) else {
            return Ok(None);
        };
        let p = |v| self.instance.point(v);
        let ccw = |x, y, z| orient(p(x), p(y), p(z)) == Orientation::CounterClockwise;
        let strictly_convex = ccw(a, b, c) && ccw(b, c, d) && ccw(c, d, a) && ccw(d, a, b);
        Ok(Some(Quadrilateral {
            a,
            b,
            c,
            d,
            strictly_convex,
        }))
    }

    /// Whether `e` can be flipped.
    pub fn is_flippable(&self, e: Edge) -> bool {
        matches!(self.quadrilateral_of(e), Ok(Some(q)) if q.strictly_convex)
    }

    /// Replaces the diagonal `ac` of a strictly convex quadrilateral by `bd`.
    pub fn flip(&self, e: Edge) -> Result<Triangulation> {
        let quad = self.quadrilateral_of(e)?.ok_or(Error::NotFlippable(e))?;
        if !quad.strictly_convex {
            return Err(Error::NotFlippable(e));
        }
        let replacement = quad.opposite();
        let mut edges = self.edges.clone();
        let pos = edges.binary_search(&e).expect("edge present");
        edges.remove(pos);
        let ins = edges.binary_search(&replacement).unwrap_err();
        edges.insert(ins, replacement);
        Ok(Triangulation {
            instance: self.instance.clone(),
            edges,
            rotation: OnceLock::new(),
        })
    }

    /// Every edge that can currently be flipped, in canonical order.
    pub fn flippable_edges(&self) -> Vec<Edge> {
        self.interior_edges()
            .filter(|&e| self.is_flippable(e))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;

    fn instance(coords: &[(i64, i64)], border: Vec<Vec<VertexId>>) -> Arc<Instance> {
        let pts = coords.iter().map(|&(x, y)| Point::new(x, y)).collect();
        Arc::new(Instance::new(pts, border).unwrap())
    }

    fn square() -> Arc<Instance> {
        instance(&[(0, 0), (1, 0), (1, 1), (0, 1)], vec![vec![0, 1, 2, 3]])
    }

    fn edges(list: &[(usize, usize)]) -> Vec<Edge> {
        list.iter().map(|&(u, v)| Edge::new(u, v)).collect()
    }

    const SQUARE_RING: [(usize, usize); 4] = [(0, 1), (1, 2), (2, 3), (0, 3)];

    #[test]
    fn formula_examples() {
        assert_eq!(interior_edge_count(4, 4, 0), 1);
        assert_eq!(interior_edge_count(5, 5, 0), 2);
        // Triangle with a triangular hole: an annulus of six triangles.
        assert_eq!(interior_edge_count(6, 6, 1), 6);
    }

    #[test]
    fn square_with_diagonal_is_valid() {
        let mut e = edges(&SQUARE_RING);
        e.push(Edge::new(0, 2));
        let t = Triangulation::new(square(), e).unwrap();
        assert_eq!(t.faces().unwrap(), vec![Face([0, 1, 2]), Face([0, 2, 3])]);
    }

    #[test]
    fn both_diagonals_cross() {
        let mut e = edges(&SQUARE_RING);
        e.extend(edges(&[(0, 2), (1, 3)]));
        let t = Triangulation::new_unchecked(square(), e);
        assert_eq!(
            t.validate(),
            vec![Violation::Crossing(Edge::new(0, 2), Edge::new(1, 3))]
        );
    }

    #[test]
    fn missing_border_edge_is_also_a_maximality_gap() {
        let t = Triangulation::new_unchecked(square(), edges(&[(1, 2), (2, 3), (0, 3), (0, 2)]));
        assert_eq!(
            t.validate(),
            vec![
                Violation::MissingBorderEdge(Edge::new(0, 1)),
                Violation::NotMaximal(Edge::new(0, 1)),
            ]
        );
    }

    #[test]
    fn missing_diagonal_is_not_maximal() {
        let t = Triangulation::new_unchecked(square(), edges(&SQUARE_RING));
        assert_eq!(
            t.validate(),
            vec![
                Violation::NotMaximal(Edge::new(0, 2)),
                Violation::NotMaximal(Edge::new(1, 3))
            ]
        );
    }

    #[test]
    fn out_of_range_and_outside_edges_reported() {
        let t = Triangulation::new_unchecked(square(), edges(&[(0, 7)]));
        assert_eq!(
            t.validate(),
            vec![Violation::VertexOutOfRange(Edge::new(0, 7))]
        );
        let l = instance(
            &[(0, 0), (4, 0), (4, 2), (2, 2), (2, 4), (0, 4)],
            vec![vec![0, 1, 2, 3, 4, 5]],
        );
        let t = Triangulation::new_unchecked(
            l,
            edges(&[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5), (2, 4)]),
        );
        assert!(t
            .validate()
            .contains(&Violation::OutsideRegion(Edge::new(2, 4))));
    }

    #[test]
    fn flip_square_diagonal() {
        let mut e = edges(&SQUARE_RING);
        e.push(Edge::new(0, 2));
        let t = Triangulation::new(square(), e).unwrap();
        let q = t.quadrilateral_of(Edge::new(0, 2)).unwrap().unwrap();
        assert_eq!((q.a, q.b, q.c, q.d, q.strictly_convex), (0, 1, 2, 3, true));
        assert_eq!(t.quadrilateral_of(Edge::new(0, 1)).unwrap(), None);
        let f = t.flip(Edge::new(0, 2)).unwrap();
        assert!(f.contains(Edge::new(1, 3)) && !f.contains(Edge::new(0, 2)));
        assert!(f.validate().is_empty());
        assert_eq!(f.flip(Edge::new(1, 3)).unwrap(), t);
        assert_eq!(
            t.flip(Edge::new(1, 3)),
            Err(Error::EdgeNotInTriangulation(Edge::new(1, 3)))
        );
        assert_eq!(
            t.flip(Edge::new(0, 1)),
            Err(Error::NotFlippable(Edge::new(0, 1)))
        );
    }

    #[test]
    fn dart_diagonal_is_not_flippable() {
        // Reflex vertex 3 pushed inside triangle 0-1-2.
        let dart = instance(&[(0, 0), (4, 0), (2, 4), (2, 1)], vec![vec![0, 1, 2, 3]]);
        // Only (1,3) lies inside; it splits the dart into two triangles.
        let t = Triangulation::new(dart, edges(&[(0, 1), (1, 2), (2, 3), (0, 3), (1, 3)])).unwrap();
        let q = t.quadrilateral_of(Edge::new(1, 3)).unwrap().unwrap();
        assert!(!q.strictly_convex);
        assert_eq!(
            t.flip(Edge::new(1, 3)),
            Err(Error::NotFlippable(Edge::new(1, 3)))
        );
    }

    #[test]
    fn collinear_quadrilateral_is_not_strictly_convex() {
        // Vertices 1, 2, 3 collinear: the quadrilateral 0-1-2-3 degenerates to a triangle.
        let inst = instance(&[(0, 0), (2, -1), (2, 0), (2, 1)], vec![vec![0, 1, 2, 3]]);
        let t = Triangulation::new(inst, edges(&[(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)])).unwrap();
        assert!(
            !t.quadrilateral_of(Edge::new(0, 2))
                .unwrap()
                .unwrap()
                .strictly_convex
        );
    }

    #[test]
    fn annulus_faces_satisfy_euler() {
        let inst = instance(
            &[(0, 0), (12, 0), (6, 12), (5, 3), (7, 3), (6, 5)],
            vec![vec![0, 1, 2], vec![3, 4, 5]],
        );
        let t = greedy_triangulate(&inst, &Priority::Lexicographic);
        assert!(t.validate().is_empty());
        let f = t.faces().unwrap();
        let (n, e) = (inst.n() as i64, t.edges().len() as i64);
        assert_eq!(f.len() as i64, e - n);
        assert_eq!(t.interior_edges().count(), 6);
    }
}
