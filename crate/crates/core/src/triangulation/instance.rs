use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::geometry::{
    classify_in_polygon, point_on_open_segment, properly_intersect, signed_area2, Location, Point,
    Segment,
};

pub type VertexId = usize;

/// Undirected edge between two vertices, stored with the smaller id first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(VertexId, VertexId);

impl Edge {
    /// Panics if `u == v`.
    pub fn new(u: VertexId, v: VertexId) -> Self {
        Self::try_new(u, v).unwrap_or_else(|| panic!("self-loop edge at vertex {u}"))
    }

    pub fn try_new(u: VertexId, v: VertexId) -> Option<Self> {
        match u.cmp(&v) {
            std::cmp::Ordering::Less => Some(Edge(u, v)),
            std::cmp::Ordering::Greater => Some(Edge(v, u)),
            std::cmp::Ordering::Equal => None,
        }
    }

    pub fn lo(&self) -> VertexId {
        self.0
    }

    pub fn hi(&self) -> VertexId {
        self.1
    }

    pub fn has_endpoint(&self, v: VertexId) -> bool {
        self.0 == v || self.1 == v
    }

    /// The endpoint that is not `v`, if `v` is an endpoint.
    pub fn other(&self, v: VertexId) -> Option<VertexId> {
        if self.0 == v {
            Some(self.1)
        } else if self.1 == v {
            Some(self.0)
        } else {
            None
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

/// How the open segment between two instance vertices relates to the region.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SegmentStatus {
    /// The pair is an edge of some border polygon.
    BorderEdge,
    /// The open segment lies in the interior of the region.
    Interior,
    ContainsVertex(VertexId),
    CrossesBorder(Edge),
    /// The open segment lies outside the region (outside `B0` or in a hole).
    Exterior,
}

impl SegmentStatus {
    /// Whether a triangulation may use this pair as an edge.
    pub fn is_admissible(self) -> bool {
        matches!(self, SegmentStatus::BorderEdge | SegmentStatus::Interior)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InstanceViolation {
    TooFewPoints(usize),
    CoordinateOutOfRange {
        vertex: VertexId,
    },
    DuplicatePoint {
        first: VertexId,
        second: VertexId,
    },
    NoBorder,
    PolygonTooSmall {
        polygon: usize,
    },
    VertexOutOfRange {
        polygon: usize,
        position: usize,
        vertex: VertexId,
    },
    RepeatedVertex {
        polygon: usize,
        vertex: VertexId,
    },
    DegeneratePolygon {
        polygon: usize,
    },
    SelfIntersecting {
        polygon: usize,
        first: Edge,
        second: Edge,
    },
    SharedBorderEdge {
        edge: Edge,
        first: usize,
        second: usize,
    },
    BordersCross {
        first: Edge,
        second: Edge,
    },
    PointOnBorderEdge {
        vertex: VertexId,
        edge: Edge,
    },
    PointOutsideOuter {
        vertex: VertexId,
    },
    PointInsideHole {
        vertex: VertexId,
        hole: usize,
    },
    HoleOutsideOuter {
        hole: usize,
        edge: Edge,
    },
    HolesOverlap {
        hole: usize,
        other: usize,
        edge: Edge,
    },
}

impl fmt::Display for InstanceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use InstanceViolation::*;
        match self {
            TooFewPoints(n) => write!(f, "points: need at least 3 points, got {n}"),
            CoordinateOutOfRange { vertex } => {
                write!(f, "points[{vertex}]: coordinate magnitude exceeds 2^30")
            }
            DuplicatePoint { first, second } => {
                write!(f, "points[{second}]: duplicates points[{first}]")
            }
            NoBorder => write!(f, "border: no outer polygon"),
            PolygonTooSmall { polygon } => {
                write!(f, "border[{polygon}]: polygon needs at least 3 vertices")
            }
            VertexOutOfRange {
                polygon,
                position,
                vertex,
            } => write!(
                f,
                "border[{polygon}][{position}]: vertex {vertex} does not exist"
            ),
            RepeatedVertex { polygon, vertex } => {
                write!(
                    f,
                    "border[{polygon}]: vertex {vertex} appears more than once"
                )
            }
            DegeneratePolygon { polygon } => write!(f, "border[{polygon}]: polygon has zero area"),
            SelfIntersecting {
                polygon,
                first,
                second,
            } => write!(
                f,
                "border[{polygon}]: edges {first} and {second} cross (polygon not simple)"
            ),
            SharedBorderEdge {
                edge,
                first,
                second,
            } => write!(
                f,
                "border[{second}]: edge {edge} is already an edge of border[{first}]"
            ),
            BordersCross { first, second } => {
                write!(f, "border: border edges {first} and {second} cross")
            }
            PointOnBorderEdge { vertex, edge } => {
                write!(f, "points[{vertex}]: lies inside border edge {edge}")
            }
            PointOutsideOuter { vertex } => {
                write!(f, "points[{vertex}]: lies outside the outer border")
            }
            PointInsideHole { vertex, hole } => {
                write!(f, "points[{vertex}]: lies inside hole border[{hole}]")
            }
            HoleOutsideOuter { hole, edge } => {
                write!(
                    f,
                    "border[{hole}]: edge {edge} lies outside the outer border"
                )
            }
            HolesOverlap { hole, other, edge } => {
                write!(
                    f,
                    "border[{hole}]: edge {edge} lies inside hole border[{other}]"
                )
            }
        }
    }
}

/// A point set together with its border constraints: `border[0]` is the outer
/// polygon, `border[1..]` are the holes.
#[derive(Clone, Debug)]
pub struct Instance {
    points: Vec<Point>,
    border: Vec<Vec<VertexId>>,
    border_edges: BTreeSet<Edge>,
    /// For each directed border edge `(u, v)`, whether the region lies to its left.
    region_left: BTreeMap<(VertexId, VertexId), bool>,
    /// Border polygons with doubled coordinates, for midpoint tests.
    doubled_border: Vec<Vec<Point>>,
    candidates: OnceLock<Vec<Edge>>,
}

impl PartialEq for Instance {
    fn eq(&self, other: &Self) -> bool {
        self.points == other.points && self.border == other.border
    }
}

impl Eq for Instance {}

impl Instance {
    pub fn new(points: Vec<Point>, border: Vec<Vec<VertexId>>) -> Result<Self> {
        let violations = check_instance(&points, &border);
        if !violations.is_empty() {
            return Err(Error::InstanceInvalid(violations));
        }
        Ok(Self::build(points, border))
    }

    fn build(points: Vec<Point>, border: Vec<Vec<VertexId>>) -> Self {
        let mut border_edges = BTreeSet::new();
        let mut region_left = BTreeMap::new();
        for (k, poly) in border.iter().enumerate() {
            let pts: Vec<Point> = poly.iter().map(|&v| points[v]).collect();
            let ccw = signed_area2(&pts) > 0;
            // Region is inside the outer polygon and outside every hole.
            let left_along = if k == 0 { ccw } else { !ccw };
            for i in 0..poly.len() {
                let (u, v) = (poly[i], poly[(i + 1) % poly.len()]);
                border_edges.insert(Edge::new(u, v));
                region_left.insert((u, v), left_along);
                region_left.insert((v, u), !left_along);
            }
        }
        let doubled_border = border
            .iter()
            .map(|poly| poly.iter().map(|&v| points[v].scaled(2)).collect())
            .collect();
        Instance {
            points,
            border,
            border_edges,
            region_left,
            doubled_border,
            candidates: OnceLock::new(),
        }
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, v: VertexId) -> Point {
        self.points[v]
    }

    pub fn border(&self) -> &[Vec<VertexId>] {
        &self.border
    }

    pub fn border_edges(&self) -> &BTreeSet<Edge> {
        &self.border_edges
    }

    pub fn is_border_edge(&self, e: Edge) -> bool {
        self.border_edges.contains(&e)
    }

    /// Number of points, `n`.
    pub fn n(&self) -> usize {
        self.points.len()
    }

    /// Sum of the border polygon lengths, `n_b`.
    pub fn n_border(&self) -> usize {
        self.border.iter().map(Vec::len).sum()
    }

    /// Number of holes, `h`.
    pub fn holes(&self) -> usize {
        self.border.len() - 1
    }

    /// Border polygons sharing a vertex make the region pinched at that vertex.
    pub fn pinched_vertices(&self) -> Vec<VertexId> {
        let mut seen = BTreeMap::<VertexId, usize>::new();
        for poly in &self.border {
            for &v in poly {
                *seen.entry(v).or_default() += 1;
            }
        }
        seen.into_iter()
            .filter(|&(_, c)| c > 1)
            .map(|(v, _)| v)
            .collect()
    }

    pub fn segment(&self, e: Edge) -> Segment {
        Segment::new(self.points[e.lo()], self.points[e.hi()])
    }

    /// `None` for interior edges, otherwise whether the region lies left of `u -> v`.
    pub(crate) fn border_region_left(&self, u: VertexId, v: VertexId) -> Option<bool> {
        self.region_left.get(&(u, v)).copied()
    }

    pub(crate) fn region_on_left(&self, u: VertexId, v: VertexId) -> bool {
        self.border_region_left(u, v).unwrap_or(true)
    }

    pub fn classify_point(&self, p: Point) -> Location {
        crate::geometry::point_in_region(p, &self.border_points())
    }

    pub fn border_points(&self) -> Vec<Vec<Point>> {
        self.border
            .iter()
            .map(|poly| poly.iter().map(|&v| self.points[v]).collect())
            .collect()
    }

    pub fn segment_status(&self, u: VertexId, v: VertexId) -> SegmentStatus {
        let e = Edge::new(u, v);
        if self.border_edges.contains(&e) {
            return SegmentStatus::BorderEdge;
        }
        let seg = self.segment(e);
        if let Some(w) = (0..self.points.len())
            .find(|&w| w != u && w != v && point_on_open_segment(self.points[w], seg))
        {
            return SegmentStatus::ContainsVertex(w);
        }
        if let Some(&b) = self
            .border_edges
            .iter()
            .find(|b| properly_intersect(seg, self.segment(**b)))
        {
            return SegmentStatus::CrossesBorder(b);
        }
        let mid = self.points[u].add(self.points[v]);
        match crate::geometry::point_in_region(mid, &self.doubled_border) {
            Location::Inside => SegmentStatus::Interior,
            _ => SegmentStatus::Exterior,
        }
    }

    /// All non-border vertex pairs whose open segment lies in the region
    /// interior, in canonical order.
    pub fn candidate_edges(&self) -> &[Edge] {
        self.candidates.get_or_init(|| {
            let n = self.points.len();
            let mut out = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if self.segment_status(u, v) == SegmentStatus::Interior {
                        out.push(Edge::new(u, v));
                    }
                }
            }
            out
        })
    }
}

fn check_instance(points: &[Point], border: &[Vec<VertexId>]) -> Vec<InstanceViolation> {
    use InstanceViolation::*;
    let mut out = Vec::new();
    let n = points.len();
    if n < 3 {
        out.push(TooFewPoints(n));
    }
    for (v, p) in points.iter().enumerate() {
        if !p.in_bounds() {
            out.push(CoordinateOutOfRange { vertex: v });
        }
    }
    let mut first_at = BTreeMap::new();
    for (v, p) in points.iter().enumerate() {
        if let Some(&first) = first_at.get(p) {
            out.push(DuplicatePoint { first, second: v });
        } else {
            first_at.insert(*p, v);
        }
    }
    if border.is_empty() {
        out.push(NoBorder);
    }
    for (k, poly) in border.iter().enumerate() {
        if poly.len() < 3 {
            out.push(PolygonTooSmall { polygon: k });
        }
        for (i, &v) in poly.iter().enumerate() {
            if v >= n {
                out.push(VertexOutOfRange {
                    polygon: k,
                    position: i,
                    vertex: v,
                });
            }
        }
        let mut seen = BTreeSet::new();
        for &v in poly {
            if !seen.insert(v) {
                out.push(RepeatedVertex {
                    polygon: k,
                    vertex: v,
                });
            }
        }
    }
    if !out.is_empty() {
        return out;
    }

    let poly_points: Vec<Vec<Point>> = border
        .iter()
        .map(|poly| poly.iter().map(|&v| points[v]).collect())
        .collect();
    let poly_edges: Vec<Vec<Edge>> = border
        .iter()
        .map(|poly| {
            (0..poly.len())
                .map(|i| Edge::new(poly[i], poly[(i + 1) % poly.len()]))
                .collect()
        })
        .collect();
    let seg = |e: Edge| Segment::new(points[e.lo()], points[e.hi()]);

    for (k, pts) in poly_points.iter().enumerate() {
        if signed_area2(pts) == 0 {
            out.push(DegeneratePolygon { polygon: k });
        }
    }

    let mut owner = BTreeMap::new();
    for (k, edges) in poly_edges.iter().enumerate() {
        for &e in edges {
            if let Some(&first) = owner.get(&e) {
                out.push(SharedBorderEdge {
                    edge: e,
                    first,
                    second: k,
                });
            } else {
                owner.insert(e, k);
            }
        }
    }

    let all: Vec<(usize, Edge)> = poly_edges
        .iter()
        .enumerate()
        .flat_map(|(k, es)| es.iter().map(move |&e| (k, e)))
        .collect();
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            let ((ki, ei), (kj, ej)) = (all[i], all[j]);
            if properly_intersect(seg(ei), seg(ej)) {
                if ki == kj {
                    out.push(SelfIntersecting {
                        polygon: ki,
                        first: ei,
                        second: ej,
                    });
                } else {
                    out.push(BordersCross {
                        first: ei,
                        second: ej,
                    });
                }
            }
        }
    }

    for (v, &p) in points.iter().enumerate() {
        for &(_, e) in &all {
            if point_on_open_segment(p, seg(e)) {
                out.push(PointOnBorderEdge { vertex: v, edge: e });
            }
        }
    }
    if !out.is_empty() {
        return out;
    }

    for (v, &p) in points.iter().enumerate() {
        if classify_in_polygon(p, &poly_points[0]) == Location::Outside {
            out.push(PointOutsideOuter { vertex: v });
        }
        for (k, hole) in poly_points.iter().enumerate().skip(1) {
            if classify_in_polygon(p, hole) == Location::Inside {
                out.push(PointInsideHole { vertex: v, hole: k });
            }
        }
    }

    // Holes may touch other polygons only at vertices; with crossings and
    // vertex-on-edge cases excluded, each hole edge is either inside or
    // outside another polygon, decided by its midpoint.
    let doubled: Vec<Vec<Point>> = poly_points
        .iter()
        .map(|pts| pts.iter().map(|p| p.scaled(2)).collect())
        .collect();
    for (k, edges) in poly_edges.iter().enumerate().skip(1) {
        for &e in edges {
            let mid = points[e.lo()].add(points[e.hi()]);
            if classify_in_polygon(mid, &doubled[0]) == Location::Outside {
                out.push(HoleOutsideOuter { hole: k, edge: e });
            }
            for (other, hole) in doubled.iter().enumerate().skip(1) {
                if other != k && classify_in_polygon(mid, hole) == Location::Inside {
                    out.push(HolesOverlap {
                        hole: k,
                        other,
                        edge: e,
                    });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(coords: &[(i64, i64)]) -> Vec<Point> {
        coords.iter().map(|&(x, y)| Point::new(x, y)).collect()
    }

    fn violations(points: Vec<Point>, border: Vec<Vec<VertexId>>) -> Vec<InstanceViolation> {
        match Instance::new(points, border) {
            Ok(_) => vec![],
            Err(Error::InstanceInvalid(v)) => v,
            Err(e) => panic!("unexpected error {e}"),
        }
    }

    #[test]
    fn square_instance_counts() {
        let inst = Instance::new(
            pts(&[(0, 0), (1, 0), (1, 1), (0, 1)]),
            vec![vec![0, 1, 2, 3]],
        )
        .unwrap();
        assert_eq!((inst.n(), inst.n_border(), inst.holes()), (4, 4, 0));
        assert_eq!(inst.candidate_edges(), &[Edge::new(0, 2), Edge::new(1, 3)]);
        assert!(inst.pinched_vertices().is_empty());
    }

    #[test]
    fn clockwise_outer_border_is_accepted() {
        let inst = Instance::new(
            pts(&[(0, 0), (1, 0), (1, 1), (0, 1)]),
            vec![vec![0, 3, 2, 1]],
        )
        .unwrap();
        assert!(inst.region_on_left(0, 1));
        assert!(!inst.region_on_left(1, 0));
    }

    #[test]
    fn point_in_hole_rejected() {
        let v = violations(
            pts(&[(0, 0), (10, 0), (5, 10), (3, 2), (7, 2), (5, 6), (5, 3)]),
            vec![vec![0, 1, 2], vec![3, 4, 5]],
        );
        assert_eq!(
            v,
            vec![InstanceViolation::PointInsideHole { vertex: 6, hole: 1 }]
        );
    }

    #[test]
    fn point_outside_outer_rejected() {
        let v = violations(pts(&[(0, 0), (4, 0), (0, 4), (5, 5)]), vec![vec![0, 1, 2]]);
        assert_eq!(v, vec![InstanceViolation::PointOutsideOuter { vertex: 3 }]);
    }

    #[test]
    fn bowtie_is_not_simple() {
        let v = violations(
            pts(&[(0, 0), (2, 2), (2, 0), (0, 2)]),
            vec![vec![0, 1, 2, 3]],
        );
        assert!(v
            .iter()
            .any(|x| matches!(x, InstanceViolation::SelfIntersecting { .. })));
    }

    #[test]
    fn point_on_border_edge_rejected() {
        let v = violations(pts(&[(0, 0), (4, 0), (0, 4), (2, 0)]), vec![vec![0, 1, 2]]);
        assert_eq!(
            v,
            vec![InstanceViolation::PointOnBorderEdge {
                vertex: 3,
                edge: Edge::new(0, 1)
            }]
        );
    }

    #[test]
    fn duplicate_and_degenerate_inputs() {
        let v = violations(pts(&[(0, 0), (1, 0), (0, 0)]), vec![vec![0, 1, 2]]);
        assert!(v.contains(&InstanceViolation::DuplicatePoint {
            first: 0,
            second: 2
        }));
        let v = violations(pts(&[(0, 0), (1, 0), (2, 0)]), vec![vec![0, 1, 2]]);
        assert!(v.iter().any(|x| matches!(
            x,
            InstanceViolation::DegeneratePolygon { .. }
                | InstanceViolation::PointOnBorderEdge { .. }
        )));
        let v = violations(pts(&[(0, 0), (1, 0), (0, 1)]), vec![vec![0, 1, 5]]);
        assert!(matches!(
            v[0],
            InstanceViolation::VertexOutOfRange { vertex: 5, .. }
        ));
    }

    #[test]
    fn hole_sharing_a_vertex_is_pinched_but_valid() {
        let inst = Instance::new(
            pts(&[(0, 0), (10, 0), (10, 10), (0, 10), (4, 4), (6, 4)]),
            vec![vec![0, 1, 2, 3], vec![0, 5, 4]],
        )
        .unwrap();
        assert_eq!(inst.pinched_vertices(), vec![0]);
    }

    #[test]
    fn hole_sharing_an_edge_is_rejected() {
        let v = violations(
            pts(&[(0, 0), (10, 0), (10, 10), (0, 10), (5, 5)]),
            vec![vec![0, 1, 2, 3], vec![0, 1, 4]],
        );
        assert!(matches!(v[0], InstanceViolation::SharedBorderEdge { .. }));
    }

    #[test]
    fn segment_statuses() {
        // Non-convex outer border: an L shape.
        let inst = Instance::new(
            pts(&[(0, 0), (4, 0), (4, 2), (2, 2), (2, 4), (0, 4)]),
            vec![vec![0, 1, 2, 3, 4, 5]],
        )
        .unwrap();
        assert_eq!(inst.segment_status(0, 1), SegmentStatus::BorderEdge);
        assert_eq!(inst.segment_status(0, 3), SegmentStatus::Interior);
        assert_eq!(inst.segment_status(2, 4), SegmentStatus::Exterior);
        assert_eq!(
            inst.segment_status(1, 4),
            SegmentStatus::CrossesBorder(Edge::new(2, 3))
        );
        assert_eq!(inst.segment_status(1, 5), SegmentStatus::ContainsVertex(3));
        let inst = Instance::new(
            pts(&[(0, 0), (4, 0), (4, 4), (0, 4), (2, 2)]),
            vec![vec![0, 1, 2, 3]],
        )
        .unwrap();
        assert_eq!(inst.segment_status(0, 2), SegmentStatus::ContainsVertex(4));
    }
}
