//! Proper-crossing counts between two triangulations of one instance.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::geometry::{orient, properly_intersect, Orientation, Point, Segment};
use crate::triangulation::{Edge, Quadrilateral, Triangulation, VertexId};

/// `#(T1,T2)` together with the per-edge counts `#(e,T2)` for `e` in `T1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingReport {
    pub total: usize,
    pub per_edge: BTreeMap<Edge, usize>,
    /// Edges of `T1` attaining the largest per-edge count, in canonical
    /// order; empty when `total == 0`.
    pub max_edges: Vec<Edge>,
}

impl CrossingReport {
    pub fn max_count(&self) -> usize {
        self.per_edge.values().copied().max().unwrap_or(0)
    }

    pub fn count(&self, e: Edge) -> usize {
        self.per_edge.get(&e).copied().unwrap_or(0)
    }
}

pub(crate) fn crossing_edges(seg: Segment, t: &Triangulation) -> impl Iterator<Item = Edge> + '_ {
    let inst = t.instance();
    t.edges()
        .iter()
        .copied()
        .filter(move |&f| properly_intersect(seg, inst.segment(f)))
}

pub(crate) fn crossings_of(seg: Segment, t: &Triangulation) -> usize {
    crossing_edges(seg, t).count()
}

pub fn count_pair(t1: &Triangulation, t2: &Triangulation) -> Result<CrossingReport> {
    t1.ensure_same_instance(t2)?;
    let inst = t1.instance();
    let per_edge: BTreeMap<Edge, usize> = t1
        .edges()
        .iter()
        .map(|&e| (e, crossings_of(inst.segment(e), t2)))
        .collect();
    let total = per_edge.values().sum();
    let max = per_edge.values().copied().max().unwrap_or(0);
    let max_edges = if total == 0 {
        Vec::new()
    } else {
        per_edge
            .iter()
            .filter(|&(_, &c)| c == max)
            .map(|(&e, _)| e)
            .collect()
    };
    Ok(CrossingReport {
        total,
        per_edge,
        max_edges,
    })
}

/// Number of edges of `t` properly crossing the segment `s` between two
/// instance vertices. `s` itself need not be an edge of `t`.
pub fn segment_crossing_count(s: Edge, t: &Triangulation) -> Result<usize> {
    let inst = t.instance();
    if s.hi() >= inst.n() || !inst.segment_status(s.lo(), s.hi()).is_admissible() {
        return Err(Error::SegmentOutsideRegion(s));
    }
    Ok(crossings_of(inst.segment(s), t))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Corner {
    A,
    B,
    C,
    D,
}

impl Corner {
    const ALL: [Corner; 4] = [Corner::A, Corner::B, Corner::C, Corner::D];

    fn index(self) -> usize {
        self as usize
    }
}

/// Index of the segment joining two distinct corners.
fn pair_index(u: Corner, v: Corner) -> usize {
    let (i, j) = (u.index().min(v.index()), u.index().max(v.index()));
    debug_assert!(i != j);
    // AB AC AD BC BD CD
    match (i, j) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        _ => 5,
    }
}

/// A `T2` edge crossing at least one side or diagonal of the quadrilateral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crosser {
    pub edge: Edge,
    /// Indexed like [`pair_index`]: AB AC AD BC BD CD.
    crossed: [bool; 6],
    /// Corners that are endpoints of the edge.
    ends: [bool; 4],
}

impl Crosser {
    pub fn crosses(&self, u: Corner, v: Corner) -> bool {
        self.crossed[pair_index(u, v)]
    }

    pub fn emerges_from(&self, v: Corner) -> bool {
        self.ends[v.index()]
    }
}

/// One counting identity evaluated on a concrete quadrilateral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identity {
    pub name: String,
    pub lhs: usize,
    pub rhs: usize,
    /// False when the identity's hypothesis does not hold for this quadrilateral.
    pub applies: bool,
}

impl Identity {
    pub fn holds(&self) -> bool {
        !self.applies || self.lhs == self.rhs
    }
}

/// Classified crossings of `T2` with a quadrilateral `abcd` of `T1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassifiedCounts {
    pub quad: Quadrilateral,
    pub crossers: Vec<Crosser>,
    /// `T2` edges joining two corners, as corner pairs.
    corner_edges: [bool; 6],
    points: [Point; 4],
}

use Corner::{A, B, C, D};

impl ClassifiedCounts {
    pub fn vertex(&self, c: Corner) -> VertexId {
        self.quad.corners()[c.index()]
    }

    /// `#(s1, s2, ..., T2)`: edges crossing every listed segment.
    pub fn crossing(&self, segs: &[(Corner, Corner)]) -> usize {
        self.crossers
            .iter()
            .filter(|x| segs.iter().all(|&(u, v)| x.crosses(u, v)))
            .count()
    }

    /// `#_v(s1, ..., T2)`: edges emerging from corner `v` crossing every listed segment.
    pub fn crossing_from(&self, v: Corner, segs: &[(Corner, Corner)]) -> usize {
        self.crossers
            .iter()
            .filter(|x| x.emerges_from(v) && segs.iter().all(|&(p, q)| x.crosses(p, q)))
            .count()
    }

    /// Whether `T2` has the edge joining corners `u` and `v`.
    pub fn has_edge(&self, u: Corner, v: Corner) -> bool {
        self.corner_edges[pair_index(u, v)]
    }

    fn is_reflex(&self, v: Corner) -> bool {
        let i = v.index();
        let p = &self.points;
        orient(p[(i + 3) % 4], p[i], p[(i + 1) % 4]) == Orientation::Clockwise
    }

    /// Every decomposition identity with its hypothesis flag.
    ///
    /// For a strictly convex quadrilateral each crossing edge enters and
    /// leaves through two distinct sides or corners, which gives the general
    /// decompositions of `#(ac)`, `#(bd)` and the four sides. A quadrilateral
    /// that is reflex at `a` (or `c`) has the five-type decomposition of
    /// `#(ac)`. The restricted three-term forms apply when no crossing edge
    /// emerges from a corner, neither diagonal is in `T2` and crossings run
    /// in at most one diagonal direction.
    pub fn identities(&self) -> Vec<Identity> {
        let mut out = Vec::new();
        let convex = self.quad.strictly_convex;
        let ind = |b: bool| usize::from(b);

        let general_diag = |x: Corner, y: Corner, z: Corner, w: Corner| {
            // diagonal xz, other corners y and w, sides xy yz zw wx
            self.crossing(&[(x, y), (w, x)])
                + self.crossing(&[(y, z), (z, w)])
                + self.crossing(&[(x, y), (z, w)])
                + self.crossing(&[(w, x), (y, z)])
                + self.crossing_from(y, &[(w, x)])
                + self.crossing_from(y, &[(z, w)])
                + self.crossing_from(w, &[(x, y)])
                + self.crossing_from(w, &[(y, z)])
                + ind(self.has_edge(y, w))
        };
        out.push(Identity {
            name: "#(ac) general".into(),
            lhs: self.crossing(&[(A, C)]),
            rhs: general_diag(A, B, C, D),
            applies: convex,
        });
        out.push(Identity {
            name: "#(bd) general".into(),
            lhs: self.crossing(&[(B, D)]),
            rhs: general_diag(B, C, D, A),
            applies: convex,
        });
        for (i, &x) in Corner::ALL.iter().enumerate() {
            let y = Corner::ALL[(i + 1) % 4];
            let z = Corner::ALL[(i + 2) % 4];
            let w = Corner::ALL[(i + 3) % 4];
            out.push(Identity {
                name: format!("#({}{}) general", name(x), name(y)),
                lhs: self.crossing(&[(x, y)]),
                rhs: self.crossing(&[(x, y), (y, z)])
                    + self.crossing(&[(x, y), (z, w)])
                    + self.crossing(&[(x, y), (w, x)])
                    + self.crossing_from(z, &[(x, y)])
                    + self.crossing_from(w, &[(x, y)]),
                applies: convex,
            });
        }

        // Five crossing types of ac when a (resp. c) is the reflex corner.
        for (x, y, z, w) in [(A, B, C, D), (C, D, A, B)] {
            out.push(Identity {
                name: format!("#({}{}) reflex at {}", name(x), name(z), name(x)),
                lhs: self.crossing(&[(x, z)]),
                rhs: self.crossing(&[(x, y), (z, w), (x, z)])
                    + self.crossing(&[(y, z), (z, w), (x, z)])
                    + self.crossing(&[(w, x), (y, z), (x, z)])
                    + self.crossing_from(y, &[(z, w), (x, z)])
                    + self.crossing_from(w, &[(y, z), (x, z)]),
                applies: self.is_reflex(x),
            });
        }

        let restricted = self.restricted_hypothesis();
        // Mirror b <-> d when the diagonal crossings run through ab and cd.
        let (b, d, mirrored) = match restricted {
            Some(false) => (B, D, false),
            _ => (D, B, true),
        };
        let applies = restricted.is_some();
        let suffix = if mirrored { " (mirrored)" } else { "" };
        let (a, c) = (A, C);
        let terms = [
            (
                format!("#(ac) restricted{suffix}"),
                self.crossing(&[(a, c)]),
                self.crossing(&[(a, b), (d, a)])
                    + self.crossing(&[(b, c), (c, d)])
                    + self.crossing(&[(d, a), (b, c)]),
            ),
            (
                format!("#({}{}) restricted{suffix}", name(b), name(c)),
                self.crossing(&[(b, c)]),
                self.crossing(&[(a, b), (b, c)])
                    + self.crossing(&[(b, c), (c, d)])
                    + self.crossing(&[(d, a), (b, c)]),
            ),
            (
                format!("#({}{}) restricted{suffix}", name(d), name(a)),
                self.crossing(&[(d, a)]),
                self.crossing(&[(a, b), (d, a)])
                    + self.crossing(&[(d, a), (c, d)])
                    + self.crossing(&[(d, a), (b, c)]),
            ),
            (
                format!("#(bd) restricted{suffix}"),
                self.crossing(&[(b, d)]),
                self.crossing(&[(a, b), (b, c)])
                    + self.crossing(&[(d, a), (c, d)])
                    + self.crossing(&[(d, a), (b, c)]),
            ),
        ];
        out.extend(terms.into_iter().map(|(name, lhs, rhs)| Identity {
            name,
            lhs,
            rhs,
            applies,
        }));
        out
    }

    /// `None` if the restricted forms do not apply; otherwise whether the
    /// labels must be mirrored (`b <-> d`) so that no edge crosses `ab` and `cd`.
    fn restricted_hypothesis(&self) -> Option<bool> {
        if !self.quad.strictly_convex || self.has_edge(A, C) || self.has_edge(B, D) {
            return None;
        }
        if self.crossers.iter().any(|x| x.ends.iter().any(|&e| e)) {
            return None;
        }
        if self.crossing(&[(A, B), (C, D)]) == 0 {
            Some(false)
        } else if self.crossing(&[(D, A), (B, C)]) == 0 {
            Some(true)
        } else {
            None
        }
    }
}

fn name(c: Corner) -> char {
    match c {
        A => 'a',
        B => 'b',
        C => 'c',
        D => 'd',
    }
}

/// Classifies every edge of `t2` crossing the quadrilateral `quad` of `t1`.
pub fn classified_counts(
    t1: &Triangulation,
    quad: &Quadrilateral,
    t2: &Triangulation,
) -> Result<ClassifiedCounts> {
    t1.ensure_same_instance(t2)?;
    if t1.quadrilateral_of(quad.diagonal()).ok().flatten().as_ref() != Some(quad) {
        return Err(Error::QuadNotInTriangulation(quad.diagonal()));
    }
    let inst = t1.instance();
    let corners = quad.corners();
    let seg = |u: usize, v: usize| inst.segment(Edge::new(corners[u], corners[v]));
    let segments = [
        seg(0, 1),
        seg(0, 2),
        seg(0, 3),
        seg(1, 2),
        seg(1, 3),
        seg(2, 3),
    ];
    let mut crossers = Vec::new();
    let mut corner_edges = [false; 6];
    for &f in t2.edges() {
        let fs = inst.segment(f);
        let crossed = segments.map(|s| properly_intersect(s, fs));
        let ends = corners.map(|v| f.has_endpoint(v));
        if let [u, v] = Corner::ALL
            .into_iter()
            .filter(|c| ends[c.index()])
            .collect::<Vec<_>>()[..]
        {
            corner_edges[pair_index(u, v)] = true;
        }
        if crossed.iter().any(|&c| c) {
            crossers.push(Crosser {
                edge: f,
                crossed,
                ends,
            });
        }
    }
    Ok(ClassifiedCounts {
        quad: *quad,
        crossers,
        corner_edges,
        points: corners.map(|v| inst.point(v)),
    })
}
