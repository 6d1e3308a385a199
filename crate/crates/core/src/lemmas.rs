//! Executable audits of the structural facts the flip argument relies on.
//!
//! Every audit returns an [`AuditReport`]. A check whose hypothesis does not
//! hold on the given pair is reported as skipped, never as passed.

use std::fmt;

use crate::error::{Error, Result};
use crate::geometry::{
    classify_in_polygon, compare_crossing_params, point_on_open_segment, properly_intersect,
    Location, Point,
};
use crate::intersect::{classified_counts, count_pair, crossing_edges, ClassifiedCounts, Corner};
use crate::triangulation::{Edge, Quadrilateral, Triangulation};

use Corner::{A, B, C, D};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    /// The property being checked, in words.
    pub property: String,
    pub outcome: Outcome,
    /// Witness for failures, margin or reason otherwise.
    pub witness: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.outcome {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Skipped => "SKIP",
        };
        write!(f, "{tag} {}: {}", self.name, self.property)?;
        if !self.witness.is_empty() {
            write!(f, " [{}]", self.witness)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AuditReport {
    pub checks: Vec<Check>,
}

impl AuditReport {
    fn push(&mut self, name: &str, property: &str, outcome: Outcome, witness: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            property: property.into(),
            outcome,
            witness: witness.into(),
        });
    }

    /// Pass if `failures` is empty, otherwise fail with the first witness.
    fn push_all(&mut self, name: &str, property: &str, failures: Vec<String>, tested: usize) {
        match failures.first() {
            None => self.push(name, property, Outcome::Pass, format!("{tested} cases")),
            Some(w) => self.push(
                name,
                property,
                Outcome::Fail,
                format!("{w} ({} of {tested} cases fail)", failures.len()),
            ),
        }
    }

    fn count(&self, o: Outcome) -> usize {
        self.checks.iter().filter(|c| c.outcome == o).count()
    }

    pub fn passed(&self) -> usize {
        self.count(Outcome::Pass)
    }

    pub fn failed(&self) -> usize {
        self.count(Outcome::Fail)
    }

    pub fn skipped(&self) -> usize {
        self.count(Outcome::Skipped)
    }

    pub fn is_ok(&self) -> bool {
        self.failed() == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.outcome == Outcome::Fail)
    }

    pub fn extend(&mut self, other: AuditReport) {
        self.checks.extend(other.checks);
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        write!(
            f,
            "{} passed, {} failed, {} skipped",
            self.passed(),
            self.failed(),
            self.skipped()
        )
    }
}

fn require_valid(t1: &Triangulation, t2: &Triangulation) -> Result<()> {
    t1.ensure_same_instance(t2)?;
    for t in [t1, t2] {
        let v = t.validate();
        if !v.is_empty() {
            return Err(Error::TriangulationInvalid(v));
        }
    }
    Ok(())
}

fn require_distinct(t1: &Triangulation, t2: &Triangulation) -> Result<()> {
    require_valid(t1, t2)?;
    if t1 == t2 {
        return Err(Error::AlreadyEqual);
    }
    Ok(())
}

/// Quadrilaterals around every interior edge of `t`.
fn quadrilaterals(t: &Triangulation) -> Result<Vec<Quadrilateral>> {
    let mut out = Vec::new();
    for e in t.interior_edges() {
        if let Some(q) = t.quadrilateral_of(e)? {
            out.push(q);
        }
    }
    Ok(out)
}

fn quad_name(q: &Quadrilateral) -> String {
    format!("{}-{}-{}-{}", q.a, q.b, q.c, q.d)
}

/// Structural facts about any two triangulations of one instance.
pub fn audit_pair(t1: &Triangulation, t2: &Triangulation) -> Result<AuditReport> {
    require_valid(t1, t2)?;
    let inst = t1.instance();
    let mut report = AuditReport::default();
    let fwd = count_pair(t1, t2)?;
    let crossed = fwd.total > 0;

    for (label, t) in [("planarity t1", t1), ("planarity t2", t2)] {
        let mut failures = Vec::new();
        for (i, &e) in t.edges().iter().enumerate() {
            for &f in &t.edges()[i + 1..] {
                if properly_intersect(inst.segment(e), inst.segment(f)) {
                    failures.push(format!("{e} crosses {f}"));
                }
            }
        }
        report.push_all(
            label,
            "no two edges of one triangulation cross",
            failures,
            t.edges().len(),
        );
    }

    let quads = quadrilaterals(t1)?;
    if crossed {
        let mut vertex_failures = Vec::new();
        let mut meet_failures = Vec::new();
        let mut tested = 0;
        for q in &quads {
            let corners = q.corners();
            let poly: Vec<Point> = corners.iter().map(|&v| inst.point(v)).collect();
            let crossers = classified_counts(t1, q, t2)?.crossers;
            tested += crossers.len();
            for x in &crossers {
                for v in [x.edge.lo(), x.edge.hi()] {
                    if !corners.contains(&v)
                        && classify_in_polygon(inst.point(v), &poly) != Location::Outside
                    {
                        vertex_failures.push(format!(
                            "endpoint {v} of {} in quadrilateral {}",
                            x.edge,
                            quad_name(q)
                        ));
                    }
                }
            }
            for (i, x) in crossers.iter().enumerate() {
                for y in &crossers[i + 1..] {
                    let (sx, sy) = (inst.segment(x.edge), inst.segment(y.edge));
                    let touch = properly_intersect(sx, sy)
                        || [y.edge.lo(), y.edge.hi()]
                            .iter()
                            .any(|&v| point_on_open_segment(inst.point(v), sx))
                        || [x.edge.lo(), x.edge.hi()]
                            .iter()
                            .any(|&v| point_on_open_segment(inst.point(v), sy));
                    if touch {
                        meet_failures.push(format!(
                            "{} and {} meet inside quadrilateral {}",
                            x.edge,
                            y.edge,
                            quad_name(q)
                        ));
                    }
                }
            }
        }
        report.push_all(
            "no vertex inside quadrilateral",
            "edges of t2 crossing a quadrilateral of t1 end outside it or at its corners",
            vertex_failures,
            tested,
        );
        report.push_all(
            "no meeting inside quadrilateral",
            "edges of t2 crossing a quadrilateral of t1 do not meet inside it",
            meet_failures,
            tested,
        );

        let mut adj_failures = Vec::new();
        let mut tested = 0;
        for &e in t1.edges() {
            if fwd.count(e) == 0 {
                continue;
            }
            for (a, c) in [(e.lo(), e.hi()), (e.hi(), e.lo())] {
                tested += 1;
                let (pa, pc) = (inst.point(a), inst.point(c));
                let nearest = crossing_edges(inst.segment(e), t2)
                    .min_by(|&f, &g| {
                        compare_crossing_params(
                            pa,
                            pc,
                            (inst.point(f.lo()), inst.point(f.hi())),
                            (inst.point(g.lo()), inst.point(g.hi())),
                        )
                    })
                    .expect("crossed edge");
                for v in [nearest.lo(), nearest.hi()] {
                    if !t2.contains(Edge::new(a, v)) {
                        adj_failures.push(format!(
                            "{nearest} is the crossing of {e} nearest {a} but {a}-{v} is not in t2"
                        ));
                    }
                }
            }
        }
        report.push_all(
            "nearest crossing adjacency",
            "for the edge of t2 crossing ac nearest to a, both endpoints are t2-neighbours of a",
            adj_failures,
            tested,
        );
    } else {
        for name in [
            "no vertex inside quadrilateral",
            "no meeting inside quadrilateral",
            "nearest crossing adjacency",
        ] {
            report.push(
                name,
                "needs at least one crossing",
                Outcome::Skipped,
                "no crossings",
            );
        }
    }

    let equal = t1 == t2;
    report.push(
        "equality iff uncrossed",
        "t1 = t2 exactly when the crossing count is zero",
        if equal == (fwd.total == 0) {
            Outcome::Pass
        } else {
            Outcome::Fail
        },
        format!("equal={equal} total={}", fwd.total),
    );

    if crossed {
        let back = count_pair(t2, t1)?;
        let mut failures = Vec::new();
        for (r, other, side) in [(&fwd, t2, "t2"), (&back, t1, "t1")] {
            for (&e, &c) in &r.per_edge {
                if c > 0 && other.contains(e) {
                    failures.push(format!("{e} is crossed {c} times yet lies in {side}"));
                }
            }
        }
        if fwd.total != back.total {
            failures.push(format!(
                "total {} from t1 but {} from t2",
                fwd.total, back.total
            ));
        }
        report.push_all(
            "crossed edges are not shared",
            "an edge crossed by the other triangulation is not one of its edges",
            failures,
            fwd.per_edge.len() + back.per_edge.len(),
        );
    } else {
        report.push(
            "crossed edges are not shared",
            "needs at least one crossing",
            Outcome::Skipped,
            "no crossings",
        );
    }

    let mut failures = Vec::new();
    for &b in inst.border_edges() {
        if !t1.contains(b) || !t2.contains(b) {
            failures.push(format!("border edge {b} missing"));
        } else if fwd.count(b) > 0 {
            failures.push(format!("border edge {b} crossed {} times", fwd.count(b)));
        }
    }
    report.push_all(
        "border edges shared and uncrossed",
        "every border edge is in both triangulations and crosses nothing",
        failures,
        inst.border_edges().len(),
    );
    Ok(report)
}

/// Maximally crossed edges of `t1` with their classified counts, or a
/// failure witness when the edge has no quadrilateral.
fn max_edge_quads(
    t1: &Triangulation,
    t2: &Triangulation,
) -> Result<Vec<(Edge, std::result::Result<ClassifiedCounts, String>)>> {
    let report = count_pair(t1, t2)?;
    let mut out = Vec::new();
    for &e in &report.max_edges {
        let item = if t1.instance().is_border_edge(e) {
            Err(format!("maximal edge {e} is a border edge"))
        } else {
            match t1.quadrilateral_of(e)? {
                Some(q) => Ok(classified_counts(t1, &q, t2)?),
                None => Err(format!("maximal edge {e} has no quadrilateral")),
            }
        };
        out.push((e, item));
    }
    Ok(out)
}

/// Every maximally crossed edge of `t1` is interior and is the diagonal of
/// a strictly convex quadrilateral.
pub fn audit_max_edge_convexity(t1: &Triangulation, t2: &Triangulation) -> Result<AuditReport> {
    require_distinct(t1, t2)?;
    let mut report = AuditReport::default();
    let property = "a maximally crossed edge lies inside a strictly convex quadrilateral";
    for (e, item) in max_edge_quads(t1, t2)? {
        let name = format!("max edge {e} convex");
        match item {
            Ok(c) if c.quad.strictly_convex => {
                report.push(&name, property, Outcome::Pass, quad_name(&c.quad))
            }
            Ok(c) => report.push(
                &name,
                property,
                Outcome::Fail,
                format!(
                    "quadrilateral {} is not strictly convex",
                    quad_name(&c.quad)
                ),
            ),
            Err(w) => report.push(&name, property, Outcome::Fail, w),
        }
    }
    Ok(report)
}

/// For a maximal edge `ac` of quadrilateral `abcd`: if `bd` is in `t2`, or
/// an edge of `t2` from `b` or `d` crosses the quadrilateral, flipping `ac`
/// strictly lowers the crossing count.
pub fn audit_opposite_corner_flips(t1: &Triangulation, t2: &Triangulation) -> Result<AuditReport> {
    require_distinct(t1, t2)?;
    let mut report = AuditReport::default();
    let property =
        "bd in t2 or a t2 edge from b or d crossing the quadrilateral gives #(bd) < #(ac)";
    for (e, item) in max_edge_quads(t1, t2)? {
        let name = format!("max edge {e} opposite-corner flip");
        let c = match item {
            Ok(c) if c.quad.strictly_convex => c,
            _ => {
                report.push(
                    &name,
                    property,
                    Outcome::Skipped,
                    "no strictly convex quadrilateral",
                );
                continue;
            }
        };
        let from_b = c.crossing_from(B, &[(D, A)]) + c.crossing_from(B, &[(C, D)]);
        let from_d = c.crossing_from(D, &[(A, B)]) + c.crossing_from(D, &[(B, C)]);
        let has_bd = c.has_edge(B, D);
        if !has_bd && from_b + from_d == 0 {
            report.push(&name, property, Outcome::Skipped, "hypothesis not met");
            continue;
        }
        let (ac, bd) = (c.crossing(&[(A, C)]), c.crossing(&[(B, D)]));
        let detail = format!(
            "{} bd_in_t2={has_bd} from_b={from_b} from_d={from_d} #(ac)={ac} #(bd)={bd} decrease={}",
            quad_name(&c.quad),
            ac as i64 - bd as i64
        );
        report.push(
            &name,
            property,
            if bd < ac {
                Outcome::Pass
            } else {
                Outcome::Fail
            },
            detail,
        );
    }
    Ok(report)
}

/// For a maximal edge `ac` of quadrilateral `abcd`: no edge of `t2` from
/// `a` or `c` crosses the quadrilateral, and `ac` is not in `t2`.
pub fn audit_diagonal_end_crossers(t1: &Triangulation, t2: &Triangulation) -> Result<AuditReport> {
    require_distinct(t1, t2)?;
    let mut report = AuditReport::default();
    let property = "no t2 edge from a or c crosses the quadrilateral of a maximal edge ac";
    for (e, item) in max_edge_quads(t1, t2)? {
        let name = format!("max edge {e} diagonal-end crossers");
        let c = match item {
            Ok(c) => c,
            Err(w) => {
                report.push(&name, property, Outcome::Skipped, w);
                continue;
            }
        };
        let from_a = c.crossing_from(A, &[(B, C)]) + c.crossing_from(A, &[(C, D)]);
        let from_c = c.crossing_from(C, &[(A, B)]) + c.crossing_from(C, &[(D, A)]);
        let has_ac = c.has_edge(A, C);
        let detail = format!(
            "{} from_a={from_a} from_c={from_c} ac_in_t2={has_ac}",
            quad_name(&c.quad)
        );
        let ok = from_a + from_c == 0 && !has_ac;
        report.push(
            &name,
            property,
            if ok { Outcome::Pass } else { Outcome::Fail },
            detail,
        );
    }
    Ok(report)
}

/// Edges of `t2` crossing both sides at each corner, indexed `a b c d`.
pub fn detect_corner_cutters(
    t1: &Triangulation,
    quad: &Quadrilateral,
    t2: &Triangulation,
) -> Result<[Vec<Edge>; 4]> {
    let c = classified_counts(t1, quad, t2)?;
    let sides = [
        (A, (A, B), (D, A)),
        (B, (A, B), (B, C)),
        (C, (B, C), (C, D)),
        (D, (C, D), (D, A)),
    ];
    Ok(sides.map(|(_, s1, s2)| {
        c.crossers
            .iter()
            .filter(|x| x.crosses(s1.0, s1.1) && x.crosses(s2.0, s2.1))
            .map(|x| x.edge)
            .collect()
    }))
}

/// A maximal-edge quadrilateral whose zigzag `bc, ac, da` (or the mirrored
/// `ab, ac, cd`) and `bd` all have the same crossing count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Zigzag {
    pub quad: Quadrilateral,
    pub mirrored: bool,
    pub count: usize,
}

/// Reports zigzags among maximal-edge quadrilaterals. Diagnostic only.
pub fn zigzag_diagnostic(t1: &Triangulation, t2: &Triangulation) -> Result<Vec<Zigzag>> {
    require_distinct(t1, t2)?;
    let mut out = Vec::new();
    for (_, item) in max_edge_quads(t1, t2)? {
        let Ok(c) = item else { continue };
        let n = |u, v| c.crossing(&[(u, v)]);
        let ac = n(A, C);
        for (mirrored, s1, s2) in [(false, n(B, C), n(D, A)), (true, n(A, B), n(C, D))] {
            if s1 == ac && s2 == ac && n(B, D) == ac {
                out.push(Zigzag {
                    quad: c.quad,
                    mirrored,
                    count: ac,
                });
            }
        }
    }
    Ok(out)
}

/// All audits for a pair; the max-edge audits only when `t1 != t2`.
pub fn audit_all(t1: &Triangulation, t2: &Triangulation) -> Result<AuditReport> {
    let mut report = audit_pair(t1, t2)?;
    if t1 != t2 {
        report.extend(audit_max_edge_convexity(t1, t2)?);
        report.extend(audit_opposite_corner_flips(t1, t2)?);
        report.extend(audit_diagonal_end_crossers(t1, t2)?);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_support::{convex_polygon, square, triangulation_with};
    use crate::triangulation::{greedy_triangulate, Priority};

    #[test]
    fn square_pair() {
        let inst = square();
        let t1 = triangulation_with(&inst, &[(0, 2)]);
        let t2 = triangulation_with(&inst, &[(1, 3)]);
        let r = audit_all(&t1, &t2).unwrap();
        assert!(r.is_ok(), "{r}");
        let flips = audit_opposite_corner_flips(&t1, &t2).unwrap();
        assert_eq!(flips.passed(), 1);
        assert!(flips.checks[0].witness.ends_with("decrease=1"));
        assert_eq!(audit_diagonal_end_crossers(&t1, &t2).unwrap().passed(), 1);
        let q = t1.quadrilateral_of(Edge::new(0, 2)).unwrap().unwrap();
        assert!(detect_corner_cutters(&t1, &q, &t2)
            .unwrap()
            .iter()
            .all(Vec::is_empty));
        assert!(detect_corner_cutters(&t1, &q, &t1)
            .unwrap()
            .iter()
            .all(Vec::is_empty));
    }

    #[test]
    fn identical_pair_skips_crossing_checks() {
        let t = triangulation_with(&square(), &[(0, 2)]);
        let r = audit_pair(&t, &t).unwrap();
        assert!(r.is_ok());
        assert_eq!(r.skipped(), 4);
        assert_eq!(audit_max_edge_convexity(&t, &t), Err(Error::AlreadyEqual));
    }

    #[test]
    fn invalid_input_is_refused() {
        let inst = square();
        let t1 = triangulation_with(&inst, &[(0, 2)]);
        let bad = Triangulation::new_unchecked(
            inst.clone(),
            inst.border_edges()
                .iter()
                .copied()
                .chain([Edge::new(0, 2), Edge::new(1, 3)]),
        );
        assert!(matches!(
            audit_pair(&t1, &bad),
            Err(Error::TriangulationInvalid(_))
        ));
    }

    #[test]
    fn random_octagon_pairs_pass() {
        let inst = convex_polygon(8);
        let ts: Vec<_> = (0..10)
            .map(|s| greedy_triangulate(&inst, &Priority::Random(s)))
            .collect();
        for t1 in &ts {
            for t2 in &ts {
                let r = audit_all(t1, t2).unwrap();
                assert!(r.is_ok(), "{r}");
            }
        }
    }

    #[test]
    fn hexagon_corner_cutter_in_one_list() {
        let inst = convex_polygon(6);
        // Quadrilateral 0-2-4-5 around diagonal 0-4; 1-3 cuts corner 2.
        let t1 = triangulation_with(&inst, &[(0, 2), (2, 4), (0, 4)]);
        let t2 = triangulation_with(&inst, &[(1, 3), (1, 4), (1, 5)]);
        let q = t1.quadrilateral_of(Edge::new(0, 4)).unwrap().unwrap();
        let cutters = detect_corner_cutters(&t1, &q, &t2).unwrap();
        let seg = |e: Edge| inst.segment(e);
        let all: Vec<Edge> = cutters.iter().flatten().copied().collect();
        for &e in &all {
            assert_eq!(cutters.iter().filter(|l| l.contains(&e)).count(), 1);
        }
        for (k, list) in cutters.iter().enumerate() {
            let corners = q.corners();
            let (v, prev, next) = (corners[k], corners[(k + 3) % 4], corners[(k + 1) % 4]);
            for &f in t2.edges() {
                let direct = properly_intersect(seg(f), seg(Edge::new(v, prev)))
                    && properly_intersect(seg(f), seg(Edge::new(v, next)));
                assert_eq!(list.contains(&f), direct);
            }
        }
        assert_eq!(all, vec![Edge::new(1, 3)]);
    }
}
