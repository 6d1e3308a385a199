//! Exact integer predicates.
//!
//! Every predicate is evaluated with 128-bit intermediates, so results are
//! exact for any coordinates whose magnitude stays within [`MAX_COORD`]
//! (and, internally, for small integer multiples of such points).

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Largest admissible coordinate magnitude for instance points.
pub const MAX_COORD: i64 = 1 << 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    pub fn in_bounds(&self) -> bool {
        self.x.abs() <= MAX_COORD && self.y.abs() <= MAX_COORD
    }

    pub(crate) fn scaled(self, k: i64) -> Point {
        Point::new(self.x * k, self.y * k)
    }

    pub(crate) fn add(self, other: Point) -> Point {
        Point::new(self.x + other.x, self.y + other.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    /// Panics if the endpoints coincide.
    pub fn new(a: Point, b: Point) -> Self {
        assert!(a != b, "degenerate segment at {a}");
        Segment { a, b }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Clockwise,
    Collinear,
    CounterClockwise,
}

impl Orientation {
    pub fn sign(self) -> i32 {
        match self {
            Orientation::Clockwise => -1,
            Orientation::Collinear => 0,
            Orientation::CounterClockwise => 1,
        }
    }

    fn from_det(det: i128) -> Self {
        match det.cmp(&0) {
            Ordering::Less => Orientation::Clockwise,
            Ordering::Equal => Orientation::Collinear,
            Ordering::Greater => Orientation::CounterClockwise,
        }
    }
}

/// Twice the signed area of the triangle `pqr`.
pub(crate) fn orient_det(p: Point, q: Point, r: Point) -> i128 {
    let (qx, qy) = ((q.x - p.x) as i128, (q.y - p.y) as i128);
    let (rx, ry) = ((r.x - p.x) as i128, (r.y - p.y) as i128);
    qx * ry - qy * rx
}

pub fn orient(p: Point, q: Point, r: Point) -> Orientation {
    Orientation::from_det(orient_det(p, q, r))
}

/// True iff the open segments share exactly one point.
///
/// Touching at an endpoint, T-junctions and collinear overlaps are all
/// reported as `false`.
pub fn properly_intersect(s1: Segment, s2: Segment) -> bool {
    let o1 = orient(s1.a, s1.b, s2.a).sign();
    let o2 = orient(s1.a, s1.b, s2.b).sign();
    let o3 = orient(s2.a, s2.b, s1.a).sign();
    let o4 = orient(s2.a, s2.b, s1.b).sign();
    o1 * o2 < 0 && o3 * o4 < 0
}

pub fn point_on_open_segment(p: Point, s: Segment) -> bool {
    if orient(s.a, s.b, p) != Orientation::Collinear || p == s.a || p == s.b {
        return false;
    }
    let dot = (p.x - s.a.x) as i128 * (s.b.x - s.a.x) as i128
        + (p.y - s.a.y) as i128 * (s.b.y - s.a.y) as i128;
    let len2 = (s.b.x - s.a.x) as i128 * (s.b.x - s.a.x) as i128
        + (s.b.y - s.a.y) as i128 * (s.b.y - s.a.y) as i128;
    dot > 0 && dot < len2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Location {
    Inside,
    OnBoundary,
    Outside,
}

/// Classifies `p` against a simple polygon given by its vertex cycle (either
/// orientation).
pub fn classify_in_polygon(p: Point, polygon: &[Point]) -> Location {
    let n = polygon.len();
    let mut inside = false;
    for i in 0..n {
        let a = polygon[i];
        let b = polygon[(i + 1) % n];
        if p == a || point_on_open_segment(p, Segment { a, b }) {
            return Location::OnBoundary;
        }
        // Ray towards +x, shifted infinitesimally upwards: vertices at the
        // ray's height count as lying below it.
        if (a.y > p.y) != (b.y > p.y) {
            let side = orient(a, b, p);
            let crosses = if b.y > a.y {
                side == Orientation::CounterClockwise
            } else {
                side == Orientation::Clockwise
            };
            if crosses {
                inside = !inside;
            }
        }
    }
    if inside {
        Location::Inside
    } else {
        Location::Outside
    }
}

/// Classifies `p` against the region bounded by `border[0]` minus the open
/// interiors of the holes `border[1..]`.
pub fn point_in_region(p: Point, border: &[Vec<Point>]) -> Location {
    let Some((outer, holes)) = border.split_first() else {
        return Location::Outside;
    };
    match classify_in_polygon(p, outer) {
        Location::Outside => return Location::Outside,
        Location::OnBoundary => return Location::OnBoundary,
        Location::Inside => {}
    }
    for hole in holes {
        match classify_in_polygon(p, hole) {
            Location::Inside => return Location::Outside,
            Location::OnBoundary => return Location::OnBoundary,
            Location::Outside => {}
        }
    }
    Location::Inside
}

/// Twice the signed area of a polygon.
pub(crate) fn signed_area2(polygon: &[Point]) -> i128 {
    let n = polygon.len();
    (0..n)
        .map(|i| {
            let a = polygon[i];
            let b = polygon[(i + 1) % n];
            a.x as i128 * b.y as i128 - b.x as i128 * a.y as i128
        })
        .sum()
}

/// Compares, along the segment `a -> c`, where it is crossed by the lines
/// through `g1 h1` and `g2 h2`. Both lines must properly cross `ac`.
pub(crate) fn compare_crossing_params(
    a: Point,
    c: Point,
    (g1, h1): (Point, Point),
    (g2, h2): (Point, Point),
) -> Ordering {
    // t = orient(g,h,a) / (orient(g,h,a) - orient(g,h,c)), both denominators
    // normalised to be positive.
    let frac = |g: Point, h: Point| {
        let oa = orient_det(g, h, a);
        let oc = orient_det(g, h, c);
        let (num, den) = (oa, oa - oc);
        if den < 0 {
            (-num, -den)
        } else {
            (num, den)
        }
    };
    let (n1, d1) = frac(g1, h1);
    let (n2, d2) = frac(g2, h2);
    // A proper crossing gives 0 < num < den <= 2^64, so unsigned products fit.
    let mag = |v: i128| v.unsigned_abs();
    (mag(n1) * mag(d2)).cmp(&(mag(n2) * mag(d1)))
}

/// Angular comparator around `center`: directions sorted counter-clockwise
/// starting from the positive x axis.
pub(crate) fn angular_cmp(center: Point, p: Point, q: Point) -> Ordering {
    let half = |v: Point| {
        let (dx, dy) = (v.x - center.x, v.y - center.y);
        if dy > 0 || (dy == 0 && dx > 0) {
            0
        } else {
            1
        }
    };
    half(p)
        .cmp(&half(q))
        .then_with(|| 0.cmp(&orient_det(center, p, q)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg(ax: i64, ay: i64, bx: i64, by: i64) -> Segment {
        Segment::new(Point::new(ax, ay), Point::new(bx, by))
    }

    #[test]
    fn orient_examples() {
        let o = Point::new(0, 0);
        assert_eq!(orient(o, Point::new(1, 0), Point::new(0, 1)).sign(), 1);
        assert_eq!(orient(o, Point::new(1, 1), Point::new(2, 2)).sign(), 0);
        assert_eq!(orient(o, Point::new(0, 1), Point::new(1, 0)).sign(), -1);
    }

    #[test]
    fn proper_intersection_examples() {
        assert!(properly_intersect(seg(0, 0, 2, 2), seg(0, 2, 2, 0)));
        assert!(!properly_intersect(seg(0, 0, 1, 0), seg(1, 0, 2, 1)));
        assert!(!properly_intersect(seg(0, 0, 2, 0), seg(0, 0, 2, 0)));
    }

    #[test]
    fn t_junction_and_overlap_are_not_proper() {
        assert!(!properly_intersect(seg(0, 0, 2, 0), seg(1, 0, 1, 3)));
        assert!(!properly_intersect(seg(0, 0, 2, 0), seg(1, 0, 3, 0)));
        assert!(!properly_intersect(seg(0, 0, 1, 1), seg(2, 2, 3, 0)));
    }

    #[test]
    fn open_segment_membership() {
        let s = seg(0, 0, 2, 2);
        assert!(point_on_open_segment(Point::new(1, 1), s));
        assert!(!point_on_open_segment(Point::new(0, 0), s));
        assert!(!point_on_open_segment(Point::new(1, 2), s));
        assert!(!point_on_open_segment(Point::new(3, 3), s));
    }

    #[test]
    fn region_classification() {
        let square = vec![
            Point::new(0, 0),
            Point::new(4, 0),
            Point::new(4, 4),
            Point::new(0, 4),
        ];
        let hole = vec![Point::new(1, 1), Point::new(3, 1), Point::new(2, 3)];
        let border = vec![square.clone(), hole];
        assert_eq!(
            point_in_region(Point::new(2, 2), std::slice::from_ref(&square)),
            Location::Inside
        );
        assert_eq!(
            point_in_region(Point::new(0, 0), &border),
            Location::OnBoundary
        );
        assert_eq!(
            point_in_region(Point::new(2, 2), &border),
            Location::Outside
        );
        assert_eq!(
            point_in_region(Point::new(3, 1), &border),
            Location::OnBoundary
        );
        assert_eq!(point_in_region(Point::new(1, 3), &border), Location::Inside);
        assert_eq!(
            point_in_region(Point::new(5, 2), &border),
            Location::Outside
        );
        assert_eq!(
            point_in_region(Point::new(2, 0), &border),
            Location::OnBoundary
        );
    }

    #[test]
    fn ray_through_vertices_is_counted_once() {
        // Ray from (1,2) passes exactly through the vertices (4,2) and (6,2).
        let poly = vec![
            Point::new(0, 0),
            Point::new(4, 2),
            Point::new(6, 0),
            Point::new(8, 4),
            Point::new(6, 2),
            Point::new(0, 4),
        ];
        assert_eq!(
            classify_in_polygon(Point::new(1, 2), &poly),
            Location::Inside
        );
        assert_eq!(
            classify_in_polygon(Point::new(5, 2), &poly),
            Location::Inside
        );
        assert_eq!(
            classify_in_polygon(Point::new(7, 2), &poly),
            Location::OnBoundary
        );
        assert_eq!(
            classify_in_polygon(Point::new(9, 2), &poly),
            Location::Outside
        );
        assert_eq!(
            classify_in_polygon(Point::new(3, 1), &poly),
            Location::Outside
        );
        assert_eq!(
            classify_in_polygon(Point::new(-1, 2), &poly),
            Location::Outside
        );
    }

    #[test]
    fn predicates_exact_at_coordinate_bound() {
        let m = MAX_COORD;
        let a = Point::new(-m, -m);
        let b = Point::new(m, m);
        assert_eq!(orient(a, b, Point::new(m - 1, m)).sign(), 1);
        assert_eq!(orient(a, b, Point::new(m, m - 1)).sign(), -1);
        assert_eq!(orient(a, b, Point::new(0, 0)).sign(), 0);
        assert!(properly_intersect(
            Segment::new(a, b),
            Segment::new(Point::new(-m, m), Point::new(m, -m))
        ));
        // Nearly parallel segments one unit apart never touch.
        assert!(!properly_intersect(
            Segment::new(Point::new(-m, -m), Point::new(m, m - 1)),
            Segment::new(Point::new(-m, -m + 1), Point::new(m, m))
        ));
        assert!(point_on_open_segment(Point::new(0, 0), Segment::new(a, b)));
    }

    #[test]
    fn angular_order_is_ccw_from_positive_x() {
        let c = Point::new(0, 0);
        let mut dirs = vec![
            Point::new(0, -1),
            Point::new(-1, 0),
            Point::new(1, 1),
            Point::new(1, 0),
            Point::new(0, 1),
            Point::new(1, -1),
        ];
        dirs.sort_by(|p, q| angular_cmp(c, *p, *q));
        assert_eq!(
            dirs,
            vec![
                Point::new(1, 0),
                Point::new(1, 1),
                Point::new(0, 1),
                Point::new(-1, 0),
                Point::new(0, -1),
                Point::new(1, -1),
            ]
        );
    }
}
