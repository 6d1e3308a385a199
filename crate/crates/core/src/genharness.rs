//! Seeded random instances and triangulation pairs.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{orient, point_in_region, Location, Orientation, Point};
use crate::triangulation::{greedy_triangulate, Instance, Priority, Triangulation, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    /// Regular polygon rounded to integers.
    ConvexGon,
    /// Star-shaped polygon with random angles and radii.
    RandomSimpleBorder,
    /// Star-shaped outer border with this many triangular holes.
    WithHoles(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenSpec {
    pub seed: u64,
    /// Total number of points, border vertices included.
    pub n_points: usize,
    pub shape: Shape,
    /// Points strictly inside the region, not on any border.
    pub interior_points: usize,
}

const RADIUS: f64 = 10_000.0;
const MAX_TRIES: usize = 10_000;

impl GenSpec {
    fn holes(&self) -> usize {
        match self.shape {
            Shape::WithHoles(k) => k,
            _ => 0,
        }
    }

    fn outer_len(&self) -> Result<usize> {
        let used = 3 * self.holes() + self.interior_points;
        match self.n_points.checked_sub(used) {
            Some(m) if m >= 3 => Ok(m),
            _ => Err(Error::InfeasibleSpec(format!(
                "{} points cannot hold a 3-vertex outer border, {} triangular holes and {} interior points",
                self.n_points,
                self.holes(),
                self.interior_points
            ))),
        }
    }
}

fn polar(angle: f64, radius: f64) -> Point {
    Point::new(
        (radius * angle.cos()).round() as i64,
        (radius * angle.sin()).round() as i64,
    )
}

/// Whether `p` is collinear with two of `pts` or equal to one of them.
fn collinear_with_any(p: Point, pts: &[Point]) -> bool {
    pts.iter().enumerate().any(|(i, &q)| {
        q == p
            || pts[i + 1..]
                .iter()
                .any(|&r| orient(q, r, p) == Orientation::Collinear)
    })
}

fn retry<T>(what: &str, mut attempt: impl FnMut() -> Option<T>) -> Result<T> {
    (0..MAX_TRIES)
        .find_map(|_| attempt())
        .ok_or_else(|| Error::InfeasibleSpec(format!("could not place {what}")))
}

pub fn generate_instance(spec: &GenSpec) -> Result<Instance> {
    let m = spec.outer_len()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut points: Vec<Point> = Vec::with_capacity(spec.n_points);
    let tau = std::f64::consts::TAU;

    for i in 0..m {
        let p = match spec.shape {
            Shape::ConvexGon => polar(tau * i as f64 / m as f64, RADIUS),
            _ => retry("an outer border vertex", || {
                let angle = tau * (i as f64 + rng.gen_range(0.1..0.9)) / m as f64;
                let p = polar(angle, rng.gen_range(0.8 * RADIUS..RADIUS));
                (!collinear_with_any(p, &points)).then_some(p)
            })?,
        };
        if collinear_with_any(p, &points) {
            return Err(Error::InfeasibleSpec(format!(
                "{m}-gon has collinear vertices"
            )));
        }
        points.push(p);
    }
    let mut border: Vec<Vec<VertexId>> = vec![(0..m).collect()];

    for _ in 0..spec.holes() {
        let hole = retry("a hole", || {
            let center = polar(rng.gen_range(0.0..tau), rng.gen_range(0.0..0.55 * RADIUS));
            let size = rng.gen_range(0.05 * RADIUS..0.12 * RADIUS);
            let turn = rng.gen_range(0.0..tau);
            let tri: Vec<Point> = (0..3)
                .map(|k| {
                    let d = polar(turn + tau * k as f64 / 3.0 + rng.gen_range(-0.3..0.3), size);
                    Point::new(center.x + d.x, center.y + d.y)
                })
                .collect();
            let mut all = points.clone();
            for &p in &tri {
                if collinear_with_any(p, &all) {
                    return None;
                }
                all.push(p);
            }
            let n = points.len();
            let mut b = border.clone();
            b.push(vec![n, n + 1, n + 2]);
            Instance::new(all.clone(), b.clone()).ok().map(|_| (all, b))
        })?;
        (points, border) = hole;
    }

    let polys: Vec<Vec<Point>> = border
        .iter()
        .map(|poly| poly.iter().map(|&v| points[v]).collect())
        .collect();
    for _ in 0..spec.interior_points {
        let p = retry("an interior point", || {
            let p = Point::new(
                rng.gen_range(-RADIUS as i64..=RADIUS as i64),
                rng.gen_range(-RADIUS as i64..=RADIUS as i64),
            );
            (point_in_region(p, &polys) == Location::Inside && !collinear_with_any(p, &points))
                .then_some(p)
        })?;
        points.push(p);
    }
    Instance::new(points, border)
}

/// Two greedy triangulations of the generated instance under seeded random
/// priorities derived from `seed2`.
pub fn generate_pair(spec: &GenSpec, seed2: u64) -> Result<(Triangulation, Triangulation)> {
    let inst = Arc::new(generate_instance(spec)?);
    let mut rng = ChaCha8Rng::seed_from_u64(seed2);
    let (s1, s2): (u64, u64) = (rng.gen(), rng.gen());
    Ok((
        greedy_triangulate(&inst, &Priority::Random(s1)),
        greedy_triangulate(&inst, &Priority::Random(s2)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formats::serialize_instance;
    use crate::intersect::count_pair;

    fn spec(seed: u64, n_points: usize, shape: Shape, interior_points: usize) -> GenSpec {
        GenSpec {
            seed,
            n_points,
            shape,
            interior_points,
        }
    }

    #[test]
    fn convex_hexagon() {
        let inst = generate_instance(&spec(0, 6, Shape::ConvexGon, 0)).unwrap();
        assert_eq!((inst.n_border(), inst.holes()), (6, 0));
        assert_eq!(inst.point(0), Point::new(10_000, 0));
    }

    #[test]
    fn one_hole_seven_points() {
        for seed in 0..20 {
            let inst = generate_instance(&spec(seed, 7, Shape::WithHoles(1), 1)).unwrap();
            assert_eq!((inst.n(), inst.holes(), inst.border()[1].len()), (7, 1, 3));
        }
    }

    #[test]
    fn deterministic_bytes() {
        for shape in [
            Shape::ConvexGon,
            Shape::RandomSimpleBorder,
            Shape::WithHoles(2),
        ] {
            let s = spec(42, 12, shape, 2);
            let a = serialize_instance(&generate_instance(&s).unwrap());
            let b = serialize_instance(&generate_instance(&s).unwrap());
            assert_eq!(a, b);
        }
    }

    #[test]
    fn infeasible_specs() {
        for s in [
            spec(0, 5, Shape::WithHoles(1), 0),
            spec(0, 4, Shape::ConvexGon, 2),
        ] {
            assert!(matches!(
                generate_instance(&s),
                Err(Error::InfeasibleSpec(_))
            ));
        }
    }

    #[test]
    fn pairs_are_valid_and_equality_matches_zero_crossings() {
        for seed in 0..30 {
            for s in [
                spec(seed, 5, Shape::ConvexGon, 0),
                spec(seed, 9, Shape::RandomSimpleBorder, 2),
                spec(seed, 11, Shape::WithHoles(2), 1),
            ] {
                let (t1, t2) = generate_pair(&s, seed + 7).unwrap();
                assert!(t1.validate().is_empty() && t2.validate().is_empty());
                assert_eq!(t1 == t2, count_pair(&t1, &t2).unwrap().total == 0);
            }
        }
    }
}
