//! Flip sequences that strictly decrease the crossing count at every step.

use crate::error::{Error, Result};
use crate::intersect::{count_pair, crossings_of};
use crate::triangulation::{interior_edge_count, Edge, Triangulation};

/// One flip `removed -> added` with the crossing totals around it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FlipStep {
    pub removed: Edge,
    pub added: Edge,
    pub before: usize,
    pub after: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlipSequence {
    pub start: Triangulation,
    pub target: Triangulation,
    pub steps: Vec<FlipStep>,
}

impl FlipSequence {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Every triangulation along the sequence, `start` first.
    pub fn replay(&self) -> Result<Vec<Triangulation>> {
        let mut out = vec![self.start.clone()];
        for (i, step) in self.steps.iter().enumerate() {
            let cur = out.last().expect("non-empty");
            let next = cur
                .flip(step.removed)
                .map_err(|e| Error::InvariantViolation {
                    location: format!("steps[{i}]"),
                    message: e.to_string(),
                })?;
            if !next.contains(step.added) {
                return Err(Error::InvariantViolation {
                    location: format!("steps[{i}]"),
                    message: format!("flipping {} does not produce {}", step.removed, step.added),
                });
            }
            out.push(next);
        }
        Ok(out)
    }

    /// Checks that replay reaches the target, that every recorded total is
    /// exact and strictly decreasing, and that the length is at most the
    /// initial crossing count.
    pub fn check(&self) -> Result<()> {
        let violation =
            |location: String, message: String| Error::InvariantViolation { location, message };
        let states = self.replay()?;
        let last = states.last().expect("non-empty");
        if *last != self.target {
            return Err(violation(
                "steps".into(),
                "replay does not reach the target".into(),
            ));
        }
        let initial = count_pair(&self.start, &self.target)?.total;
        if self.len() > initial {
            return Err(violation(
                "steps".into(),
                format!(
                    "{} steps exceed the initial crossing count {initial}",
                    self.len()
                ),
            ));
        }
        for (i, (step, pair)) in self.steps.iter().zip(states.windows(2)).enumerate() {
            let before = count_pair(&pair[0], &self.target)?.total;
            let after = count_pair(&pair[1], &self.target)?.total;
            if (step.before, step.after) != (before, after) {
                return Err(violation(
                    format!("steps[{i}]"),
                    format!(
                        "recorded totals {} -> {} but actual {before} -> {after}",
                        step.before, step.after
                    ),
                ));
            }
            if after >= before {
                return Err(violation(
                    format!("steps[{i}]"),
                    format!("total does not decrease ({before} -> {after})"),
                ));
            }
        }
        Ok(())
    }
}

/// Picks the canonically smallest maximally crossed edge of `t` whose flip
/// strictly lowers `#(t, target)`.
pub fn find_reducing_flip(t: &Triangulation, target: &Triangulation) -> Result<FlipStep> {
    let report = count_pair(t, target)?;
    if t == target {
        return Err(Error::AlreadyEqual);
    }
    let inst = t.instance();
    for &e in &report.max_edges {
        let Some(quad) = t.quadrilateral_of(e)? else {
            continue;
        };
        if !quad.strictly_convex {
            continue;
        }
        let added = quad.opposite();
        let after = report.total - report.count(e) + crossings_of(inst.segment(added), target);
        if after < report.total {
            return Ok(FlipStep {
                removed: e,
                added,
                before: report.total,
                after,
            });
        }
    }
    Err(Error::LemmaViolation(format!(
        "no maximally crossed edge among {:?} has a reducing flip (total {})",
        report.max_edges, report.total
    )))
}

/// Flips maximally crossed edges of `t1` until it equals `t2`.
pub fn morph(t1: &Triangulation, t2: &Triangulation) -> Result<FlipSequence> {
    t1.ensure_same_instance(t2)?;
    let mut steps = Vec::new();
    let mut cur = t1.clone();
    while cur != *t2 {
        let step = find_reducing_flip(&cur, t2)?;
        cur = cur.flip(step.removed)?;
        steps.push(step);
    }
    Ok(FlipSequence {
        start: t1.clone(),
        target: t2.clone(),
        steps,
    })
}

/// Square of the interior edge count: no two triangulations of the same
/// region cross more often than this.
pub fn intersection_upper_bound(n: usize, n_border: usize, holes: usize) -> u64 {
    interior_edge_count(n, n_border, holes)
        .unsigned_abs()
        .pow(2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_support::{convex_polygon, square, triangulation_with};
    use crate::triangulation::{greedy_triangulate, Priority};

    #[test]
    fn square_single_flip() {
        let inst = square();
        let t = triangulation_with(&inst, &[(0, 2)]);
        let target = triangulation_with(&inst, &[(1, 3)]);
        let step = find_reducing_flip(&t, &target).unwrap();
        assert_eq!(
            (step.removed, step.added, step.after),
            (Edge::new(0, 2), Edge::new(1, 3), 0)
        );
        let seq = morph(&t, &target).unwrap();
        assert_eq!(seq.len(), 1);
        seq.check().unwrap();
        assert_eq!(find_reducing_flip(&t, &t), Err(Error::AlreadyEqual));
        assert!(morph(&t, &t).unwrap().is_empty());
    }

    #[test]
    fn pentagon_fans_choose_a_qualifying_max_edge() {
        let inst = convex_polygon(5);
        let fan0 = triangulation_with(&inst, &[(0, 2), (0, 3)]);
        let fan2 = triangulation_with(&inst, &[(2, 4), (0, 2)]);
        let report = count_pair(&fan0, &fan2).unwrap();
        let step = find_reducing_flip(&fan0, &fan2).unwrap();
        assert!(report.max_edges.contains(&step.removed));
        assert!(step.after < step.before);
        // Every flip of fan0, recounted from scratch.
        for e in fan0.flippable_edges() {
            let after = count_pair(&fan0.flip(e).unwrap(), &fan2).unwrap().total;
            if e == step.removed {
                assert_eq!(after, step.after);
            }
        }
    }

    #[test]
    fn random_pairs_morph_within_crossing_count() {
        for n in [6, 7, 9] {
            let inst = convex_polygon(n);
            let bound = intersection_upper_bound(n, n, 0);
            for s in 0..15 {
                let t1 = greedy_triangulate(&inst, &Priority::Random(s));
                let t2 = greedy_triangulate(&inst, &Priority::Random(s + 100));
                let total = count_pair(&t1, &t2).unwrap().total;
                assert!(total as u64 <= bound);
                let seq = morph(&t1, &t2).unwrap();
                seq.check().unwrap();
                assert!(seq.len() <= total);
                assert_eq!(seq.is_empty(), t1 == t2);
            }
        }
    }

    #[test]
    fn upper_bound_values() {
        assert_eq!(intersection_upper_bound(4, 4, 0), 1);
        assert_eq!(intersection_upper_bound(5, 5, 0), 4);
        assert_eq!(intersection_upper_bound(6, 6, 1), 36);
    }

    #[test]
    fn tampered_sequence_fails_check() {
        let inst = convex_polygon(7);
        let t1 = greedy_triangulate(&inst, &Priority::Random(1));
        let t2 = greedy_triangulate(&inst, &Priority::Random(2));
        let mut seq = morph(&t1, &t2).unwrap();
        assert!(!seq.is_empty());
        seq.steps[0].after += 1;
        assert!(matches!(seq.check(), Err(Error::InvariantViolation { .. })));
        seq.steps.pop();
        assert!(seq.check().is_err());
    }
}
