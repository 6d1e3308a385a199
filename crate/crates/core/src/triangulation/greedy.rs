use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Edge, Instance, Triangulation};
use crate::geometry::properly_intersect;

/// Order in which [`greedy_triangulate`] tries candidate edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Priority {
    /// Canonical `(min id, max id)` order.
    Lexicographic,
    /// Seeded shuffle of the canonical order.
    Random(u64),
    /// Explicit order; pairs not listed are tried afterwards in canonical order.
    Explicit(Vec<Edge>),
}

impl Priority {
    fn order(&self, candidates: &[Edge]) -> Vec<Edge> {
        match self {
            Priority::Lexicographic => candidates.to_vec(),
            Priority::Random(seed) => {
                let mut v = candidates.to_vec();
                v.shuffle(&mut ChaCha8Rng::seed_from_u64(*seed));
                v
            }
            Priority::Explicit(first) => {
                let mut v: Vec<Edge> = first
                    .iter()
                    .copied()
                    .filter(|e| candidates.contains(e))
                    .collect();
                v.extend(candidates.iter().copied().filter(|e| !first.contains(e)));
                v
            }
        }
    }
}

/// Inserts every border edge, then each candidate edge in priority order that
/// crosses nothing accepted so far. The result is maximal, hence a
/// triangulation.
pub fn greedy_triangulate(instance: &Arc<Instance>, priority: &Priority) -> Triangulation {
    let mut accepted: Vec<Edge> = instance.border_edges().iter().copied().collect();
    let border_len = accepted.len();
    for e in priority.order(instance.candidate_edges()) {
        let seg = instance.segment(e);
        // Border edges never cross admissible candidates.
        if accepted[border_len..]
            .iter()
            .all(|&f| !properly_intersect(seg, instance.segment(f)))
        {
            accepted.push(e);
        }
    }
    Triangulation::new_unchecked(instance.clone(), accepted)
}
