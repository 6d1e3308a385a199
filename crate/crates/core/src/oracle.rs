//! Exhaustive ground truth for small instances: the flip graph, exact flip
//! distances, and a flip-free enumeration of all triangulations.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::properly_intersect;
use crate::triangulation::{Edge, Instance, Triangulation};

pub const MAX_GRAPH_NODES: usize = 1_000_000;
pub const MAX_DIRECT_POINTS: usize = 12;

/// All triangulations reachable from a seed, with one edge per legal flip.
#[derive(Clone, Debug)]
pub struct FlipGraph {
    nodes: Vec<Triangulation>,
    index: HashMap<Vec<Edge>, usize>,
    /// `(flipped edge, neighbour)` for each node.
    adjacency: Vec<Vec<(Edge, usize)>>,
}

impl FlipGraph {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Triangulation] {
        &self.nodes
    }

    pub fn neighbors(&self, i: usize) -> &[(Edge, usize)] {
        &self.adjacency[i]
    }

    pub fn index_of(&self, t: &Triangulation) -> Option<usize> {
        self.index.get(t.edges()).copied()
    }

    /// Number of undirected flip-graph edges.
    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_symmetric(&self) -> bool {
        self.adjacency.iter().enumerate().all(|(i, nbrs)| {
            nbrs.iter()
                .all(|&(_, j)| self.adjacency[j].iter().any(|&(_, k)| k == i))
        })
    }

    /// BFS distances from node `i`; `None` for unreachable nodes.
    pub fn distances_from(&self, i: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.len()];
        dist[i] = Some(0);
        let mut queue = VecDeque::from([i]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].expect("visited");
            for &(_, v) in &self.adjacency[u] {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Canonical edge sets of all nodes, sorted.
    pub fn edge_sets(&self) -> Vec<Vec<Edge>> {
        let mut v: Vec<Vec<Edge>> = self.nodes.iter().map(|t| t.edges().to_vec()).collect();
        v.sort();
        v
    }
}

pub fn build_flip_graph(seed: &Triangulation) -> Result<FlipGraph> {
    build_flip_graph_limited(seed, MAX_GRAPH_NODES)
}

/// Like [`build_flip_graph`] with a custom node limit.
pub fn build_flip_graph_limited(seed: &Triangulation, limit: usize) -> Result<FlipGraph> {
    let violations = seed.validate();
    if !violations.is_empty() {
        return Err(Error::TriangulationInvalid(violations));
    }
    let mut graph = FlipGraph {
        nodes: Vec::new(),
        index: HashMap::new(),
        adjacency: Vec::new(),
    };
    graph.index.insert(seed.edges().to_vec(), 0);
    graph.nodes.push(seed.clone());
    graph.adjacency.push(Vec::new());
    let mut next = 0;
    while next < graph.nodes.len() {
        let cur = graph.nodes[next].clone();
        for e in cur.flippable_edges() {
            let flipped = cur.flip(e)?;
            let j = match graph.index.get(flipped.edges()) {
                Some(&j) => j,
                None => {
                    if graph.nodes.len() >= limit {
                        return Err(Error::GraphTooLarge { limit });
                    }
                    let j = graph.nodes.len();
                    graph.index.insert(flipped.edges().to_vec(), j);
                    graph.nodes.push(flipped);
                    graph.adjacency.push(Vec::new());
                    j
                }
            };
            graph.adjacency[next].push((e, j));
        }
        next += 1;
    }
    Ok(graph)
}

/// Shortest flip-sequence length from `t1` to `t2`.
pub fn exact_flip_distance(t1: &Triangulation, t2: &Triangulation) -> Result<usize> {
    t1.ensure_same_instance(t2)?;
    let graph = build_flip_graph(t1)?;
    let j = graph.index_of(t2).ok_or(Error::Unreachable)?;
    graph.distances_from(0)[j].ok_or(Error::Unreachable)
}

/// Every triangulation of `inst` as a sorted edge list, found by
/// include/exclude search over candidate edges without using flips.
pub fn enumerate_triangulations_direct(inst: &Arc<Instance>) -> Result<Vec<Vec<Edge>>> {
    if inst.n() > MAX_DIRECT_POINTS {
        return Err(Error::InstanceTooLarge {
            points: inst.n(),
            limit: MAX_DIRECT_POINTS,
        });
    }
    let cands = inst.candidate_edges();
    // At most 66 pairs for 12 points.
    assert!(cands.len() <= 128);
    let cross: Vec<u128> = cands
        .iter()
        .map(|&e| {
            let s = inst.segment(e);
            cands.iter().enumerate().fold(0u128, |m, (j, &f)| {
                if properly_intersect(s, inst.segment(f)) {
                    m | 1 << j
                } else {
                    m
                }
            })
        })
        .collect();
    let mut search = Search {
        cross: &cross,
        found: Vec::new(),
    };
    search.run(0, 0, 0);
    let border: Vec<Edge> = inst.border_edges().iter().copied().collect();
    let mut out: Vec<Vec<Edge>> = search
        .found
        .into_iter()
        .map(|mask| {
            let mut edges = border.clone();
            edges.extend(
                (0..cands.len())
                    .filter(|&j| mask >> j & 1 == 1)
                    .map(|j| cands[j]),
            );
            edges.sort_unstable();
            edges
        })
        .collect();
    out.sort();
    Ok(out)
}

struct Search<'a> {
    cross: &'a [u128],
    found: Vec<u128>,
}

impl Search<'_> {
    /// `pending`: excluded candidates not yet crossed by a chosen one.
    fn run(&mut self, i: usize, chosen: u128, pending: u128) {
        let m = self.cross.len();
        // Each pending candidate needs a later compatible candidate to block it.
        let avail = (i..m)
            .filter(|&j| self.cross[j] & chosen == 0)
            .fold(0u128, |acc, j| acc | 1 << j);
        let mut p = pending;
        while p != 0 {
            let k = p.trailing_zeros() as usize;
            if self.cross[k] & avail == 0 {
                return;
            }
            p &= p - 1;
        }
        if i == m {
            self.found.push(chosen);
            return;
        }
        let bit = 1u128 << i;
        if self.cross[i] & chosen != 0 {
            self.run(i + 1, chosen, pending);
            return;
        }
        self.run(i + 1, chosen | bit, pending & !self.cross[i]);
        self.run(i + 1, chosen, pending | bit);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intersect::count_pair;
    use crate::test_support::{convex_polygon, instance, square, triangulation_with};
    use crate::triangulation::{greedy_triangulate, Priority};

    const CATALAN: [usize; 9] = [1, 1, 2, 5, 14, 42, 132, 429, 1430];

    #[test]
    fn quadrilateral_graph() {
        let inst = square();
        let t = triangulation_with(&inst, &[(0, 2)]);
        let g = build_flip_graph(&t).unwrap();
        assert_eq!((g.len(), g.edge_count()), (2, 1));
        assert_eq!(enumerate_triangulations_direct(&inst).unwrap().len(), 2);
        let other = triangulation_with(&inst, &[(1, 3)]);
        assert_eq!(exact_flip_distance(&t, &other), Ok(1));
        assert_eq!(exact_flip_distance(&t, &t), Ok(0));
    }

    #[test]
    fn convex_polygons_match_catalan() {
        for n in 3..=9 {
            let inst = convex_polygon(n);
            let seed = greedy_triangulate(&inst, &Priority::Lexicographic);
            let g = build_flip_graph(&seed).unwrap();
            assert_eq!(g.len(), CATALAN[n - 2], "n = {n}");
            assert!(g.is_symmetric());
            assert!(g.nodes().iter().all(|t| t.validate().is_empty()));
            assert_eq!(
                g.edge_sets(),
                enumerate_triangulations_direct(&inst).unwrap()
            );
        }
    }

    #[test]
    fn pentagon_is_a_five_cycle() {
        let inst = convex_polygon(5);
        let g = build_flip_graph(&greedy_triangulate(&inst, &Priority::Lexicographic)).unwrap();
        assert_eq!(g.edge_count(), 5);
        assert!((0..5).all(|i| g.neighbors(i).len() == 2));
        let fan0 = triangulation_with(&inst, &[(0, 2), (0, 3)]);
        let fan2 = triangulation_with(&inst, &[(2, 4), (0, 2)]);
        let d = exact_flip_distance(&fan0, &fan2).unwrap();
        assert_eq!(d, 1);
        assert!(d <= count_pair(&fan0, &fan2).unwrap().total);
    }

    #[test]
    fn square_with_center_agrees() {
        let inst = instance(
            &[(0, 0), (4, 0), (4, 4), (0, 4), (1, 2)],
            vec![vec![0, 1, 2, 3]],
        );
        let direct = enumerate_triangulations_direct(&inst).unwrap();
        let g = build_flip_graph(&greedy_triangulate(&inst, &Priority::Lexicographic)).unwrap();
        assert_eq!(g.edge_sets(), direct);
    }

    #[test]
    fn guards() {
        let inst = convex_polygon(8);
        let seed = greedy_triangulate(&inst, &Priority::Lexicographic);
        assert_eq!(
            build_flip_graph_limited(&seed, 10).unwrap_err(),
            Error::GraphTooLarge { limit: 10 }
        );
        assert_eq!(
            enumerate_triangulations_direct(&convex_polygon(13)).unwrap_err(),
            Error::InstanceTooLarge {
                points: 13,
                limit: 12
            }
        );
    }
}
