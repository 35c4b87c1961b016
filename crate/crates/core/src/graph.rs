//! Simple undirected graphs, the brute-force cycle spectrum oracle, and the
//! family predicates.

use std::collections::BTreeMap;
use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cycles::{for_each_cycle, EdgeAdjacency};
use crate::target::{target_spectrum, Family, TargetError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph order must be at least 1")]
    EmptyOrder,
    #[error("edge ({0}, {1}) is a loop")]
    Loop(usize, usize),
    #[error("edge ({0}, {1}) appears more than once")]
    DuplicateEdge(usize, usize),
    #[error("edge ({u}, {v}) has an endpoint outside 0..{order}")]
    OutOfRange { u: usize, v: usize, order: usize },
}

/// A finite simple undirected graph on vertices `0..order`.
///
/// Adjacency is kept as one bitset row per vertex; the sorted edge list is
/// kept alongside for iteration.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    order: usize,
    words: usize,
    adj: Vec<u64>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a validated graph. Edges are unordered; `(u, v)` and `(v, u)`
    /// are the same edge.
    pub fn new(order: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        if order == 0 {
            return Err(GraphError::EmptyOrder);
        }
        let words = order.div_ceil(64);
        let mut adj = vec![0u64; order * words];
        let mut list = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= order || v >= order {
                return Err(GraphError::OutOfRange { u, v, order });
            }
            if u == v {
                return Err(GraphError::Loop(u, v));
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            if adj[a * words + b / 64] >> (b % 64) & 1 == 1 {
                return Err(GraphError::DuplicateEdge(a, b));
            }
            adj[a * words + b / 64] |= 1 << (b % 64);
            adj[b * words + a / 64] |= 1 << (a % 64);
            list.push((a, b));
        }
        list.sort_unstable();
        Ok(Graph { order, words, adj, edges: list })
    }

    /// The cycle graph `C_n` on `0..n` with edges `i ~ i+1 mod n`.
    pub fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).expect("cycle graph needs n >= 3")
    }

    /// The complete graph `K_n`.
    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for j in 1..n {
            for i in 0..j {
                edges.push((i, j));
            }
        }
        Graph::new(n, &edges).expect("valid complete graph")
    }

    /// The complete bipartite graph `K_{a,b}`; the first part is `0..a`.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut edges = Vec::new();
        for i in 0..a {
            for j in a..a + b {
                edges.push((i, j));
            }
        }
        Graph::new(a + b, &edges).expect("valid complete bipartite graph")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order && v < self.order && self.adj[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// The adjacency row of `u` as bitset words.
    pub fn row(&self, u: usize) -> &[u64] {
        &self.adj[u * self.words..(u + 1) * self.words]
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(u).iter().enumerate().flat_map(|(w, &bits)| {
            let mut rest = bits;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(w * 64 + b)
            })
        })
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Minimum vertex degree.
    pub fn min_degree(&self) -> usize {
        (0..self.order).map(|u| self.degree(u)).min().unwrap_or(0)
    }

    /// Applies `perm` (old vertex -> new vertex).
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.order, "permutation length must equal order");
        let edges: Vec<_> = self.edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        Graph::new(self.order, &edges).expect("relabeling preserves simplicity")
    }

    /// A proper 2-colouring, or `None` when the graph has an odd cycle.
    pub fn two_coloring(&self) -> Option<Vec<bool>> {
        let mut color: Vec<Option<bool>> = vec![None; self.order];
        let mut queue = VecDeque::new();
        for root in 0..self.order {
            if color[root].is_some() {
                continue;
            }
            color[root] = Some(false);
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap();
                for w in self.neighbors(u) {
                    match color[w] {
                        None => {
                            color[w] = Some(!cu);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cu => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(|c| c.unwrap()).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }

    fn edge_adjacency(&self) -> EdgeAdjacency {
        let mut adj = vec![Vec::new(); self.order];
        for (id, &(u, v)) in self.edges.iter().enumerate() {
            adj[u].push((v, id));
            adj[v].push((u, id));
        }
        adj
    }

    /// Counts every simple cycle by length.
    pub fn cycle_spectrum(&self) -> CycleSpectrum {
        let mut counts = BTreeMap::new();
        for_each_cycle(&self.edge_adjacency(), |cycle| {
            *counts.entry(cycle.len()).or_insert(0u64) += 1;
        });
        CycleSpectrum { counts }
    }

    /// Whether this graph is an `(r)`-member of `family`.
    ///
    /// Fails only for a zero multiplicity or an order whose parity the family
    /// forbids; an order too small for the family is simply `false`.
    pub fn check_target(&self, family: Family, r: u32) -> Result<bool, TargetError> {
        let target = match target_spectrum(family, r, self.order) {
            Ok(t) => t,
            Err(TargetError::OrderTooSmall { .. }) => return Ok(false),
            Err(e) => return Err(e),
        };
        if family.is_bipartite() && !self.is_bipartite() {
            return Ok(false);
        }
        if family == Family::OddlyBipancyclic && self.min_degree() < 2 {
            return Ok(false);
        }
        Ok(self.cycle_spectrum() == target)
    }
}

/// Number of simple cycles of each length. Lengths with no cycles are absent.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CycleSpectrum {
    counts: BTreeMap<usize, u64>,
}

impl CycleSpectrum {
    /// Builds a spectrum, dropping zero counts and summing repeated lengths.
    pub fn from_counts<I: IntoIterator<Item = (usize, u64)>>(counts: I) -> CycleSpectrum {
        let mut map = BTreeMap::new();
        for (len, c) in counts {
            if c > 0 {
                *map.entry(len).or_insert(0) += c;
            }
        }
        CycleSpectrum { counts: map }
    }

    /// Builds a spectrum from a multiset of cycle lengths.
    pub fn from_lengths<I: IntoIterator<Item = usize>>(lengths: I) -> CycleSpectrum {
        CycleSpectrum::from_counts(lengths.into_iter().map(|l| (l, 1)))
    }

    pub fn count(&self, len: usize) -> u64 {
        self.counts.get(&len).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn has_odd_length(&self) -> bool {
        self.counts.keys().any(|l| l % 2 == 1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.counts.iter().map(|(&l, &c)| (l, c))
    }

    pub fn to_vec(&self) -> Vec<(usize, u64)> {
        self.iter().collect()
    }

    /// Lengths where `self` and `other` disagree, as `(length, self, other)`.
    pub fn diff(&self, other: &CycleSpectrum) -> Vec<(usize, u64, u64)> {
        let mut lengths: Vec<usize> = self.counts.keys().chain(other.counts.keys()).copied().collect();
        lengths.sort_unstable();
        lengths.dedup();
        lengths
            .into_iter()
            .filter_map(|l| {
                let (a, b) = (self.count(l), other.count(l));
                (a != b).then_some((l, a, b))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_malformed_edges() {
        assert_eq!(Graph::new(3, &[(0, 1), (0, 1)]), Err(GraphError::DuplicateEdge(0, 1)));
        assert_eq!(Graph::new(3, &[(0, 1), (1, 0)]), Err(GraphError::DuplicateEdge(0, 1)));
        assert_eq!(Graph::new(3, &[(2, 2)]), Err(GraphError::Loop(2, 2)));
        assert_eq!(Graph::new(3, &[(0, 3)]), Err(GraphError::OutOfRange { u: 0, v: 3, order: 3 }));
        assert_eq!(Graph::new(0, &[]), Err(GraphError::EmptyOrder));
    }

    #[test]
    fn small_graph_constructors() {
        let k3 = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(k3, Graph::complete(3));
        let c4 = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(c4, Graph::cycle(4));
        assert_eq!(c4.edge_count(), 4);
    }

    #[test]
    fn spectra_of_named_graphs() {
        assert_eq!(Graph::cycle(5).cycle_spectrum().to_vec(), vec![(5, 1)]);
        assert_eq!(Graph::complete(4).cycle_spectrum().to_vec(), vec![(3, 4), (4, 3)]);
        assert_eq!(Graph::complete_bipartite(2, 3).cycle_spectrum().to_vec(), vec![(4, 3)]);
        let path = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(path.cycle_spectrum().is_empty());
    }

    #[test]
    fn bipartiteness() {
        assert!(Graph::cycle(4).is_bipartite());
        assert!(!Graph::complete(3).is_bipartite());
        let coloring = Graph::complete_bipartite(2, 3).two_coloring().unwrap();
        assert_eq!(coloring[0], coloring[1]);
        assert!(coloring[2..].iter().all(|&c| c != coloring[0]));
    }

    #[test]
    fn minimum_degrees() {
        assert_eq!(Graph::cycle(5).min_degree(), 2);
        assert_eq!(Graph::complete_bipartite(2, 3).min_degree(), 2);
        assert_eq!(Graph::new(2, &[(0, 1)]).unwrap().min_degree(), 1);
    }

    #[test]
    fn target_checks() {
        assert_eq!(Graph::complete(3).check_target(Family::Pancyclic, 1), Ok(true));
        assert_eq!(Graph::cycle(4).check_target(Family::Bipancyclic, 1), Ok(true));
        let k23 = Graph::complete_bipartite(2, 3);
        assert_eq!(k23.check_target(Family::OddlyBipancyclic, 3), Ok(true));
        assert_eq!(k23.check_target(Family::OddlyBipancyclic, 1), Ok(false));
        assert_eq!(Graph::cycle(6).check_target(Family::Bipancyclic, 1), Ok(false));
        assert!(Graph::cycle(5).check_target(Family::Bipancyclic, 1).is_err());
    }

    #[test]
    fn pendant_vertex_fails_oddly_family() {
        // K_{2,2} plus a pendant vertex: spectrum {4:1} but min degree 1.
        let g = Graph::new(5, &[(0, 2), (0, 3), (1, 2), (1, 3), (3, 4)]).unwrap();
        assert_eq!(g.cycle_spectrum().to_vec(), vec![(4, 1)]);
        assert_eq!(g.check_target(Family::OddlyBipancyclic, 1), Ok(false));
    }

    #[test]
    fn disconnected_graph_is_never_pancyclic() {
        let g = Graph::new(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_eq!(g.check_target(Family::Pancyclic, 1), Ok(false));
    }

    #[test]
    fn spectrum_diff_reports_both_sides() {
        let a = CycleSpectrum::from_lengths([4, 6]);
        let b = CycleSpectrum::from_lengths([6]);
        assert_eq!(a.diff(&b), vec![(4, 1, 0)]);
    }

    #[test]
    fn large_order_rows_span_words() {
        let g = Graph::cycle(130);
        assert!(g.has_edge(129, 0));
        assert!(g.has_edge(63, 64));
        assert_eq!(g.neighbors(64).collect::<Vec<_>>(), vec![63, 65]);
        assert_eq!(g.cycle_spectrum().to_vec(), vec![(130, 1)]);
    }
}
