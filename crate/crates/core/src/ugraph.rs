//! Simple undirected graphs, used by the regular-completion and
//! independent-set sampling routines.

use crate::bitset::VertexSet;
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct UGraph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl UGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::edgeless(n);
        for &(u, v) in edges {
            g.add_edge_checked(u, v)?;
        }
        Ok(g)
    }

    pub fn edgeless(n: usize) -> Self {
        UGraph {
            n,
            adj: vec![VertexSet::empty(n); n],
        }
    }

    fn add_edge_checked(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::input(format!(
                "edge ({u}, {v}) out of range for n = {}",
                self.n
            )));
        }
        if u == v {
            return Err(Error::input(format!("self-loop at vertex {u}")));
        }
        if self.adj[u].contains(v) {
            return Err(Error::input(format!("duplicate edge ({u}, {v})")));
        }
        self.add_edge(u, v);
        Ok(())
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub(crate) fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u].remove(v);
        self.adj[v].remove(u);
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Edges with `u < v`, in sorted order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut es = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                if u < v {
                    es.push((u, v));
                }
            }
        }
        es
    }

    pub fn is_independent(&self, set: &VertexSet) -> bool {
        set.iter().all(|v| self.adj[v].is_disjoint_from(set))
    }

    /// Induced subgraph on `set`, relabeled to `0..set.len()`; also
    /// returns the new-to-old vertex map.
    pub fn induce(&self, set: &VertexSet) -> (UGraph, Vec<usize>) {
        let map = set.to_vec();
        let mut g = UGraph::edgeless(map.len());
        for (i, &u) in map.iter().enumerate() {
            for (j, &v) in map.iter().enumerate() {
                if i < j && self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        (g, map)
    }
}

impl std::fmt::Debug for UGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "UGraph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Complement of the underlying undirected graph of a digraph:
/// `{u, v}` is an edge exactly when the digraph has no edge between
/// `u` and `v` in either direction. Its maximum degree equals the
/// digraph's `h_index`.
pub fn complement_of_underlying(g: &Digraph) -> UGraph {
    let n = g.vertex_count();
    let mut c = UGraph::edgeless(n);
    for u in 0..n {
        for v in (u + 1)..n {
            if !g.adjacent(u, v) {
                c.add_edge(u, v);
            }
        }
    }
    c
}

/// Random undirected graph with maximum degree at most `d`,
/// deterministic per seed.
pub fn random_ugraph_max_degree(n: usize, d: usize, seed: u64) -> UGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = UGraph::edgeless(n);
    if n < 2 {
        return g;
    }
    // Aim for a decent edge density under the cap: try 2·n·d candidate
    // pairs and keep those that respect both budgets.
    for _ in 0..(2 * n * d) {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v && !g.has_edge(u, v) && g.degree(u) < d && g.degree(v) < d {
            g.add_edge(u, v);
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph;

    #[test]
    fn basics() {
        let g = UGraph::new(4, &[(0, 1), (1, 2)]).unwrap();
        assert!(g.has_edge(1, 0));
        assert_eq!(g.degree(1), 2);
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
        assert!(UGraph::new(3, &[(0, 1), (1, 0)]).is_err());
        assert!(UGraph::new(3, &[(2, 2)]).is_err());
    }

    #[test]
    fn independence() {
        let g = UGraph::new(5, &[(0, 1), (2, 3)]).unwrap();
        assert!(g.is_independent(&VertexSet::from_iter(5, [0, 2, 4])));
        assert!(!g.is_independent(&VertexSet::from_iter(5, [0, 1])));
    }

    #[test]
    fn complement_degree_matches_h_index() {
        for seed in 0..20 {
            let g = digraph::random_h_semicomplete(8, 2, seed).unwrap();
            let c = complement_of_underlying(&g);
            assert_eq!(c.max_degree(), g.h_index());
        }
        let k = digraph::complete_biorientation(5);
        assert_eq!(complement_of_underlying(&k).edge_count(), 0);
    }

    #[test]
    fn bounded_degree_generator() {
        for d in 0..4 {
            for seed in 0..10 {
                let g = random_ugraph_max_degree(12, d, seed);
                assert!(g.max_degree() <= d);
                assert_eq!(g, random_ugraph_max_degree(12, d, seed));
            }
        }
    }
}
