//! Simple directed graphs with set-valued neighborhood queries.

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// An immutable simple digraph on vertices `0..n`.
///
/// No self-loops, at most one edge per ordered pair. Out- and
/// in-neighborhoods are kept as bitsets and stay consistent:
/// `u ∈ in[v]` exactly when `v ∈ out[u]`.
#[derive(Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    out: Vec<VertexSet>,
    inn: Vec<VertexSet>,
}

impl Digraph {
    /// Builds a digraph from an edge list, rejecting self-loops,
    /// duplicate edges and out-of-range endpoints.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::edgeless(n);
        for &(u, v) in edges {
            g.add_edge_checked(u, v)?;
        }
        Ok(g)
    }

    pub fn edgeless(n: usize) -> Self {
        Digraph {
            n,
            out: vec![VertexSet::empty(n); n],
            inn: vec![VertexSet::empty(n); n],
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
        if self.out[u].contains(v) {
            return Err(Error::input(format!("duplicate edge ({u}, {v})")));
        }
        self.add_edge(u, v);
        Ok(())
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        self.out[u].insert(v);
        self.inn[v].insert(u);
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(VertexSet::len).sum()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.out[u].contains(v)
    }

    /// True when `u` and `v` are joined by an edge in at least one direction.
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.has_edge(u, v) || self.has_edge(v, u)
    }

    pub fn out_neighbors(&self, v: usize) -> &VertexSet {
        &self.out[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &VertexSet {
        &self.inn[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.inn[v].len()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Edges in sorted order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut es = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.out[u].iter() {
                es.push((u, v));
            }
        }
        es
    }

    /// Closed out-neighborhood `N+[U] = U ∪ ⋃_{v∈U} N+(v)`.
    pub fn n_plus_closed(&self, u: &VertexSet) -> VertexSet {
        let mut s = u.clone();
        for v in u.iter() {
            s.union_with(&self.out[v]);
        }
        s
    }

    /// Open out-neighborhood `N+(U) = N+[U] \ U`.
    pub fn n_plus_open(&self, u: &VertexSet) -> VertexSet {
        let mut s = self.n_plus_closed(u);
        s.subtract(u);
        s
    }

    pub fn n_minus_closed(&self, u: &VertexSet) -> VertexSet {
        let mut s = u.clone();
        for v in u.iter() {
            s.union_with(&self.inn[v]);
        }
        s
    }

    pub fn n_minus_open(&self, u: &VertexSet) -> VertexSet {
        let mut s = self.n_minus_closed(u);
        s.subtract(u);
        s
    }

    /// `d+(U) = |N+(U)|`, the number of out-neighbors of `U` outside `U`.
    pub fn d_plus(&self, u: &VertexSet) -> usize {
        self.n_plus_open(u).len()
    }

    /// `d-(U) = |N-(U)|`.
    pub fn d_minus(&self, u: &VertexSet) -> usize {
        self.n_minus_open(u).len()
    }

    /// Number of non-neighbors of `v`: vertices `u ≠ v` with no edge
    /// between `u` and `v` in either direction.
    pub fn non_neighbor_count(&self, v: usize) -> usize {
        self.n - 1 - self.out[v].union(&self.inn[v]).len()
    }

    /// The smallest `h` such that every vertex has at most `h`
    /// non-neighbors. Semicomplete digraphs have `h_index` zero.
    pub fn h_index(&self) -> usize {
        (0..self.n)
            .map(|v| self.non_neighbor_count(v))
            .max()
            .unwrap_or(0)
    }

    pub fn is_semicomplete(&self) -> bool {
        self.h_index() == 0
    }

    /// Completes the digraph into a semicomplete supergraph.
    ///
    /// Vertices are listed in non-decreasing order of out-degree (ties
    /// broken by index), and every non-adjacent pair gets a single edge
    /// from the later-listed vertex to the earlier-listed one.
    pub fn semicomplete_completion(&self) -> Digraph {
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&v| (self.out_degree(v), v));
        let mut g = self.clone();
        for j in 0..self.n {
            for i in (j + 1)..self.n {
                let (lo, hi) = (order[j], order[i]);
                if !g.adjacent(lo, hi) {
                    g.add_edge(hi, lo);
                }
            }
        }
        g
    }

    /// Smallest out-closed superset of `set`: everything reachable
    /// along directed edges.
    pub fn forward_closure(&self, set: &VertexSet) -> VertexSet {
        let mut seen = set.clone();
        let mut frontier: Vec<usize> = set.to_vec();
        while let Some(v) = frontier.pop() {
            for w in self.out[v].iter() {
                if !seen.contains(w) {
                    seen.insert(w);
                    frontier.push(w);
                }
            }
        }
        seen
    }

    /// Induced subgraph on `set`, relabeled to `0..set.len()`.
    /// Returns the subgraph together with the new-to-old vertex map.
    pub fn induce(&self, set: &VertexSet) -> (Digraph, Vec<usize>) {
        let map = set.to_vec();
        let mut g = Digraph::edgeless(map.len());
        for (i, &u) in map.iter().enumerate() {
            for (j, &v) in map.iter().enumerate() {
                if i != j && self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        (g, map)
    }
}

impl std::fmt::Debug for Digraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Digraph(n={}, edges={:?})", self.n, self.edges())
    }
}

// --- Fixed families used throughout the tests and the CLI generator. ---

/// Both edge directions between every pair.
pub fn complete_biorientation(n: usize) -> Digraph {
    let mut g = Digraph::edgeless(n);
    for u in 0..n {
        for v in 0..n {
            if u != v {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Tournament with `u → v` for all `u < v`.
pub fn transitive_tournament(n: usize) -> Digraph {
    let mut g = Digraph::edgeless(n);
    for u in 0..n {
        for v in (u + 1)..n {
            g.add_edge(u, v);
        }
    }
    g
}

pub fn directed_cycle(n: usize) -> Digraph {
    let mut g = Digraph::edgeless(n);
    for u in 0..n {
        g.add_edge(u, (u + 1) % n);
    }
    g
}

pub fn directed_path(n: usize) -> Digraph {
    let mut g = Digraph::edgeless(n);
    for u in 0..n.saturating_sub(1) {
        g.add_edge(u, u + 1);
    }
    g
}

/// Uniform random digraph: each ordered pair carries an edge with
/// probability 1/2, independently. Deterministic per seed.
pub fn random_digraph(n: usize, seed: u64) -> Digraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Digraph::edgeless(n);
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(0.5) {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Random digraph with `h_index ≤ h`, deterministic per seed.
///
/// Each unordered pair is first oriented one way, the other way, or both
/// with equal probability; afterwards both directions are deleted on the
/// pairs of a random undirected graph with maximum degree at most `h`,
/// which guarantees the bound by construction.
pub fn random_h_semicomplete(n: usize, h: usize, seed: u64) -> Result<Digraph> {
    if n > 0 && h >= n {
        return Err(Error::input(format!("h = {h} must be smaller than n = {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Digraph::edgeless(n);
    for u in 0..n {
        for v in (u + 1)..n {
            match rng.gen_range(0..3) {
                0 => g.add_edge(u, v),
                1 => g.add_edge(v, u),
                _ => {
                    g.add_edge(u, v);
                    g.add_edge(v, u);
                }
            }
        }
    }
    if h == 0 || n < 2 {
        return Ok(g);
    }
    // Knock out pairs greedily while respecting a per-vertex budget of h.
    let mut budget = vec![h; n];
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .collect();
    pairs.shuffle(&mut rng);
    for (u, v) in pairs {
        if budget[u] > 0 && budget[v] > 0 && rng.gen_bool(0.5) {
            budget[u] -= 1;
            budget[v] -= 1;
            g.out[u].remove(v);
            g.inn[v].remove(u);
            g.out[v].remove(u);
            g.inn[u].remove(v);
        }
    }
    Ok(g)
}

/// All digraphs on `n` vertices, by edge-subset index. There are
/// `2^(n(n-1))` of them; intended for exhaustive small-n sweeps.
pub fn digraph_from_index(n: usize, index: u64) -> Digraph {
    let mut g = Digraph::edgeless(n);
    let mut bit = 0;
    for u in 0..n {
        for v in 0..n {
            if u != v {
                if index >> bit & 1 == 1 {
                    g.add_edge(u, v);
                }
                bit += 1;
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d_plus_on_cycle() {
        // 3-cycle 0→1→2→0: d+({0}) = 1, d+(V) = 0.
        let g = directed_cycle(3);
        assert_eq!(g.d_plus(&VertexSet::singleton(3, 0)), 1);
        assert_eq!(g.d_plus(&g.vertices()), 0);
        assert_eq!(g.d_minus(&VertexSet::singleton(3, 0)), 1);
    }

    #[test]
    fn d_plus_on_biorientation() {
        // In bidirected K4 every 2-subset sees both outside vertices.
        let g = complete_biorientation(4);
        for u in 0..4 {
            for v in (u + 1)..4 {
                let s = VertexSet::from_iter(4, [u, v]);
                assert_eq!(g.d_plus(&s), 2);
            }
        }
    }

    #[test]
    fn d_plus_cross_representation() {
        // d+(U) computed from out-sets must agree with counting, per
        // vertex, membership via in-sets.
        for seed in 0..20 {
            let g = random_digraph(9, seed);
            for mask in 0..512u64 {
                let u = VertexSet::from_mask(9, mask);
                let via_in = (0..9)
                    .filter(|&v| !u.contains(v) && !g.in_neighbors(v).is_disjoint_from(&u))
                    .count();
                assert_eq!(g.d_plus(&u), via_in);
            }
        }
    }

    #[test]
    fn h_index_families() {
        assert_eq!(complete_biorientation(6).h_index(), 0);
        assert_eq!(Digraph::edgeless(5).h_index(), 4);
        assert_eq!(directed_cycle(4).h_index(), 1);
        assert_eq!(Digraph::edgeless(1).h_index(), 0);
    }

    #[test]
    fn completion_is_identity_on_semicomplete() {
        let g = transitive_tournament(6);
        assert_eq!(g.semicomplete_completion(), g);
    }

    #[test]
    fn completion_of_edgeless_triangle() {
        // Degree-sorted order is 0, 1, 2; each missing pair is oriented
        // from the later-listed vertex to the earlier one.
        let g = Digraph::edgeless(3).semicomplete_completion();
        assert_eq!(g.edges(), vec![(1, 0), (2, 0), (2, 1)]);
    }

    #[test]
    fn completion_is_semicomplete_supergraph() {
        for seed in 0..30 {
            let g = random_digraph(8, seed);
            let c = g.semicomplete_completion();
            assert_eq!(c.h_index(), 0);
            for (u, v) in g.edges() {
                assert!(c.has_edge(u, v));
            }
        }
    }

    #[test]
    fn generator_respects_h_and_seed() {
        for h in 0..3 {
            for seed in 0..20 {
                let g = random_h_semicomplete(6, h, seed).unwrap();
                assert!(g.h_index() <= h, "h_index {} > {}", g.h_index(), h);
                assert_eq!(g, random_h_semicomplete(6, h, seed).unwrap());
            }
        }
        assert_eq!(random_h_semicomplete(5, 0, 7).unwrap().h_index(), 0);
        assert!(random_h_semicomplete(4, 4, 0).is_err());
    }

    #[test]
    fn extension_count_bound() {
        // In an h-semicomplete digraph, at most h + 2k + 1 vertices v
        // outside U keep d+(U ∪ {v}) ≤ k, for every k > 0.
        for h in 0..3usize {
            for seed in 0..10 {
                let g = random_h_semicomplete(9, h, seed).unwrap();
                for mask in (0..512u64).step_by(7) {
                    let u = VertexSet::from_mask(9, mask);
                    for k in 1..5usize {
                        let count = (0..9)
                            .filter(|&v| {
                                if u.contains(v) {
                                    return false;
                                }
                                let mut w = u.clone();
                                w.insert(v);
                                g.d_plus(&w) <= k
                            })
                            .count();
                        assert!(count <= h + 2 * k + 1);
                    }
                }
            }
        }
    }

    #[test]
    fn constructor_rejects_bad_edges() {
        assert!(Digraph::new(3, &[(0, 0)]).is_err());
        assert!(Digraph::new(3, &[(0, 3)]).is_err());
        assert!(Digraph::new(3, &[(0, 1), (0, 1)]).is_err());
        assert!(Digraph::new(3, &[(0, 1), (1, 0)]).is_ok());
    }
}
