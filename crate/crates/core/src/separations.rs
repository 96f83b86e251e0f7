//! S–T separations, minimum separations via vertex-capacitated max-flow,
//! separation chains, and the γ/μ instance measures.

use crate::bitset::VertexSet;
use crate::digraph::Digraph;
use crate::error::{Error, Result};

/// Sentinel for "no separation exists"; compares greater than any order.
pub const INFINITE_ORDER: usize = usize::MAX;

/// A separation `(A, B)`: `A ∪ B = V` with no edge from `A \ B` to
/// `B \ A`. Its order is `|A ∩ B|`.
#[derive(Clone, PartialEq, Eq)]
pub struct Separation {
    a: VertexSet,
    b: VertexSet,
}

impl Separation {
    /// Wraps the two sides without validating; use
    /// [`Separation::is_valid_for`] or [`is_separation`] to check.
    pub fn from_parts(a: VertexSet, b: VertexSet) -> Self {
        Separation { a, b }
    }

    pub fn new_checked(g: &Digraph, a: VertexSet, b: VertexSet) -> Result<Self> {
        if !is_separation(g, &a, &b) {
            return Err(Error::input("(A, B) is not a separation"));
        }
        Ok(Separation { a, b })
    }

    pub fn a(&self) -> &VertexSet {
        &self.a
    }

    pub fn b(&self) -> &VertexSet {
        &self.b
    }

    pub fn order(&self) -> usize {
        self.a.intersection_len(&self.b)
    }

    pub fn separator(&self) -> VertexSet {
        self.a.intersection(&self.b)
    }

    pub fn is_valid_for(&self, g: &Digraph) -> bool {
        is_separation(g, &self.a, &self.b)
    }

    /// `S ∩ B = ∅` and `T ∩ A = ∅` (separation-ness not rechecked).
    pub fn is_st_for(&self, s: &VertexSet, t: &VertexSet) -> bool {
        s.is_disjoint_from(&self.b) && t.is_disjoint_from(&self.a)
    }

    /// Trivial S–T separations are `(N+[S], V \ S)` and `(V \ T, N-[T])`.
    pub fn is_trivial_for(&self, g: &Digraph, s: &VertexSet, t: &VertexSet) -> bool {
        let left = trivial_left(g, s);
        let right = trivial_right(g, t);
        *self == left || *self == right
    }
}

impl std::fmt::Debug for Separation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({:?}, {:?})", self.a, self.b)
    }
}

/// `(N+[S], V \ S)`.
pub fn trivial_left(g: &Digraph, s: &VertexSet) -> Separation {
    Separation::from_parts(g.n_plus_closed(s), s.complement())
}

/// `(V \ T, N-[T])`.
pub fn trivial_right(g: &Digraph, t: &VertexSet) -> Separation {
    Separation::from_parts(t.complement(), g.n_minus_closed(t))
}

/// True when `a ∪ b = V` and no edge leaves `a \ b` into `b \ a`.
pub fn is_separation(g: &Digraph, a: &VertexSet, b: &VertexSet) -> bool {
    if a.union(b) != g.vertices() {
        return false;
    }
    let a_only = a.difference(b);
    let b_only = b.difference(a);
    let ok = a_only
        .iter()
        .all(|v| g.out_neighbors(v).is_disjoint_from(&b_only));
    ok
}

/// A nested sequence of separations: the `A` sides grow and the `B`
/// sides shrink along the sequence.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SeparationChain {
    seps: Vec<Separation>,
}

impl SeparationChain {
    pub fn new(seps: Vec<Separation>) -> Self {
        SeparationChain { seps }
    }

    pub fn separations(&self) -> &[Separation] {
        &self.seps
    }

    pub fn len(&self) -> usize {
        self.seps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seps.is_empty()
    }

    pub fn first(&self) -> Option<&Separation> {
        self.seps.first()
    }

    pub fn last(&self) -> Option<&Separation> {
        self.seps.last()
    }

    /// Maximum member order (0 for an empty sequence).
    pub fn order(&self) -> usize {
        self.seps.iter().map(Separation::order).max().unwrap_or(0)
    }

    pub fn push(&mut self, sep: Separation) {
        self.seps.push(sep);
    }

    pub fn extend(&mut self, other: SeparationChain) {
        self.seps.extend(other.seps);
    }

    /// Drops immediately repeated separations; harmless for every chain
    /// predicate since a zero-difference step carries no information.
    pub fn dedup_consecutive(&mut self) {
        self.seps.dedup();
    }
}

/// The predicate bundle for a candidate S–T chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChainReport {
    /// Members are separations of `g` and properly nested.
    pub is_chain: bool,
    /// `B_0 = V \ S` and `A_r = V \ T`.
    pub is_st_chain: bool,
    /// Every step moves at most one vertex on at least one side.
    pub is_gapless: bool,
    /// Every step moves at most one vertex on both sides.
    pub is_nice: bool,
    /// `A_0 = N+[S]` and `B_r = N-[T]`.
    pub is_tight: bool,
    pub order: usize,
}

pub fn chain_predicates(
    g: &Digraph,
    chain: &SeparationChain,
    s: &VertexSet,
    t: &VertexSet,
) -> ChainReport {
    let seps = chain.separations();
    let mut is_chain = !seps.is_empty();
    let mut is_gapless = true;
    let mut is_nice = true;
    for sep in seps {
        if !sep.is_valid_for(g) {
            is_chain = false;
        }
    }
    for w in seps.windows(2) {
        let (prev, next) = (&w[0], &w[1]);
        if !prev.a.is_subset_of(&next.a) || !next.b.is_subset_of(&prev.b) {
            is_chain = false;
        }
        let a_step = next.a.difference_len(&prev.a);
        let b_step = prev.b.difference_len(&next.b);
        if a_step > 1 && b_step > 1 {
            is_gapless = false;
        }
        if a_step > 1 || b_step > 1 {
            is_nice = false;
        }
    }
    let ends = match (seps.first(), seps.last()) {
        (Some(first), Some(last)) => Some((first, last)),
        _ => None,
    };
    let is_st_chain = is_chain
        && ends.is_some_and(|(first, last)| {
            first.b == s.complement() && last.a == t.complement()
        });
    let is_tight = ends.is_some_and(|(first, last)| {
        first.a == g.n_plus_closed(s) && last.b == g.n_minus_closed(t)
    });
    ChainReport {
        is_chain,
        is_st_chain,
        is_gapless: is_chain && is_gapless,
        is_nice: is_chain && is_nice,
        is_tight,
        order: chain.order(),
    }
}

fn check_disjoint(s: &VertexSet, t: &VertexSet) -> Result<()> {
    if !s.is_disjoint_from(t) {
        return Err(Error::input("S and T must be disjoint"));
    }
    Ok(())
}

/// `μ(S, T) = 2·|V \ (N+[S] ∪ N-[T])| + |N+(S) Δ N-(T)|`.
pub fn mu(g: &Digraph, s: &VertexSet, t: &VertexSet) -> Result<usize> {
    check_disjoint(s, t)?;
    let np_closed = g.n_plus_closed(s);
    let nm_closed = g.n_minus_closed(t);
    let outside = np_closed.union(&nm_closed).complement();
    let delta = g.n_plus_open(s).symmetric_difference(&g.n_minus_open(t));
    Ok(2 * outside.len() + delta.len())
}

/// `μ'(S, T) = max{0, 2μ(S, T) - 1}`.
pub fn mu_prime(g: &Digraph, s: &VertexSet, t: &VertexSet) -> Result<usize> {
    let m = mu(g, s, t)?;
    Ok(if m == 0 { 0 } else { 2 * m - 1 })
}

/// Order of a minimum S–T separation, or [`INFINITE_ORDER`] when none
/// exists (exactly when some edge runs from `S` into `T`).
pub fn gamma(g: &Digraph, s: &VertexSet, t: &VertexSet) -> Result<usize> {
    check_disjoint(s, t)?;
    if !g.n_plus_open(s).is_disjoint_from(t) {
        return Ok(INFINITE_ORDER);
    }
    let mut net = FlowNetwork::build(g, s, t);
    Ok(net.run())
}

/// A minimum-order S–T separation, or `None` when no S–T separation
/// exists. The separation is recovered from the residual network of a
/// unit-vertex-capacity max-flow and re-validated before returning.
pub fn min_st_separation(g: &Digraph, s: &VertexSet, t: &VertexSet) -> Result<Option<Separation>> {
    check_disjoint(s, t)?;
    if !g.n_plus_open(s).is_disjoint_from(t) {
        return Ok(None);
    }
    let mut net = FlowNetwork::build(g, s, t);
    let value = net.run();
    let sep = net.extract_separation(g, s);
    assert!(sep.is_valid_for(g), "recovered cut is not a separation");
    assert!(sep.is_st_for(s, t), "recovered separation is not S–T");
    assert_eq!(sep.order(), value, "separation order disagrees with flow value");
    Ok(Some(sep))
}

/// Searches for a minimum S–T separation `(X, Y)` that is non-trivial:
/// `X \ Y ⊋ S` and `Y \ X ⊋ T`.
///
/// A non-trivial minimum separation exists if and only if some pair
/// `u, v ∉ S ∪ T`, `u ≠ v`, keeps `γ(S ∪ {u}, T ∪ {v}) = γ(S, T)`; the
/// minimum separation of that extended instance is then a non-trivial
/// minimum for `(S, T)`. Each pair is tested with a single residual
/// reachability sweep over the base max-flow.
pub fn find_nontrivial_min_separation(
    g: &Digraph,
    s: &VertexSet,
    t: &VertexSet,
) -> Result<Option<Separation>> {
    check_disjoint(s, t)?;
    if !g.n_plus_open(s).is_disjoint_from(t) {
        return Err(Error::input("no S–T separation exists (edge from S to T)"));
    }
    let mut net = FlowNetwork::build(g, s, t);
    let base = net.run();
    let sep = nontrivial_min_with_net(g, s, t, &mut net, base);
    if let Some(sep) = &sep {
        assert_eq!(sep.order(), base);
        let x_only = sep.a.difference(&sep.b);
        let y_only = sep.b.difference(&sep.a);
        assert!(s.is_subset_of(&x_only) && x_only.len() > s.len());
        assert!(t.is_subset_of(&y_only) && y_only.len() > t.len());
    }
    Ok(sep)
}

/// Pair search over a solved max-flow network. Candidate-side
/// memberships (`γ` unchanged by the single extension) are tested
/// lazily and memoized, so an early pair hit costs only a handful of
/// residual sweeps.
pub(crate) fn nontrivial_min_with_net(
    g: &Digraph,
    s: &VertexSet,
    t: &VertexSet,
    net: &mut FlowNetwork,
    gamma: usize,
) -> Option<Separation> {
    let mid = s.union(t).complement();
    if gamma == 0 {
        return nontrivial_order_zero(g, s, t, &mid);
    }
    let n = g.vertex_count();
    let members: Vec<usize> = mid.to_vec();
    let mut left_ok = vec![None::<bool>; n];
    let mut right_ok = vec![None::<bool>; n];
    for &u in &members {
        let lu = *left_ok[u].get_or_insert_with(|| !net.admits_augmenting(Some(u), None));
        if !lu {
            continue;
        }
        for &v in &members {
            // An edge u→v makes the extended pair inseparable.
            if u == v || g.has_edge(u, v) {
                continue;
            }
            let rv = *right_ok[v].get_or_insert_with(|| !net.admits_augmenting(None, Some(v)));
            if !rv || net.admits_augmenting(Some(u), Some(v)) {
                continue;
            }
            let mut s2 = s.clone();
            s2.insert(u);
            let mut t2 = t.clone();
            t2.insert(v);
            let sep = min_st_separation(g, &s2, &t2)
                .expect("disjoint by construction")
                .expect("finite extended γ implies a separation exists");
            debug_assert_eq!(sep.order(), gamma);
            return Some(sep);
        }
    }
    None
}

/// Order-0 separations are exactly `(A, V \ A)` for out-closed `A`, so
/// when `γ(S, T) = 0` the pair test reduces to forward closures: the
/// closure of `S ∪ {u}` is the minimal out-closed candidate containing
/// `u`, and some `u` witnesses a non-trivial separation whenever one
/// exists.
pub(crate) fn nontrivial_order_zero(
    g: &Digraph,
    s: &VertexSet,
    t: &VertexSet,
    mid: &VertexSet,
) -> Option<Separation> {
    for u in mid.iter() {
        let mut seed = s.clone();
        seed.insert(u);
        let a = g.forward_closure(&seed);
        if !a.is_disjoint_from(t) || a == t.complement() {
            continue;
        }
        let b = a.complement();
        let sep = Separation::from_parts(a, b);
        debug_assert!(sep.is_valid_for(g) && sep.is_st_for(s, t));
        debug_assert_eq!(sep.order(), 0);
        return Some(sep);
    }
    None
}

// --- Vertex-capacitated max-flow via vertex splitting. ---
//
// Node 2v is v's in-copy, 2v+1 its out-copy; the internal edge carries
// capacity 1 outside S ∪ T and is effectively infinite inside. Graph
// edges (u, v) become u_out → v_in with infinite capacity.

const INF: u32 = u32::MAX;

#[derive(Clone)]
struct FlowEdge {
    to: u32,
    cap: u32,
}

pub(crate) struct FlowNetwork {
    adj: Vec<Vec<u32>>,
    edges: Vec<FlowEdge>,
    /// Index of `v_in → v_out` for every vertex.
    internal: Vec<u32>,
    source: usize,
    sink: usize,
}

impl FlowNetwork {
    /// Builds the network for `(S, T)`; the caller must have ruled out a
    /// direct edge from `S` to `T`.
    pub(crate) fn build(g: &Digraph, s: &VertexSet, t: &VertexSet) -> Self {
        let n = g.vertex_count();
        let source = 2 * n;
        let sink = 2 * n + 1;
        let mut net = FlowNetwork {
            adj: vec![Vec::new(); 2 * n + 2],
            edges: Vec::new(),
            internal: vec![0; n],
            source,
            sink,
        };
        for v in 0..n {
            let cap = if s.contains(v) || t.contains(v) { INF } else { 1 };
            net.internal[v] = net.add_edge(2 * v, 2 * v + 1, cap);
        }
        for u in 0..n {
            for v in g.out_neighbors(u).iter() {
                net.add_edge(2 * u + 1, 2 * v, INF);
            }
        }
        for v in s.iter() {
            net.add_edge(source, 2 * v, INF);
        }
        for v in t.iter() {
            net.add_edge(2 * v + 1, sink, INF);
        }
        net
    }

    fn add_edge(&mut self, from: usize, to: usize, cap: u32) -> u32 {
        let id = self.edges.len() as u32;
        self.edges.push(FlowEdge { to: to as u32, cap });
        self.edges.push(FlowEdge { to: from as u32, cap: 0 });
        self.adj[from].push(id);
        self.adj[to].push(id + 1);
        id
    }

    /// Runs BFS augmentation to completion and returns the flow value.
    pub(crate) fn run(&mut self) -> usize {
        let mut value = 0;
        let mut parent = vec![u32::MAX; self.adj.len()];
        loop {
            parent.iter_mut().for_each(|p| *p = u32::MAX);
            let mut queue = std::collections::VecDeque::new();
            parent[self.source] = u32::MAX - 1;
            queue.push_back(self.source);
            'bfs: while let Some(x) = queue.pop_front() {
                for &e in &self.adj[x] {
                    let edge = &self.edges[e as usize];
                    let y = edge.to as usize;
                    if edge.cap > 0 && parent[y] == u32::MAX {
                        parent[y] = e;
                        if y == self.sink {
                            break 'bfs;
                        }
                        queue.push_back(y);
                    }
                }
            }
            if parent[self.sink] == u32::MAX {
                return value;
            }
            // All paths here cross at least one unit internal edge, so
            // each augmentation moves exactly one unit.
            let mut y = self.sink;
            while y != self.source {
                let e = parent[y] as usize;
                self.edges[e].cap -= 1;
                self.edges[e ^ 1].cap += 1;
                y = self.edges[e ^ 1].to as usize;
            }
            value += 1;
            assert!(value <= self.adj.len(), "flow exceeded vertex count");
        }
    }

    /// After [`FlowNetwork::run`], tests whether lifting the capacity of
    /// `lift_s` to the source side and `lift_t` to the sink side opens an
    /// augmenting path, i.e. whether `γ(S ∪ {u}, T ∪ {v})` exceeds the
    /// base value. Does not modify the flow.
    pub(crate) fn admits_augmenting(&self, lift_s: Option<usize>, lift_t: Option<usize>) -> bool {
        let lifted = |e: u32| {
            lift_s.is_some_and(|u| e == self.internal[u])
                || lift_t.is_some_and(|v| e == self.internal[v])
        };
        let mut seen = vec![false; self.adj.len()];
        let mut queue = std::collections::VecDeque::new();
        seen[self.source] = true;
        queue.push_back(self.source);
        if let Some(u) = lift_s {
            if !seen[2 * u] {
                seen[2 * u] = true;
                queue.push_back(2 * u);
            }
        }
        let target = |y: usize| y == self.sink || lift_t.is_some_and(|v| y == 2 * v + 1);
        while let Some(x) = queue.pop_front() {
            for &e in &self.adj[x] {
                let edge = &self.edges[e as usize];
                let y = edge.to as usize;
                if !seen[y] && (edge.cap > 0 || (lifted(e & !1) && e & 1 == 0)) {
                    if target(y) {
                        return true;
                    }
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        false
    }

    /// Recovers the minimum separation from residual reachability:
    /// `A = S ∪ {v : v_in reachable}`, `B = (V \ A) ∪ (A ∩ B)`.
    pub(crate) fn extract_separation(&self, g: &Digraph, s: &VertexSet) -> Separation {
        let n = g.vertex_count();
        let mut seen = vec![false; self.adj.len()];
        let mut queue = std::collections::VecDeque::new();
        seen[self.source] = true;
        queue.push_back(self.source);
        while let Some(x) = queue.pop_front() {
            for &e in &self.adj[x] {
                let edge = &self.edges[e as usize];
                let y = edge.to as usize;
                if edge.cap > 0 && !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        let mut a = s.clone();
        let mut cut = VertexSet::empty(n);
        for v in 0..n {
            if seen[2 * v] {
                a.insert(v);
                if !seen[2 * v + 1] {
                    cut.insert(v);
                }
            }
        }
        let mut b = a.complement();
        b.union_with(&cut);
        Separation::from_parts(a, b)
    }
}
