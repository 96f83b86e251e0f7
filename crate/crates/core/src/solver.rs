//! Decision procedure for digraph pathwidth: given `(G, k)`, build a
//! gapless ∅–∅ separation chain of order at most `k` (and from it a
//! path-decomposition of width at most `k`) or refuse correctly.
//!
//! Recursion on k-admissible pairs `(S, T)`:
//! * small middle (`|V \ (S ∪ T)| ≤ k + 1`): direct constructive chain;
//! * a non-trivial minimum S–T separation `(X, Y)` exists: divide into
//!   `(S, Y \ X)` and `(X \ Y, T)` and concatenate through `(X, Y)`;
//! * otherwise: branch, extending `S`, `T`, or both by one vertex,
//!   depending on which trivial separations attain the minimum order.
//!
//! Every chain returned by a recursive call is tight (it starts at
//! `(N+[S], V \ S)` and ends at `(V \ T, N-[T])`), which makes both the
//! divide concatenation and the branch reconstruction seamless.

use crate::bitset::VertexSet;
use crate::decomposition::{chain_to_decomposition, validate_decomposition, PathDecomposition};
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::separations::{
    chain_predicates, mu, trivial_left, trivial_right, FlowNetwork, Separation, SeparationChain,
};
use std::collections::HashSet;

/// A k-admissible pair: `N+[S] ∩ T = ∅`, `d+(S) ≤ k`, `d-(T) ≤ k`.
#[derive(Clone, PartialEq, Eq)]
pub struct Instance {
    s: VertexSet,
    t: VertexSet,
    k: usize,
}

impl Instance {
    pub fn new(g: &Digraph, s: VertexSet, t: VertexSet, k: usize) -> Result<Self> {
        if !s.is_disjoint_from(&t) {
            return Err(Error::input("S and T must be disjoint"));
        }
        if !g.n_plus_closed(&s).is_disjoint_from(&t) {
            return Err(Error::input("not admissible: N+[S] meets T"));
        }
        let ds = g.d_plus(&s);
        if ds > k {
            return Err(Error::input(format!("not admissible: d+(S) = {ds} > k = {k}")));
        }
        let dt = g.d_minus(&t);
        if dt > k {
            return Err(Error::input(format!("not admissible: d-(T) = {dt} > k = {k}")));
        }
        Ok(Instance { s, t, k })
    }

    pub fn s(&self) -> &VertexSet {
        &self.s
    }

    pub fn t(&self) -> &VertexSet {
        &self.t
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

/// Counters gathered during one solve.
#[derive(Clone, Debug, Default)]
pub struct SolveStats {
    /// Instances processed outside the base case, the quantity the
    /// `μ'(S, T) · (h + 2k + 1)^(2(k - γ))` bound speaks about.
    pub instance_count: u64,
    pub base_case_count: u64,
    pub divide_count: u64,
    pub branch_count: u64,
    pub memo_hits: u64,
    pub max_depth: usize,
    /// Largest number of single-vertex extensions enumerated on one side
    /// of any branching node.
    pub max_side_fanout: usize,
}

#[derive(Clone, Debug, Default)]
pub struct SolveConfig {
    /// Cache refused `(S, T)` pairs. Off by default so that measured
    /// instance counts stay comparable to the analysis bound.
    pub memoize: bool,
    /// Emit one line per recursion event on stderr.
    pub trace: bool,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum EdgeKind {
    Root,
    Divide,
    Branch,
}

struct Solver<'g> {
    g: &'g Digraph,
    k: usize,
    cfg: SolveConfig,
    stats: SolveStats,
    refused: HashSet<(Vec<usize>, Vec<usize>)>,
}

/// Decides whether `g` has pathwidth at most `k`; on success the
/// decomposition validates with width at most `k`.
pub fn solve(g: &Digraph, k: usize) -> (Option<PathDecomposition>, SolveStats) {
    solve_with(g, k, SolveConfig::default())
}

pub fn solve_with(g: &Digraph, k: usize, cfg: SolveConfig) -> (Option<PathDecomposition>, SolveStats) {
    let empty = VertexSet::empty(g.vertex_count());
    let inst = Instance::new(g, empty.clone(), empty, k).expect("(∅, ∅) is always admissible");
    let (chain, stats) = solve_instance_with(g, &inst, cfg).expect("instance is admissible");
    let pd = chain.map(|c| {
        let pd = chain_to_decomposition(g, &c).expect("solver chains are gapless ∅–∅ chains");
        let v = validate_decomposition(g, &pd);
        assert!(v.valid, "solver produced an invalid decomposition: {:?}", v.violation);
        assert!(v.width <= k);
        pd
    });
    (pd, stats)
}

/// Runs the recursion on an explicit k-admissible pair, returning a
/// gapless tight S–T chain of order at most `k` when one exists.
pub fn solve_instance(g: &Digraph, inst: &Instance) -> Result<(Option<SeparationChain>, SolveStats)> {
    solve_instance_with(g, inst, SolveConfig::default())
}

pub fn solve_instance_with(
    g: &Digraph,
    inst: &Instance,
    cfg: SolveConfig,
) -> Result<(Option<SeparationChain>, SolveStats)> {
    // Re-validate; `Instance` may have been built against another graph.
    let inst = Instance::new(g, inst.s.clone(), inst.t.clone(), inst.k)?;
    let mut solver = Solver {
        g,
        k: inst.k,
        cfg,
        stats: SolveStats::default(),
        refused: HashSet::new(),
    };
    let chain = solver.recurse(&inst, 0, EdgeKind::Root, usize::MAX, 0);
    if let Some(c) = &chain {
        let rep = chain_predicates(g, c, &inst.s, &inst.t);
        assert!(rep.is_chain && rep.is_st_chain && rep.is_gapless && rep.is_tight);
        assert!(rep.order <= inst.k);
    }
    Ok((chain, solver.stats))
}

/// Smallest `k` admitting a decomposition, with a witness of exactly
/// that width bound. Iterates `solve` upward from zero.
pub fn compute_pathwidth(g: &Digraph) -> (usize, PathDecomposition) {
    for k in 0..=g.vertex_count() {
        if let (Some(pd), _) = solve(g, k) {
            return (k, pd);
        }
    }
    unreachable!("every digraph has pathwidth below its order")
}

impl<'g> Solver<'g> {
    fn recurse(
        &mut self,
        inst: &Instance,
        depth: usize,
        edge: EdgeKind,
        parent_mu: usize,
        parent_gamma: usize,
    ) -> Option<SeparationChain> {
        let k = self.k;
        let (s, t) = (&inst.s, &inst.t);
        self.stats.max_depth = self.stats.max_depth.max(depth);

        let node_mu = mu(self.g, s, t).expect("admissible pairs are disjoint");
        if edge != EdgeKind::Root {
            assert!(node_mu < parent_mu, "μ must strictly decrease along recursion edges");
        }

        let mid = s.union(t).complement();
        if mid.len() <= k + 1 {
            self.stats.base_case_count += 1;
            self.trace(depth, s, t, None, "base");
            let chain = self.base_chain(s, t);
            return Some(chain);
        }
        if self.cfg.memoize {
            let key = (s.to_vec(), t.to_vec());
            if self.refused.contains(&key) {
                self.stats.memo_hits += 1;
                return None;
            }
        }
        self.stats.instance_count += 1;

        let ds = self.g.d_plus(s);
        let dt = self.g.d_minus(t);
        let mut net = FlowNetwork::build(self.g, s, t);
        let gamma = net.run();
        assert!(gamma <= ds.min(dt), "trivial separations bound γ");
        match edge {
            EdgeKind::Branch => assert!(
                gamma > parent_gamma,
                "γ must strictly increase across branching edges"
            ),
            EdgeKind::Divide => assert!(gamma >= parent_gamma),
            EdgeKind::Root => {}
        }

        let result = if let Some(sep) = self.nontrivial_min(&mut net, s, t, gamma) {
            self.divide(inst, depth, node_mu, gamma, sep)
        } else {
            // No non-trivial minimum: at least one trivial separation
            // attains γ, and we branch on the side(s) that do.
            assert!(gamma == ds || gamma == dt);
            self.branch(inst, depth, node_mu, gamma, gamma == ds, gamma == dt, &mid)
        };
        if result.is_none() && self.cfg.memoize {
            self.refused.insert((s.to_vec(), t.to_vec()));
        }
        result
    }

    fn nontrivial_min(
        &mut self,
        net: &mut FlowNetwork,
        s: &VertexSet,
        t: &VertexSet,
        gamma: usize,
    ) -> Option<Separation> {
        crate::separations::nontrivial_min_with_net(self.g, s, t, net, gamma)
    }

    fn divide(
        &mut self,
        inst: &Instance,
        depth: usize,
        node_mu: usize,
        gamma: usize,
        sep: Separation,
    ) -> Option<SeparationChain> {
        let (s, t, k) = (&inst.s, &inst.t, inst.k);
        self.stats.divide_count += 1;
        self.trace(depth, s, t, Some(gamma), "divide");
        let s2 = sep.a().difference(sep.b());
        let t2 = sep.b().difference(sep.a());

        let mu_left = mu(self.g, s, &t2).unwrap();
        let mu_right = mu(self.g, &s2, t).unwrap();
        assert_eq!(
            mu_left + mu_right,
            node_mu,
            "additivity of μ across a minimum separation"
        );
        assert!(mu_left >= 1 && mu_right >= 1);

        let left_inst = Instance::new(self.g, s.clone(), t2, k)
            .expect("left divide child is admissible");
        let mut chain =
            self.recurse(&left_inst, depth + 1, EdgeKind::Divide, node_mu, gamma)?;
        let right_inst = Instance::new(self.g, s2, t.clone(), k)
            .expect("right divide child is admissible");
        let right = self.recurse(&right_inst, depth + 1, EdgeKind::Divide, node_mu, gamma)?;

        // Tight children meet exactly at (X, Y): the left chain ends at
        // (V \ (Y\X), N-[Y\X]) = (X, Y) because a minimum separation has
        // N-(Y\X) = X ∩ Y, and symmetrically for the right chain.
        assert_eq!(chain.last(), Some(&sep));
        assert_eq!(right.first(), Some(&sep));
        chain.push(sep);
        chain.extend(right);
        chain.dedup_consecutive();
        Some(chain)
    }

    fn branch(
        &mut self,
        inst: &Instance,
        depth: usize,
        node_mu: usize,
        gamma: usize,
        from_s: bool,
        from_t: bool,
        mid: &VertexSet,
    ) -> Option<SeparationChain> {
        let (s, t, k) = (&inst.s, &inst.t, inst.k);
        self.stats.branch_count += 1;

        // Single-vertex extensions that stay k-admissible, cheapest
        // boundary first.
        let mut left_cands: Vec<(usize, usize)> = Vec::new();
        if from_s {
            for u in mid.iter() {
                if !self.g.out_neighbors(u).is_disjoint_from(t) {
                    continue;
                }
                let mut s2 = s.clone();
                s2.insert(u);
                let d = self.g.d_plus(&s2);
                if d <= k {
                    left_cands.push((d, u));
                }
            }
            left_cands.sort_unstable();
        }
        let mut right_cands: Vec<(usize, usize)> = Vec::new();
        if from_t {
            let np_s = self.g.n_plus_open(s);
            for v in mid.iter() {
                if np_s.contains(v) {
                    continue;
                }
                let mut t2 = t.clone();
                t2.insert(v);
                let d = self.g.d_minus(&t2);
                if d <= k {
                    right_cands.push((d, v));
                }
            }
            right_cands.sort_unstable();
        }
        let fanout = left_cands.len().max(right_cands.len());
        self.stats.max_side_fanout = self.stats.max_side_fanout.max(fanout);

        let result = if from_s && from_t {
            self.trace(depth, s, t, Some(gamma), "branch-both");
            self.branch_both(inst, depth, node_mu, gamma, &left_cands, &right_cands)
        } else if from_s {
            self.trace(depth, s, t, Some(gamma), "branch-left");
            self.branch_left(inst, depth, node_mu, gamma, &left_cands)
        } else {
            self.trace(depth, s, t, Some(gamma), "branch-right");
            self.branch_right(inst, depth, node_mu, gamma, &right_cands)
        };
        result
    }

    fn branch_both(
        &mut self,
        inst: &Instance,
        depth: usize,
        node_mu: usize,
        gamma: usize,
        left: &[(usize, usize)],
        right: &[(usize, usize)],
    ) -> Option<SeparationChain> {
        let (s, t, k) = (&inst.s, &inst.t, inst.k);
        for &(_, u) in left {
            for &(_, v) in right {
                if u == v || self.g.has_edge(u, v) {
                    continue;
                }
                let mut s2 = s.clone();
                s2.insert(u);
                let mut t2 = t.clone();
                t2.insert(v);
                let child = Instance::new(self.g, s2, t2, k)
                    .expect("jointly admissible by the candidate filters");
                if let Some(c) = self.recurse(&child, depth + 1, EdgeKind::Branch, node_mu, gamma)
                {
                    return Some(self.wrap(c, s, t, true, true));
                }
            }
        }
        None
    }

    fn branch_left(
        &mut self,
        inst: &Instance,
        depth: usize,
        node_mu: usize,
        gamma: usize,
        left: &[(usize, usize)],
    ) -> Option<SeparationChain> {
        let (s, t, k) = (&inst.s, &inst.t, inst.k);
        for &(_, u) in left {
            let mut s2 = s.clone();
            s2.insert(u);
            let child = Instance::new(self.g, s2, t.clone(), k).expect("admissible by filter");
            if let Some(c) = self.recurse(&child, depth + 1, EdgeKind::Branch, node_mu, gamma) {
                return Some(self.wrap(c, s, t, true, false));
            }
        }
        None
    }

    fn branch_right(
        &mut self,
        inst: &Instance,
        depth: usize,
        node_mu: usize,
        gamma: usize,
        right: &[(usize, usize)],
    ) -> Option<SeparationChain> {
        let (s, t, k) = (&inst.s, &inst.t, inst.k);
        for &(_, v) in right {
            let mut t2 = t.clone();
            t2.insert(v);
            let child = Instance::new(self.g, s.clone(), t2, k).expect("admissible by filter");
            if let Some(c) = self.recurse(&child, depth + 1, EdgeKind::Branch, node_mu, gamma) {
                return Some(self.wrap(c, s, t, false, true));
            }
        }
        None
    }

    /// Extends a tight child chain back to a tight S–T chain. The
    /// prepended trivial separation differs from the child's first on
    /// the B side by exactly the added vertex, and symmetrically for
    /// the appended one, so gaplessness is preserved.
    fn wrap(
        &self,
        child: SeparationChain,
        s: &VertexSet,
        t: &VertexSet,
        pad_left: bool,
        pad_right: bool,
    ) -> SeparationChain {
        let mut seps = Vec::with_capacity(child.len() + 2);
        if pad_left {
            seps.push(trivial_left(self.g, s));
        }
        seps.extend(child.separations().iter().cloned());
        if pad_right {
            seps.push(trivial_right(self.g, t));
        }
        let mut chain = SeparationChain::new(seps);
        chain.dedup_consecutive();
        chain
    }

    /// Constructive chain for admissible pairs with a small middle:
    /// repeatedly push a middle vertex that is not forced to stay (not
    /// an out-neighbor of S, resp. in-neighbor of T) into the opposite
    /// terminal, ending at the single separation (N+[S], N-[T]).
    fn base_chain(&self, s: &VertexSet, t: &VertexSet) -> SeparationChain {
        let g = self.g;
        let mid = s.union(t).complement();
        let np = g.n_plus_open(s);
        let nm = g.n_minus_open(t);
        debug_assert!(np.is_subset_of(&mid) && nm.is_subset_of(&mid));
        if mid == np && mid == nm {
            let sep = Separation::from_parts(g.n_plus_closed(s), g.n_minus_closed(t));
            debug_assert!(sep.is_valid_for(g));
            return SeparationChain::new(vec![sep]);
        }
        if let Some(v) = mid.difference(&np).first() {
            let mut t2 = t.clone();
            t2.insert(v);
            let mut chain = self.base_chain(s, &t2);
            chain.push(trivial_right(g, t));
            chain
        } else {
            let v = mid
                .difference(&nm)
                .first()
                .expect("middle differs from N-(T) when it equals N+(S)");
            let mut s2 = s.clone();
            s2.insert(v);
            let child = self.base_chain(&s2, t);
            let mut seps = vec![trivial_left(g, s)];
            seps.extend(child.separations().iter().cloned());
            SeparationChain::new(seps)
        }
    }

    fn trace(&self, depth: usize, s: &VertexSet, t: &VertexSet, gamma: Option<usize>, action: &str) {
        if self.cfg.trace {
            let mu_v = mu(self.g, s, t).unwrap();
            let gamma_v = match gamma {
                Some(v) => v.to_string(),
                None => "-".to_string(),
            };
            eprintln!(
                "{:indent$}[{depth}] S={s:?} T={t:?} γ={gamma_v} μ={mu_v} {action}",
                "",
                indent = depth.min(40)
            );
        }
    }
}

/// Base-case entry point with precondition checks, exposed for direct
/// use: the pair must be k-admissible with `|V \ (S ∪ T)| ≤ k + 1`.
pub fn base_case_chain(g: &Digraph, inst: &Instance) -> Result<SeparationChain> {
    let inst = Instance::new(g, inst.s.clone(), inst.t.clone(), inst.k)?;
    let mid = inst.s.union(&inst.t).complement();
    if mid.len() > inst.k + 1 {
        return Err(Error::input(format!(
            "middle has {} vertices, more than k + 1 = {}",
            mid.len(),
            inst.k + 1
        )));
    }
    let solver = Solver {
        g,
        k: inst.k,
        cfg: SolveConfig::default(),
        stats: SolveStats::default(),
        refused: HashSet::new(),
    };
    let chain = solver.base_chain(&inst.s, &inst.t);
    let rep = chain_predicates(g, &chain, &inst.s, &inst.t);
    assert!(rep.is_chain && rep.is_st_chain && rep.is_gapless && rep.is_tight);
    assert!(rep.order <= inst.k);
    Ok(chain)
}
