//! Path-decompositions: validity checking and conversion from gapless
//! ∅–∅ separation chains.

use crate::bitset::VertexSet;
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::separations::SeparationChain;

/// A sequence of bags over the universe `0..n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PathDecomposition {
    n: usize,
    bags: Vec<VertexSet>,
}

impl PathDecomposition {
    pub fn new(n: usize, bags: Vec<VertexSet>) -> Self {
        PathDecomposition { n, bags }
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn bags(&self) -> &[VertexSet] {
        &self.bags
    }

    /// `max |X_i| - 1`, or 0 when there are no non-empty bags.
    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(VertexSet::len)
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }
}

/// Diagnostic result of validation; `violation` describes the first
/// failed condition, in the order cover, contiguity, edge direction.
#[derive(Clone, Debug)]
pub struct Validation {
    pub valid: bool,
    pub width: usize,
    pub violation: Option<String>,
}

/// Checks the three path-decomposition conditions: the bags cover every
/// vertex, each vertex occupies a contiguous run of bags, and every
/// edge `(u, v)` has `u` in a bag at or after one containing `v`.
pub fn validate_decomposition(g: &Digraph, pd: &PathDecomposition) -> Validation {
    let n = g.vertex_count();
    let width = pd.width();
    let fail = |msg: String| Validation {
        valid: false,
        width,
        violation: Some(msg),
    };
    if pd.universe() != n {
        return fail(format!(
            "decomposition universe {} does not match graph order {n}",
            pd.universe()
        ));
    }
    let mut first = vec![usize::MAX; n];
    let mut last = vec![usize::MAX; n];
    for (i, bag) in pd.bags.iter().enumerate() {
        for v in bag.iter() {
            if first[v] == usize::MAX {
                first[v] = i;
            }
            last[v] = i;
        }
    }
    for v in 0..n {
        if first[v] == usize::MAX {
            return fail(format!("cover violation: vertex {v} appears in no bag"));
        }
    }
    for v in 0..n {
        for (i, bag) in pd.bags.iter().enumerate() {
            if i >= first[v] && i <= last[v] && !bag.contains(v) {
                return fail(format!(
                    "contiguity violation: vertex {v} missing from bag {i} inside its interval [{}, {}]",
                    first[v], last[v]
                ));
            }
        }
    }
    for u in 0..n {
        for v in g.out_neighbors(u).iter() {
            // Occurrence intervals make the condition equivalent to
            // last(u) ≥ first(v).
            if last[u] < first[v] {
                return fail(format!(
                    "edge ({u}, {v}) violates the direction condition: {u} leaves at bag {} before {v} enters at bag {}",
                    last[u], first[v]
                ));
            }
        }
    }
    Validation {
        valid: true,
        width,
        violation: None,
    }
}

/// Converts a gapless ∅–∅ chain into a path-decomposition with bags
/// `W_i = A_i ∩ B_{i-1}`. The resulting width never exceeds the chain
/// order. Precondition failures report the first offending index.
pub fn chain_to_decomposition(g: &Digraph, chain: &SeparationChain) -> Result<PathDecomposition> {
    let n = g.vertex_count();
    let seps = chain.separations();
    if seps.is_empty() {
        return Err(Error::input("empty separation chain"));
    }
    for (i, sep) in seps.iter().enumerate() {
        if !sep.is_valid_for(g) {
            return Err(Error::input(format!("chain member {i} is not a separation")));
        }
    }
    for (i, w) in seps.windows(2).enumerate() {
        if !w[0].a().is_subset_of(w[1].a()) || !w[1].b().is_subset_of(w[0].b()) {
            return Err(Error::input(format!(
                "chain nesting fails between members {i} and {}",
                i + 1
            )));
        }
    }
    if *seps[0].b() != g.vertices() {
        return Err(Error::input("not an ∅–∅ chain: B_0 ≠ V"));
    }
    if *seps[seps.len() - 1].a() != g.vertices() {
        return Err(Error::input("not an ∅–∅ chain: A_r ≠ V"));
    }
    for (i, w) in seps.windows(2).enumerate() {
        let a_step = w[1].a().difference_len(w[0].a());
        let b_step = w[0].b().difference_len(w[1].b());
        if a_step > 1 && b_step > 1 {
            return Err(Error::input(format!(
                "chain is not gapless at step {} (|A+| = {a_step}, |B-| = {b_step})",
                i + 1
            )));
        }
    }
    let bags: Vec<VertexSet> = seps
        .windows(2)
        .map(|w| w[1].a().intersection(w[0].b()))
        .collect();
    let pd = PathDecomposition::new(n, bags);
    debug_assert!(pd.width() <= chain.order());
    debug_assert!(validate_decomposition(g, &pd).valid);
    Ok(pd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::{directed_cycle, Digraph};
    use crate::separations::Separation;

    fn set(n: usize, vs: &[usize]) -> VertexSet {
        VertexSet::from_iter(n, vs.iter().copied())
    }

    #[test]
    fn single_vertex_chain() {
        let g = Digraph::edgeless(1);
        let e = VertexSet::empty(1);
        let chain = SeparationChain::new(vec![
            Separation::from_parts(e.clone(), g.vertices()),
            Separation::from_parts(g.vertices(), e),
        ]);
        let pd = chain_to_decomposition(&g, &chain).unwrap();
        assert_eq!(pd.bags(), &[set(1, &[0])]);
        assert_eq!(pd.width(), 0);
    }

    #[test]
    fn cycle_chain_of_order_one() {
        // Chain induced by the ordering 0, 1, 2 of the 3-cycle via
        // A_i = N+[prefix], B_i = V \ prefix.
        let g = directed_cycle(3);
        let chain = SeparationChain::new(vec![
            Separation::from_parts(set(3, &[]), set(3, &[0, 1, 2])),
            Separation::from_parts(set(3, &[0, 1]), set(3, &[1, 2])),
            Separation::from_parts(set(3, &[0, 1, 2]), set(3, &[2])),
            Separation::from_parts(set(3, &[0, 1, 2]), set(3, &[])),
        ]);
        assert_eq!(chain.order(), 1);
        let pd = chain_to_decomposition(&g, &chain).unwrap();
        assert_eq!(pd.width(), 1);
        assert!(validate_decomposition(&g, &pd).valid);
    }

    #[test]
    fn non_gapless_chain_rejected() {
        let g = Digraph::edgeless(3);
        let e = VertexSet::empty(3);
        let chain = SeparationChain::new(vec![
            Separation::from_parts(e.clone(), g.vertices()),
            Separation::from_parts(g.vertices(), e),
        ]);
        let err = chain_to_decomposition(&g, &chain).unwrap_err();
        assert!(err.to_string().contains("gapless"), "{err}");
    }

    #[test]
    fn validates_cycle_decomposition() {
        let g = directed_cycle(3);
        let pd = PathDecomposition::new(3, vec![set(3, &[0, 1]), set(3, &[1, 2])]);
        let v = validate_decomposition(&g, &pd);
        assert!(v.valid, "{:?}", v.violation);
        assert_eq!(v.width, 1);
        // Reversed bag order breaks the direction condition for 2→0.
        let bad = PathDecomposition::new(3, vec![set(3, &[1, 2]), set(3, &[0, 1])]);
        let v = validate_decomposition(&g, &bad);
        assert!(!v.valid);
        assert!(v.violation.unwrap().contains("(2, 0)"));
    }

    #[test]
    fn missing_vertex_is_cover_violation() {
        let g = directed_cycle(3);
        let pd = PathDecomposition::new(3, vec![set(3, &[0, 1])]);
        let v = validate_decomposition(&g, &pd);
        assert!(!v.valid);
        assert!(v.violation.unwrap().contains("cover"));
    }

    #[test]
    fn contiguity_violation_detected() {
        let g = Digraph::edgeless(2);
        let pd = PathDecomposition::new(
            2,
            vec![set(2, &[0]), set(2, &[1]), set(2, &[0])],
        );
        let v = validate_decomposition(&g, &pd);
        assert!(!v.valid);
        assert!(v.violation.unwrap().contains("contiguity"));
    }
}
