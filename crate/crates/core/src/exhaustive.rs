//! Exhaustive reference implementations, used as independent ground
//! truth in tests. Everything here enumerates; nothing shares code with
//! the algorithms it validates.

use crate::bitset::VertexSet;
use crate::digraph::Digraph;
use crate::separations::{is_separation, INFINITE_ORDER};
use crate::ugraph::UGraph;

/// All S–T separations of `g`, by brute enumeration of `(A, B)` pairs.
/// Exponential; intended for `n ≤ 7`.
pub fn all_st_separations(
    g: &Digraph,
    s: &VertexSet,
    t: &VertexSet,
) -> Vec<(VertexSet, VertexSet)> {
    let n = g.vertex_count();
    assert!(n <= 12, "separation enumeration is exponential");
    let mut out = Vec::new();
    for amask in 0..1u64 << n {
        let a = VertexSet::from_mask(n, amask);
        for bmask in 0..1u64 << n {
            if amask | bmask != (1u64 << n) - 1 {
                continue;
            }
            let b = VertexSet::from_mask(n, bmask);
            if s.is_disjoint_from(&b) && t.is_disjoint_from(&a) && is_separation(g, &a, &b) {
                out.push((a.clone(), b));
            }
        }
    }
    out
}

/// Minimum S–T separation order, or [`INFINITE_ORDER`] when none exists.
pub fn min_separation_order(g: &Digraph, s: &VertexSet, t: &VertexSet) -> usize {
    all_st_separations(g, s, t)
        .iter()
        .map(|(a, b)| a.intersection_len(b))
        .min()
        .unwrap_or(INFINITE_ORDER)
}

/// Whether some minimum S–T separation is non-trivial.
pub fn has_nontrivial_min_separation(g: &Digraph, s: &VertexSet, t: &VertexSet) -> bool {
    let seps = all_st_separations(g, s, t);
    let Some(min) = seps.iter().map(|(a, b)| a.intersection_len(b)).min() else {
        return false;
    };
    seps.iter().any(|(a, b)| {
        a.intersection_len(b) == min && {
            let a_only = a.difference(b);
            let b_only = b.difference(a);
            a_only.len() > s.len() && b_only.len() > t.len()
        }
    })
}

/// Width of a vertex ordering: the maximum `d+` over its prefixes.
pub fn ordering_width(g: &Digraph, order: &[usize]) -> usize {
    let n = g.vertex_count();
    let mut prefix = VertexSet::empty(n);
    let mut width = 0;
    for &v in order {
        prefix.insert(v);
        width = width.max(g.d_plus(&prefix));
    }
    width
}

/// Pathwidth by trying every permutation. Only for `n ≤ 8`.
pub fn pathwidth_by_permutations(g: &Digraph) -> usize {
    let n = g.vertex_count();
    assert!(n <= 8, "permutation oracle is factorial");
    let mut order: Vec<usize> = (0..n).collect();
    let mut best = usize::MAX;
    permute(&mut order, 0, &mut |perm| {
        best = best.min(ordering_width(g, perm));
    });
    if n == 0 {
        0
    } else {
        best
    }
}

fn permute(items: &mut Vec<usize>, at: usize, visit: &mut impl FnMut(&[usize])) {
    if at == items.len() {
        visit(items);
        return;
    }
    for i in at..items.len() {
        items.swap(at, i);
        permute(items, at + 1, visit);
        items.swap(at, i);
    }
}

/// Erdős–Gallai test: is the (unsorted) sequence realizable as a simple
/// graph?
pub fn is_graphical(degrees: &[usize]) -> bool {
    let mut d: Vec<usize> = degrees.to_vec();
    d.sort_unstable_by(|a, b| b.cmp(a));
    let n = d.len();
    if d.iter().sum::<usize>() % 2 != 0 {
        return false;
    }
    let mut lhs = 0usize;
    for k in 1..=n {
        lhs += d[k - 1];
        let rhs = k * (k - 1) + d[k..].iter().map(|&x| x.min(k)).sum::<usize>();
        if lhs > rhs {
            return false;
        }
    }
    true
}

/// Decides whether a `d`-regular graph on `n + m` vertices containing
/// `g` as an *induced* subgraph exists, by exhausting how the original
/// deficiencies can be routed into the `m` new vertices.
///
/// Original vertices may only gain edges toward new vertices (induced
/// containment forbids new edges among originals). New-vertex loads are
/// tracked as a sorted profile; the remaining degrees among the new
/// vertices must then form a graphical sequence.
pub fn regular_induced_extension_exists(g: &UGraph, d: usize, m: usize) -> bool {
    let n = g.vertex_count();
    if g.max_degree() > d {
        return false;
    }
    let demands: Vec<usize> = (0..n).map(|v| d - g.degree(v)).collect();
    if demands.iter().any(|&r| r > m) {
        return false;
    }
    let mut profiles = std::collections::HashSet::new();
    profiles.insert(vec![0usize; m]);
    for &r in &demands {
        let mut next = std::collections::HashSet::new();
        for profile in &profiles {
            // Choose r distinct new vertices, identified by position in
            // the sorted load profile.
            choose_positions(profile, r, d, &mut |chosen| {
                let mut p = profile.clone();
                for &i in chosen {
                    p[i] += 1;
                }
                p.sort_unstable();
                next.insert(p);
            });
        }
        profiles = next;
        if profiles.is_empty() {
            return false;
        }
    }
    profiles.iter().any(|p| {
        let residual: Vec<usize> = p.iter().map(|&load| d - load).collect();
        is_graphical(&residual)
    })
}

fn choose_positions(profile: &[usize], r: usize, d: usize, visit: &mut impl FnMut(&[usize])) {
    let mut chosen = Vec::with_capacity(r);
    fn rec(
        profile: &[usize],
        r: usize,
        d: usize,
        from: usize,
        chosen: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]),
    ) {
        if chosen.len() == r {
            visit(chosen);
            return;
        }
        for i in from..profile.len() {
            if profile[i] < d {
                chosen.push(i);
                rec(profile, r, d, i + 1, chosen, visit);
                chosen.pop();
            }
        }
    }
    rec(profile, r, d, 0, &mut chosen, visit);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::{complete_biorientation, directed_cycle, transitive_tournament};

    #[test]
    fn permutation_oracle_on_known_graphs() {
        assert_eq!(pathwidth_by_permutations(&directed_cycle(3)), 1);
        assert_eq!(pathwidth_by_permutations(&transitive_tournament(4)), 0);
        assert_eq!(pathwidth_by_permutations(&complete_biorientation(4)), 3);
    }

    #[test]
    fn graphical_sequences() {
        assert!(is_graphical(&[2, 2, 2]));
        assert!(is_graphical(&[1, 1]));
        assert!(!is_graphical(&[1, 1, 1]));
        assert!(!is_graphical(&[3, 1]));
        assert!(is_graphical(&[]));
        assert!(is_graphical(&[0, 0]));
    }

    #[test]
    fn induced_extension_on_single_vertex() {
        // One isolated vertex, d = 2: m = 1 fails (condition m ≥ d),
        // m = 2 succeeds via a triangle.
        let g = UGraph::edgeless(1);
        assert!(!regular_induced_extension_exists(&g, 2, 1));
        assert!(regular_induced_extension_exists(&g, 2, 2));
    }
}
