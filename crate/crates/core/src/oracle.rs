//! Exact pathwidth by dynamic programming over vertex subsets.
//!
//! The pathwidth of a digraph equals its vertex separation number: the
//! minimum over vertex orderings of the maximum `d+` of a prefix. The
//! table assigns every subset `U` the best achievable maximum over
//! orderings that place exactly `U` first:
//! `value(U) = max(d+(U), min_{v ∈ U} value(U \ {v}))`.

use crate::digraph::Digraph;
use crate::error::{Error, Result};

pub const DEFAULT_ORACLE_CAP: usize = 22;

pub use crate::exhaustive::ordering_width;

fn out_masks(g: &Digraph) -> Vec<u64> {
    (0..g.vertex_count())
        .map(|v| g.out_neighbors(v).as_mask())
        .collect()
}

fn d_plus_mask(out: &[u64], mask: u64) -> u32 {
    let mut reach = 0u64;
    let mut m = mask;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        reach |= out[v];
    }
    (reach & !mask).count_ones()
}

fn dp_table(g: &Digraph) -> Vec<u8> {
    let n = g.vertex_count();
    let out = out_masks(g);
    let mut dp = vec![0u8; 1 << n];
    for mask in 1..1u64 << n {
        let cut = d_plus_mask(&out, mask);
        let mut best = u8::MAX;
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            best = best.min(dp[(mask ^ (1 << v)) as usize]);
        }
        dp[mask as usize] = best.max(cut as u8);
    }
    dp
}

fn check_cap(g: &Digraph, cap: usize) -> Result<()> {
    let n = g.vertex_count();
    if n > cap.min(63) {
        return Err(Error::TooLarge(format!(
            "subset oracle handles at most {} vertices, got {n}",
            cap.min(63)
        )));
    }
    Ok(())
}

pub fn oracle_pathwidth(g: &Digraph) -> Result<usize> {
    oracle_pathwidth_capped(g, DEFAULT_ORACLE_CAP)
}

pub fn oracle_pathwidth_capped(g: &Digraph, cap: usize) -> Result<usize> {
    check_cap(g, cap)?;
    let n = g.vertex_count();
    if n == 0 {
        return Ok(0);
    }
    Ok(dp_table(g)[(1usize << n) - 1] as usize)
}

/// A witness ordering whose width equals [`oracle_pathwidth`]. The
/// argmin is re-derived per step instead of storing parent pointers.
pub fn oracle_ordering(g: &Digraph) -> Result<Vec<usize>> {
    oracle_ordering_capped(g, DEFAULT_ORACLE_CAP)
}

pub fn oracle_ordering_capped(g: &Digraph, cap: usize) -> Result<Vec<usize>> {
    check_cap(g, cap)?;
    let n = g.vertex_count();
    if n == 0 {
        return Ok(Vec::new());
    }
    let dp = dp_table(g);
    let mut order = vec![0usize; n];
    let mut mask = (1u64 << n) - 1;
    for pos in (0..n).rev() {
        let mut chosen = None;
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            if dp[(mask ^ (1 << v)) as usize] <= dp[mask as usize] {
                chosen = Some(v);
                break;
            }
        }
        let v = chosen.expect("the recurrence always has a minimizer");
        order[pos] = v;
        mask ^= 1 << v;
    }
    debug_assert_eq!(ordering_width(g, &order), dp[(1usize << n) - 1] as usize);
    Ok(order)
}
