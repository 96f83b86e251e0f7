//! Lower-bound certificates for the pathwidth of semicomplete digraphs:
//! degree tangles, matching tangles and spiders, together with wildness
//! and tameness checks, the degree-interval bound, and best-effort
//! certificate searches.
//!
//! Verifiers are the authority for the JSON certificate format; a
//! certificate is only meaningful once a verifier accepts it against a
//! concrete graph.

use crate::bitset::VertexSet;
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::sampler::sample_independent_set;
use crate::ugraph::complement_of_underlying;
use serde::{Deserialize, Serialize};

/// Vertex set `T` whose out-degrees all lie in the window `[d, d + k]`,
/// with `|T| = l`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct DegreeTangle {
    pub d: usize,
    pub l: usize,
    pub k: usize,
    pub t: Vec<usize>,
}

/// Disjoint sets `T1 ⊆ V≤d`, `T2 ⊆ V≥d+k+1` of equal size `l`, matched
/// by edges of the graph from `T1` into `T2`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MatchingTangle {
    pub d: usize,
    pub l: usize,
    pub k: usize,
    pub t1: Vec<usize>,
    pub t2: Vec<usize>,
    /// The matching as ordered pairs `(v, φ(v))`.
    pub phi: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SpiderLeg {
    pub v: usize,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

/// A center set `T` of at least `l` vertices, each with `3l` in-neighbors
/// of out-degree at most `d` and `3l` out-neighbors of out-degree at
/// least `d + w`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Spider {
    pub d: usize,
    pub l: usize,
    pub w: usize,
    pub legs: Vec<SpiderLeg>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    DegreeTangle(DegreeTangle),
    MatchingTangle(MatchingTangle),
    Spider(Spider),
}

/// Outcome of verifying a certificate against a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Accepted { lower_bound: usize },
    Rejected { reason: String },
}

impl Verdict {
    pub fn lower_bound(&self) -> Option<usize> {
        match self {
            Verdict::Accepted { lower_bound } => Some(*lower_bound),
            Verdict::Rejected { .. } => None,
        }
    }

    fn reject(reason: impl Into<String>) -> Self {
        Verdict::Rejected {
            reason: reason.into(),
        }
    }
}

fn require_semicomplete(g: &Digraph) -> Result<()> {
    if !g.is_semicomplete() {
        return Err(Error::input(format!(
            "graph is not semicomplete (h_index = {})",
            g.h_index()
        )));
    }
    Ok(())
}

fn as_set(g: &Digraph, vs: &[usize], what: &str) -> std::result::Result<VertexSet, Verdict> {
    let n = g.vertex_count();
    let mut set = VertexSet::empty(n);
    for &v in vs {
        if v >= n {
            return Err(Verdict::reject(format!("{what}: vertex {v} out of range")));
        }
        if set.contains(v) {
            return Err(Verdict::reject(format!("{what}: vertex {v} repeated")));
        }
        set.insert(v);
    }
    Ok(set)
}

/// Accepts a degree tangle and reports the bound `⌈(l - k - 1) / 2⌉`.
pub fn verify_degree_tangle(g: &Digraph, cert: &DegreeTangle) -> Result<Verdict> {
    require_semicomplete(g)?;
    let set = match as_set(g, &cert.t, "tangle") {
        Ok(s) => s,
        Err(v) => return Ok(v),
    };
    if cert.l == 0 || set.len() != cert.l {
        return Ok(Verdict::reject(format!(
            "|T| = {} does not match l = {} (l must be positive)",
            set.len(),
            cert.l
        )));
    }
    for v in set.iter() {
        let d = g.out_degree(v);
        if d < cert.d || d > cert.d + cert.k {
            return Ok(Verdict::reject(format!(
                "vertex {v} has out-degree {d} outside [{}, {}]",
                cert.d,
                cert.d + cert.k
            )));
        }
    }
    let bound = if cert.l > cert.k {
        (cert.l - cert.k) / 2
    } else {
        0
    };
    Ok(Verdict::Accepted { lower_bound: bound })
}

/// Accepts a matching tangle and reports the bound `min{l, k + 1}`.
pub fn verify_matching_tangle(g: &Digraph, cert: &MatchingTangle) -> Result<Verdict> {
    require_semicomplete(g)?;
    let t1 = match as_set(g, &cert.t1, "T1") {
        Ok(s) => s,
        Err(v) => return Ok(v),
    };
    let t2 = match as_set(g, &cert.t2, "T2") {
        Ok(s) => s,
        Err(v) => return Ok(v),
    };
    if cert.l == 0 || t1.len() != cert.l || t2.len() != cert.l {
        return Ok(Verdict::reject(format!(
            "|T1| = {}, |T2| = {} must both equal positive l = {}",
            t1.len(),
            t2.len(),
            cert.l
        )));
    }
    for v in t1.iter() {
        if g.out_degree(v) > cert.d {
            return Ok(Verdict::reject(format!(
                "T1 vertex {v} has out-degree {} > d = {}",
                g.out_degree(v),
                cert.d
            )));
        }
    }
    for v in t2.iter() {
        if g.out_degree(v) < cert.d + cert.k + 1 {
            return Ok(Verdict::reject(format!(
                "T2 vertex {v} has out-degree {} < d + k + 1 = {}",
                g.out_degree(v),
                cert.d + cert.k + 1
            )));
        }
    }
    if cert.phi.len() != cert.l {
        return Ok(Verdict::reject("φ must pair every T1 vertex".to_string()));
    }
    let mut seen_src = VertexSet::empty(g.vertex_count());
    let mut seen_dst = VertexSet::empty(g.vertex_count());
    for &(v, w) in &cert.phi {
        if !t1.contains(v) || !t2.contains(w) {
            return Ok(Verdict::reject(format!("φ pair ({v}, {w}) leaves T1 × T2")));
        }
        if seen_src.contains(v) || seen_dst.contains(w) {
            return Ok(Verdict::reject("φ is not a bijection".to_string()));
        }
        seen_src.insert(v);
        seen_dst.insert(w);
        if !g.has_edge(v, w) {
            return Ok(Verdict::reject(format!(
                "φ pair ({v}, {w}) is not realized by an edge"
            )));
        }
    }
    Ok(Verdict::Accepted {
        lower_bound: cert.l.min(cert.k + 1),
    })
}

/// Accepts a spider and reports the bound `min{l, w} + 1`.
pub fn verify_spider(g: &Digraph, cert: &Spider) -> Result<Verdict> {
    require_semicomplete(g)?;
    if cert.w == 0 {
        return Err(Error::input("spider requires w > 0"));
    }
    if cert.l == 0 {
        return Ok(Verdict::reject("spider requires l > 0".to_string()));
    }
    let mut centers = VertexSet::empty(g.vertex_count());
    for leg in &cert.legs {
        if leg.v >= g.vertex_count() || centers.contains(leg.v) {
            return Ok(Verdict::reject(format!(
                "center {} out of range or repeated",
                leg.v
            )));
        }
        centers.insert(leg.v);
    }
    if centers.len() < cert.l {
        return Ok(Verdict::reject(format!(
            "|T| = {} is below l = {}",
            centers.len(),
            cert.l
        )));
    }
    for leg in &cert.legs {
        let left = match as_set(g, &leg.left, "L_v") {
            Ok(s) => s,
            Err(v) => return Ok(v),
        };
        let right = match as_set(g, &leg.right, "R_v") {
            Ok(s) => s,
            Err(v) => return Ok(v),
        };
        if left.len() < 3 * cert.l {
            return Ok(Verdict::reject(format!(
                "|L_{}| = {} is below 3l = {}",
                leg.v,
                left.len(),
                3 * cert.l
            )));
        }
        if right.len() < 3 * cert.l {
            return Ok(Verdict::reject(format!(
                "|R_{}| = {} is below 3l = {}",
                leg.v,
                right.len(),
                3 * cert.l
            )));
        }
        if !left.is_subset_of(g.in_neighbors(leg.v)) {
            return Ok(Verdict::reject(format!(
                "L_{} is not contained in N-({})",
                leg.v, leg.v
            )));
        }
        if !right.is_subset_of(g.out_neighbors(leg.v)) {
            return Ok(Verdict::reject(format!(
                "R_{} is not contained in N+({})",
                leg.v, leg.v
            )));
        }
        for u in left.iter() {
            if g.out_degree(u) > cert.d {
                return Ok(Verdict::reject(format!(
                    "L_{} vertex {u} has out-degree {} > d = {}",
                    leg.v,
                    g.out_degree(u),
                    cert.d
                )));
            }
        }
        for u in right.iter() {
            if g.out_degree(u) < cert.d + cert.w {
                return Ok(Verdict::reject(format!(
                    "R_{} vertex {u} has out-degree {} < d + w = {}",
                    leg.v,
                    g.out_degree(u),
                    cert.d + cert.w
                )));
            }
        }
    }
    Ok(Verdict::Accepted {
        lower_bound: cert.l.min(cert.w) + 1,
    })
}

pub fn verify_certificate(g: &Digraph, cert: &Certificate) -> Result<Verdict> {
    match cert {
        Certificate::DegreeTangle(c) => verify_degree_tangle(g, c),
        Certificate::MatchingTangle(c) => verify_matching_tangle(g, c),
        Certificate::Spider(c) => verify_spider(g, c),
    }
}

/// `wld(v)`: vertices of out-degree at most `d+(v)` that are not
/// out-neighbors of `v`. Always at least 1, since `v` counts itself.
pub fn wildness(g: &Digraph, v: usize) -> usize {
    let dv = g.out_degree(v);
    (0..g.vertex_count())
        .filter(|&u| g.out_degree(u) <= dv && !g.has_edge(v, u))
        .count()
}

/// Tameness check with the true pathwidth relaxed to a caller-supplied
/// upper bound. The thresholds grow with the pathwidth, so a valid
/// upper bound can only classify more vertices as tame.
pub fn verify_tameness(g: &Digraph, cert: &Certificate, pw_upper: usize) -> Result<bool> {
    require_semicomplete(g)?;
    Ok(match cert {
        Certificate::DegreeTangle(c) => c
            .t
            .iter()
            .all(|&v| wildness(g, v) <= 3 * c.l + c.k + 2 * pw_upper),
        Certificate::MatchingTangle(c) => {
            let low = c
                .t1
                .iter()
                .all(|&v| wildness(g, v) + g.out_degree(v) <= 3 * c.l + c.d + c.k + 2 * pw_upper);
            let high = c
                .t2
                .iter()
                .all(|&v| wildness(g, v) + c.d <= 3 * c.l + g.out_degree(v) + 2 * pw_upper);
            low && high
        }
        Certificate::Spider(c) => c.legs.iter().all(|leg| {
            let tame_left = leg
                .left
                .iter()
                .filter(|&&u| {
                    wildness(g, u) + g.out_degree(u) <= 3 * c.l + c.d + c.w + 2 * pw_upper
                })
                .count();
            let tame_right = leg
                .right
                .iter()
                .filter(|&&u| wildness(g, u) + c.d <= 3 * c.l + g.out_degree(u) + 2 * pw_upper)
                .count();
            tame_left >= 2 * c.l && tame_right >= 2 * c.l
        }),
    })
}

/// Best bound obtainable from degree intervals:
/// `max over d1 + d2 < n of ⌈(|V≥d1out ∩ V≥d2in| - n + d1 + d2) / 2⌉`.
pub fn degree_interval_lower_bound(g: &Digraph) -> Result<usize> {
    require_semicomplete(g)?;
    let n = g.vertex_count();
    // count[x][y] = #{v : d+(v) ≥ x and d-(v) ≥ y} by suffix sums.
    let mut count = vec![vec![0usize; n + 2]; n + 2];
    for v in 0..n {
        count[g.out_degree(v)][g.in_degree(v)] += 1;
    }
    for x in (0..=n).rev() {
        for y in (0..=n).rev() {
            count[x][y] += count[x + 1][y] + count[x][y + 1];
            count[x][y] -= count[x + 1][y + 1];
        }
    }
    let mut best = 0usize;
    for d1 in 0..n {
        for d2 in 0..n - d1 {
            let hit = count[d1][d2];
            let slack = n - d1 - d2;
            if hit > slack {
                best = best.max((hit - slack).div_ceil(2));
            }
        }
    }
    Ok(best)
}

/// Largest degree tangle with window `k`: a sliding window over the
/// sorted out-degree sequence.
pub fn find_degree_tangle(g: &Digraph, k: usize) -> Result<Option<DegreeTangle>> {
    require_semicomplete(g)?;
    let n = g.vertex_count();
    if n == 0 {
        return Ok(None);
    }
    let mut by_degree: Vec<(usize, usize)> = (0..n).map(|v| (g.out_degree(v), v)).collect();
    by_degree.sort_unstable();
    let mut best: Option<(usize, usize)> = None; // (l, start index)
    let mut lo = 0;
    for hi in 0..n {
        while by_degree[hi].0 - by_degree[lo].0 > k {
            lo += 1;
        }
        let l = hi - lo + 1;
        if best.is_none_or(|(bl, _)| l > bl) {
            best = Some((l, lo));
        }
    }
    let (l, start) = best.expect("n > 0");
    let d = by_degree[start].0;
    let mut t: Vec<usize> = by_degree[start..start + l].iter().map(|&(_, v)| v).collect();
    t.sort_unstable();
    let cert = DegreeTangle { d, l, k, t };
    debug_assert!(matches!(
        verify_degree_tangle(g, &cert),
        Ok(Verdict::Accepted { .. })
    ));
    Ok(Some(cert))
}

/// Maximum matching tangle between `V≤d` and `V≥d+k+1`, via augmenting
/// paths on the edges of `g` from the low block into the high block.
pub fn find_matching_tangle(g: &Digraph, d: usize, k: usize) -> Result<Option<MatchingTangle>> {
    require_semicomplete(g)?;
    let n = g.vertex_count();
    let low: Vec<usize> = (0..n).filter(|&v| g.out_degree(v) <= d).collect();
    let high: Vec<usize> = (0..n).filter(|&v| g.out_degree(v) >= d + k + 1).collect();
    if low.is_empty() || high.is_empty() {
        return Ok(None);
    }
    let high_index: std::collections::HashMap<usize, usize> =
        high.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut matched_high: Vec<Option<usize>> = vec![None; high.len()];

    fn augment(
        g: &Digraph,
        v: usize,
        high_index: &std::collections::HashMap<usize, usize>,
        matched_high: &mut Vec<Option<usize>>,
        visited: &mut Vec<bool>,
    ) -> bool {
        for w in g.out_neighbors(v).iter() {
            let Some(&j) = high_index.get(&w) else {
                continue;
            };
            if visited[j] {
                continue;
            }
            visited[j] = true;
            let prev = matched_high[j];
            if prev.is_none() || augment(g, prev.unwrap(), high_index, matched_high, visited) {
                matched_high[j] = Some(v);
                return true;
            }
        }
        false
    }

    for &v in &low {
        let mut visited = vec![false; high.len()];
        augment(g, v, &high_index, &mut matched_high, &mut visited);
    }
    let mut phi: Vec<(usize, usize)> = matched_high
        .iter()
        .enumerate()
        .filter_map(|(j, &m)| m.map(|v| (v, high[j])))
        .collect();
    phi.sort_unstable();
    if phi.is_empty() {
        return Ok(None);
    }
    let cert = MatchingTangle {
        d,
        l: phi.len(),
        k,
        t1: phi.iter().map(|&(v, _)| v).collect(),
        t2: phi.iter().map(|&(_, w)| w).collect(),
        phi,
    };
    debug_assert!(matches!(
        verify_matching_tangle(g, &cert),
        Ok(Verdict::Accepted { .. })
    ));
    Ok(Some(cert))
}

/// One run of the sampling scenario: complete the graph, locate its
/// largest degree tangle for the given window, sample an independent
/// set of the complement of the underlying graph, and report how much
/// of the tangle survives in the induced subgraph.
#[derive(Clone, Debug, Serialize)]
pub struct SurvivalOutcome {
    pub h: usize,
    pub tangle_size: usize,
    pub sampled_size: usize,
    pub tangle_hit: usize,
    pub induced_semicomplete: bool,
    /// Out-degree spread of the surviving tangle inside the sampled
    /// subgraph, when any of it survives.
    pub hit_degree_spread: Option<usize>,
}

pub fn survival_experiment(g: &Digraph, window: usize, seed: u64) -> Result<SurvivalOutcome> {
    let n = g.vertex_count();
    let h = g.h_index();
    let completed = g.semicomplete_completion();
    let tangle = find_degree_tangle(&completed, window)?;
    let tangle_set = match &tangle {
        Some(c) => VertexSet::from_iter(n, c.t.iter().copied()),
        None => VertexSet::empty(n),
    };
    let complement = complement_of_underlying(g);
    let sample = sample_independent_set(&complement, h, seed)?;
    let (induced, map) = g.induce(&sample);
    let induced_semicomplete = induced.is_semicomplete();
    assert!(
        induced_semicomplete,
        "independent sets of the complement induce semicomplete subgraphs"
    );
    let hit = tangle_set.intersection(&sample);
    let hit_degree_spread = if hit.is_empty() {
        None
    } else {
        let degs: Vec<usize> = map
            .iter()
            .enumerate()
            .filter(|(_, &orig)| hit.contains(orig))
            .map(|(i, _)| induced.out_degree(i))
            .collect();
        Some(degs.iter().max().unwrap() - degs.iter().min().unwrap())
    };
    Ok(SurvivalOutcome {
        h,
        tangle_size: tangle_set.len(),
        sampled_size: sample.len(),
        tangle_hit: hit.len(),
        induced_semicomplete,
        hit_degree_spread,
    })
}

// --- Informational constants from the extraction analysis. ---

/// The coupled parameter `(h + 1) · k`.
pub fn scaled_parameter(k: u64, h: u64) -> u64 {
    (h + 1) * k
}

/// Smallest `k` the sampling analysis supports: `10^7 · (h + 1)^2`.
pub fn sampling_parameter_floor(h: u64) -> u64 {
    10_000_000 * (h + 1) * (h + 1)
}

/// Pathwidth threshold above which an h-semicomplete digraph contains a
/// semicomplete subgraph of pathwidth at least `k`: `128 · (h + 1) · k`.
pub fn extraction_threshold(k: u64, h: u64) -> u64 {
    128 * (h + 1) * k
}
