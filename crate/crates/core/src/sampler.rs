//! Regular completion of bounded-degree graphs and the independent-set
//! sampler with uniform vertex marginals.
//!
//! The sampler runs `s = ⌈n/(d+1)⌉` rounds. Round `i` deterministically
//! completes the surviving candidate graph into a `d`-regular graph on
//! `n_i = (2s - i)(d + 1)` vertices, draws one uniform vertex of it, and
//! removes the drawn vertex's closed neighborhood from the candidates,
//! admitting the vertex into the independent set when it was a real
//! candidate. Every vertex ends up in the result with probability
//! exactly `1 / (2(d + 1))`, and `|S ∩ I|` concentrates around its mean
//! with sub-Gaussian tails `exp(-t²/(9|S|))` for every fixed set `S`.

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::ugraph::UGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{Binomial, DiscreteCDF};

/// The target inclusion probability `1 / (2(d + 1))`.
pub fn inclusion_probability(d: usize) -> f64 {
    1.0 / (2.0 * (d as f64 + 1.0))
}

/// The four feasibility conditions for extending a graph with degree
/// sequence `degrees` (all at most `d`) by `m` new vertices into a
/// `d`-regular graph containing it as an induced subgraph:
/// `md ≥ t`, `m² - m(d+1) + t ≥ 0`, `m ≥ d - deg(v)` for all `v`, and
/// `(n + m)d` even, where `t = Σ (d - deg(v))`.
pub fn erdos_kelly_feasible(degrees: &[usize], d: usize, m: usize) -> Result<bool> {
    if let Some(&bad) = degrees.iter().find(|&&x| x > d) {
        return Err(Error::input(format!("degree {bad} exceeds d = {d}")));
    }
    let n = degrees.len();
    let t: usize = degrees.iter().map(|&x| d - x).sum();
    let c1 = m * d >= t;
    let c2 = (m * m + t) as i128 - (m * (d + 1)) as i128 >= 0;
    let c3 = degrees.iter().all(|&x| m >= d - x);
    let c4 = ((n + m) * d) % 2 == 0;
    Ok(c1 && c2 && c3 && c4)
}

/// Canonical deterministic `d`-regular completion on `big_n` vertices.
///
/// Requires `max degree ≤ d`, `big_n ≥ n + d + 1` and `big_n · d` even;
/// the original vertices keep their indices `0..n` and all original
/// edges survive. The construction greedily joins the two lowest-indexed
/// non-adjacent deficient vertices; when the deficient set is stuck
/// (pairwise adjacent), an edge rotation re-routes a previously added
/// edge that avoids the neighborhood of a deficient vertex. Original
/// edges are never removed. Total deficiency drops by two on every step,
/// which bounds the loop; a repair step that cannot find a rotation is a
/// hard failure, not a silent wrong output.
pub fn regular_completion(g: &UGraph, d: usize, big_n: usize) -> Result<UGraph> {
    let n = g.vertex_count();
    if g.max_degree() > d {
        return Err(Error::input(format!(
            "maximum degree {} exceeds d = {d}",
            g.max_degree()
        )));
    }
    if big_n < n + d + 1 {
        return Err(Error::input(format!(
            "need at least n + d + 1 = {} vertices, got {big_n}",
            n + d + 1
        )));
    }
    if (big_n * d) % 2 != 0 {
        return Err(Error::input(format!("{big_n} · {d} must be even")));
    }
    let mut h = UGraph::edgeless(big_n);
    for (u, v) in g.edges() {
        h.add_edge(u, v);
    }
    let mut deficient = VertexSet::empty(big_n);
    for v in 0..big_n {
        if h.degree(v) < d {
            deficient.insert(v);
        }
    }
    let mut steps = 0usize;
    let step_limit = big_n * d + 4;
    while !deficient.is_empty() {
        steps += 1;
        assert!(steps <= step_limit, "completion failed to make progress");
        if greedy_join(&mut h, &mut deficient, d) {
            continue;
        }
        // Deficient vertices are pairwise adjacent now.
        if rotate_for_single(g, &mut h, &mut deficient, d) {
            continue;
        }
        if rotate_for_pair(g, &mut h, &mut deficient, d) {
            continue;
        }
        panic!("no completion repair applies; deficient = {deficient:?}");
    }
    for v in 0..big_n {
        assert_eq!(h.degree(v), d, "vertex {v} ended with a wrong degree");
    }
    for (u, v) in g.edges() {
        assert!(h.has_edge(u, v), "original edge ({u}, {v}) was dropped");
    }
    Ok(h)
}

/// Adds the lexicographically smallest edge between two non-adjacent
/// deficient vertices, if any.
fn greedy_join(h: &mut UGraph, deficient: &mut VertexSet, d: usize) -> bool {
    let candidates: Vec<usize> = deficient.iter().collect();
    for &u in &candidates {
        let mut partners = deficient.clone();
        partners.subtract(h.neighbors(u));
        partners.remove(u);
        if let Some(v) = partners.first() {
            add_and_settle(h, deficient, d, u, v);
            return true;
        }
    }
    false
}

/// Rotation for a vertex missing at least two edges: remove an added
/// edge `{x, y}` disjoint from `N[u]` and attach both ends to `u`.
fn rotate_for_single(g: &UGraph, h: &mut UGraph, deficient: &mut VertexSet, d: usize) -> bool {
    let candidates: Vec<usize> = deficient.iter().filter(|&u| d - h.degree(u) >= 2).collect();
    for u in candidates {
        if let Some((x, y)) = find_removable_edge(g, h, |x, y| {
            x != u && y != u && !h.neighbors(u).contains(x) && !h.neighbors(u).contains(y)
        }) {
            h.remove_edge(x, y);
            add_and_settle(h, deficient, d, u, x);
            add_and_settle(h, deficient, d, u, y);
            return true;
        }
    }
    false
}

/// Rotation for two adjacent vertices missing one edge each: remove an
/// added edge `{x, y}` and attach `x` to one and `y` to the other.
fn rotate_for_pair(g: &UGraph, h: &mut UGraph, deficient: &mut VertexSet, d: usize) -> bool {
    let members: Vec<usize> = deficient.iter().collect();
    for &u in &members {
        for &w in &members {
            if u == w {
                continue;
            }
            if let Some((x, y)) = find_removable_edge(g, h, |x, y| {
                x != u
                    && y != u
                    && x != w
                    && y != w
                    && !h.neighbors(u).contains(x)
                    && !h.neighbors(w).contains(y)
            }) {
                h.remove_edge(x, y);
                add_and_settle(h, deficient, d, u, x);
                add_and_settle(h, deficient, d, w, y);
                return true;
            }
        }
    }
    false
}

/// Lexicographically smallest previously added edge, in either
/// orientation, satisfying `pred(x, y)`.
fn find_removable_edge(
    g: &UGraph,
    h: &UGraph,
    pred: impl Fn(usize, usize) -> bool,
) -> Option<(usize, usize)> {
    let n = g.vertex_count();
    for x in 0..h.vertex_count() {
        for y in h.neighbors(x).iter() {
            if y <= x {
                continue;
            }
            if x < n && y < n && g.has_edge(x, y) {
                continue;
            }
            if pred(x, y) {
                return Some((x, y));
            }
            if pred(y, x) {
                return Some((y, x));
            }
        }
    }
    None
}

fn add_and_settle(h: &mut UGraph, deficient: &mut VertexSet, d: usize, u: usize, v: usize) {
    debug_assert!(!h.has_edge(u, v) && u != v);
    h.add_edge(u, v);
    debug_assert!(h.degree(u) <= d && h.degree(v) <= d);
    if h.degree(u) == d {
        deficient.remove(u);
    }
    if h.degree(v) == d {
        deficient.remove(v);
    }
}

/// Number of sampler rounds, `⌈n / (d + 1)⌉`.
pub fn round_count(n: usize, d: usize) -> usize {
    n.div_ceil(d + 1)
}

/// Candidate-pool size in round `i`: `(2s - i)(d + 1)`.
pub fn pool_size(n: usize, d: usize, i: usize) -> usize {
    (2 * round_count(n, d) - i) * (d + 1)
}

/// State after a sampler round, exposed so that the evolution can be
/// inspected or enumerated exactly.
#[derive(Clone, Debug)]
pub struct SamplerState {
    pub round: usize,
    pub candidates: VertexSet,
    pub independent: VertexSet,
}

/// Samples an independent set of `g` in which every vertex appears with
/// probability exactly `1 / (2(d + 1))`. Deterministic per seed.
pub fn sample_independent_set(g: &UGraph, d: usize, seed: u64) -> Result<VertexSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_with_draws(g, d, &mut |n_i| rng.gen_range(0..n_i)).map(|st| st.independent)
}

/// Runs the full procedure with an arbitrary draw source; the test
/// suites use this to enumerate every outcome exactly.
pub fn sample_with_draws(
    g: &UGraph,
    d: usize,
    draw: &mut dyn FnMut(usize) -> usize,
) -> Result<SamplerState> {
    if g.max_degree() > d {
        return Err(Error::input(format!(
            "maximum degree {} exceeds d = {d}",
            g.max_degree()
        )));
    }
    let n = g.vertex_count();
    let rounds = round_count(n, d);
    let mut state = SamplerState {
        round: 0,
        candidates: VertexSet::full(n),
        independent: VertexSet::empty(n),
    };
    for i in 0..rounds {
        state = sampler_round(g, d, &state, draw(pool_size(n, d, i)))?;
    }
    assert!(g.is_independent(&state.independent));
    Ok(state)
}

/// Applies one round given the uniform draw `pick ∈ [0, n_i)`.
pub fn sampler_round(
    g: &UGraph,
    d: usize,
    state: &SamplerState,
    pick: usize,
) -> Result<SamplerState> {
    let n = g.vertex_count();
    let i = state.round;
    let n_i = pool_size(n, d, i);
    assert!(
        n_i >= state.candidates.len() + d + 1,
        "pool must exceed the candidate count by more than d"
    );
    assert!(pick < n_i);
    let (sub, map) = g.induce(&state.candidates);
    let completed = regular_completion(&sub, d, n_i)?;
    let mut next = SamplerState {
        round: i + 1,
        candidates: state.candidates.clone(),
        independent: state.independent.clone(),
    };
    if pick < map.len() {
        let orig = map[pick];
        next.independent.insert(orig);
        next.candidates.remove(orig);
    }
    for nb in completed.neighbors(pick).iter() {
        if nb < map.len() {
            next.candidates.remove(map[nb]);
        }
    }
    debug_assert!(g.is_independent(&next.independent));
    debug_assert!(next
        .independent
        .iter()
        .all(|v| g.neighbors(v).is_disjoint_from(&next.candidates)));
    Ok(next)
}

/// Repeated-trial driver that caches the deterministic completion of
/// each reachable `(round, candidates)` state, keyed by the candidate
/// set. Produces bit-identical results to [`sample_independent_set`].
pub struct TrialRunner<'g> {
    g: &'g UGraph,
    d: usize,
    rounds: usize,
    cache: std::collections::HashMap<(usize, VertexSet), RoundTable>,
}

struct RoundTable {
    /// Original vertex admitted by each pick, if the pick hits a
    /// candidate slot.
    picked: Vec<Option<usize>>,
    /// Original vertices removed from the candidate set by each pick.
    removed: Vec<VertexSet>,
}

const TRIAL_CACHE_CAP: usize = 1 << 18;

impl<'g> TrialRunner<'g> {
    pub fn new(g: &'g UGraph, d: usize) -> Result<Self> {
        if g.max_degree() > d {
            return Err(Error::input(format!(
                "maximum degree {} exceeds d = {d}",
                g.max_degree()
            )));
        }
        Ok(TrialRunner {
            g,
            d,
            rounds: round_count(g.vertex_count(), d),
            cache: std::collections::HashMap::new(),
        })
    }

    pub fn run(&mut self, seed: u64) -> Result<VertexSet> {
        let n = self.g.vertex_count();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut candidates = VertexSet::full(n);
        let mut independent = VertexSet::empty(n);
        for i in 0..self.rounds {
            let n_i = pool_size(n, self.d, i);
            let pick = rng.gen_range(0..n_i);
            let table = self.table(i, &candidates)?;
            if let Some(orig) = table.picked[pick] {
                independent.insert(orig);
            }
            let removed = table.removed[pick].clone();
            candidates.subtract(&removed);
        }
        Ok(independent)
    }

    fn table(&mut self, round: usize, candidates: &VertexSet) -> Result<&RoundTable> {
        let key = (round, candidates.clone());
        if !self.cache.contains_key(&key) {
            let n = self.g.vertex_count();
            let n_i = pool_size(n, self.d, round);
            let (sub, map) = self.g.induce(candidates);
            let completed = regular_completion(&sub, self.d, n_i)?;
            let mut picked = Vec::with_capacity(n_i);
            let mut removed = Vec::with_capacity(n_i);
            for pick in 0..n_i {
                picked.push(if pick < map.len() { Some(map[pick]) } else { None });
                let mut gone = VertexSet::empty(n);
                if pick < map.len() {
                    gone.insert(map[pick]);
                }
                for nb in completed.neighbors(pick).iter() {
                    if nb < map.len() {
                        gone.insert(map[nb]);
                    }
                }
                removed.push(gone);
            }
            if self.cache.len() >= TRIAL_CACHE_CAP {
                self.cache.clear();
            }
            self.cache.insert(key.clone(), RoundTable { picked, removed });
        }
        Ok(self.cache.get(&key).expect("just inserted"))
    }
}

// --- Monte-Carlo validation harness. ---

/// Exact central binomial interval: the smallest `[lo, hi]` with
/// `P(X < lo) ≤ α/2` and `P(X > hi) ≤ α/2` for `X ~ Bin(trials, p)`.
pub fn binomial_central_interval(trials: u64, p: f64, alpha: f64) -> (u64, u64) {
    let dist = Binomial::new(p, trials).expect("valid binomial parameters");
    let half = alpha / 2.0;
    // Largest lo with P(X ≤ lo - 1) ≤ half.
    let mut lo = 0u64;
    let mut hi_search = trials;
    while lo < hi_search {
        let mid = (lo + hi_search + 1) / 2;
        if dist.cdf(mid - 1) <= half {
            lo = mid;
        } else {
            hi_search = mid - 1;
        }
    }
    // Smallest hi with P(X > hi) ≤ half.
    let mut a = 0u64;
    let mut b = trials;
    while a < b {
        let mid = (a + b) / 2;
        if 1.0 - dist.cdf(mid) <= half {
            b = mid;
        } else {
            a = mid + 1;
        }
    }
    (lo, a)
}

#[derive(Clone, Debug)]
pub struct VertexMarginal {
    pub vertex: usize,
    pub hits: u64,
    pub interval: (u64, u64),
}

impl VertexMarginal {
    pub fn within(&self) -> bool {
        self.hits >= self.interval.0 && self.hits <= self.interval.1
    }
}

#[derive(Clone, Debug)]
pub struct TailRow {
    pub set_id: usize,
    pub t: usize,
    pub empirical_upper: f64,
    pub bound: f64,
    pub empirical_lower: f64,
    /// Monte-Carlo slack: three standard deviations of an estimator at
    /// the bound value.
    pub slack: f64,
}

impl TailRow {
    pub fn within(&self) -> bool {
        let cap = self.bound + self.slack;
        self.empirical_upper <= cap && self.empirical_lower <= cap
    }
}

#[derive(Clone, Debug)]
pub struct StatsReport {
    pub trials: u64,
    pub d: usize,
    pub p: f64,
    pub alpha: f64,
    pub marginals: Vec<VertexMarginal>,
    pub tails: Vec<TailRow>,
    pub all_independent: bool,
}

impl StatsReport {
    pub fn marginals_ok(&self) -> bool {
        self.marginals.iter().all(VertexMarginal::within)
    }

    pub fn tails_ok(&self) -> bool {
        self.tails.iter().all(TailRow::within)
    }

    /// Machine-readable rows: `set_id,t,empirical_upper,bound,empirical_lower`.
    pub fn csv(&self) -> String {
        let mut out = String::from("set_id,t,empirical_upper,bound,empirical_lower\n");
        for row in &self.tails {
            out.push_str(&format!(
                "{},{},{:.6e},{:.6e},{:.6e}\n",
                row.set_id, row.t, row.empirical_upper, row.bound, row.empirical_lower
            ));
        }
        out
    }

    pub fn table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "trials {}   d {}   target inclusion {:.6}\n",
            self.trials, self.d, self.p
        ));
        out.push_str(&format!(
            "independence held in all trials: {}\n",
            self.all_independent
        ));
        out.push_str(&format!(
            "per-vertex marginals inside the {:.1}% interval: {} of {}\n",
            100.0 * (1.0 - self.alpha),
            self.marginals.iter().filter(|m| m.within()).count(),
            self.marginals.len()
        ));
        for m in &self.marginals {
            out.push_str(&format!(
                "  v{:<4} hits {:>8}  freq {:.5}  interval [{}, {}]{}\n",
                m.vertex,
                m.hits,
                m.hits as f64 / self.trials as f64,
                m.interval.0,
                m.interval.1,
                if m.within() { "" } else { "  OUTSIDE" }
            ));
        }
        if !self.tails.is_empty() {
            out.push_str(
                "tail exceedances (bound exp(-t²/9|S|); 6-denominator shown for reference):\n",
            );
            out.push_str("  set    t   upper        lower        bound        bound6\n");
        }
        for row in &self.tails {
            let bound6 = (row.bound.ln() * 9.0 / 6.0).exp();
            out.push_str(&format!(
                "  {:<4} {:>3}   {:<10.4e}   {:<10.4e}   {:<10.4e}   {:<10.4e}{}\n",
                row.set_id,
                row.t,
                row.empirical_upper,
                row.empirical_lower,
                row.bound,
                bound6,
                if row.within() { "" } else { "  EXCEEDED" }
            ));
        }
        out
    }
}

/// Runs `trials` seeded samples and checks the per-vertex marginals
/// against the exact binomial interval and the per-set tail masses
/// against `exp(-t²/(9|S|))`. Trial `i` uses seed `base_seed + i`, so
/// results do not depend on `jobs`.
pub fn marginal_and_tail_check(
    g: &UGraph,
    d: usize,
    trials: u64,
    target_sets: &[VertexSet],
    base_seed: u64,
    alpha: f64,
    jobs: usize,
) -> Result<StatsReport> {
    if trials == 0 {
        return Err(Error::input("at least one trial is required"));
    }
    let n = g.vertex_count();
    let p = inclusion_probability(d);

    struct Partial {
        vertex_hits: Vec<u64>,
        // per set: histogram of |S ∩ I| over trials
        set_hist: Vec<Vec<u64>>,
        all_independent: bool,
    }

    let run_range = |from: u64, to: u64| -> Result<Partial> {
        let mut part = Partial {
            vertex_hits: vec![0; n],
            set_hist: target_sets.iter().map(|s| vec![0u64; s.len() + 1]).collect(),
            all_independent: true,
        };
        let mut runner = TrialRunner::new(g, d)?;
        for trial in from..to {
            let sample = runner.run(base_seed.wrapping_add(trial))?;
            part.all_independent &= g.is_independent(&sample);
            for v in sample.iter() {
                part.vertex_hits[v] += 1;
            }
            for (idx, s) in target_sets.iter().enumerate() {
                part.set_hist[idx][s.intersection_len(&sample)] += 1;
            }
        }
        Ok(part)
    };

    let jobs = jobs.max(1).min(trials as usize);
    let mut merged = Partial {
        vertex_hits: vec![0; n],
        set_hist: target_sets.iter().map(|s| vec![0u64; s.len() + 1]).collect(),
        all_independent: true,
    };
    if jobs <= 1 {
        merged = run_range(0, trials)?;
    } else {
        let chunk = trials.div_ceil(jobs as u64);
        let partials: Vec<Result<Partial>> = std::thread::scope(|scope| {
            let mut handles = Vec::new();
            for j in 0..jobs as u64 {
                let from = j * chunk;
                let to = ((j + 1) * chunk).min(trials);
                let runner = &run_range;
                handles.push(scope.spawn(move || runner(from, to)));
            }
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        for part in partials {
            let part = part?;
            merged.all_independent &= part.all_independent;
            for (a, b) in merged.vertex_hits.iter_mut().zip(&part.vertex_hits) {
                *a += b;
            }
            for (a, b) in merged.set_hist.iter_mut().zip(&part.set_hist) {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
            }
        }
    }

    let interval = binomial_central_interval(trials, p, alpha);
    let marginals = (0..n)
        .map(|v| VertexMarginal {
            vertex: v,
            hits: merged.vertex_hits[v],
            interval,
        })
        .collect();

    let mut tails = Vec::new();
    for (idx, s) in target_sets.iter().enumerate() {
        let size = s.len();
        if size == 0 {
            continue;
        }
        let hist = &merged.set_hist[idx];
        let mean = p * size as f64;
        let t_max = (3.0 * (size as f64).sqrt()).ceil() as usize;
        for t in 1..=t_max {
            let upper_cut = mean + t as f64;
            let lower_cut = mean - t as f64;
            let upper: u64 = hist
                .iter()
                .enumerate()
                .filter(|&(c, _)| c as f64 > upper_cut)
                .map(|(_, &x)| x)
                .sum();
            let lower: u64 = hist
                .iter()
                .enumerate()
                .filter(|&(c, _)| (c as f64) < lower_cut)
                .map(|(_, &x)| x)
                .sum();
            let bound = (-((t * t) as f64) / (9.0 * size as f64)).exp();
            let capped = bound.min(1.0);
            let slack = 3.0 * (capped * (1.0 - capped) / trials as f64).sqrt();
            tails.push(TailRow {
                set_id: idx,
                t,
                empirical_upper: upper as f64 / trials as f64,
                bound,
                empirical_lower: lower as f64 / trials as f64,
                slack,
            });
        }
    }

    Ok(StatsReport {
        trials,
        d,
        p,
        alpha,
        marginals,
        tails,
        all_independent: merged.all_independent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ugraph::random_ugraph_max_degree;

    #[test]
    fn feasibility_conditions() {
        // Isolated vertex, d = 2: m = 1 violates m ≥ d - deg.
        assert!(!erdos_kelly_feasible(&[0], 2, 1).unwrap());
        assert!(erdos_kelly_feasible(&[0], 2, 2).unwrap());
        // An already regular graph extends by m = 0 exactly when nd is
        // even (here: triangle).
        assert!(erdos_kelly_feasible(&[2, 2, 2], 2, 0).unwrap());
        // Degree above d is invalid input.
        assert!(erdos_kelly_feasible(&[3], 2, 1).is_err());
    }

    #[test]
    fn completion_of_single_edge() {
        // d = 1, N = 4: only perfect matchings are 1-regular, so the
        // result is the original edge plus one new edge.
        let g = UGraph::new(2, &[(0, 1)]).unwrap();
        let h = regular_completion(&g, 1, 4).unwrap();
        assert!(h.has_edge(0, 1));
        assert!(h.has_edge(2, 3));
        assert_eq!(h.edge_count(), 2);
    }

    #[test]
    fn completion_of_path_three() {
        let g = UGraph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let h = regular_completion(&g, 2, 6).unwrap();
        for v in 0..6 {
            assert_eq!(h.degree(v), 2);
        }
        assert!(h.has_edge(0, 1) && h.has_edge(1, 2));
    }

    #[test]
    fn completion_rejects_bad_inputs() {
        let g = UGraph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(regular_completion(&g, 1, 6).is_err()); // degree 2 > 1
        assert!(regular_completion(&g, 2, 5).is_err()); // below n + d + 1
        assert!(regular_completion(&g, 3, 7).is_err()); // odd product
    }

    #[test]
    fn completion_grid_stress() {
        // All (graph, d, N) with small n, d ≤ 5, and every valid N up to
        // n + 3(d + 1); the asserts inside regular_completion check
        // d-regularity and subgraph containment on every call.
        for n in 0..8usize {
            for d in 0..=5usize {
                for seed in 0..4u64 {
                    let g = random_ugraph_max_degree(n, d, 17 * seed + n as u64);
                    for big_n in (n + d + 1)..=(n + 3 * (d + 1)) {
                        if (big_n * d) % 2 != 0 {
                            continue;
                        }
                        let h = regular_completion(&g, d, big_n).unwrap();
                        assert_eq!(h.vertex_count(), big_n);
                    }
                }
            }
        }
    }

    #[test]
    fn sampler_is_deterministic_and_independent() {
        for seed in 0..30 {
            let g = random_ugraph_max_degree(14, 3, seed);
            let a = sample_independent_set(&g, 3, seed ^ 0xabc).unwrap();
            let b = sample_independent_set(&g, 3, seed ^ 0xabc).unwrap();
            assert_eq!(a, b);
            assert!(g.is_independent(&a));
        }
    }

    #[test]
    fn single_edge_marginal_is_one_quarter() {
        // K2 with d = 1: one round, pool of four, so each endpoint is
        // admitted exactly when its own pool slot is drawn.
        let g = UGraph::new(2, &[(0, 1)]).unwrap();
        let mut hits = [0usize; 2];
        for pick in 0..4 {
            let st = sample_with_draws(&g, 1, &mut |_| pick).unwrap();
            for v in st.independent.iter() {
                hits[v] += 1;
            }
            assert!(st.independent.len() <= 1);
        }
        assert_eq!(hits, [1, 1]);
    }

    #[test]
    fn degenerate_inputs() {
        let empty = UGraph::edgeless(0);
        assert!(sample_independent_set(&empty, 2, 1).unwrap().is_empty());
        let lone = UGraph::edgeless(1);
        let s = sample_independent_set(&lone, 0, 5).unwrap();
        assert!(s.len() <= 1);
    }

    #[test]
    fn binomial_interval_brackets_the_mean() {
        let (lo, hi) = binomial_central_interval(100_000, 0.5, 0.001);
        assert!(lo < 50_000 && hi > 50_000);
        assert!(lo > 49_000 && hi < 51_000);
        let (lo0, _) = binomial_central_interval(10, 0.0, 0.001);
        assert_eq!(lo0, 0);
    }

    #[test]
    fn quick_marginal_check_on_edgeless_graph() {
        // d = 0: inclusion probability is exactly one half.
        let g = UGraph::edgeless(4);
        let sets = [VertexSet::full(4)];
        let rep = marginal_and_tail_check(&g, 0, 4000, &sets, 99, 0.001, 2).unwrap();
        assert!(rep.all_independent);
        assert!(rep.marginals_ok(), "{}", rep.table());
        assert!(rep.tails_ok(), "{}", rep.table());
        let csv = rep.csv();
        assert!(csv.starts_with("set_id,t,empirical_upper,bound,empirical_lower"));
    }

    #[test]
    fn cached_runner_matches_plain_sampler() {
        for (n, d) in [(13usize, 0usize), (12, 1), (15, 3)] {
            let g = random_ugraph_max_degree(n, d, 3 * n as u64 + d as u64);
            let mut runner = TrialRunner::new(&g, d).unwrap();
            for seed in 0..200 {
                let fast = runner.run(seed).unwrap();
                let plain = sample_independent_set(&g, d, seed).unwrap();
                assert_eq!(fast, plain, "n={n} d={d} seed={seed}");
            }
        }
    }

    #[test]
    fn parallel_run_matches_serial() {
        let g = random_ugraph_max_degree(10, 2, 5);
        let sets = [VertexSet::from_iter(10, [0, 1, 2, 3, 4])];
        let serial = marginal_and_tail_check(&g, 2, 500, &sets, 7, 0.001, 1).unwrap();
        let parallel = marginal_and_tail_check(&g, 2, 500, &sets, 7, 0.001, 4).unwrap();
        let s_hits: Vec<u64> = serial.marginals.iter().map(|m| m.hits).collect();
        let p_hits: Vec<u64> = parallel.marginals.iter().map(|m| m.hits).collect();
        assert_eq!(s_hits, p_hits);
    }
}
