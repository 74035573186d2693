//! The Lukasiewicz exploration walk, built two independent ways — by running
//! the stack exploration on a sampled core, and analytically from independent
//! Poisson increments — together with its excursion decomposition, giant
//! markers, and hitting times.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{CoreGraph, ModelParams};
use crate::stochastic::{
    counting_process_at, geometric_skip_unchecked, poisson_unchecked, RandomStream,
};

/// Which construction produced a walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WalkSource {
    /// Stack exploration of a sampled core.
    Graph,
    /// Independent Poisson increments `P(alpha p (1-p)^(k-1)) - 1`.
    Analytic,
}

/// How the analytic walk draws its randomness. Both routes share one law;
/// they differ only in which kernel primitive realizes it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AnalyticRoute {
    /// One Poisson draw per step with geometrically decaying means.
    #[default]
    PerStep,
    /// One counting-process path evaluated on the grid
    /// `t_k = alpha (1 - (1-p)^k)`, with `S_k = N(t_k) - k`.
    CountingProcess,
}

/// A skip-free-downward walk: increments `>= -1` and prefix values anchored
/// at `S_0 = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LukasiewiczWalk {
    increments: Vec<i32>,
    values: Vec<i32>,
    source: WalkSource,
}

impl LukasiewiczWalk {
    /// Assemble a walk from raw increments. Panics if any increment is below
    /// -1 or a prefix value leaves i32 range.
    pub fn from_increments(increments: Vec<i32>, source: WalkSource) -> Self {
        let mut values = Vec::with_capacity(increments.len() + 1);
        values.push(0i32);
        let mut acc = 0i64;
        for &d in &increments {
            assert!(d >= -1, "walk increments must be >= -1, got {d}");
            acc += d as i64;
            values.push(i32::try_from(acc).expect("walk value out of i32 range"));
        }
        LukasiewiczWalk {
            increments,
            values,
            source,
        }
    }

    /// Number of steps.
    pub fn len(&self) -> usize {
        self.increments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.increments.is_empty()
    }

    pub fn source(&self) -> WalkSource {
        self.source
    }

    pub fn increments(&self) -> &[i32] {
        &self.increments
    }

    /// Prefix values `S_0, ..., S_len`; index k holds `S_k`.
    pub fn values(&self) -> &[i32] {
        &self.values
    }

    /// `S_k` as i64.
    pub fn value(&self, k: usize) -> i64 {
        self.values[k] as i64
    }

    /// Times `k >= 1` at which the walk attains a new strict minimum.
    pub fn record_times(&self) -> Vec<usize> {
        let mut records = Vec::new();
        let mut min = 0i32;
        for k in 1..self.values.len() {
            if self.values[k] < min {
                min = self.values[k];
                records.push(k);
            }
        }
        records
    }

    /// Walk dump: CSV with columns `k,S_k,is_record`, LF line endings.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,S_k,is_record\n");
        let mut min = 0i32;
        for (k, &v) in self.values.iter().enumerate() {
            let record = k > 0 && v < min;
            if record {
                min = v;
            }
            let _ = write!(out, "{k},{v},{}\n", u8::from(record));
        }
        out
    }
}

/// One excursion of the walk above its running infimum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Excursion {
    /// Value-array index of the previous minimal record (excursion opens at
    /// step `start + 1`).
    pub start: usize,
    /// Value-array index of the record that closes the excursion; for a
    /// truncated excursion, the end of the walk.
    pub end: usize,
    /// Steps in the excursion: one stack-origin vertex plus its core vertices.
    pub stack_size: usize,
    /// Sizes of the core sub-components glued by the stack-origin vertex,
    /// read off the shifted sub-walk.
    pub core_subsizes: Vec<usize>,
    /// Set when the walk ended before this excursion closed.
    pub truncated: bool,
}

/// Excursion decomposition of a walk: one entry per stack component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExcursionDecomposition {
    pub excursions: Vec<Excursion>,
}

impl ExcursionDecomposition {
    /// All core sub-component sizes across complete excursions.
    pub fn all_core_subsizes(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self
            .excursions
            .iter()
            .filter(|e| !e.truncated)
            .flat_map(|e| e.core_subsizes.iter().copied())
            .collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes
    }

    /// Largest and second-largest core sub-component sizes.
    pub fn top_two_core_subsizes(&self) -> (usize, usize) {
        let mut first = 0usize;
        let mut second = 0usize;
        for e in &self.excursions {
            if e.truncated {
                continue;
            }
            for &s in &e.core_subsizes {
                if s > first {
                    second = first;
                    first = s;
                } else if s > second {
                    second = s;
                }
            }
        }
        (first, second)
    }

    /// Length of the longest excursion, truncated tail included.
    pub fn largest_excursion_len(&self) -> usize {
        self.excursions
            .iter()
            .map(|e| e.end - e.start)
            .max()
            .unwrap_or(0)
    }
}

/// First hitting time of -1 and the all-minus-one tail indicator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HittingTimes {
    /// First k with `S_k = -1`, absent if the stored walk never reaches -1.
    pub tau_minus_one: Option<usize>,
    /// Whether every stored increment after tau equals -1. For graph walks
    /// this is the connectedness criterion for the root-plus-core graph.
    pub all_minus_one_after: bool,
}

impl HittingTimes {
    /// `tau` present and only -1 jumps afterwards: the first excursion
    /// exhausted the core.
    pub fn first_excursion_exhausts_core(&self) -> bool {
        self.tau_minus_one.is_some() && self.all_minus_one_after
    }
}

/// Fenwick tree over vertex ids storing 0/1 membership, with rank select.
/// Backs the origin steps' geometric skips across the unexplored set.
struct IndexSet {
    tree: Vec<u32>,
    len: usize,
    remaining: usize,
}

impl IndexSet {
    fn full(n: usize) -> Self {
        // tree[i] = i & -i when every slot holds a one.
        let mut tree = vec![0u32; n + 1];
        for i in 1..=n {
            tree[i] = (i & i.wrapping_neg()) as u32;
        }
        IndexSet {
            tree,
            len: n,
            remaining: n,
        }
    }

    fn remaining(&self) -> usize {
        self.remaining
    }

    fn remove(&mut self, vertex: u32) {
        let mut i = vertex as usize + 1;
        while i <= self.len {
            self.tree[i] -= 1;
            i += i & i.wrapping_neg();
        }
        self.remaining -= 1;
    }

    /// Vertex with 1-based rank `rank` among members, in ascending order.
    fn select(&self, rank: usize) -> u32 {
        debug_assert!(rank >= 1 && rank <= self.remaining);
        let mut pos = 0usize;
        let mut rem = rank as u32;
        let mut mask = self.len.next_power_of_two();
        while mask > 0 {
            let next = pos + mask;
            if next <= self.len && self.tree[next] < rem {
                rem -= self.tree[next];
                pos = next;
            }
            mask >>= 1;
        }
        pos as u32
    }
}

/// Stack exploration of a sampled core under the Poissonized-graph semantics.
///
/// A LIFO frontier holds revealed core vertices. While it is empty, the next
/// step is a virtual stack-origin vertex whose edges toward the unexplored
/// core are drawn Bernoulli(`p`) on the spot via geometric skips; a popped
/// core vertex reveals its adjacency-list neighbors among the unexplored
/// core. Revealed vertices are marked and pushed in ascending index order
/// (so pops descend) and the step records `#revealed - 1`. The walk stops
/// once every core vertex is explored and the frontier has drained; the
/// implied infinite tail of -1 steps is not stored.
pub fn explore_graph_walk(
    stream: &mut RandomStream,
    core: &CoreGraph,
    p: f64,
) -> Result<LukasiewiczWalk> {
    explore_graph_walk_impl(stream, core, p, None)
}

pub(crate) fn explore_graph_walk_impl(
    stream: &mut RandomStream,
    core: &CoreGraph,
    p: f64,
    mut first_origin_hits: Option<&mut Vec<u32>>,
) -> Result<LukasiewiczWalk> {
    if !(0.0..=1.0).contains(&p) || !p.is_finite() {
        return Err(Error::invalid(format!("p must lie in [0, 1], got {p}")));
    }
    let n = core.n_vertices();
    let mut increments: Vec<i32> = Vec::with_capacity(n + 16);
    let mut explored = vec![false; n];
    let mut unexplored = IndexSet::full(n);
    let mut stack: Vec<u32> = Vec::new();
    let mut reveals: Vec<u32> = Vec::new();
    let mut first_origin = true;

    while unexplored.remaining() > 0 || !stack.is_empty() || increments.is_empty() {
        reveals.clear();
        if let Some(v) = stack.pop() {
            for &w in core.neighbors(v) {
                if !explored[w as usize] {
                    explored[w as usize] = true;
                    unexplored.remove(w);
                    reveals.push(w);
                }
            }
        } else {
            // Fresh stack-origin vertex: Bernoulli(p) edge to each unexplored
            // core vertex, enumerated with geometric skips.
            if p > 0.0 {
                let mut rank = 0u64;
                let available = unexplored.remaining() as u64;
                loop {
                    rank += geometric_skip_unchecked(stream, p);
                    if rank > available {
                        break;
                    }
                    reveals.push(unexplored.select(rank as usize));
                }
                for &w in &reveals {
                    explored[w as usize] = true;
                    unexplored.remove(w);
                }
            }
            if first_origin {
                if let Some(out) = first_origin_hits.as_deref_mut() {
                    out.extend_from_slice(&reveals);
                }
                first_origin = false;
            }
        }
        // Ascending pushes make the LIFO pop in descending index order.
        debug_assert!(reveals.windows(2).all(|w| w[0] < w[1]));
        stack.extend_from_slice(&reveals);
        increments.push(reveals.len() as i32 - 1);
    }

    Ok(LukasiewiczWalk::from_increments(increments, WalkSource::Graph))
}

/// Analytic walk: `k_max` independent increments
/// `P(alpha p (1-p)^(k-1)) - 1`, or equivalently one counting-process path
/// read on the grid `alpha (1 - (1-p)^k)`. Both routes sit behind
/// [`AnalyticRoute`] and agree in distribution.
pub fn analytic_walk(
    stream: &mut RandomStream,
    params: &ModelParams,
    k_max: usize,
    route: AnalyticRoute,
) -> Result<LukasiewiczWalk> {
    params.validate()?;
    if k_max < 1 {
        return Err(Error::invalid("analytic walk requires k_max >= 1"));
    }
    if params.alpha >= i32::MAX as f64 / 2.0 || k_max >= i32::MAX as usize {
        return Err(Error::invalid(
            "walk values would overflow; reduce alpha or k_max",
        ));
    }

    let increments = match route {
        AnalyticRoute::PerStep => {
            let q = 1.0 - params.p;
            let mut mean = params.alpha * params.p;
            let mut increments = Vec::with_capacity(k_max);
            for _ in 0..k_max {
                increments.push(poisson_unchecked(stream, mean) as i32 - 1);
                mean *= q;
            }
            increments
        }
        AnalyticRoute::CountingProcess => {
            let q = 1.0 - params.p;
            let mut times = Vec::with_capacity(k_max + 1);
            times.push(0.0);
            let mut qk = 1.0;
            for _ in 0..k_max {
                qk *= q;
                times.push(params.alpha * (1.0 - qk));
            }
            let path = counting_process_at(stream, &times)?;
            let mut increments = Vec::with_capacity(k_max);
            for k in 1..=k_max {
                let s_k = path.counts[k] as i64 - k as i64;
                let s_prev = path.counts[k - 1] as i64 - (k as i64 - 1);
                increments.push((s_k - s_prev) as i32);
            }
            increments
        }
    };
    Ok(LukasiewiczWalk::from_increments(
        increments,
        WalkSource::Analytic,
    ))
}

/// Split a walk at its strict minimal records into stack-component
/// excursions, and each complete excursion into the core sub-components
/// glued by its stack-origin vertex (the sub-excursions of the shifted walk
/// above its own running infimum). A walk that does not end on a minimal
/// record yields a final excursion flagged `truncated` instead of a silently
/// sized one.
pub fn decompose_excursions(walk: &LukasiewiczWalk) -> Result<ExcursionDecomposition> {
    if walk.is_empty() {
        return Err(Error::invalid("cannot decompose an empty walk"));
    }
    let values = walk.values();
    let mut excursions = Vec::new();
    let mut start = 0usize;
    let mut min = 0i32;
    for k in 1..values.len() {
        if values[k] < min {
            min = values[k];
            excursions.push(build_excursion(walk, start, k, false));
            start = k;
        }
    }
    if start + 1 < values.len() {
        excursions.push(build_excursion(walk, start, values.len() - 1, true));
    }
    Ok(ExcursionDecomposition { excursions })
}

fn build_excursion(walk: &LukasiewiczWalk, start: usize, end: usize, truncated: bool) -> Excursion {
    // Shifted sub-walk: drop the excursion's first step (the stack-origin
    // step) and cut at new strict minima relative to its opening value.
    let increments = walk.increments();
    let mut core_subsizes = Vec::new();
    let mut acc = 0i64;
    let mut min = 0i64;
    let mut len = 0usize;
    for &d in &increments[start + 1..end] {
        acc += d as i64;
        len += 1;
        if acc < min {
            min = acc;
            core_subsizes.push(len);
            len = 0;
        }
    }
    if truncated && len > 0 {
        // The partial trailing sub-component is not sized.
    } else {
        debug_assert_eq!(len, 0);
    }
    Excursion {
        start,
        end,
        stack_size: end - start,
        core_subsizes,
        truncated,
    }
}

/// Deterministic core-only Lukasiewicz exploration: roots are taken in
/// ascending vertex order, each step pops the frontier top and reveals its
/// unexplored neighbors, and the excursions between strict minimal records
/// are exactly the connected components of the core. This is the walk-route
/// component counter dual to the union-find oracle.
pub fn core_component_sizes(core: &CoreGraph) -> Vec<usize> {
    let n = core.n_vertices();
    let mut explored = vec![false; n];
    let mut sizes = Vec::new();
    let mut stack: Vec<u32> = Vec::new();
    for root in 0..n as u32 {
        if explored[root as usize] {
            continue;
        }
        explored[root as usize] = true;
        stack.push(root);
        // One excursion: relative walk opens at 0 and closes at -1; each pop
        // consumes one component vertex.
        let mut relative = 0i64;
        let mut steps = 0usize;
        while let Some(v) = stack.pop() {
            let mut revealed = 0i64;
            for &w in core.neighbors(v) {
                if !explored[w as usize] {
                    explored[w as usize] = true;
                    stack.push(w);
                    revealed += 1;
                }
            }
            steps += 1;
            relative += revealed - 1;
        }
        debug_assert_eq!(relative, -1);
        sizes.push(steps);
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

/// Giant-component markers: `I` is the first index attaining the minimum of
/// `S` over `[0, floor(eps n)]`, and `J` the first `k >= I` with
/// `S_k = S_I - 1`, so `[I, J]` brackets the excursion straddling the window.
/// `J - I` is the stack-component size of that excursion.
pub fn giant_markers(walk: &LukasiewiczWalk, eps_fraction: f64, n: usize) -> Result<(usize, usize)> {
    if !(eps_fraction > 0.0) {
        return Err(Error::invalid("eps_fraction must be positive"));
    }
    let window = (eps_fraction * n as f64).floor() as usize;
    if window < 1 {
        return Err(Error::invalid(
            "eps_fraction * n must be at least 1 for giant markers",
        ));
    }
    if window >= walk.values().len() {
        return Err(Error::Truncated(format!(
            "walk of length {} is shorter than the marker window {window}; extend k_max",
            walk.len()
        )));
    }
    let values = walk.values();
    let mut idx = 0usize;
    for k in 1..=window {
        if values[k] < values[idx] {
            idx = k;
        }
    }
    let target = values[idx] - 1;
    for k in idx + 1..values.len() {
        if values[k] == target {
            return Ok((idx, k));
        }
    }
    Err(Error::Truncated(format!(
        "walk never returned to S_I - 1 after I = {idx}; extend k_max (vertices remain in the core)"
    )))
}

/// Default marker window fraction `min(0.05, beta(c)/4)`; the proof device
/// requires it below `beta(c)/2`.
pub fn default_marker_eps(beta: f64) -> f64 {
    (beta / 4.0).min(0.05)
}

/// Default analytic-walk horizon `ceil(max(3, 5/c) n)`: long enough that the
/// expected number of unexplored vertices, `n exp(-c x)`, is far below one.
pub fn default_k_max(n: usize, c: f64) -> usize {
    let x = (5.0 / c).max(3.0);
    (x * n as f64).ceil() as usize
}

/// First hitting time of -1 and whether the stored tail is all -1 jumps.
pub fn hitting_times(walk: &LukasiewiczWalk) -> Result<HittingTimes> {
    if walk.is_empty() {
        return Err(Error::invalid("hitting_times requires a nonempty walk"));
    }
    let values = walk.values();
    let tau = (1..values.len()).find(|&k| values[k] == -1);
    let all_after = match tau {
        Some(t) => walk.increments()[t..].iter().all(|&d| d == -1),
        None => false,
    };
    Ok(HittingTimes {
        tau_minus_one: tau,
        all_minus_one_after: all_after,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{chi_square_pmf, chi_square_two_sample, poisson_pmf, GOF_SIGNIFICANCE};
    use crate::graph::{components_oracle, sample_fixed_core, sample_poissonized_core};
    use proptest::prelude::*;

    fn walk(increments: &[i32]) -> LukasiewiczWalk {
        LukasiewiczWalk::from_increments(increments.to_vec(), WalkSource::Analytic)
    }

    #[test]
    fn empty_core_gives_single_minus_one_step() {
        let mut s = RandomStream::new(1, 0);
        let core = CoreGraph::from_edges(0, &[]).unwrap();
        let w = explore_graph_walk(&mut s, &core, 0.4).unwrap();
        assert_eq!(w.increments(), &[-1]);
        let dec = decompose_excursions(&w).unwrap();
        assert_eq!(dec.excursions.len(), 1);
        assert_eq!(dec.excursions[0].stack_size, 1);
        assert!(dec.excursions[0].core_subsizes.is_empty());
    }

    #[test]
    fn single_vertex_forced_walk() {
        let mut s = RandomStream::new(1, 0);
        let core = CoreGraph::from_edges(1, &[]).unwrap();
        let w = explore_graph_walk(&mut s, &core, 1.0).unwrap();
        assert_eq!(w.increments(), &[0, -1]);
    }

    #[test]
    fn graph_walk_consumes_every_core_vertex_once() {
        for seed in 0..50u64 {
            let mut s = RandomStream::new(seed, 0);
            let core = sample_fixed_core(&mut s, 25, 0.2).unwrap();
            let w = explore_graph_walk(&mut s, &core, 0.2).unwrap();
            let consumed: i64 = w.increments().iter().map(|&d| (d + 1) as i64).sum();
            assert_eq!(consumed, 25);
            assert!(w.increments().iter().all(|&d| d >= -1));
        }
    }

    #[test]
    fn first_step_reveals_poisson_many_neighbors() {
        // S_1 + 1 ~ Poisson(alpha p) on Poissonized cores: alpha=30, p=0.1.
        let params = ModelParams::new(30.0, 0.1).unwrap();
        let draws: Vec<u64> = (0..100_000u64)
            .map(|i| {
                let mut s = RandomStream::new(900, i);
                let core = sample_poissonized_core(&mut s, &params).unwrap();
                let w = explore_graph_walk(&mut s, &core, params.p).unwrap();
                (w.increments()[0] + 1) as u64
            })
            .collect();
        let report = chi_square_pmf(&draws, |k| poisson_pmf(3.0, k), 0, GOF_SIGNIFICANCE, 0);
        assert!(report.passed, "chi-square stat {}", report.statistic);
    }

    #[test]
    fn analytic_walk_with_p_zero_only_descends() {
        let mut s = RandomStream::new(2, 0);
        let params = ModelParams::new(50.0, 0.0).unwrap();
        let w = analytic_walk(&mut s, &params, 20, AnalyticRoute::PerStep).unwrap();
        assert!(w.increments().iter().all(|&d| d == -1));
    }

    #[test]
    fn analytic_walk_rejects_degenerate_horizons() {
        let mut s = RandomStream::new(2, 0);
        let params = ModelParams::new(50.0, 0.1).unwrap();
        assert!(analytic_walk(&mut s, &params, 0, AnalyticRoute::PerStep).is_err());
        let huge = ModelParams::new(1e18, 0.1).unwrap();
        assert!(analytic_walk(&mut s, &huge, 10, AnalyticRoute::PerStep).is_err());
    }

    #[test]
    fn analytic_walk_matches_closed_form_mean() {
        // E[S_k] = alpha (1 - (1-p)^k) - k at n=1000, c=2, k=100.
        let params = ModelParams::from_c(1000, 2.0).unwrap();
        let k = 100usize;
        let expected = 1000.0 * (1.0 - (1.0 - params.p).powi(k as i32)) - k as f64;
        let trials = 100_000u64;
        let mut sum = 0.0;
        for i in 0..trials {
            let mut s = RandomStream::new(901, i);
            let w = analytic_walk(&mut s, &params, k, AnalyticRoute::PerStep).unwrap();
            sum += w.value(k) as f64;
        }
        let mean = sum / trials as f64;
        let sd = (1000.0 * (1.0 - (1.0 - params.p).powi(k as i32))).sqrt();
        let band = 3.0 * sd / (trials as f64).sqrt();
        assert!(
            (mean - expected).abs() < band,
            "mean {mean}, expected {expected} +- {band}"
        );
    }

    #[test]
    fn analytic_walk_recovers_total_vertex_count() {
        // S_k + k counts consumed vertices; its mean tends to alpha.
        let params = ModelParams::new(50.0, 0.5).unwrap();
        let trials = 100_000u64;
        let mut sum = 0.0;
        for i in 0..trials {
            let mut s = RandomStream::new(902, i);
            let w = analytic_walk(&mut s, &params, 60, AnalyticRoute::PerStep).unwrap();
            sum += (w.value(60) + 60) as f64;
        }
        let mean = sum / trials as f64;
        assert!((mean - 50.0).abs() < 0.1, "mean total {mean}");
    }

    #[test]
    fn analytic_routes_agree_in_distribution() {
        let params = ModelParams::new(20.0, 0.15).unwrap();
        let trials = 100_000u64;
        let mut per_step = Vec::with_capacity(trials as usize);
        let mut counting = Vec::with_capacity(trials as usize);
        for i in 0..trials {
            let mut s = RandomStream::new(903, i);
            let w = analytic_walk(&mut s, &params, 5, AnalyticRoute::PerStep).unwrap();
            per_step.push(w.value(5));
            let mut s = RandomStream::new(904, i);
            let w = analytic_walk(&mut s, &params, 5, AnalyticRoute::CountingProcess).unwrap();
            counting.push(w.value(5));
        }
        let report = chi_square_two_sample(&per_step, &counting, GOF_SIGNIFICANCE);
        assert!(report.passed, "chi-square stat {}", report.statistic);
    }

    #[test]
    fn decompose_isolated_stack_vertices() {
        let dec = decompose_excursions(&walk(&[-1, -1])).unwrap();
        assert_eq!(dec.excursions.len(), 2);
        for e in &dec.excursions {
            assert_eq!(e.stack_size, 1);
            assert!(e.core_subsizes.is_empty());
            assert!(!e.truncated);
        }
    }

    #[test]
    fn decompose_hand_traced_two_seed_excursion() {
        // Values 1,1,0,-1: one excursion of stack size 4; the origin revealed
        // two seeds, so the shifted walk [0,-1,-1] splits into lengths {2,1}.
        let dec = decompose_excursions(&walk(&[1, 0, -1, -1])).unwrap();
        assert_eq!(dec.excursions.len(), 1);
        let e = &dec.excursions[0];
        assert_eq!((e.start, e.end), (0, 4));
        assert_eq!(e.stack_size, 4);
        assert_eq!(e.core_subsizes, vec![2, 1]);
        assert!(!e.truncated);
    }

    #[test]
    fn decompose_hand_traced_three_singletons() {
        // Origin reveals three isolated vertices: shifted walk [-1,-1,-1]
        // gives three singleton core components.
        let dec = decompose_excursions(&walk(&[2, -1, -1, -1])).unwrap();
        assert_eq!(dec.excursions.len(), 1);
        let e = &dec.excursions[0];
        assert_eq!(e.stack_size, 4);
        assert_eq!(e.core_subsizes, vec![1, 1, 1]);
    }

    #[test]
    fn decompose_flags_truncated_tail() {
        let dec = decompose_excursions(&walk(&[1, 0])).unwrap();
        assert_eq!(dec.excursions.len(), 1);
        assert!(dec.excursions[0].truncated);
        assert!(decompose_excursions(&walk(&[])).is_err());
    }

    #[test]
    fn subsize_entry_count_matches_origin_increment() {
        // Complete excursions opened by increment d >= 0 split into d+1 core
        // sub-components.
        for seed in 0..200u64 {
            let mut s = RandomStream::new(seed, 5);
            let core = sample_fixed_core(&mut s, 20, 0.15).unwrap();
            let w = explore_graph_walk(&mut s, &core, 0.15).unwrap();
            let dec = decompose_excursions(&w).unwrap();
            for e in &dec.excursions {
                assert!(!e.truncated);
                let opening = w.increments()[e.start];
                assert_eq!(e.core_subsizes.len() as i64, (opening + 1) as i64);
                assert_eq!(
                    e.core_subsizes.iter().sum::<usize>(),
                    e.stack_size - 1,
                    "stack-size accounting"
                );
            }
        }
    }

    #[test]
    fn graph_walk_subsizes_refine_oracle_components() {
        // Each sub-excursion explores inside a single true component, so the
        // walk's multiset refines the oracle's: never fewer parts, never a
        // larger largest part, same total. With one seed per component the
        // two multisets coincide.
        let mut checked_equal = 0usize;
        for seed in 0..2000u64 {
            let mut s = RandomStream::new(seed, 6);
            let n = 1 + (seed as usize % 30);
            let p = [0.05, 0.2, 0.5, 0.9][seed as usize % 4];
            let core = sample_fixed_core(&mut s, n, p).unwrap();
            let w = explore_graph_walk(&mut s, &core, p).unwrap();
            let walk_sizes = decompose_excursions(&w).unwrap().all_core_subsizes();
            let oracle = components_oracle(&core);
            assert_eq!(
                walk_sizes.iter().sum::<usize>(),
                oracle.sizes.iter().sum::<usize>()
            );
            assert!(walk_sizes.len() >= oracle.sizes.len());
            assert!(walk_sizes.first().copied().unwrap_or(0) <= oracle.largest);
            if walk_sizes.len() == oracle.sizes.len() {
                assert_eq!(walk_sizes, oracle.sizes);
                checked_equal += 1;
            }
        }
        assert!(checked_equal > 0, "no collision-free instance exercised");
    }

    #[test]
    fn core_walk_component_sizes_match_oracle_exactly() {
        for seed in 0..500u64 {
            let mut s = RandomStream::new(seed, 7);
            let n = seed as usize % 31;
            let p = [0.05, 0.2, 0.5, 0.9][seed as usize % 4];
            let core = sample_fixed_core(&mut s, n, p).unwrap();
            assert_eq!(core_component_sizes(&core), components_oracle(&core).sizes);
        }
    }

    #[test]
    fn giant_markers_hand_traced() {
        // Values 0,-1,2,1,0,-1,-2: I = 1, J = 6, excursion of 5 steps.
        let w = walk(&[-1, 3, -1, -1, -1, -1]);
        let (i, j) = giant_markers(&w, 0.5, 2).unwrap();
        assert_eq!((i, j), (1, 6));
        assert_eq!(j - i, 5);
    }

    #[test]
    fn giant_markers_on_pure_descent() {
        let w = walk(&[-1; 10]);
        let (i, j) = giant_markers(&w, 0.5, 8).unwrap();
        assert_eq!((i, j), (4, 5));
    }

    #[test]
    fn giant_markers_errors() {
        let w = walk(&[0, 0, 0]);
        assert!(matches!(
            giant_markers(&w, 0.5, 100),
            Err(Error::Truncated(_))
        ));
        assert!(giant_markers(&w, 0.0, 10).is_err());
        assert!(giant_markers(&w, 1e-9, 10).is_err());
        // Walk that never returns to S_I - 1.
        let w = walk(&[2, 0, 0]);
        assert!(matches!(
            giant_markers(&w, 0.5, 4),
            Err(Error::Truncated(_))
        ));
    }

    #[test]
    fn hitting_times_hand_traced() {
        let h = hitting_times(&walk(&[-1])).unwrap();
        assert_eq!(h.tau_minus_one, Some(1));
        assert!(h.all_minus_one_after);
        assert!(h.first_excursion_exhausts_core());

        let h = hitting_times(&walk(&[1, -1, -1, 0, -1])).unwrap();
        assert_eq!(h.tau_minus_one, Some(3));
        assert!(!h.all_minus_one_after);

        let h = hitting_times(&walk(&[2, 0, 0])).unwrap();
        assert_eq!(h.tau_minus_one, None);
        assert!(!h.all_minus_one_after);
        assert!(hitting_times(&walk(&[])).is_err());
    }

    #[test]
    fn tau_concentrates_in_the_log_regime() {
        let n = 10_000usize;
        let params = ModelParams::log_regime(n, 1.0).unwrap();
        let k_max = n + 10 * (n as f64).sqrt() as usize;
        let trials = 1000u64;
        let mut taus = Vec::new();
        for i in 0..trials {
            let mut s = RandomStream::new(905, i);
            let w = analytic_walk(&mut s, &params, k_max, AnalyticRoute::PerStep).unwrap();
            if let Some(t) = hitting_times(&w).unwrap().tau_minus_one {
                taus.push(t as f64);
            }
        }
        assert_eq!(taus.len() as u64, trials, "tau should be reached");
        let mean = taus.iter().sum::<f64>() / taus.len() as f64;
        let var =
            taus.iter().map(|t| (t - mean) * (t - mean)).sum::<f64>() / (taus.len() - 1) as f64;
        assert!((mean - n as f64).abs() < 10.0, "mean tau {mean}");
        assert!((var.sqrt() - 100.0).abs() < 10.0, "sd tau {}", var.sqrt());
    }

    #[test]
    fn analytic_increment_pairs_are_uncorrelated() {
        let params = ModelParams::new(20.0, 0.15).unwrap();
        let trials = 100_000usize;
        let mut xs = Vec::with_capacity(trials);
        let mut ys = Vec::with_capacity(trials);
        for i in 0..trials {
            let mut s = RandomStream::new(906, i as u64);
            let w = analytic_walk(&mut s, &params, 2, AnalyticRoute::PerStep).unwrap();
            xs.push(w.increments()[0] as f64);
            ys.push(w.increments()[1] as f64);
        }
        let mx = xs.iter().sum::<f64>() / trials as f64;
        let my = ys.iter().sum::<f64>() / trials as f64;
        let mut cov = 0.0;
        let mut vx = 0.0;
        let mut vy = 0.0;
        for i in 0..trials {
            cov += (xs[i] - mx) * (ys[i] - my);
            vx += (xs[i] - mx) * (xs[i] - mx);
            vy += (ys[i] - my) * (ys[i] - my);
        }
        let corr = cov / (vx.sqrt() * vy.sqrt());
        assert!(corr.abs() < 3.0 / (trials as f64).sqrt(), "corr {corr}");
    }

    #[test]
    fn walk_csv_is_deterministic() {
        let mut s = RandomStream::new(7, 0);
        let params = ModelParams::new(30.0, 0.1).unwrap();
        let w1 = analytic_walk(&mut s, &params, 50, AnalyticRoute::PerStep).unwrap();
        let mut s = RandomStream::new(7, 0);
        let w2 = analytic_walk(&mut s, &params, 50, AnalyticRoute::PerStep).unwrap();
        assert_eq!(w1.to_csv(), w2.to_csv());
        assert!(w1.to_csv().starts_with("k,S_k,is_record\n0,0,0\n"));
    }

    proptest! {
        #[test]
        fn decomposition_accounting_holds_on_arbitrary_walks(
            increments in proptest::collection::vec(-1i32..=4, 1..300)
        ) {
            let w = walk(&increments);
            let dec = decompose_excursions(&w).unwrap();
            let mut total_steps = 0usize;
            for e in &dec.excursions {
                total_steps += e.end - e.start;
                if !e.truncated {
                    prop_assert_eq!(e.core_subsizes.iter().sum::<usize>(), e.stack_size - 1);
                    let opening = increments[e.start];
                    prop_assert_eq!(e.core_subsizes.len(), (opening + 1) as usize);
                }
            }
            prop_assert_eq!(total_steps, increments.len());
            // Excursion boundaries are exactly the record times.
            let records = w.record_times();
            let complete = dec.excursions.iter().filter(|e| !e.truncated).count();
            prop_assert_eq!(records.len(), complete);
        }

        #[test]
        fn graph_walks_are_skip_free_and_exhaustive(seed in 0u64..300, n in 0usize..25, p_idx in 0usize..4) {
            let p = [0.05f64, 0.2, 0.5, 0.9][p_idx];
            let mut s = RandomStream::new(seed, 8);
            let core = sample_fixed_core(&mut s, n, p).unwrap();
            let w = explore_graph_walk(&mut s, &core, p).unwrap();
            prop_assert!(w.increments().iter().all(|&d| d >= -1));
            let consumed: i64 = w.increments().iter().map(|&d| (d + 1) as i64).sum();
            prop_assert_eq!(consumed, n as i64);
        }
    }
}
