//! Sparse sampling of the core G(N, p) — fixed size or Poissonized — plus an
//! independent union-find oracle for component structure and connectedness.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::stochastic::{geometric_skip_unchecked, poisson_sample, RandomStream};

/// Model parameters `(alpha, p)` for the Poissonized graph: the core has a
/// Poisson(`alpha`) number of vertices and every vertex pair carries an
/// independent Bernoulli(`p`) edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub alpha: f64,
    pub p: f64,
}

impl ModelParams {
    pub fn new(alpha: f64, p: f64) -> Result<Self> {
        let params = ModelParams { alpha, p };
        params.validate()?;
        Ok(params)
    }

    /// Supercritical/subcritical parameterization `alpha = n`, `p = c/n`.
    pub fn from_c(n: usize, c: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("c-parameterization requires n >= 1"));
        }
        Self::new(n as f64, c / n as f64)
    }

    /// Critical-window parameterization `p = 1/n + lambda/n^(4/3)`.
    pub fn critical(n: usize, lambda: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("critical parameterization requires n >= 1"));
        }
        let nf = n as f64;
        Self::new(nf, 1.0 / nf + lambda / nf.powf(4.0 / 3.0))
    }

    /// Connectedness-regime parameterization `p = (ln n + c)/n`.
    pub fn log_regime(n: usize, c: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("log-regime parameterization requires n >= 1"));
        }
        let nf = n as f64;
        Self::new(nf, (nf.ln() + c) / nf)
    }

    /// The supercritical parameter `c = alpha * p`.
    pub fn c(&self) -> f64 {
        self.alpha * self.p
    }

    pub fn validate(&self) -> Result<()> {
        if !self.alpha.is_finite() || self.alpha < 0.0 {
            return Err(Error::invalid(format!(
                "alpha must be finite and nonnegative, got {}",
                self.alpha
            )));
        }
        if !(0.0..=1.0).contains(&self.p) || !self.p.is_finite() {
            return Err(Error::invalid(format!(
                "p must lie in [0, 1], got {}",
                self.p
            )));
        }
        Ok(())
    }
}

/// The sampled core G(N, p): an undirected simple graph in CSR form with
/// sorted neighbor lists. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreGraph {
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl CoreGraph {
    /// Build from an undirected edge list over `n` vertices. Edges must have
    /// `u < v`; duplicates and out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self> {
        if n > u32::MAX as usize {
            return Err(Error::invalid("vertex count exceeds u32 range"));
        }
        let mut degrees = vec![0usize; n];
        for &(u, v) in edges {
            if u >= v || (v as usize) >= n {
                return Err(Error::invalid(format!(
                    "edge ({u}, {v}) is not an ordered pair inside 0..{n}"
                )));
            }
            degrees[u as usize] += 1;
            degrees[v as usize] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0usize);
        let mut acc = 0usize;
        for d in &degrees {
            acc += d;
            offsets.push(acc);
        }
        let mut cursor = offsets.clone();
        let mut targets = vec![0u32; acc];
        // Lexicographically ordered input leaves every neighbor list sorted:
        // entries with u < w land before entries with w < v.
        for &(u, v) in edges {
            targets[cursor[u as usize]] = v;
            cursor[u as usize] += 1;
            targets[cursor[v as usize]] = u;
            cursor[v as usize] += 1;
        }
        let graph = CoreGraph { offsets, targets };
        debug_assert!(graph.neighbor_lists_sorted_unique());
        Ok(graph)
    }

    pub fn n_vertices(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn degree(&self, v: u32) -> usize {
        self.offsets[v as usize + 1] - self.offsets[v as usize]
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.targets[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    /// Iterate edges as ordered pairs `(u, v)` with `u < v`, lexicographically.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.n_vertices() as u32).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    fn neighbor_lists_sorted_unique(&self) -> bool {
        (0..self.n_vertices() as u32).all(|v| {
            self.neighbors(v).windows(2).all(|w| w[0] < w[1])
                && self.neighbors(v).iter().all(|&w| w != v)
        })
    }

    /// Render the debugging edge-list format: a `n <N>` header line followed
    /// by one `u v` pair per line. Round-trips bit-exactly.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "n {}", self.n_vertices());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    /// Parse the edge-list format produced by [`CoreGraph::to_edge_list`].
    pub fn from_edge_list(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty edge list".into()))?;
        let n: usize = header
            .strip_prefix("n ")
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad header line: {header:?}")))?;
        let mut edges = Vec::new();
        for line in lines {
            if line.is_empty() {
                continue;
            }
            let mut it = line.split_ascii_whitespace();
            let u: u32 = it
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad edge line: {line:?}")))?;
            let v: u32 = it
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::Parse(format!("bad edge line: {line:?}")))?;
            if it.next().is_some() {
                return Err(Error::Parse(format!("trailing tokens on line: {line:?}")));
            }
            edges.push((u, v));
        }
        CoreGraph::from_edges(n, &edges)
    }
}

/// Exact component structure of a core, produced by the union-find oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentSummary {
    /// Component sizes in descending order; sums to the vertex count.
    pub sizes: Vec<usize>,
    pub largest: usize,
    pub count: usize,
}

struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, x: u32) -> u32 {
        let mut root = x;
        while self.parent[root as usize] != root {
            // Path halving.
            let grand = self.parent[self.parent[root as usize] as usize];
            self.parent[root as usize] = grand;
            root = grand;
        }
        root
    }

    fn union(&mut self, a: u32, b: u32) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra as usize] < self.size[rb as usize] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb as usize] = ra;
        self.size[ra as usize] += self.size[rb as usize];
    }
}

/// Exact component sizes via union-find; deterministic and independent of the
/// exploration machinery.
pub fn components_oracle(graph: &CoreGraph) -> ComponentSummary {
    let n = graph.n_vertices();
    let mut uf = UnionFind::new(n);
    for (u, v) in graph.edges() {
        uf.union(u, v);
    }
    let mut sizes = Vec::new();
    for v in 0..n as u32 {
        if uf.find(v) == v {
            sizes.push(uf.size[v as usize] as usize);
        }
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    debug_assert_eq!(sizes.iter().sum::<usize>(), n);
    ComponentSummary {
        largest: sizes.first().copied().unwrap_or(0),
        count: sizes.len(),
        sizes,
    }
}

/// Connectedness via the oracle; graphs with 0 or 1 vertices count as
/// connected.
pub fn is_connected(graph: &CoreGraph) -> bool {
    components_oracle(graph).count <= 1
}

/// Per-vertex component label (the union-find root); two vertices share a
/// component iff their labels match.
pub fn component_labels(graph: &CoreGraph) -> Vec<u32> {
    let n = graph.n_vertices();
    let mut uf = UnionFind::new(n);
    for (u, v) in graph.edges() {
        uf.union(u, v);
    }
    (0..n as u32).map(|v| uf.find(v)).collect()
}

/// Sample G(`n`, `p`) in O(n + m) expected time by geometric skipping over the
/// linearized index of the C(n, 2) vertex pairs.
pub fn sample_fixed_core(stream: &mut RandomStream, n: usize, p: f64) -> Result<CoreGraph> {
    sample_fixed_core_with_stats(stream, n, p).map(|(g, _)| g)
}

/// As [`sample_fixed_core`], also returning the number of edge candidates the
/// skip scan landed on (equals the edge count; exposed for cost accounting).
pub fn sample_fixed_core_with_stats(
    stream: &mut RandomStream,
    n: usize,
    p: f64,
) -> Result<(CoreGraph, u64)> {
    if !(0.0..=1.0).contains(&p) || !p.is_finite() {
        return Err(Error::invalid(format!("p must lie in [0, 1], got {p}")));
    }
    if n > u32::MAX as usize {
        return Err(Error::invalid("vertex count exceeds u32 range"));
    }
    let mut edges = Vec::new();
    let mut hits = 0u64;
    if n >= 2 && p > 0.0 {
        let total_pairs = n as u64 * (n as u64 - 1) / 2;
        edges.reserve((total_pairs as f64 * p * 1.05) as usize + 16);
        let mut cursor = 0u64;
        loop {
            let skip = geometric_skip_unchecked(stream, p);
            cursor = match cursor.checked_add(skip) {
                Some(c) => c,
                None => break,
            };
            if cursor > total_pairs {
                break;
            }
            hits += 1;
            edges.push(pair_from_linear_index(n as u64, cursor - 1));
        }
    }
    Ok((CoreGraph::from_edges(n, &edges)?, hits))
}

/// Decode a linear index over the pairs (0,1), (0,2), ..., (0,n-1), (1,2),
/// ... into its ordered pair. Rows are recovered with a float estimate plus
/// an integer fix-up so the decode stays exact for n up to a few million.
fn pair_from_linear_index(n: u64, index: u64) -> (u32, u32) {
    let nf = n as f64;
    let mf = index as f64;
    let mut u = (nf - 0.5 - ((nf - 0.5) * (nf - 0.5) - 2.0 * mf).max(0.0).sqrt()).floor();
    if u < 0.0 {
        u = 0.0;
    }
    let mut row = u as u64;
    // row_start(u) = u*n - u*(u+1)/2
    let row_start = |u: u64| u * n - u * (u + 1) / 2;
    while row > 0 && row_start(row) > index {
        row -= 1;
    }
    while row_start(row + 1) <= index {
        row += 1;
    }
    let col = index - row_start(row) + row + 1;
    (row as u32, col as u32)
}

/// Draw N ~ Poisson(alpha), then sample the core G(N, p). The infinite stack
/// of the model is never materialized; it lives only in the exploration.
pub fn sample_poissonized_core(
    stream: &mut RandomStream,
    params: &ModelParams,
) -> Result<CoreGraph> {
    params.validate()?;
    let n = poisson_sample(stream, params.alpha)?;
    sample_fixed_core(stream, n as usize, params.p)
}

/// Exact P(G(n, p) is connected) from the classical recursion
/// `P(n) = 1 - sum_{k<n} C(n-1, k-1) P(k) (1-p)^(k(n-k))`, conditioning on
/// the component of vertex 0. Used as an independent small-n oracle.
pub fn exact_connected_probability(n: usize, p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!("p must lie in [0, 1], got {p}")));
    }
    if n > 64 {
        return Err(Error::invalid(
            "exact connectedness oracle is limited to n <= 64",
        ));
    }
    if n <= 1 {
        return Ok(1.0);
    }
    let q = 1.0 - p;
    let mut conn = vec![0.0f64; n + 1];
    conn[1] = 1.0;
    for m in 2..=n {
        let mut sum = 0.0;
        for k in 1..m {
            sum += binomial(m - 1, k - 1) * conn[k] * q.powi((k * (m - k)) as i32);
        }
        conn[m] = 1.0 - sum;
    }
    Ok(conn[n])
}

fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}
