//! C ABI for the Poissonized Erdos-Renyi toolkit: opaque handles over the
//! core types, status codes instead of panics, and a cbindgen-generated
//! header (`include/poisson_er.h`) so other languages can bind.
//!
//! Ownership rules: every `*_new`/`*_sample_*`/`*_walk_*` constructor
//! transfers ownership of the returned handle to the caller, who must
//! release it with the matching `*_free`. Passing NULL where a handle is
//! required yields `PoissonErNullPointer`; freeing NULL is a no-op.

use poisson_er_core::analysis;
use poisson_er_core::error::Error;
use poisson_er_core::exploration::{self, AnalyticRoute, LukasiewiczWalk};
use poisson_er_core::graph::{self, CoreGraph, ModelParams};
use poisson_er_core::stochastic::{self, RandomStream};

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoissonErStatus {
    PoissonErOk = 0,
    PoissonErInvalidParameter = 1,
    PoissonErDomainError = 2,
    PoissonErTruncated = 3,
    PoissonErNullPointer = 4,
    PoissonErInternalError = 5,
}

use PoissonErStatus::*;

fn status_of(err: &Error) -> PoissonErStatus {
    match err {
        Error::InvalidParameter(_) | Error::Config(_) | Error::Parse(_) => {
            PoissonErInvalidParameter
        }
        Error::Domain(_) => PoissonErDomainError,
        Error::Truncated(_) => PoissonErTruncated,
        Error::Io(_) => PoissonErInternalError,
    }
}

/// Opaque reproducible random stream.
pub struct PoissonErStream {
    inner: RandomStream,
}

/// Opaque sampled core graph.
pub struct PoissonErGraph {
    inner: CoreGraph,
}

/// Opaque Lukasiewicz walk.
pub struct PoissonErWalk {
    inner: LukasiewiczWalk,
}

/// Closed-form supercritical targets derived from the beta solver.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct PoissonErTheoryTargets {
    pub beta: f64,
    pub c_star: f64,
    pub giant_sd_poissonized: f64,
    pub giant_sd_fixed: f64,
    pub kc_success: f64,
}

/// Create a stream for `(seed, stream_id)`; identical pairs reproduce
/// identical draw sequences.
#[no_mangle]
pub extern "C" fn poisson_er_stream_new(seed: u64, stream_id: u64) -> *mut PoissonErStream {
    Box::into_raw(Box::new(PoissonErStream {
        inner: RandomStream::new(seed, stream_id),
    }))
}

/// Release a stream. NULL is a no-op.
///
/// # Safety
/// `stream` must be a pointer returned by [`poisson_er_stream_new`] that has
/// not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn poisson_er_stream_free(stream: *mut PoissonErStream) {
    if !stream.is_null() {
        drop(Box::from_raw(stream));
    }
}

/// One Poisson(`mean`) draw.
///
/// # Safety
/// `stream` and `out` must be valid, exclusive pointers.
#[no_mangle]
pub unsafe extern "C" fn poisson_er_poisson_sample(
    stream: *mut PoissonErStream,
    mean: f64,
    out: *mut u64,
) -> PoissonErStatus {
    let (Some(stream), Some(out)) = (stream.as_mut(), out.as_mut()) else {
        return PoissonErNullPointer;
    };
    match stochastic::poisson_sample(&mut stream.inner, mean) {
        Ok(v) => {
            *out = v;
            PoissonErOk
        }
        Err(e) => status_of(&e),
    }
}

/// One Geometric(`p`) draw on {1, 2, ...}.
///
/// # Safety
/// `stream` and `out` must be valid, exclusive pointers.
#[no_mangle]
pub unsafe extern "C" fn poisson_er_geometric_skip(
    stream: *mut PoissonErStream,
    p: f64,
    out: *mut u64,
) -> PoissonErStatus {
    let (Some(stream), Some(out)) = (stream.as_mut(), out.as_mut()) else {
        return PoissonErNullPointer;
    };
    match stochastic::geometric_skip(&mut stream.inner, p) {
        Ok(v) => {
            *out = v;
            PoissonErOk
        }
        Err(e) => status_of(&e),
    }
}

/// First positive root of `1 - exp(-c t) - t = 0` (zero for c <= 1).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn poisson_er_beta(c: f64, out: *mut f64) -> PoissonErStatus {
    let Some(out) = out.as_mut() else {
        return PoissonErNullPointer;
    };
    match analysis::beta_solver(c, 1e-12) {
        Ok(solution) => {
            *out = solution.beta;
            PoissonErOk
        }
        Err(e) => status_of(&e),
    }
}

/// Asymptotic connectedness probability `exp(-exp(-c))`.
#[no_mangle]
pub extern "C" fn poisson_er_connectedness_limit(c: f64) -> f64 {
    analysis::connectedness_limit(c)
}

/// Supercritical targets for c > 1.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn poisson_er_theory_targets(
    c: f64,
    out: *mut PoissonErTheoryTargets,
) -> PoissonErStatus {
    let Some(out) = out.as_mut() else {
        return PoissonErNullPointer;
    };
    match analysis::theory_targets(c) {
        Ok(t) => {
            *out = PoissonErTheoryTargets {
                beta: t.beta,
                c_star: t.c_star,
                giant_sd_poissonized: t.giant_sd_poissonized,
                giant_sd_fixed: t.giant_sd_fixed,
                kc_success: t.kc_success,
            };
            PoissonErOk
        }
        Err(e) => status_of(&e),
    }
}

/// Sample the fixed-size core G(n, p).
///
/// # Safety
/// `stream` and `out` must be valid, exclusive pointers.
#[no_mangle]
pub unsafe extern "C" fn poisson_er_graph_sample_fixed(
    stream: *mut PoissonErStream,
    n: u64,
    p: f64,
    out: *mut *mut PoissonErGraph,
) -> PoissonErStatus {
    let (Some(stream), Some(out)) = (stream.as_mut(), out.as_mut()) else {
        return PoissonErNullPointer;
    };
    match graph::sample_fixed_core(&mut stream.inner, n as usize, p) {
        Ok(g) => {
            *out = Box::into_raw(Box::new(PoissonErGraph { inner: g }));
            PoissonErOk
        }
        Err(e) => status_of(&e),
    }
}

/// Sample the Poissonized core: N ~ Poisson(alpha), then G(N, p).
///
/// # Safety
/// `stream` and `out` must be valid, exclusive pointers.
#[no_mangle]
pub unsafe extern "C" fn poisson_er_graph_sample_poissonized(
    stream: *mut PoissonErStream,
    alpha: f64,
    p: f64,
    out: *mut *mut PoissonErGraph,
) -> PoissonErStatus {
    let (Some(stream), Some(out)) = (stream.as_mut(), out.as_mut()) else {
        return PoissonErNullPointer;
    };
    let params = match ModelParams::new(alpha, p) {
        Ok(params) => params,
        Err(e) => return status_of(&e),
    };
    match graph::sample_poissonized_core(&mut stream.inner, &params) {
        Ok(g) => {
            *out = Box::into_raw(Box::new(PoissonErGraph { inner: g }));
            PoissonErOk
        }
        Err(e) => status_of(&e),
    }
}

/// Release a graph. NULL is a no-op.
///
/// # Safety
/// `graph` must be an unfreed pointer from a `poisson_er_graph_sample_*`
/// call.
#[no_mangle]
pub unsafe extern "C" fn poisson_er_graph_free(graph: *mut PoissonErGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Vertex count; 0 for NULL.
///
/// # Safety
/// `graph` must be NULL or a valid graph handle.
#[no_mangle]
pub unsafe extern "C" fn poisson_er_graph_vertex_count(graph: *const PoissonErGraph) -> u64 {
    graph.as_ref().map_or(0, |g| g.inner.n_vertices() as u64)
}

/// Edge count; 0 for NULL.
///
/// # Safety
/// `graph` must be NULL or a valid graph handle.
#[no_mangle]
pub unsafe extern "C" fn poisson_er_graph_edge_count(graph: *const PoissonErGraph) -> u64 {
    graph.as_ref().map_or(0, |g| g.inner.edge_count() as u64)
}

/// Component count, largest component size, and connectedness in one call
/// (union-find route). Output pointers may be NULL to skip a field.
///
/// # Safety
/// `graph` must be a valid graph handle; non-NULL outputs must be valid.
#[no_mangle]
pub unsafe extern "C" fn poisson_er_graph_components(
    graph: *const PoissonErGraph,
    out_count: *mut u64,
    out_largest: *mut u64,
    out_connected: *mut bool,
) -> PoissonErStatus {
    let Some(g) = graph.as_ref() else {
        return PoissonErNullPointer;
    };
    let summary = graph::components_oracle(&g.inner);
    if let Some(out) = out_count.as_mut() {
        *out = summary.count as u64;
    }
    if let Some(out) = out_largest.as_mut() {
        *out = summary.largest as u64;
    }
    if let Some(out) = out_connected.as_mut() {
        *out = summary.count <= 1;
    }
    PoissonErOk
}

/// Build the analytic walk of `k_max` independent Poisson increments.
///
/// # Safety
/// `stream` and `out` must be valid, exclusive pointers.
#[no_mangle]
pub unsafe extern "C" fn poisson_er_walk_analytic(
    stream: *mut PoissonErStream,
    alpha: f64,
    p: f64,
    k_max: u64,
    out: *mut *mut PoissonErWalk,
) -> PoissonErStatus {
    let (Some(stream), Some(out)) = (stream.as_mut(), out.as_mut()) else {
        return PoissonErNullPointer;
    };
    let params = match ModelParams::new(alpha, p) {
        Ok(params) => params,
        Err(e) => return status_of(&e),
    };
    match exploration::analytic_walk(
        &mut stream.inner,
        &params,
        k_max as usize,
        AnalyticRoute::PerStep,
    ) {
        Ok(w) => {
            *out = Box::into_raw(Box::new(PoissonErWalk { inner: w }));
            PoissonErOk
        }
        Err(e) => status_of(&e),
    }
}

/// Run the stack exploration of a sampled core.
///
/// # Safety
/// `stream`, `graph` and `out` must be valid pointers; `stream` exclusive.
#[no_mangle]
pub unsafe extern "C" fn poisson_er_walk_graph(
    stream: *mut PoissonErStream,
    graph: *const PoissonErGraph,
    p: f64,
    out: *mut *mut PoissonErWalk,
) -> PoissonErStatus {
    let (Some(stream), Some(graph), Some(out)) = (stream.as_mut(), graph.as_ref(), out.as_mut())
    else {
        return PoissonErNullPointer;
    };
    match exploration::explore_graph_walk(&mut stream.inner, &graph.inner, p) {
        Ok(w) => {
            *out = Box::into_raw(Box::new(PoissonErWalk { inner: w }));
            PoissonErOk
        }
        Err(e) => status_of(&e),
    }
}

/// Release a walk. NULL is a no-op.
///
/// # Safety
/// `walk` must be an unfreed pointer from a `poisson_er_walk_*` constructor.
#[no_mangle]
pub unsafe extern "C" fn poisson_er_walk_free(walk: *mut PoissonErWalk) {
    if !walk.is_null() {
        drop(Box::from_raw(walk));
    }
}

/// Number of steps; 0 for NULL.
///
/// # Safety
/// `walk` must be NULL or a valid walk handle.
#[no_mangle]
pub unsafe extern "C" fn poisson_er_walk_len(walk: *const PoissonErWalk) -> u64 {
    walk.as_ref().map_or(0, |w| w.inner.len() as u64)
}

/// Copy the prefix values S_0..S_len into `buf` (length at least len + 1).
///
/// # Safety
/// `walk` must be valid and `buf` must point to at least `buf_len` i64 slots.
#[no_mangle]
pub unsafe extern "C" fn poisson_er_walk_values(
    walk: *const PoissonErWalk,
    buf: *mut i64,
    buf_len: u64,
) -> PoissonErStatus {
    let Some(w) = walk.as_ref() else {
        return PoissonErNullPointer;
    };
    if buf.is_null() {
        return PoissonErNullPointer;
    }
    let values = w.inner.values();
    if (buf_len as usize) < values.len() {
        return PoissonErInvalidParameter;
    }
    for (i, &v) in values.iter().enumerate() {
        *buf.add(i) = v as i64;
    }
    PoissonErOk
}

/// First hitting time of -1, or -1 if the walk never reaches it; also flags
/// whether every later increment is -1 (the rooted-connectedness criterion).
///
/// # Safety
/// `walk` must be valid; non-NULL outputs must be valid.
#[no_mangle]
pub unsafe extern "C" fn poisson_er_walk_hitting_time(
    walk: *const PoissonErWalk,
    out_tau: *mut i64,
    out_all_minus_one_after: *mut bool,
) -> PoissonErStatus {
    let Some(w) = walk.as_ref() else {
        return PoissonErNullPointer;
    };
    match exploration::hitting_times(&w.inner) {
        Ok(h) => {
            if let Some(out) = out_tau.as_mut() {
                *out = h.tau_minus_one.map_or(-1, |t| t as i64);
            }
            if let Some(out) = out_all_minus_one_after.as_mut() {
                *out = h.all_minus_one_after;
            }
            PoissonErOk
        }
        Err(e) => status_of(&e),
    }
}

/// Largest and second-largest core sub-component sizes from the excursion
/// decomposition of a walk.
///
/// # Safety
/// `walk` must be valid; non-NULL outputs must be valid.
#[no_mangle]
pub unsafe extern "C" fn poisson_er_walk_top_components(
    walk: *const PoissonErWalk,
    out_largest: *mut u64,
    out_second: *mut u64,
) -> PoissonErStatus {
    let Some(w) = walk.as_ref() else {
        return PoissonErNullPointer;
    };
    match exploration::decompose_excursions(&w.inner) {
        Ok(dec) => {
            let (largest, second) = dec.top_two_core_subsizes();
            if let Some(out) = out_largest.as_mut() {
                *out = largest as u64;
            }
            if let Some(out) = out_second.as_mut() {
                *out = second as u64;
            }
            PoissonErOk
        }
        Err(e) => status_of(&e),
    }
}

#[cfg(test)]
mod tests {
    use std::ptr;

    use super::*;

    #[test]
    fn stream_round_trip_and_determinism() {
        unsafe {
            let a = poisson_er_stream_new(9, 4);
            let b = poisson_er_stream_new(9, 4);
            let mut xa = 0u64;
            let mut xb = 0u64;
            for _ in 0..32 {
                assert_eq!(poisson_er_poisson_sample(a, 3.5, &mut xa), PoissonErOk);
                assert_eq!(poisson_er_poisson_sample(b, 3.5, &mut xb), PoissonErOk);
                assert_eq!(xa, xb);
            }
            poisson_er_stream_free(a);
            poisson_er_stream_free(b);
        }
    }

    #[test]
    fn null_handling() {
        unsafe {
            let mut out = 0u64;
            assert_eq!(
                poisson_er_poisson_sample(ptr::null_mut(), 1.0, &mut out),
                PoissonErNullPointer
            );
            let stream = poisson_er_stream_new(1, 0);
            assert_eq!(
                poisson_er_poisson_sample(stream, 1.0, ptr::null_mut()),
                PoissonErNullPointer
            );
            assert_eq!(
                poisson_er_poisson_sample(stream, -1.0, &mut out),
                PoissonErInvalidParameter
            );
            poisson_er_stream_free(stream);
            poisson_er_stream_free(ptr::null_mut());
            poisson_er_graph_free(ptr::null_mut());
            poisson_er_walk_free(ptr::null_mut());
        }
    }

    #[test]
    fn beta_and_targets() {
        unsafe {
            let mut beta = 0.0f64;
            assert_eq!(poisson_er_beta(2.0, &mut beta), PoissonErOk);
            assert!((beta - 0.796812130).abs() < 1e-8);
            assert_eq!(poisson_er_beta(0.5, &mut beta), PoissonErOk);
            assert_eq!(beta, 0.0);
            assert_eq!(poisson_er_beta(-1.0, &mut beta), PoissonErInvalidParameter);

            let mut targets = PoissonErTheoryTargets {
                beta: 0.0,
                c_star: 0.0,
                giant_sd_poissonized: 0.0,
                giant_sd_fixed: 0.0,
                kc_success: 0.0,
            };
            assert_eq!(poisson_er_theory_targets(2.0, &mut targets), PoissonErOk);
            assert!((targets.giant_sd_poissonized - 1.5037).abs() < 1e-3);
            assert_eq!(
                poisson_er_theory_targets(0.9, &mut targets),
                PoissonErDomainError
            );
        }
        assert!((poisson_er_connectedness_limit(0.0) - 0.36787944).abs() < 1e-7);
    }

    #[test]
    fn graph_and_walk_round_trip() {
        unsafe {
            let stream = poisson_er_stream_new(7, 0);
            let mut graph = ptr::null_mut();
            assert_eq!(
                poisson_er_graph_sample_fixed(stream, 50, 0.08, &mut graph),
                PoissonErOk
            );
            assert_eq!(poisson_er_graph_vertex_count(graph), 50);
            let mut count = 0u64;
            let mut largest = 0u64;
            let mut connected = false;
            assert_eq!(
                poisson_er_graph_components(graph, &mut count, &mut largest, &mut connected),
                PoissonErOk
            );
            assert!(count >= 1 && largest >= 1);

            let mut walk = ptr::null_mut();
            assert_eq!(
                poisson_er_walk_graph(stream, graph, 0.08, &mut walk),
                PoissonErOk
            );
            let len = poisson_er_walk_len(walk);
            assert!(len >= 50);
            let mut values = vec![0i64; len as usize + 1];
            assert_eq!(
                poisson_er_walk_values(walk, values.as_mut_ptr(), values.len() as u64),
                PoissonErOk
            );
            assert_eq!(values[0], 0);
            // Every step consumes increment+1 vertices: S_len + len = 50.
            assert_eq!(values[len as usize] + len as i64, 50);

            let mut top = 0u64;
            let mut second = 0u64;
            assert_eq!(
                poisson_er_walk_top_components(walk, &mut top, &mut second),
                PoissonErOk
            );
            // Sub-excursions refine the true components: the walk's largest
            // piece never exceeds the union-find largest.
            assert!(top >= 1 && top <= largest, "top {top} vs largest {largest}");

            poisson_er_walk_free(walk);
            poisson_er_graph_free(graph);
            poisson_er_stream_free(stream);
        }
    }

    #[test]
    fn analytic_walk_and_hitting_time() {
        unsafe {
            let stream = poisson_er_stream_new(3, 1);
            let mut walk = ptr::null_mut();
            assert_eq!(
                poisson_er_walk_analytic(stream, 50.0, 0.0, 10, &mut walk),
                PoissonErOk
            );
            let mut tau = 0i64;
            let mut all_after = false;
            assert_eq!(
                poisson_er_walk_hitting_time(walk, &mut tau, &mut all_after),
                PoissonErOk
            );
            assert_eq!(tau, 1);
            assert!(all_after);
            poisson_er_walk_free(walk);

            assert_eq!(
                poisson_er_walk_analytic(stream, 50.0, 2.0, 10, &mut walk),
                PoissonErInvalidParameter
            );
            poisson_er_stream_free(stream);
        }
    }
}
