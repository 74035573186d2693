/* C API for the Poissonized Erdos-Renyi simulation toolkit. */

#ifndef POISSON_ER_H
#define POISSON_ER_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible entry point.
typedef enum PoissonErStatus {
  PoissonErOk = 0,
  PoissonErInvalidParameter = 1,
  PoissonErDomainError = 2,
  PoissonErTruncated = 3,
  PoissonErNullPointer = 4,
  PoissonErInternalError = 5,
} PoissonErStatus;

// Opaque sampled core graph.
typedef struct PoissonErGraph PoissonErGraph;

// Opaque reproducible random stream.
typedef struct PoissonErStream PoissonErStream;

// Opaque Lukasiewicz walk.
typedef struct PoissonErWalk PoissonErWalk;

// Closed-form supercritical targets derived from the beta solver.
typedef struct PoissonErTheoryTargets {
  double beta;
  double c_star;
  double giant_sd_poissonized;
  double giant_sd_fixed;
  double kc_success;
} PoissonErTheoryTargets;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Create a stream for `(seed, stream_id)`; identical pairs reproduce
// identical draw sequences.
struct PoissonErStream *poisson_er_stream_new(uint64_t seed, uint64_t stream_id);

// Release a stream. NULL is a no-op.
//
// # Safety
// `stream` must be a pointer returned by [`poisson_er_stream_new`] that has
// not been freed yet.
void poisson_er_stream_free(struct PoissonErStream *stream);

// One Poisson(`mean`) draw.
//
// # Safety
// `stream` and `out` must be valid, exclusive pointers.
enum PoissonErStatus poisson_er_poisson_sample(struct PoissonErStream *stream,
                                               double mean,
                                               uint64_t *out);

// One Geometric(`p`) draw on {1, 2, ...}.
//
// # Safety
// `stream` and `out` must be valid, exclusive pointers.
enum PoissonErStatus poisson_er_geometric_skip(struct PoissonErStream *stream,
                                               double p,
                                               uint64_t *out);

// First positive root of `1 - exp(-c t) - t = 0` (zero for c <= 1).
//
// # Safety
// `out` must be a valid pointer.
enum PoissonErStatus poisson_er_beta(double c, double *out);

// Asymptotic connectedness probability `exp(-exp(-c))`.
double poisson_er_connectedness_limit(double c);

// Supercritical targets for c > 1.
//
// # Safety
// `out` must be a valid pointer.
enum PoissonErStatus poisson_er_theory_targets(double c, struct PoissonErTheoryTargets *out);

// Sample the fixed-size core G(n, p).
//
// # Safety
// `stream` and `out` must be valid, exclusive pointers.
enum PoissonErStatus poisson_er_graph_sample_fixed(struct PoissonErStream *stream,
                                                   uint64_t n,
                                                   double p,
                                                   struct PoissonErGraph **out);

// Sample the Poissonized core: N ~ Poisson(alpha), then G(N, p).
//
// # Safety
// `stream` and `out` must be valid, exclusive pointers.
enum PoissonErStatus poisson_er_graph_sample_poissonized(struct PoissonErStream *stream,
                                                         double alpha,
                                                         double p,
                                                         struct PoissonErGraph **out);

// Release a graph. NULL is a no-op.
//
// # Safety
// `graph` must be an unfreed pointer from a `poisson_er_graph_sample_*`
// call.
void poisson_er_graph_free(struct PoissonErGraph *graph);

// Vertex count; 0 for NULL.
//
// # Safety
// `graph` must be NULL or a valid graph handle.
uint64_t poisson_er_graph_vertex_count(const struct PoissonErGraph *graph);

// Edge count; 0 for NULL.
//
// # Safety
// `graph` must be NULL or a valid graph handle.
uint64_t poisson_er_graph_edge_count(const struct PoissonErGraph *graph);

// Component count, largest component size, and connectedness in one call
// (union-find route). Output pointers may be NULL to skip a field.
//
// # Safety
// `graph` must be a valid graph handle; non-NULL outputs must be valid.
enum PoissonErStatus poisson_er_graph_components(const struct PoissonErGraph *graph,
                                                 uint64_t *out_count,
                                                 uint64_t *out_largest,
                                                 bool *out_connected);

// Build the analytic walk of `k_max` independent Poisson increments.
//
// # Safety
// `stream` and `out` must be valid, exclusive pointers.
enum PoissonErStatus poisson_er_walk_analytic(struct PoissonErStream *stream,
                                              double alpha,
                                              double p,
                                              uint64_t k_max,
                                              struct PoissonErWalk **out);

// Run the stack exploration of a sampled core.
//
// # Safety
// `stream`, `graph` and `out` must be valid pointers; `stream` exclusive.
enum PoissonErStatus poisson_er_walk_graph(struct PoissonErStream *stream,
                                           const struct PoissonErGraph *graph,
                                           double p,
                                           struct PoissonErWalk **out);

// Release a walk. NULL is a no-op.
//
// # Safety
// `walk` must be an unfreed pointer from a `poisson_er_walk_*` constructor.
void poisson_er_walk_free(struct PoissonErWalk *walk);

// Number of steps; 0 for NULL.
//
// # Safety
// `walk` must be NULL or a valid walk handle.
uint64_t poisson_er_walk_len(const struct PoissonErWalk *walk);

// Copy the prefix values S_0..S_len into `buf` (length at least len + 1).
//
// # Safety
// `walk` must be valid and `buf` must point to at least `buf_len` i64 slots.
enum PoissonErStatus poisson_er_walk_values(const struct PoissonErWalk *walk,
                                            int64_t *buf,
                                            uint64_t buf_len);

// First hitting time of -1, or -1 if the walk never reaches it; also flags
// whether every later increment is -1 (the rooted-connectedness criterion).
//
// # Safety
// `walk` must be valid; non-NULL outputs must be valid.
enum PoissonErStatus poisson_er_walk_hitting_time(const struct PoissonErWalk *walk,
                                                  int64_t *out_tau,
                                                  bool *out_all_minus_one_after);

// Largest and second-largest core sub-component sizes from the excursion
// decomposition of a walk.
//
// # Safety
// `walk` must be valid; non-NULL outputs must be valid.
enum PoissonErStatus poisson_er_walk_top_components(const struct PoissonErWalk *walk,
                                                    uint64_t *out_largest,
                                                    uint64_t *out_second);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POISSON_ER_H */
