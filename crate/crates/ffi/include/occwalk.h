#ifndef OCCWALK_H
#define OCCWALK_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum OwStatus {
  OW_STATUS_OK = 0,
  OW_STATUS_NULL_POINTER = 1,
  OW_STATUS_INVALID_UTF8 = 2,
  OW_STATUS_DUPLICATE_EDGE = 3,
  OW_STATUS_SELF_LOOP = 4,
  OW_STATUS_NON_POSITIVE_WEIGHT = 5,
  OW_STATUS_EMPTY_LABEL = 6,
  OW_STATUS_ISOLATED_NODE = 7,
  OW_STATUS_DISCONNECTED_GRAPH = 8,
  OW_STATUS_DIMENSION_MISMATCH = 9,
  OW_STATUS_UNSTABLE_STEP = 10,
  OW_STATUS_NORM_DRIFT = 11,
  OW_STATUS_EIGENSOLVER_FAILURE = 12,
  OW_STATUS_UNKNOWN_NODE = 13,
  OW_STATUS_DUPLICATE_LAYER = 14,
  OW_STATUS_INVALID_CONFIG = 15,
  OW_STATUS_K_TOO_LARGE = 16,
  OW_STATUS_NODE_SET_MISMATCH = 17,
  OW_STATUS_PARSE_ERROR = 18,
  OW_STATUS_IO_ERROR = 19,
  OW_STATUS_PANIC = 20,
} OwStatus;

// Generator for [`ow_classical_euler`].
typedef enum OwGenerator {
  // `H_c = L D^{-1}`; stationary state proportional to degree.
  OW_GENERATOR_NORMALIZED = 0,
  // `H = gamma * L`; stationary state uniform.
  OW_GENERATOR_UNNORMALIZED_RATE = 1,
} OwGenerator;

// Flattening rule for [`ow_multilayer_flatten`].
typedef enum OwFlattenMode {
  OW_FLATTEN_MODE_BINARY = 0,
  OW_FLATTEN_MODE_SUM = 1,
} OwFlattenMode;

// Opaque graph handle.
typedef struct OwGraph OwGraph;

// Opaque multilayer network handle.
typedef struct OwMultilayer OwMultilayer;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version, static storage.
const char *ow_version(void);

// Message for the last failed call on this thread; empty after a success.
// Valid until the next `ow_*` call on the same thread.
const char *ow_last_error_message(void);

// Builds a graph from parallel arrays of UTF-8 labels. `weights` may be NULL
// (all edges weight 1).
enum OwStatus ow_graph_from_edges(const char *const *sources,
                                  const char *const *targets,
                                  const double *weights,
                                  size_t len,
                                  struct OwGraph **out);

// Loads an edge-list CSV (`source,target[,weight]`).
enum OwStatus ow_graph_load_csv(const char *path, struct OwGraph **out);

// Seeded Barabási–Albert graph with nodes labelled `0..n`.
enum OwStatus ow_barabasi_albert(size_t n, size_t m, uint64_t seed, struct OwGraph **out);

void ow_graph_free(struct OwGraph *g);

size_t ow_graph_node_count(const struct OwGraph *g);

size_t ow_graph_edge_count(const struct OwGraph *g);

// Label of node `index`, owned by the graph handle; NULL when out of range.
const char *ow_graph_node_label(const struct OwGraph *g, size_t index);

// Closed-form classical occupation `k_i / Σ k`. `len` must equal the node count.
enum OwStatus ow_classical_occupation(const struct OwGraph *g, double *out, size_t len);

// Euler integration of a classical walk from the uniform distribution.
// A non-positive `dt` selects `0.1 / max_i H_ii`. `converged` may be NULL.
enum OwStatus ow_classical_euler(const struct OwGraph *g,
                                 enum OwGenerator generator,
                                 double gamma,
                                 double dt,
                                 double horizon,
                                 double tolerance,
                                 double *out,
                                 size_t len,
                                 bool *converged);

// Exact long-time-mean quantum occupation. `psi0_node` NULL means the
// uniform superposition, otherwise the walk starts on that node.
enum OwStatus ow_quantum_occupation(const struct OwGraph *g,
                                    const char *psi0_node,
                                    double *out,
                                    size_t len);

// Quantum occupation averaged over a leapfrog trajectory of step `dt` up to `horizon`.
enum OwStatus ow_quantum_occupation_leapfrog(const struct OwGraph *g,
                                             const char *psi0_node,
                                             double dt,
                                             double horizon,
                                             double *out,
                                             size_t len);

// Top-`k` overlap and Spearman correlation of two occupation vectors over
// the nodes of `g`. Either output pointer may be NULL.
enum OwStatus ow_compare_rankings(const struct OwGraph *g,
                                  const double *a,
                                  const double *b,
                                  size_t len,
                                  size_t k,
                                  double *overlap_at_k,
                                  double *spearman_rho);

// Loads a multilayer CSV (`layer,source,target[,weight]`).
enum OwStatus ow_multilayer_load_csv(const char *path, struct OwMultilayer **out);

void ow_multilayer_free(struct OwMultilayer *m);

size_t ow_multilayer_layer_count(const struct OwMultilayer *m);

size_t ow_multilayer_actor_count(const struct OwMultilayer *m);

// Flattens into a new graph handle owned by the caller.
enum OwStatus ow_multilayer_flatten(const struct OwMultilayer *m,
                                    enum OwFlattenMode mode,
                                    struct OwGraph **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* OCCWALK_H */
