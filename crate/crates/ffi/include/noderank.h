#ifndef NODERANK_H
#define NODERANK_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. Zero is success.
 */
typedef enum NrStatus {
  NR_STATUS_OK = 0,
  NR_STATUS_NULL_POINTER = 1,
  NR_STATUS_INVALID_UTF8 = 2,
  NR_STATUS_PARSE = 3,
  NR_STATUS_INVALID_ARGUMENT = 4,
  NR_STATUS_DIMENSION_MISMATCH = 5,
  NR_STATUS_NON_CONVERGENCE = 6,
  NR_STATUS_NUMERICAL = 7,
  NR_STATUS_IO = 8,
  NR_STATUS_UNSUPPORTED = 9,
  NR_STATUS_PANIC = 10,
} NrStatus;

typedef enum NrNormalization {
  NR_NORMALIZATION_SYMMETRIC = 0,
  NR_NORMALIZATION_COLUMN = 1,
  NR_NORMALIZATION_NONE = 2,
} NrNormalization;

/**
 * A ranking algorithm. Bare filters additionally support
 * [`nr_propagate`].
 */
typedef struct NrAlgorithm NrAlgorithm;

/**
 * An immutable graph.
 */
typedef struct NrGraph NrGraph;

/**
 * A normalization cache that algorithms can share.
 */
typedef struct NrPreprocessor NrPreprocessor;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failed call on this thread, or null.
 * The pointer stays valid until the next `nr_*` call on the same thread.
 */
const char *nr_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *nr_version(void);

/**
 * Builds a graph from edge-list text: one `u v` pair per line, `#`
 * comments allowed.
 *
 * # Safety
 * `edges` must be a NUL-terminated string and `out` a valid pointer.
 */
enum NrStatus nr_graph_from_edge_list(const char *edges, bool directed, struct NrGraph **out);

/**
 * Reads an edge-list file.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` a valid pointer.
 */
enum NrStatus nr_graph_read(const char *path, bool directed, struct NrGraph **out);

/**
 * Number of nodes, or 0 for a null graph.
 *
 * # Safety
 * `graph` must be null or a live handle.
 */
size_t nr_graph_node_count(const struct NrGraph *graph);

/**
 * Number of edges, or 0 for a null graph.
 *
 * # Safety
 * `graph` must be null or a live handle.
 */
size_t nr_graph_edge_count(const struct NrGraph *graph);

/**
 * Looks up the index of a node id.
 *
 * # Safety
 * `graph` must be a live handle, `id` a NUL-terminated string and
 * `index` a valid pointer.
 */
enum NrStatus nr_graph_node_index(const struct NrGraph *graph, const char *id, size_t *index);

/**
 * Copies the id of node `index` into `buffer` with a trailing NUL. The
 * full length without the NUL is stored in `needed`, so a too-small
 * buffer can be retried.
 *
 * # Safety
 * `graph` must be a live handle, `buffer` must hold `capacity` bytes and
 * `needed` must be null or valid.
 */
enum NrStatus nr_graph_node_id(const struct NrGraph *graph,
                               size_t index,
                               char *buffer,
                               size_t capacity,
                               size_t *needed);

/**
 * # Safety
 * `graph` must be null or a handle not yet freed.
 */
void nr_graph_free(struct NrGraph *graph);

/**
 * Creates a preprocessor. Graph handles are immutable, so results are
 * cached per graph.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum NrStatus nr_preprocessor_new(enum NrNormalization mode,
                                  bool renormalize,
                                  struct NrPreprocessor **out);

/**
 * How many normalizations the preprocessor has computed.
 *
 * # Safety
 * `preprocessor` must be null or a live handle.
 */
size_t nr_preprocessor_computations(const struct NrPreprocessor *preprocessor);

/**
 * # Safety
 * `preprocessor` must be null or a handle not yet freed. Algorithms built
 * from it stay usable.
 */
void nr_preprocessor_free(struct NrPreprocessor *preprocessor);

/**
 * Builds an algorithm from a description such as `ppr:0.85`, `hk:3`,
 * `gf:0.5,0.3,0.2`, `tuned` or `ppr:0.85+sweep`. A null preprocessor
 * gives the algorithm its own symmetric one. `tol <= 0` and
 * `max_iters == 0` keep the defaults.
 *
 * # Safety
 * `spec` must be a NUL-terminated string, `preprocessor` null or live and
 * `out` valid.
 */
enum NrStatus nr_algorithm_parse(const char *spec,
                                 const struct NrPreprocessor *preprocessor,
                                 double tol,
                                 size_t max_iters,
                                 struct NrAlgorithm **out);

/**
 * # Safety
 * `algorithm` must be null or a handle not yet freed.
 */
void nr_algorithm_free(struct NrAlgorithm *algorithm);

/**
 * Whether [`nr_propagate`] is available for this algorithm.
 *
 * # Safety
 * `algorithm` must be null or a live handle.
 */
bool nr_algorithm_is_filter(const struct NrAlgorithm *algorithm);

/**
 * Ranks nodes from a personalization of `len` values. `len` must equal
 * the node count and `scores` must hold as many values.
 *
 * # Safety
 * Handles must be live and both buffers must hold `len` doubles.
 */
enum NrStatus nr_rank(const struct NrAlgorithm *algorithm,
                      const struct NrGraph *graph,
                      const double *personalization,
                      size_t len,
                      double *scores);

/**
 * Applies a bare filter to `cols` signals stored row-major as a
 * `rows x cols` block, without rescaling them.
 *
 * # Safety
 * Handles must be live and both buffers must hold `rows * cols` doubles.
 */
enum NrStatus nr_propagate(const struct NrAlgorithm *algorithm,
                           const struct NrGraph *graph,
                           const double *signals,
                           size_t rows,
                           size_t cols,
                           double *out);

/**
 * Area under the ROC curve of `scores` against 0/1 `labels`.
 *
 * # Safety
 * Both buffers must hold `len` entries and `auc` must be valid.
 */
enum NrStatus nr_auc(const uint8_t *labels, const double *scores, size_t len, double *auc);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NODERANK_H */
