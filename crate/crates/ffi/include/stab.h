#ifndef STAB_H
#define STAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum StabStatus {
  STAB_STATUS_OK = 0,
  STAB_STATUS_NULL_POINTER = 1,
  STAB_STATUS_INVALID_INPUT = 2,
  STAB_STATUS_BUDGET_EXCEEDED = 3,
  STAB_STATUS_INTERNAL = 4,
} StabStatus;

typedef enum StabProductKind {
  STAB_PRODUCT_KIND_DIRECT = 0,
  STAB_PRODUCT_KIND_CARTESIAN = 1,
  STAB_PRODUCT_KIND_STRONG = 2,
  STAB_PRODUCT_KIND_SEMI_STRONG = 3,
  STAB_PRODUCT_KIND_LEXICOGRAPHIC = 4,
} StabProductKind;

typedef enum StabVerdict {
  STAB_VERDICT_STABLE = 0,
  STAB_VERDICT_TRIVIALLY_UNSTABLE = 1,
  STAB_VERDICT_NONTRIVIALLY_UNSTABLE = 2,
} StabVerdict;

/**
 * Opaque graph handle.
 */
typedef struct StabGraph StabGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread, or an empty string. The
 * pointer stays valid until the next failing call on the same thread.
 */
const char *stab_last_error(void);

/**
 * Parses graph text (order line, then `u v` lines) or a `c:<n>:<s,...>`
 * circulant into a new handle.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum StabStatus stab_graph_parse(const char *text, struct StabGraph **out);

/**
 * Builds a graph from `edge_count` pairs stored flat in `edges`.
 *
 * # Safety
 * `edges` must point to `2 * edge_count` values (or be null when
 * `edge_count` is 0) and `out` must be a valid pointer.
 */
enum StabStatus stab_graph_new(size_t order,
                               const size_t *edges,
                               size_t edge_count,
                               struct StabGraph **out);

/**
 * # Safety
 * `graph` must come from this library and not be used afterwards.
 */
void stab_graph_free(struct StabGraph *graph);

/**
 * Number of vertices, or 0 for a null handle.
 *
 * # Safety
 * `graph` must be null or a live handle.
 */
size_t stab_graph_order(const struct StabGraph *graph);

/**
 * Number of edges, or 0 for a null handle.
 *
 * # Safety
 * `graph` must be null or a live handle.
 */
size_t stab_graph_edge_count(const struct StabGraph *graph);

/**
 * Product of two graphs as a new handle.
 *
 * # Safety
 * `left` and `right` must be live handles and `out` a valid pointer.
 */
enum StabStatus stab_graph_product(const struct StabGraph *left,
                                   const struct StabGraph *right,
                                   enum StabProductKind kind,
                                   struct StabGraph **out);

/**
 * Stability verdict. `budget_nodes` caps the search, 0 for the default.
 *
 * # Safety
 * `graph` must be a live handle and `out` a valid pointer.
 */
enum StabStatus stab_stability(const struct StabGraph *graph,
                               uint64_t budget_nodes,
                               enum StabVerdict *out);

/**
 * Verdict, group orders and TF-morphism witness as a JSON object.
 *
 * # Safety
 * `graph` must be a live handle and `out_json` a valid pointer; the
 * string must be released with `stab_string_free`.
 */
enum StabStatus stab_classify_json(const struct StabGraph *graph,
                                   uint64_t budget_nodes,
                                   char **out_json);

/**
 * Every circulant instability condition for a `c:<n>:<s,...>` spec, as
 * JSON. Returns `BudgetExceeded` (with the JSON still written) when some
 * search was cut short.
 *
 * # Safety
 * `spec` must be a nul-terminated string and `out_json` a valid pointer;
 * the string must be released with `stab_string_free`.
 */
enum StabStatus stab_conditions_json(const char *spec, uint64_t budget_nodes, char **out_json);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void stab_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STAB_H */
