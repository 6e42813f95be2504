#ifndef SPANNER_LAB_H
#define SPANNER_LAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result of every call.
typedef enum SlStatus {
  SL_STATUS_OK = 0,
  SL_STATUS_NULL_POINTER = 1,
  SL_STATUS_INVALID_INPUT = 2,
  SL_STATUS_INVARIANT_VIOLATION = 3,
  SL_STATUS_LEMMA_VIOLATION = 4,
  SL_STATUS_PANIC = 5,
} SlStatus;

// Opaque undirected simple graph.
typedef struct SlGraph SlGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Builds a graph on `n` vertices from `edge_count` endpoint pairs stored flat in `endpoints`.
//
// # Safety
// `endpoints` must point to `2 * edge_count` readable values (it may be null when
// `edge_count` is 0) and `out` must be writable.
enum SlStatus sl_graph_new(uint32_t n,
                           const uint32_t *endpoints,
                           size_t edge_count,
                           struct SlGraph **out);

// Parses the text edge-list format (`n m` header, then one `u v` pair per line).
//
// # Safety
// `text` must be a NUL-terminated string and `out` must be writable.
enum SlStatus sl_graph_parse(const char *text, struct SlGraph **out);

// # Safety
// `g` must be null or a handle from this library not yet freed.
void sl_graph_free(struct SlGraph *g);

// # Safety
// `g` must be a live handle and `out` writable.
enum SlStatus sl_graph_vertex_count(const struct SlGraph *g, uint32_t *out);

// # Safety
// `g` must be a live handle and `out` writable.
enum SlStatus sl_graph_edge_count(const struct SlGraph *g, size_t *out);

// Copies the sorted edge list into `endpoints` as flat `(lo, hi)` pairs.
//
// `capacity` counts edges. Fails with `InvalidInput` when it is below the edge count.
//
// # Safety
// `endpoints` must have room for `2 * capacity` values.
enum SlStatus sl_graph_edges(const struct SlGraph *g, uint32_t *endpoints, size_t capacity);

// Length of a shortest cycle, 0 for a forest.
//
// # Safety
// `g` must be a live handle and `out` writable.
enum SlStatus sl_girth(const struct SlGraph *g, uint32_t *out);

// Whether `h` is a subgraph of `g` keeping every edge of `g` within distance `k`.
//
// # Safety
// `g` and `h` must be live handles and `out` writable.
enum SlStatus sl_is_k_spanner(const struct SlGraph *g,
                              const struct SlGraph *h,
                              uint32_t k,
                              bool *out);

// Greedy k-spanner. With `shuffled` false edges are scanned in sorted order,
// otherwise in a permutation drawn from `seed`.
//
// # Safety
// `g` must be a live handle and `out` writable.
enum SlStatus sl_greedy_spanner(const struct SlGraph *g,
                                uint32_t k,
                                bool shuffled,
                                uint64_t seed,
                                struct SlGraph **out);

// Raises the girth of the k-spanner `h` of `g` to at least `k + 2`.
//
// `regime` is a regime name such as `"auto"` or `"bucket:3"`; null means auto.
// On success `out` receives the new spanner and `trace_json` the trace, to be
// released with [`sl_string_free`]. `trace_json` may be null.
//
// # Safety
// `g` and `h` must be live handles, `regime` null or NUL-terminated, `out` writable.
enum SlStatus sl_enlarge(const struct SlGraph *g,
                         const struct SlGraph *h,
                         uint32_t k,
                         const char *regime,
                         uint32_t slack,
                         struct SlGraph **out,
                         char **trace_json);

// Lower-bound gadget for stretch `k` padded to `n` vertices, with its baseline spanner.
//
// `baseline` may be null.
//
// # Safety
// `out` must be writable; `baseline` null or writable.
enum SlStatus sl_gen_gadget(uint32_t k,
                            uint32_t n,
                            struct SlGraph **out,
                            struct SlGraph **baseline);

// Message of the most recent failure on this thread, or null if none.
//
// The pointer stays valid until the next failing call on the same thread.
const char *sl_last_error_message(void);

// # Safety
// `s` must be null or a string returned by this library not yet freed.
void sl_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPANNER_LAB_H */
