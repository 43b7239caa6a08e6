#ifndef SLOWCOLOR_H
#define SLOWCOLOR_H

/* Generated by cbindgen from the slowcolor-ffi crate; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every fallible call.
typedef enum SlowcolorStatus {
  SLOWCOLOR_STATUS_OK = 0,
  // A required pointer argument was null.
  SLOWCOLOR_STATUS_NULL_POINTER = 1,
  // A string argument was not valid UTF-8.
  SLOWCOLOR_STATUS_INVALID_UTF8 = 2,
  // The graph text could not be parsed.
  SLOWCOLOR_STATUS_PARSE = 3,
  // The graph is above the vertex limit passed to the call.
  SLOWCOLOR_STATUS_TOO_LARGE = 4,
  // A marked set was empty or outside the graph.
  SLOWCOLOR_STATUS_INVALID_MOVE = 5,
  // Reading or writing a cache file failed.
  SLOWCOLOR_STATUS_IO = 6,
  // A cache file was malformed or of another version.
  SLOWCOLOR_STATUS_CACHE = 7,
  // A bug inside the library; the message says where.
  SLOWCOLOR_STATUS_INTERNAL = 8,
  // The quantity is undefined for this graph (bounds of the empty graph).
  SLOWCOLOR_STATUS_UNDEFINED = 9,
} SlowcolorStatus;

// Opaque value cache; may be shared by several graphs and threads.
typedef struct SlowcolorCache SlowcolorCache;

// Opaque graph handle.
typedef struct SlowcolorGraph SlowcolorGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copies the calling thread's last error message into `buf` (at most
// `len - 1` bytes plus a terminating NUL) and returns the full message
// length. Pass a null `buf` to query the length.
//
// # Safety
// `buf` must be null or point to `len` writable bytes.
uintptr_t slowcolor_last_error(char *buf, uintptr_t len);

// Parses a graph from the text syntax (`K3,3`, `P7`, `n=4; 0-1,1-2` ...)
// and stores a new handle in `*out_graph`.
//
// # Safety
// `spec` must be a NUL-terminated string; `out_graph` must be writable.
enum SlowcolorStatus slowcolor_graph_parse(const char *spec, struct SlowcolorGraph **out_graph);

// Releases a graph. Null is ignored.
//
// # Safety
// `g` must come from [`slowcolor_graph_parse`] and not be used afterwards.
void slowcolor_graph_free(struct SlowcolorGraph *g);

// Number of vertices, or 0 for a null handle.
//
// # Safety
// `g` must be null or a live graph handle.
uintptr_t slowcolor_graph_vertex_count(const struct SlowcolorGraph *g);

// Number of edges, or 0 for a null handle.
//
// # Safety
// `g` must be null or a live graph handle.
uintptr_t slowcolor_graph_edge_count(const struct SlowcolorGraph *g);

// Creates an empty cache.
struct SlowcolorCache *slowcolor_cache_new(void);

// Loads a cache file, or starts an empty cache when the file does not
// exist.
//
// # Safety
// `path` must be a NUL-terminated string; `out_cache` must be writable.
enum SlowcolorStatus slowcolor_cache_load(const char *path, struct SlowcolorCache **out_cache);

// Writes the cache to `path`.
//
// # Safety
// `cache` must be a live cache handle; `path` a NUL-terminated string.
enum SlowcolorStatus slowcolor_cache_save(const struct SlowcolorCache *cache, const char *path);

// Number of cached component values, or 0 for a null handle.
//
// # Safety
// `cache` must be null or a live cache handle.
uintptr_t slowcolor_cache_len(const struct SlowcolorCache *cache);

// Releases a cache. Null is ignored.
//
// # Safety
// `cache` must come from this library and not be used afterwards.
void slowcolor_cache_free(struct SlowcolorCache *cache);

// Exact value of the game on `g`, stored in `*out_value`. `cache` may be
// null for a throwaway cache; `limit` caps the vertex count (0 for the
// default).
//
// # Safety
// `g` must be a live graph, `cache` null or a live cache, `out_value`
// writable.
enum SlowcolorStatus slowcolor_solve(const struct SlowcolorGraph *g,
                                     const struct SlowcolorCache *cache,
                                     uintptr_t limit,
                                     uint64_t *out_value);

// An optimal answer to `marked` (vertex bitmask) on the whole graph,
// stored as a bitmask in `*out_colored`.
//
// # Safety
// As for [`slowcolor_solve`]; `out_colored` must be writable.
enum SlowcolorStatus slowcolor_optimal_response(const struct SlowcolorGraph *g,
                                                const struct SlowcolorCache *cache,
                                                uintptr_t limit,
                                                uint64_t marked,
                                                uint64_t *out_colored);

// The best integer lower and upper bounds the invariants give for `g`.
//
// # Safety
// `g` must be a live graph; `out_lower` and `out_upper` writable.
enum SlowcolorStatus slowcolor_bounds(const struct SlowcolorGraph *g,
                                      uint64_t *out_lower,
                                      uint64_t *out_upper);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SLOWCOLOR_H */
