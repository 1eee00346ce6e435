#ifndef MIDDLE_CUBE_H
#define MIDDLE_CUBE_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/**
 * Result code of every fallible call.
 */
typedef enum McStatus {
  MC_STATUS_OK = 0,
  MC_STATUS_NULL_POINTER = 1,
  MC_STATUS_INVALID_UTF8 = 2,
  MC_STATUS_INVALID_ARGUMENT = 3,
  MC_STATUS_GRAPH_ERROR = 4,
  MC_STATUS_COMPUTATION_ERROR = 5,
  MC_STATUS_PANIC = 6,
} McStatus;

/**
 * Search outcome reported by `mc_hamilton`.
 */
typedef enum McHamiltonStatus {
  MC_HAMILTON_STATUS_FOUND = 0,
  MC_HAMILTON_STATUS_NOT_FOUND_WITHIN_BUDGET = 1,
  MC_HAMILTON_STATUS_PROVEN_NONE = 2,
} McHamiltonStatus;

/**
 * Opaque graph handle.
 */
typedef struct McGraph McGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *mc_version(void);

/**
 * Message for the last failed call on this thread, or NULL. The pointer
 * stays valid until the next call into the library from this thread.
 */
const char *mc_last_error(void);

/**
 * Builds a family member from a spec such as `"middle-cube:3"`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` a writable pointer.
 */
enum McStatus mc_graph_from_spec(const char *spec, struct McGraph **out);

/**
 * Parses edge-list text (`"n m"` header, then `"u v"` lines).
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a writable pointer.
 */
enum McStatus mc_graph_from_edge_list(const char *text, struct McGraph **out);

/**
 * Releases a graph. NULL is ignored.
 *
 * # Safety
 * `g` must come from this library and not be used afterwards.
 */
void mc_graph_free(struct McGraph *g);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void mc_string_free(char *s);

/**
 * # Safety
 * `g` must be a live handle and `out` a writable pointer.
 */
enum McStatus mc_graph_order(const struct McGraph *g, size_t *out);

/**
 * # Safety
 * `g` must be a live handle and `out` a writable pointer.
 */
enum McStatus mc_graph_size(const struct McGraph *g, size_t *out);

/**
 * Fails with `GraphError` on disconnected graphs.
 *
 * # Safety
 * `g` must be a live handle and `out` a writable pointer.
 */
enum McStatus mc_graph_diameter(const struct McGraph *g, size_t *out);

/**
 * # Safety
 * `g` must be a live handle and `out` a writable pointer.
 */
enum McStatus mc_graph_is_bipartite(const struct McGraph *g, bool *out);

/**
 * Bipartite double: vertex `i` and its copy `i + n`.
 *
 * # Safety
 * `g` must be a live handle and `out` a writable pointer.
 */
enum McStatus mc_graph_bipartite_double(const struct McGraph *g, struct McGraph **out);

/**
 * Bipartite double plus the matching `i -- i + n`.
 *
 * # Safety
 * `g` must be a live handle and `out` a writable pointer.
 */
enum McStatus mc_graph_extended_double(const struct McGraph *g, struct McGraph **out);

/**
 * Edge-list text; free with `mc_string_free`.
 *
 * # Safety
 * `g` must be a live handle and `out` a writable pointer.
 */
enum McStatus mc_graph_edge_list(const struct McGraph *g, char **out);

/**
 * JSON with order, size, edges and optional labels; free with
 * `mc_string_free`.
 *
 * # Safety
 * `g` must be a live handle and `out` a writable pointer.
 */
enum McStatus mc_graph_json(const struct McGraph *g, char **out);

/**
 * Exact integer spectrum as JSON; free with `mc_string_free`.
 *
 * # Safety
 * `g` must be a live handle and `out` a writable pointer.
 */
enum McStatus mc_spectrum_json(const struct McGraph *g, char **out);

/**
 * Runs the analysis checks named in `checks` (comma separated; NULL for
 * all) and writes the JSON report. `all_passed` may be NULL.
 *
 * # Safety
 * `g` must be a live handle, `checks` NULL or a NUL-terminated string, and
 * `out` a writable pointer.
 */
enum McStatus mc_analyze_json(const struct McGraph *g,
                              const char *checks,
                              char **out,
                              bool *all_passed);

/**
 * Budgeted Hamilton cycle search. `report_out`, if not NULL, receives the
 * JSON report including any cycle; free it with `mc_string_free`.
 *
 * # Safety
 * `g` must be a live handle, `status` writable, `report_out` NULL or
 * writable.
 */
enum McStatus mc_hamilton(const struct McGraph *g,
                          uint64_t budget,
                          enum McHamiltonStatus *status,
                          char **report_out);

/**
 * Loads a target the way the command-line tool does: a family spec or an
 * edge-list file path.
 *
 * # Safety
 * `target` must be a NUL-terminated string and `out` a writable pointer.
 */
enum McStatus mc_graph_load(const char *target, struct McGraph **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MIDDLE_CUBE_H */
