#ifndef SQROOT_H
#define SQROOT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum SqrootStatus {
  SQROOT_STATUS_OK = 0,
  SQROOT_STATUS_NULL_POINTER = 1,
  SQROOT_STATUS_INVALID_UTF8 = 2,
  SQROOT_STATUS_PARSE = 3,
  SQROOT_STATUS_VERTEX_MISMATCH = 4,
  SQROOT_STATUS_INVALID_INSTANCE = 5,
  SQROOT_STATUS_REDUCTION = 6,
  SQROOT_STATUS_PANIC = 7,
} SqrootStatus;

typedef enum SqrootSolveOutcome {
  SQROOT_SOLVE_OUTCOME_ROOT = 0,
  SQROOT_SOLVE_OUTCOME_NO_ROOT = 1,
  SQROOT_SOLVE_OUTCOME_INCONCLUSIVE = 2,
} SqrootSolveOutcome;

/*
 Opaque graph handle.
 */
typedef struct SqrootGraph SqrootGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failed call on this thread, or NULL. The pointer is
 valid until the next call into this library on the same thread.
 */
const char *sqroot_last_error(void);

/*
 Library version as a static NUL-terminated string.
 */
const char *sqroot_version(void);

/*
 Parses edge-list text into a new graph.

 # Safety
 `text` must be a NUL-terminated string and `out` a writable pointer.
 */
enum SqrootStatus sqroot_graph_parse(const char *text, struct SqrootGraph **out);

/*
 Releases a graph. NULL is ignored.

 # Safety
 `g` must come from this library and not have been freed.
 */
void sqroot_graph_free(struct SqrootGraph *g);

/*
 Number of vertices, or 0 for NULL.

 # Safety
 `g` must be NULL or a live handle.
 */
size_t sqroot_graph_vertex_count(const struct SqrootGraph *g);

/*
 Number of edges, or 0 for NULL.

 # Safety
 `g` must be NULL or a live handle.
 */
size_t sqroot_graph_edge_count(const struct SqrootGraph *g);

/*
 Serializes a graph as edge-list text.

 # Safety
 `g` must be a live handle and `out` a writable pointer.
 */
enum SqrootStatus sqroot_graph_to_edge_list(const struct SqrootGraph *g, char **out);

/*
 Releases a string returned by this library. NULL is ignored.

 # Safety
 `s` must come from this library and not have been freed.
 */
void sqroot_string_free(char *s);

/*
 Writes the square of `g` as a new graph.

 # Safety
 `g` must be a live handle and `out` a writable pointer.
 */
enum SqrootStatus sqroot_square(const struct SqrootGraph *g, struct SqrootGraph **out);

/*
 Sets `*result` to whether `h` squared equals `g`.

 # Safety
 `h` and `g` must be live handles and `result` a writable pointer.
 */
enum SqrootStatus sqroot_verify_square_root(const struct SqrootGraph *h,
                                            const struct SqrootGraph *g,
                                            bool *result);

/*
 Sets `*result` to whether `g` is planar.

 # Safety
 `g` must be a live handle and `result` a writable pointer.
 */
enum SqrootStatus sqroot_is_planar(const struct SqrootGraph *g, bool *result);

/*
 Searches for a square root of `g` within `budget` branch assignments.
 On `Root`, `*root` receives a new graph when `root` is not NULL.
 `nodes` may be NULL.

 # Safety
 `g` must be a live handle; `outcome` must be writable; `root` and
 `nodes` must be NULL or writable.
 */
enum SqrootStatus sqroot_solve(const struct SqrootGraph *g,
                               uint64_t budget,
                               enum SqrootSolveOutcome *outcome,
                               struct SqrootGraph **root,
                               uint64_t *nodes);

/*
 Builds the gadget graph of a set-splitting instance given as JSON.
 `roles_json` may be NULL; otherwise it receives the role map.

 # Safety
 `instance_json` must be a NUL-terminated string, `out` writable, and
 `roles_json` NULL or writable.
 */
enum SqrootStatus sqroot_setsplit_to_graph(const char *instance_json,
                                           struct SqrootGraph **out,
                                           char **roles_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SQROOT_H */
