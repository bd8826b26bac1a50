#ifndef VCST_H
#define VCST_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Weight value standing for an infinite weight in the array constructors.
 */
#define VCST_INFINITE_WEIGHT -1

/**
 * Fixed-point scale: weights cross the boundary as integer micro-units.
 */
#define VCST_WEIGHT_SCALE 1000000

typedef enum {
  VCST_STATUS_OK = 0,
  /**
   * Null pointer, bad UTF-8 or negative weight.
   */
  VCST_STATUS_INVALID_ARGUMENT = 1,
  VCST_STATUS_INVALID_INSTANCE = 2,
  VCST_STATUS_INFEASIBLE = 3,
  VCST_STATUS_TOO_LARGE = 4,
  /**
   * Algorithm does not apply to this kind of instance.
   */
  VCST_STATUS_WRONG_VARIANT = 5,
  VCST_STATUS_PARSE = 6,
  /**
   * An internal check failed; the result was discarded.
   */
  VCST_STATUS_INTERNAL = 7,
  VCST_STATUS_PANIC = 8,
  /**
   * A caller buffer was too small; the required length was written.
   */
  VCST_STATUS_BUFFER_TOO_SMALL = 9,
} VcstStatus;

typedef enum {
  VCST_ALGORITHM_EXACT = 0,
  VCST_ALGORITHM_CDS_LP = 1,
  VCST_ALGORITHM_CDS_SPANNING = 2,
  VCST_ALGORITHM_PD_PLANAR = 3,
  VCST_ALGORITHM_ACTIVATION_EXACT = 4,
} VcstAlgorithm;

typedef enum {
  VCST_BACKEND_AUTO = 0,
  VCST_BACKEND_EXACT = 1,
  VCST_BACKEND_GREEDY = 2,
} VcstBackend;

/**
 * Opaque instance handle.
 */
typedef struct VcstInstance VcstInstance;

/**
 * Opaque solution handle.
 */
typedef struct VcstSolution VcstSolution;

typedef struct {
  VcstAlgorithm algorithm;
  VcstBackend backend;
  /**
   * Round from every root (rounding algorithms only).
   */
  bool all_roots;
  /**
   * Also compute the exact optimum when the instance is small enough.
   */
  bool compute_opt;
} VcstSolveOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next failing call on the same thread.
 */
const char *vcst_last_error(void);

/**
 * Static name of a status code.
 */
const char *vcst_status_name(VcstStatus status);

/**
 * Parses and validates an instance file.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
VcstStatus vcst_instance_from_json(const char *json, VcstInstance **out);

/**
 * Builds a VC-weighted Steiner instance. Weights are micro-units, or
 * [`VCST_INFINITE_WEIGHT`]; `edges` holds `2 * m` endpoints.
 *
 * # Safety
 * Each array must hold the stated number of elements; `out` must be writable.
 */
VcstStatus vcst_instance_new(size_t n,
                             const int64_t *weights,
                             size_t m,
                             const size_t *edges,
                             size_t k,
                             const size_t *terminals,
                             VcstInstance **out);

/**
 * Serializes an instance; free the string with [`vcst_string_free`].
 *
 * # Safety
 * `inst` must be a live handle; `out` must be writable.
 */
VcstStatus vcst_instance_to_json(const VcstInstance *inst, char **out);

/**
 * Vertex count of the instance graph (elements for set cover); 0 for null.
 *
 * # Safety
 * `inst` must be null or a live handle.
 */
size_t vcst_instance_vertex_count(const VcstInstance *inst);

/**
 * # Safety
 * `inst` must be null or a handle not freed before.
 */
void vcst_instance_free(VcstInstance *inst);

/**
 * Default options: exact algorithm, automatic backend.
 */
VcstSolveOptions vcst_solve_options_default(void);

/**
 * Solves an instance. The output is validated before it is returned.
 *
 * # Safety
 * `inst` must be a live handle, `options` null or valid, `out` writable.
 */
VcstStatus vcst_solve(const VcstInstance *inst,
                      const VcstSolveOptions *options,
                      VcstSolution **out);

/**
 * Objective in micro-units; [`VCST_INFINITE_WEIGHT`] when infinite.
 *
 * # Safety
 * `sol` must be a live handle; `out` must be writable.
 */
VcstStatus vcst_solution_objective(const VcstSolution *sol, int64_t *out);

/**
 * Exact optimum in micro-units when it was requested and computed.
 * Writes `false` to `*available` otherwise.
 *
 * # Safety
 * `sol` must be a live handle; `out` and `available` must be writable.
 */
VcstStatus vcst_solution_optimum(const VcstSolution *sol, int64_t *out, bool *available);

/**
 * Wall time of the solve in milliseconds; negative for null.
 *
 * # Safety
 * `sol` must be null or a live handle.
 */
double vcst_solution_wall_ms(const VcstSolution *sol);

/**
 * Whether every certificate flag of the solution holds; false for null.
 *
 * # Safety
 * `sol` must be null or a live handle.
 */
bool vcst_solution_certified(const VcstSolution *sol);

/**
 * Tree edges as `2 * count` endpoints. `*len` is the buffer capacity in
 * entries on entry and the needed entry count on return.
 *
 * # Safety
 * `sol` must be a live handle; `buf` must hold `*len` entries.
 */
VcstStatus vcst_solution_tree_edges(const VcstSolution *sol, size_t *buf, size_t *len);

/**
 * Chosen vertices: the tree cover, the dominating set or the selected
 * vertex or set list, whichever the problem produces.
 *
 * # Safety
 * `sol` must be a live handle; `buf` must hold `*len` entries.
 */
VcstStatus vcst_solution_vertices(const VcstSolution *sol, size_t *buf, size_t *len);

/**
 * Serializes a solution; free the string with [`vcst_string_free`].
 *
 * # Safety
 * `sol` must be a live handle; `out` must be writable.
 */
VcstStatus vcst_solution_to_json(const VcstSolution *sol, char **out);

/**
 * # Safety
 * `sol` must be null or a handle not freed before.
 */
void vcst_solution_free(VcstSolution *sol);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not freed before.
 */
void vcst_string_free(char *s);

/**
 * Library version, static.
 */
const char *vcst_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* VCST_H */
