#ifndef WKAM_H
#define WKAM_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes shared by every entry point.
 */
typedef enum {
  WKAM_STATUS_OK = 0,
  WKAM_STATUS_NULL_POINTER = 1,
  WKAM_STATUS_INVALID_INPUT = 2,
  WKAM_STATUS_GRAPH_MODE = 3,
  WKAM_STATUS_SIZE_GUARD = 4,
  WKAM_STATUS_BUFFER_TOO_SMALL = 5,
  WKAM_STATUS_OUT_OF_RANGE = 6,
  WKAM_STATUS_INTERNAL = 7,
  WKAM_STATUS_PANIC = 8,
} WkamStatus;

/**
 * A cost instance in exact or float mode.
 */
typedef struct WkamInstance WkamInstance;

/**
 * Critical value, potential, barrier and Aubry set of one instance.
 */
typedef struct WkamSolution WkamSolution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *wkam_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *wkam_version(void);

/**
 * Parses an instance from a JSON document.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string and `out` a valid pointer.
 */
WkamStatus wkam_instance_from_json(const char *json, WkamInstance **out);

/**
 * Builds an instance from an `n * n` row-major cost matrix. Positive
 * infinity marks a missing edge. With `exact != 0` every double is
 * converted to the rational it represents.
 *
 * # Safety
 * `cost` must point to `n * n` doubles and `out` must be a valid pointer.
 */
WkamStatus wkam_instance_from_matrix(const double *cost,
                                     size_t n,
                                     int32_t exact,
                                     WkamInstance **out);

/**
 * Releases an instance. Null is ignored.
 *
 * # Safety
 * `inst` must come from this library and not be freed twice.
 */
void wkam_instance_free(WkamInstance *inst);

/**
 * Number of points.
 *
 * # Safety
 * `inst` and `out` must be valid pointers.
 */
WkamStatus wkam_instance_size(const WkamInstance *inst, size_t *out);

/**
 * Critical constant only, as a double.
 *
 * # Safety
 * `inst` and `out` must be valid pointers.
 */
WkamStatus wkam_critical_value(const WkamInstance *inst, double *out);

/**
 * Computes the critical constant, Mane potential, Peierls barrier, Aubry
 * set and a maximally strict sub-solution.
 *
 * # Safety
 * `inst` and `out` must be valid pointers.
 */
WkamStatus wkam_solve(const WkamInstance *inst, WkamSolution **out);

/**
 * Releases a solution. Null is ignored.
 *
 * # Safety
 * `sol` must come from [`wkam_solve`] and not be freed twice.
 */
void wkam_solution_free(WkamSolution *sol);

/**
 * # Safety
 * `sol` and `out` must be valid pointers.
 */
WkamStatus wkam_solution_alpha0(const WkamSolution *sol, double *out);

/**
 * Copies the Peierls barrier `h` (row-major, `n * n` values) into `buf`.
 *
 * # Safety
 * `sol` must be valid and `buf` must hold `len` doubles.
 */
WkamStatus wkam_solution_barrier(const WkamSolution *sol, double *buf, size_t len);

/**
 * Copies the Mane potential (row-major, `n * n` values) into `buf`.
 *
 * # Safety
 * `sol` must be valid and `buf` must hold `len` doubles.
 */
WkamStatus wkam_solution_potential(const WkamSolution *sol, double *buf, size_t len);

/**
 * Whether point `x` belongs to the Aubry set.
 *
 * # Safety
 * `sol` and `out` must be valid pointers.
 */
WkamStatus wkam_solution_is_aubry(const WkamSolution *sol, size_t x, bool *out);

/**
 * The critical constant exactly (`"p/q"` in exact mode). Free with [`wkam_string_free`].
 *
 * # Safety
 * `sol` and `out` must be valid pointers.
 */
WkamStatus wkam_solution_alpha0_text(const WkamSolution *sol, char **out);

/**
 * The whole solution as compact JSON. Free with [`wkam_string_free`].
 *
 * # Safety
 * `sol` and `out` must be valid pointers.
 */
WkamStatus wkam_solution_to_json(const WkamSolution *sol, char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void wkam_string_free(char *s);

/**
 * Runs the oracle check suite; `passed` is set to 1 when every check holds.
 *
 * # Safety
 * `inst` and `passed` must be valid pointers.
 */
WkamStatus wkam_verify(const WkamInstance *inst, int32_t *passed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WKAM_H */
