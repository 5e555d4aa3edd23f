#ifndef POLYNUM_H
#define POLYNUM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  PN_STATUS_OK = 0,
  PN_STATUS_NULL_ARGUMENT = 1,
  PN_STATUS_INVALID_ARGUMENT = 2,
  PN_STATUS_INVALID_POLYTOPE = 3,
  PN_STATUS_NON_GENERIC = 4,
  PN_STATUS_BUFFER_TOO_SMALL = 5,
  PN_STATUS_OVERFLOW = 6,
  PN_STATUS_PANIC = 7,
} PnStatus;

typedef enum {
  PN_VECTOR_F = 0,
  PN_VECTOR_H = 1,
  PN_VECTOR_K = 2,
  PN_VECTOR_E = 3,
} PnVector;

typedef enum {
  PN_METHOD_RECURSIVE = 0,
  PN_METHOD_SIMPLEX_SUM = 1,
  PN_METHOD_H_DECOMPOSITION = 2,
  PN_METHOD_K_DECOMPOSITION = 3,
  PN_METHOD_H_REVERSED = 4,
} PnMethod;

/**
 * A polytope with its face lattice.
 */
typedef struct PnPolytope PnPolytope;

/**
 * A pointed triangulation and its vectors.
 */
typedef struct PnTriangulation PnTriangulation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *pn_last_error(void);

/**
 * Builds a builtin such as `"cube:3"` or `"pyramid:square"`.
 *
 * # Safety
 * `spec` must be a valid C string and `out` a valid pointer.
 */
PnStatus pn_polytope_builtin(const char *spec, PnPolytope **out);

/**
 * Parses a polytope JSON document (`name`, `vertices`, optional `faces`).
 *
 * # Safety
 * `json` must be a valid C string and `out` a valid pointer.
 */
PnStatus pn_polytope_from_json(const char *json, PnPolytope **out);

/**
 * # Safety
 * `p` must come from a `pn_polytope_*` constructor, or be null.
 */
void pn_polytope_free(PnPolytope *p);

/**
 * # Safety
 * `p` must be a live polytope handle and `out` a valid pointer.
 */
PnStatus pn_polytope_dim(const PnPolytope *p, size_t *out);

/**
 * # Safety
 * `p` must be a live polytope handle and `out` a valid pointer.
 */
PnStatus pn_polytope_to_json(const PnPolytope *p, char **out);

/**
 * Triangulates and computes vectors, using `seed` for the functional and
 * generic point searches.
 *
 * # Safety
 * `p` must be a live polytope handle and `out` a valid pointer.
 */
PnStatus pn_triangulate(const PnPolytope *p, uint64_t seed, PnTriangulation **out);

/**
 * # Safety
 * `t` must come from [`pn_triangulate`], or be null.
 */
void pn_triangulation_free(PnTriangulation *t);

/**
 * Copies the vector named by a `PnVector` value into `buf`. `*len` always receives the
 * full length; `PN_STATUS_BUFFER_TOO_SMALL` is returned when it exceeds `cap`.
 *
 * # Safety
 * `t` must be a live handle, `buf` must hold `cap` values and `len` must be valid.
 */
PnStatus pn_triangulation_vector(const PnTriangulation *t,
                                 int32_t which,
                                 int64_t *buf,
                                 size_t cap,
                                 size_t *len);

/**
 * # Safety
 * `t` must be a live handle and `out` a valid pointer.
 */
PnStatus pn_triangulation_to_json(const PnTriangulation *t, char **out);

/**
 * Writes `P(0..=n_max)` (or `P(n)^#` when `interior`) into `buf`, computed
 * by the `PnMethod` value `m`.
 * Returns `PN_STATUS_OVERFLOW` if a value does not fit in 64 bits; use
 * [`pn_sequence_json`] for exact values.
 *
 * # Safety
 * `t` must be a live handle, `buf` must hold `cap` values and `len` must be valid.
 */
PnStatus pn_sequence(const PnTriangulation *t,
                     int32_t m,
                     bool interior,
                     size_t n_max,
                     int64_t *buf,
                     size_t cap,
                     size_t *len);

/**
 * The sequence as JSON with arbitrary-precision values.
 *
 * # Safety
 * `t` must be a live handle and `out` a valid pointer.
 */
PnStatus pn_sequence_json(const PnTriangulation *t,
                          int32_t m,
                          bool interior,
                          size_t n_max,
                          char **out);

/**
 * Runs the full verification pipeline and returns its NDJSON report.
 * `*passed` is set to whether every claim held.
 *
 * # Safety
 * `p` must be a live polytope handle; `out` and `passed` must be valid pointers.
 */
PnStatus pn_pipeline_report(const PnPolytope *p,
                            uint64_t seed,
                            size_t n_max,
                            char **out,
                            bool *passed);

/**
 * # Safety
 * `s` must come from this library, or be null.
 */
void pn_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POLYNUM_H */
