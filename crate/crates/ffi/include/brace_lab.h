#ifndef BRACE_LAB_H
#define BRACE_LAB_H

/* This file is generated by cbindgen from brace-lab-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Status code of every fallible call.
 */
typedef enum BlStatus {
  /*
   Success.
   */
  BlStatus_Ok = 0,
  /*
   A required pointer argument was null.
   */
  BlStatus_NullPointer = 1,
  /*
   A string argument was not valid UTF-8.
   */
  BlStatus_InvalidUtf8 = 2,
  /*
   The JSON document could not be parsed or had the wrong kind.
   */
  BlStatus_ParseError = 3,
  /*
   The object failed validation (an axiom or closure violation).
   */
  BlStatus_ValidationError = 4,
  /*
   A construction hypothesis failed.
   */
  BlStatus_HypothesisError = 5,
  /*
   The enumeration budget was exceeded.
   */
  BlStatus_BudgetExceeded = 6,
} BlStatus;

/*
 Opaque: a validated finite brace.
 */
typedef struct BlBrace BlBrace;

/*
 Opaque: a total map on a solution's carrier.
 */
typedef struct BlPointMap BlPointMap;

/*
 Opaque: a validated finite ring.
 */
typedef struct BlRing BlRing;

/*
 Opaque: a Yang-Baxter map (σ/τ tables over a carrier).
 */
typedef struct BlSolution BlSolution;

/*
 Counts from an exhaustive reflection scan.
 */
typedef struct BlEnumerateCounts {
  uint64_t maps_scanned;
  uint64_t reflections;
  uint64_t involutive_reflections;
  uint64_t equivariant;
  /*
   Nonzero when the scan stopped at the budget.
   */
  uint8_t truncated;
} BlEnumerateCounts;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the most recent error on this thread. The pointer stays valid
 until the next failing call on the same thread; do not free it.
 */
const char *bl_last_error_message(void);

/*
 Parse and validate `{"kind":"ring", ...}`.

 # Safety
 `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum BlStatus bl_ring_from_json(const char *json, struct BlRing **out);

/*
 Parse and validate `{"kind":"brace", ...}`.

 # Safety
 `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum BlStatus bl_brace_from_json(const char *json, struct BlBrace **out);

/*
 Look up a catalog brace (for example `"z4adj"` or `"trivial:3"`).

 # Safety
 `name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum BlStatus bl_brace_from_catalog(const char *name, struct BlBrace **out);

/*
 Adjoint brace `x∘y = x + y + x∗y` of a ring.

 # Safety
 `ring` must be a live handle from this library, `out` a valid pointer.
 */
enum BlStatus bl_brace_adjoint_of_ring(const struct BlRing *ring, struct BlBrace **out);

/*
 Yang-Baxter map of a brace on its full carrier.

 # Safety
 `brace` must be a live handle, `out` a valid pointer.
 */
enum BlStatus bl_solution_from_brace(const struct BlBrace *brace, struct BlSolution **out);

/*
 Parse `{"kind":"ybmap", ...}` (no braid-identity assertion).

 # Safety
 `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum BlStatus bl_solution_from_json(const char *json, struct BlSolution **out);

/*
 Parse `{"carrier": [...], "image": [...]}` against a solution's carrier.

 # Safety
 `json` must be a NUL-terminated string, `solution` a live handle, `out`
 a valid pointer.
 */
enum BlStatus bl_point_map_from_json(const char *json,
                                     const struct BlSolution *solution,
                                     struct BlPointMap **out);

/*
 Identity map on a solution's carrier.

 # Safety
 `solution` must be a live handle, `out` a valid pointer.
 */
enum BlStatus bl_point_map_identity(const struct BlSolution *solution, struct BlPointMap **out);

/*
 # Safety
 `brace` must be a live handle, `out` a valid pointer.
 */
enum BlStatus bl_brace_size(const struct BlBrace *brace, size_t *out);

/*
 Whether the braid identity holds on all triples.

 # Safety
 `solution` must be a live handle, `out` a valid pointer.
 */
enum BlStatus bl_solution_is_ybe(const struct BlSolution *solution, uint8_t *out);

/*
 Involutivity and nondegeneracy flags.

 # Safety
 `solution` must be a live handle; out-pointers must be valid.
 */
enum BlStatus bl_solution_classify(const struct BlSolution *solution,
                                   uint8_t *out_involutive,
                                   uint8_t *out_nondegenerate);

/*
 Reflection check; `first_coordinate_mode != 0` requests the shortcut,
 which is rejected for non-involutive solutions.

 # Safety
 Handles must be live; `out_is_reflection` must be valid.
 */
enum BlStatus bl_check_reflection(const struct BlSolution *solution,
                                  const struct BlPointMap *map,
                                  uint8_t first_coordinate_mode,
                                  uint8_t *out_is_reflection);

/*
 Whether the map commutes with every σ_x.

 # Safety
 Handles must be live; `out_is_equivariant` must be valid.
 */
enum BlStatus bl_check_equivariance(const struct BlSolution *solution,
                                    const struct BlPointMap *map,
                                    uint8_t *out_is_equivariant);

/*
 Exhaustive scan of all maps on the carrier. `budget` caps the scan;
 when `allow_truncation` is zero, exceeding it is an error.

 # Safety
 `solution` must be a live handle, `out` a valid pointer.
 */
enum BlStatus bl_enumerate_reflections(const struct BlSolution *solution,
                                       uint64_t budget,
                                       uint8_t allow_truncation,
                                       size_t jobs,
                                       struct BlEnumerateCounts *out);

/*
 Exact parameter-dependent Yang-Baxter identity for `R'(w) = I + wR`.

 # Safety
 `solution` must be a live handle, `out_holds` a valid pointer.
 */
enum BlStatus bl_param_ybe(const struct BlSolution *solution, uint8_t *out_holds);

/*
 Exact parameter-dependent reflection identity for `K'(w) = wK`; both the
 solution and the map must be involutive.

 # Safety
 Handles must be live, `out_holds` a valid pointer.
 */
enum BlStatus bl_param_reflection(const struct BlSolution *solution,
                                  const struct BlPointMap *map,
                                  uint8_t *out_holds);

/*
 # Safety
 `ptr` must come from this library and not already be freed; null is a no-op.
 */
void bl_ring_free(struct BlRing *ptr);

/*
 # Safety
 `ptr` must come from this library and not already be freed; null is a no-op.
 */
void bl_brace_free(struct BlBrace *ptr);

/*
 # Safety
 `ptr` must come from this library and not already be freed; null is a no-op.
 */
void bl_solution_free(struct BlSolution *ptr);

/*
 # Safety
 `ptr` must come from this library and not already be freed; null is a no-op.
 */
void bl_point_map_free(struct BlPointMap *ptr);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BRACE_LAB_H */
