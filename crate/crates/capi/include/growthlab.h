#ifndef GROWTHLAB_H
#define GROWTHLAB_H

/* Generated by cbindgen from growthlab-capi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes mirrored by the CLI exit codes.
 */
typedef enum GlabStatus {
  /**
   * Success.
   */
  GLAB_STATUS_OK = 0,
  /**
   * Malformed input (parse error, unknown name, bad parameters).
   */
  GLAB_STATUS_INPUT_ERROR = 2,
  /**
   * A certification failed (infeasible family, failed verification).
   */
  GLAB_STATUS_CERTIFICATION_FAILED = 3,
  /**
   * A required pointer argument was null.
   */
  GLAB_STATUS_NULL_POINTER = 4,
  /**
   * Internal error (a panic was caught at the boundary).
   */
  GLAB_STATUS_INTERNAL = 5,
} GlabStatus;

/**
 * Opaque certified root enclosure.
 */
typedef struct GlabEnclosure GlabEnclosure;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Release a string returned by any `glab_*` function.
 *
 * # Safety
 * `s` must be null or a pointer previously returned by this library and
 * not yet freed.
 */
void glab_string_free(char *s);

/**
 * Release an enclosure handle.
 *
 * # Safety
 * `e` must be null or a handle previously returned by `glab_growth_rate`
 * and not yet freed.
 */
void glab_enclosure_free(struct GlabEnclosure *e);

/**
 * Growth rate of the sum closure of `seq` ("pre;period" integer lists),
 * enclosed to width 2^-precision_bits.
 * # Safety
 * `seq` must be null or a NUL-terminated string; `out` must be null or valid for writes.
 */
enum GlabStatus glab_growth_rate(const char *seq,
                                 uint32_t precision_bits,
                                 struct GlabEnclosure **out);

/**
 * Exact lower endpoint of an enclosure, as a rational string "p/q".
 * # Safety
 * `e` must be null or a live enclosure handle; `out` must be null or valid for writes.
 */
enum GlabStatus glab_enclosure_lo(const struct GlabEnclosure *e, char **out);

/**
 * Exact upper endpoint of an enclosure, as a rational string "p/q".
 * # Safety
 * `e` must be null or a live enclosure handle; `out` must be null or valid for writes.
 */
enum GlabStatus glab_enclosure_hi(const struct GlabEnclosure *e, char **out);

/**
 * Fixed-point decimal rendering of the enclosure midpoint.
 * # Safety
 * `e` must be null or a live enclosure handle; `out` must be null or valid for writes.
 */
enum GlabStatus glab_enclosure_decimal(const struct GlabEnclosure *e, uint32_t places, char **out);

/**
 * The defining polynomial of the enclosed root, highest degree first.
 * # Safety
 * `e` must be null or a live enclosure handle; `out` must be null or valid for writes.
 */
enum GlabStatus glab_enclosure_polynomial(const struct GlabEnclosure *e, char **out);

/**
 * JSON report of the named constants at the given precision.
 * # Safety
 * `out` must be null or valid for writes.
 */
enum GlabStatus glab_constants_json(uint32_t precision_bits, char **out);

/**
 * JSON interval report of a built-in family name or an inline JSON config
 * (a string starting with '{').
 * # Safety
 * `name` must be null or a NUL-terminated string; `out` must be null or valid for writes.
 */
enum GlabStatus glab_family_json(const char *name, uint32_t precision_bits, char **out);

/**
 * JSON verification report: `which` is "theorem1", "theorem2" or "all".
 * # Safety
 * `which` must be null or a NUL-terminated string; `out` must be null or valid for writes.
 */
enum GlabStatus glab_verify_json(const char *which, uint32_t precision_bits, char **out);

/**
 * Subpermutation containment test on one-line notation strings;
 * writes 1 or 0 into `out`.
 * # Safety
 * `sigma` and `pattern` must be null or NUL-terminated strings; `out` must be null or valid for writes.
 */
enum GlabStatus glab_perm_contains(const char *sigma,
                                   const char *pattern,
                                   int *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GROWTHLAB_H */
