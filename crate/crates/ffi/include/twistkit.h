#ifndef TWISTKIT_H
#define TWISTKIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TkStatus {
  TK_STATUS_OK = 0,
  TK_STATUS_NULL_POINTER = 1,
  TK_STATUS_INVALID_UTF8 = 2,
  TK_STATUS_PARSE = 3,
  TK_STATUS_DOMAIN = 4,
  TK_STATUS_PRECONDITION = 5,
  TK_STATUS_NOT_SIMILITUDE = 6,
  TK_STATUS_NUMERIC = 7,
  TK_STATUS_IO = 8,
  TK_STATUS_PANIC = 9,
} TkStatus;

/**
 * Opaque eigen-system.
 */
typedef struct TkEigenSystem TkEigenSystem;

/**
 * Opaque Yoshida lift.
 */
typedef struct TkLift TkLift;

/**
 * Opaque inner-twist group, with the system it was detected on.
 */
typedef struct TkTwistGroup TkTwistGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. Owned by the
 * library; valid until the next failing call on this thread.
 */
const char *tk_last_error(void);

/**
 * Library version, a static string.
 */
const char *tk_version(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void tk_string_free(char *s);

/**
 * Parses an eigen-system document.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out_system` a valid pointer.
 */
enum TkStatus tk_eigensystem_from_json(const char *json, struct TkEigenSystem **out_system);

/**
 * # Safety
 * `system` must be NULL or a handle from this library, not yet freed.
 */
void tk_eigensystem_free(struct TkEigenSystem *system);

/**
 * Level, weight and coefficient-field degree.
 *
 * # Safety
 * `system` must be a live handle; the out-pointers valid.
 */
enum TkStatus tk_eigensystem_info(const struct TkEigenSystem *system,
                                  uint64_t *out_level,
                                  uint64_t *out_weight,
                                  size_t *out_degree);

/**
 * # Safety
 * `system` must be a live handle; `out_json` valid.
 */
enum TkStatus tk_eigensystem_to_json(const struct TkEigenSystem *system, char **out_json);

/**
 * Detects the inner twists of `system` over primes up to `prime_bound`,
 * with characters of modulus dividing the level (or its square if `wide`).
 *
 * # Safety
 * `system` must be a live handle; `out_group` valid.
 */
enum TkStatus tk_twists_detect(const struct TkEigenSystem *system,
                               uint64_t prime_bound,
                               bool wide,
                               struct TkTwistGroup **out_group);

/**
 * # Safety
 * `group` must be NULL or a handle from this library, not yet freed.
 */
void tk_twist_group_free(struct TkTwistGroup *group);

/**
 * Number of detected twists (identity included) and of inconclusive
 * automorphisms.
 *
 * # Safety
 * `group` must be a live handle; the out-pointers valid.
 */
enum TkStatus tk_twist_group_order(const struct TkTwistGroup *group,
                                   size_t *out_order,
                                   size_t *out_inconclusive);

/**
 * Whether group closure, the cocycle identity and the determinant
 * relation all hold.
 *
 * # Safety
 * `group` must be a live handle; `out_ok` valid.
 */
enum TkStatus tk_twist_group_identities(const struct TkTwistGroup *group, bool *out_ok);

/**
 * Conductor of the character attached to the `index`-th twist, in
 * canonical order.
 *
 * # Safety
 * `group` must be a live handle; `out_conductor` valid.
 */
enum TkStatus tk_twist_group_conductor(const struct TkTwistGroup *group,
                                       size_t index,
                                       uint64_t *out_conductor);

/**
 * Builds the spin polynomials of the lift of `(left, right)` up to
 * `prime_bound`. `relaxed_weights` accepts both weights even and `>= 2`.
 *
 * # Safety
 * `left` and `right` must be live handles; `out_lift` valid.
 */
enum TkStatus tk_lift_build(const struct TkEigenSystem *left,
                            const struct TkEigenSystem *right,
                            uint64_t prime_bound,
                            bool relaxed_weights,
                            struct TkLift **out_lift);

/**
 * # Safety
 * `lift` must be NULL or a handle from this library, not yet freed.
 */
void tk_lift_free(struct TkLift *lift);

/**
 * Degrees of the trace field and of the compositum of the two
 * coefficient fields.
 *
 * # Safety
 * `lift` must be a live handle; the out-pointers valid.
 */
enum TkStatus tk_lift_field_degrees(const struct TkLift *lift,
                                    size_t *out_trace_degree,
                                    size_t *out_compositum_degree);

/**
 * # Safety
 * `lift` must be a live handle; `out_json` valid.
 */
enum TkStatus tk_lift_to_json(const struct TkLift *lift, char **out_json);

/**
 * Similitude factor of a `dim x dim` integer matrix given row-major, as a
 * rational string such as `"9"` or `"1/4"`.
 *
 * # Safety
 * `entries` must point to `dim * dim` values; `out_factor` valid.
 */
enum TkStatus tk_similitude_factor(const int64_t *entries, size_t dim, char **out_factor);

/**
 * Runs the checks on the bundled level-30 and level-100 examples and
 * writes the report as JSON.
 *
 * # Safety
 * The out-pointers must be valid.
 */
enum TkStatus tk_verify_paper_examples(uint64_t prime_bound, bool *out_passed, char **out_json);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* TWISTKIT_H */
