#ifndef QHK_H
#define QHK_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Outcome of a call.
 */
typedef enum QhkStatus {
  QHK_STATUS_OK = 0,
  QHK_STATUS_NULL_POINTER = 1,
  QHK_STATUS_INVALID_UTF8 = 2,
  QHK_STATUS_PARSE = 3,
  QHK_STATUS_UNKNOWN_GENERATOR = 4,
  QHK_STATUS_UNKNOWN_SPACE = 5,
  QHK_STATUS_DOMAIN = 6,
  QHK_STATUS_NON_HOMOGENEOUS = 7,
  QHK_STATUS_SPACE_MISMATCH = 8,
  QHK_STATUS_CACHE = 9,
  QHK_STATUS_PANIC = 10,
} QhkStatus;

/**
 * Which verifier `qhk_verify` runs.
 */
typedef enum QhkTheorem {
  QHK_THEOREM_ONE = 1,
  QHK_THEOREM_TWO = 2,
  QHK_THEOREM_THREE = 3,
  QHK_THEOREM_ROOT = 4,
} QhkTheorem;

/**
 * An element of `H_*QX` over one space.
 */
typedef struct QhkElement QhkElement;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failed call on this thread, or an empty
 * string. The pointer stays valid until the next call on this thread.
 */
const char *qhk_last_error_message(void);

/**
 * Parses `text` over `space` (for example `"P"`, `"S1"`, `"SCP^s1"`) into
 * canonical form.
 *
 * # Safety
 * `text` and `space` must be NUL-terminated strings; `out` must be writable.
 */
enum QhkStatus qhk_parse(const char *text, const char *space, struct QhkElement **out);

/**
 * Releases an element. Null is ignored.
 *
 * # Safety
 * `element` must come from this library and not have been freed.
 */
void qhk_element_free(struct QhkElement *element);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void qhk_string_free(char *s);

/**
 * Canonical text of an element, or null if `element` is null.
 *
 * # Safety
 * `element` must be a live handle or null.
 */
char *qhk_element_to_string(const struct QhkElement *element);

/**
 * JSON form of an element, or null if `element` is null.
 *
 * # Safety
 * `element` must be a live handle or null.
 */
char *qhk_element_to_json(const struct QhkElement *element);

/**
 * Whether two elements are equal.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
enum QhkStatus qhk_element_equal(const struct QhkElement *a, const struct QhkElement *b, bool *out);

/**
 * Sum of two elements over the same space.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
enum QhkStatus qhk_add(const struct QhkElement *a,
                       const struct QhkElement *b,
                       struct QhkElement **out);

/**
 * Product of two elements over the same space.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
enum QhkStatus qhk_mul(const struct QhkElement *a,
                       const struct QhkElement *b,
                       struct QhkElement **out);

/**
 * The dual Steenrod operation `Sq^a_*` applied to a homogeneous element.
 *
 * # Safety
 * `element` must be a live handle; `out` must be writable.
 */
enum QhkStatus qhk_sq_down(uint32_t a, const struct QhkElement *element, struct QhkElement **out);

/**
 * The square root `r`, dual to squaring in cohomology.
 *
 * # Safety
 * `element` must be a live handle; `out` must be writable.
 */
enum QhkStatus qhk_square_root(const struct QhkElement *element, struct QhkElement **out);

/**
 * Whether every positive-degree Steenrod operation kills the element.
 *
 * # Safety
 * `element` must be a live handle; `out` must be writable.
 */
enum QhkStatus qhk_is_a_annihilated(const struct QhkElement *element, bool *out);

/**
 * Whether the element is primitive for the coproduct.
 *
 * # Safety
 * `element` must be a live handle; `out` must be writable.
 */
enum QhkStatus qhk_is_primitive(const struct QhkElement *element, bool *out);

/**
 * Runs a verifier over degrees `1..=max_degree`. A `max_length` of 0 selects
 * the longest word length reachable in that range. Writes whether the check
 * passed and the JSON report, to be freed with `qhk_string_free`.
 *
 * # Safety
 * `space` must be a NUL-terminated string; `passed` and `report_json` must be writable.
 */
enum QhkStatus qhk_verify(enum QhkTheorem theorem,
                          const char *space,
                          uint32_t max_degree,
                          uint32_t max_length,
                          uint32_t max_vectors,
                          bool *passed,
                          char **report_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QHK_H */
