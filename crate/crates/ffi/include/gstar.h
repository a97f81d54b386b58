#ifndef GSTAR_H
#define GSTAR_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes shared by every entry point.
 */
typedef enum GstarStatus {
  GSTAR_STATUS_OK = 0,
  GSTAR_STATUS_NULL_ARGUMENT = 1,
  GSTAR_STATUS_INVALID_UTF8 = 2,
  GSTAR_STATUS_PARSE = 3,
  GSTAR_STATUS_PARAMETER = 4,
  GSTAR_STATUS_INVALID_ALGEBRA = 5,
  GSTAR_STATUS_RESOURCE_CAP = 6,
  GSTAR_STATUS_INTERNAL = 7,
} GstarStatus;

/**
 * Opaque algebra handle.
 */
typedef struct GstarAlgebra GstarAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread (empty after a success).
 * The pointer stays valid until the next call on the same thread.
 */
const char *gstar_last_error(void);

/**
 * Builds a catalog algebra. `group` is a list of cyclic orders such as
 * `"4"` or `"2,2"` (null or `"1"` for the trivial group); `g` and `h` are
 * element tuples such as `"(1)"` or null; `k` is 0 when unused.
 *
 * # Safety
 * String arguments must be null or valid NUL-terminated strings; `out`
 * must be a valid pointer.
 */
enum GstarStatus gstar_algebra_from_catalog(const char *name,
                                            const char *group,
                                            const char *g,
                                            const char *h,
                                            size_t k,
                                            struct GstarAlgebra **out);

/**
 * Reads an algebra from its JSON interchange form and checks the axioms.
 *
 * # Safety
 * `json` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum GstarStatus gstar_algebra_from_json(const char *json, struct GstarAlgebra **out);

/**
 * Releases a handle. Null is accepted.
 *
 * # Safety
 * `a` must be null or a handle not yet freed.
 */
void gstar_algebra_free(struct GstarAlgebra *a);

/**
 * Dimension of the algebra, or 0 for a null handle.
 *
 * # Safety
 * `a` must be null or a live handle.
 */
size_t gstar_algebra_dim(const struct GstarAlgebra *a);

/**
 * Serialises the algebra to JSON. Free the string with `gstar_string_free`.
 *
 * # Safety
 * `a` must be a live handle and `out` a valid pointer.
 */
enum GstarStatus gstar_algebra_to_json(const struct GstarAlgebra *a, char **out);

/**
 * Frees a string returned by this library. Null is accepted.
 *
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void gstar_string_free(char *s);

/**
 * Checks the algebra axioms; `*valid` receives the verdict and
 * `*violations` the number of violated axiom instances.
 *
 * # Safety
 * `a` must be a live handle; the output pointers must be valid.
 */
enum GstarStatus gstar_validate(const struct GstarAlgebra *a, bool *valid, size_t *violations);

/**
 * Total codimension `c_n`. `cap` is the degree cap (0 for the default).
 *
 * # Safety
 * `a` must be a live handle and `out` a valid pointer.
 */
enum GstarStatus gstar_codim(const struct GstarAlgebra *a, size_t n, size_t cap, uint64_t *out);

/**
 * Colength `l_n`. `cap` is the degree cap (0 for the default).
 *
 * # Safety
 * `a` must be a live handle and `out` a valid pointer.
 */
enum GstarStatus gstar_colength(const struct GstarAlgebra *a, size_t n, size_t cap, uint64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GSTAR_H */
