#ifndef CUBARY_H
#define CUBARY_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CubaryMatrix {
  CUBARY_MATRIX_B = 0,
  CUBARY_MATRIX_C = 1,
} CubaryMatrix;

typedef enum CubaryStatus {
  CUBARY_STATUS_OK = 0,
  CUBARY_STATUS_NULL_POINTER = 1,
  CUBARY_STATUS_INVALID_ARGUMENT = 2,
  CUBARY_STATUS_PARSE = 3,
  CUBARY_STATUS_INVALID_COMPLEX = 4,
  CUBARY_STATUS_BUDGET_EXCEEDED = 5,
  CUBARY_STATUS_BUFFER_TOO_SMALL = 6,
  CUBARY_STATUS_OVERFLOW = 7,
  CUBARY_STATUS_CROSS_CHECK = 8,
  CUBARY_STATUS_PANIC = 9,
} CubaryStatus;

/**
 * Opaque complex handle.
 */
typedef struct CubaryComplex CubaryComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failing call on this thread; empty after a success.
 * The pointer stays valid until the next call on this thread.
 */
const char *cubary_last_error(void);

/**
 * Solid `d`-cube.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum CubaryStatus cubary_gen_cube(size_t d, struct CubaryComplex **out);

/**
 * Boundary of the `d`-cube, `d >= 1`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum CubaryStatus cubary_gen_cube_boundary(size_t d, struct CubaryComplex **out);

/**
 * Parses and validates complex JSON.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be valid for writes.
 */
enum CubaryStatus cubary_complex_from_json(const char *json, struct CubaryComplex **out);

/**
 * Serializes a complex; free the result with `cubary_string_free`.
 *
 * # Safety
 * `c` must be a live handle; `out` must be valid for writes.
 */
enum CubaryStatus cubary_complex_to_json(const struct CubaryComplex *c, char **out);

/**
 * # Safety
 * `s` must come from this library and not be freed twice. Null is ignored.
 */
void cubary_string_free(char *s);

/**
 * # Safety
 * `c` must come from this library and not be freed twice. Null is ignored.
 */
void cubary_complex_free(struct CubaryComplex *c);

/**
 * `n`-fold subdivision, refusing results with more than `budget` faces.
 *
 * # Safety
 * `c` must be a live handle; `out` must be valid for writes.
 */
enum CubaryStatus cubary_subdivide(const struct CubaryComplex *c,
                                   uint32_t n,
                                   uint64_t budget,
                                   struct CubaryComplex **out);

/**
 * Dimension of the complex.
 *
 * # Safety
 * `c` must be a live handle; `out` must be valid for writes.
 */
enum CubaryStatus cubary_complex_dim(const struct CubaryComplex *c, size_t *out);

/**
 * Number of nonempty faces.
 *
 * # Safety
 * `c` must be a live handle; `out` must be valid for writes.
 */
enum CubaryStatus cubary_complex_face_count(const struct CubaryComplex *c, size_t *out);

/**
 * f-vector `(f_0, ..., f_(d-1))`. `len_out` always receives the length, so
 * a call with `cap = 0` sizes the buffer.
 *
 * # Safety
 * `c` must be a live handle, `len_out` valid for writes and `buf` valid for
 * `cap` writes.
 */
enum CubaryStatus cubary_f_vector(const struct CubaryComplex *c,
                                  int64_t *buf,
                                  size_t cap,
                                  size_t *len_out);

/**
 * Short cubical h-vector, length `d`. Same buffer protocol as `cubary_f_vector`.
 *
 * # Safety
 * As for `cubary_f_vector`.
 */
enum CubaryStatus cubary_hsc_vector(const struct CubaryComplex *c,
                                    int64_t *buf,
                                    size_t cap,
                                    size_t *len_out);

/**
 * Long cubical h-vector, length `d + 1`. Same buffer protocol as `cubary_f_vector`.
 *
 * # Safety
 * As for `cubary_f_vector`.
 */
enum CubaryStatus cubary_hc_vector(const struct CubaryComplex *c,
                                   int64_t *buf,
                                   size_t cap,
                                   size_t *len_out);

/**
 * Reduced Euler characteristic.
 *
 * # Safety
 * `c` must be a live handle; `out` must be valid for writes.
 */
enum CubaryStatus cubary_euler_reduced(const struct CubaryComplex *c, int64_t *out);

/**
 * `B(d)` or `C(d)` as JSON with rational string entries; free the result
 * with `cubary_string_free`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum CubaryStatus cubary_matrix_json(enum CubaryMatrix kind, size_t d, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CUBARY_H */
