/* SPDX-License-Identifier: Apache-2.0 */
/* Generated by cbindgen from src/lib.rs. Do not edit. */

#ifndef MATCHING_FRAMES_H
#define MATCHING_FRAMES_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. `MF_NOT_FOUND` is not an error: the call succeeded and the
 * matrix has no matching frame.
 */
typedef enum MfStatus {
  MF_OK = 0,
  MF_NOT_FOUND = 1,
  MF_NULL_POINTER = 2,
  MF_INVALID_INPUT = 3,
  MF_OUT_OF_BOUNDS = 4,
  MF_DEGENERATE_STRIDE = 5,
  MF_PANIC = 6,
} MfStatus;

/**
 * Opaque matrix handle.
 */
typedef struct MfMatrix MfMatrix;

/**
 * Frame with rows `u..=d` and columns `l..=r`, 1-based.
 */
typedef struct MfFrame {
  size_t u;
  size_t d;
  size_t l;
  size_t r;
} MfFrame;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a `rows x cols` matrix from `cells` in row-major order.
 *
 * # Safety
 * `cells` must point to `rows * cols` readable values and `out` must be
 * writable.
 */
enum MfStatus mf_matrix_new(size_t rows, size_t cols, const uint32_t *cells, struct MfMatrix **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `handle` must come from [`mf_matrix_new`] and not be used afterwards.
 */
void mf_matrix_free(struct MfMatrix *handle);

/**
 * Row count, or 0 for a null handle.
 *
 * # Safety
 * `handle` must be null or valid.
 */
size_t mf_matrix_rows(const struct MfMatrix *handle);

/**
 * Column count, or 0 for a null handle.
 *
 * # Safety
 * `handle` must be null or valid.
 */
size_t mf_matrix_cols(const struct MfMatrix *handle);

/**
 * Maximum-perimeter matching frame. Writes `out` on `MF_OK`.
 *
 * # Safety
 * `handle` must be valid and `out` writable.
 */
enum MfStatus mf_exact(const struct MfMatrix *handle, struct MfFrame *out);

/**
 * Matching frame with perimeter at least `(1 - epsilon)` times the
 * optimum, for `0 < epsilon < 1`. Writes `out` on `MF_OK`.
 *
 * # Safety
 * `handle` must be valid and `out` writable.
 */
enum MfStatus mf_approx(const struct MfMatrix *handle, double epsilon, struct MfFrame *out);

/**
 * Sets `*out` to whether any matching frame exists.
 *
 * # Safety
 * `handle` must be valid and `out` writable.
 */
enum MfStatus mf_decide(const struct MfMatrix *handle, bool *out);

/**
 * Sets `*out` to whether `frame` is a matching frame of the matrix.
 *
 * # Safety
 * `handle` must be valid, `frame` readable and `out` writable.
 */
enum MfStatus mf_is_matching(const struct MfMatrix *handle, const struct MfFrame *frame, bool *out);

/**
 * `2 * (d - u + r - l)`, or 0 for a null or inverted frame.
 *
 * # Safety
 * `frame` must be null or readable.
 */
size_t mf_perimeter(const struct MfFrame *frame);

/**
 * Copies the calling thread's last error message into `buf` (NUL
 * terminated, truncated to `len`). Returns the full message length in
 * bytes, excluding the terminator.
 *
 * # Safety
 * `buf` must be null or point to `len` writable bytes.
 */
size_t mf_last_error_message(char *buf, size_t len);

/**
 * Static, NUL-terminated name of a status code.
 */
const char *mf_status_name(enum MfStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MATCHING_FRAMES_H */
