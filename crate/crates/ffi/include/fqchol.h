#ifndef FQCHOL_H
#define FQCHOL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FqStatus {
  FQ_STATUS_OK = 0,
  FQ_STATUS_NULL_POINTER = 1,
  FQ_STATUS_INVALID_ARGUMENT = 2,
  FQ_STATUS_PARSE = 3,
  FQ_STATUS_NON_DEFINITE = 4,
  FQ_STATUS_ZERO_MINOR = 5,
  FQ_STATUS_PATTERN_MISMATCH = 6,
  FQ_STATUS_SINGULAR = 7,
  FQ_STATUS_BUDGET_EXCEEDED = 8,
  FQ_STATUS_FIELD_MISMATCH = 9,
  FQ_STATUS_SIZE_MISMATCH = 10,
  FQ_STATUS_NOT_SYMMETRIC = 11,
  FQ_STATUS_BUFFER_TOO_SMALL = 12,
  FQ_STATUS_INTERNAL = 13,
} FqStatus;

typedef enum FqFieldClass {
  FQ_FIELD_CLASS_EVEN_CHAR = 0,
  FQ_FIELD_CLASS_DEFINITE = 1,
  FQ_FIELD_CLASS_NON_DEFINITE = 2,
} FqFieldClass;

/**
 * Opaque handle to a finite field.
 */
typedef struct FqField FqField;

/**
 * Opaque handle to a square matrix over a finite field.
 */
typedef struct FqMatrix FqMatrix;

/**
 * Counts from an exhaustive census of symmetric `n x n` matrices.
 */
typedef struct FqCensus {
  uint64_t total_sym;
  uint64_t lpm_total;
  uint64_t tpm_total;
  uint64_t formula_value;
} FqCensus;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread. Valid until the next
 * call into the library on the same thread.
 */
const char *fq_last_error(void);

/**
 * Creates `F_{p^k}` with the default modulus.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage.
 */
enum FqStatus fq_field_new(uint64_t p, uint32_t k, struct FqField **out);

/**
 * # Safety
 * `field` must be null or a handle from this library not yet freed.
 */
void fq_field_free(struct FqField *field);

/**
 * `q`, or 0 for a null handle.
 *
 * # Safety
 * `field` must be null or a live handle.
 */
uint32_t fq_field_order(const struct FqField *field);

/**
 * # Safety
 * `field` and `out` must be valid.
 */
enum FqStatus fq_field_class(const struct FqField *field, enum FqFieldClass *out);

/**
 * Quadratic character of the element with canonical code `code`.
 *
 * # Safety
 * `field` and `out` must be valid.
 */
enum FqStatus fq_field_chi(const struct FqField *field, uint32_t code, int8_t *out);

/**
 * Builds an `n x n` matrix from `n * n` row-major element codes.
 *
 * # Safety
 * `field` and `out` must be valid and `codes` must point to `n * n` values.
 */
enum FqStatus fq_matrix_new(const struct FqField *field,
                            size_t n,
                            const uint32_t *codes,
                            struct FqMatrix **out);

/**
 * Parses the `p k n` text format.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` valid.
 */
enum FqStatus fq_matrix_parse(const char *text, struct FqMatrix **out);

/**
 * # Safety
 * `m` must be null or a live handle.
 */
void fq_matrix_free(struct FqMatrix *m);

/**
 * Size `n`, or 0 for a null handle.
 *
 * # Safety
 * `m` must be null or a live handle.
 */
size_t fq_matrix_size(const struct FqMatrix *m);

/**
 * # Safety
 * `m` and `out` must be valid.
 */
enum FqStatus fq_matrix_get(const struct FqMatrix *m, size_t row, size_t col, uint32_t *out);

/**
 * Text form of the matrix; free with `fq_string_free`. Null on a null
 * handle.
 *
 * # Safety
 * `m` must be null or a live handle.
 */
char *fq_matrix_to_string(const struct FqMatrix *m);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void fq_string_free(char *s);

/**
 * Writes the `n` characters (`+1` / `-1`) of the leading (`trailing = 0`)
 * or trailing principal minors into `out[0..n]`.
 *
 * # Safety
 * `m` must be valid and `out` must hold `len` values.
 */
enum FqStatus fq_sign_pattern(const struct FqMatrix *m, bool trailing, int8_t *out, size_t len);

/**
 * Cholesky factor `L` with `A = L anchor L^T`. A null `anchor` selects the
 * diagonal anchor of `A`'s pattern.
 *
 * # Safety
 * `a` and `out_l` must be valid; `anchor` may be null.
 */
enum FqStatus fq_factor(const struct FqMatrix *a,
                        const struct FqMatrix *anchor,
                        struct FqMatrix **out_l);

/**
 * Exhaustive census of symmetric `n x n` matrices; fails with
 * `BudgetExceeded` when `q^(n(n+1)/2) > budget`.
 *
 * # Safety
 * `field` and `out` must be valid.
 */
enum FqStatus fq_census(const struct FqField *field,
                        size_t n,
                        uint64_t budget,
                        struct FqCensus *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FQCHOL_H */
