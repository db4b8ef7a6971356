#ifndef BINID_H
#define BINID_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BinidStatus {
  BINID_STATUS_OK = 0,
  BINID_STATUS_NULL_POINTER = 1,
  BINID_STATUS_INVALID_UTF8 = 2,
  BINID_STATUS_PARSE_ERROR = 3,
  BINID_STATUS_ELABORATION_ERROR = 4,
  BINID_STATUS_USAGE_ERROR = 5,
  BINID_STATUS_INDEX_OUT_OF_RANGE = 6,
  BINID_STATUS_PANIC = 7,
} BinidStatus;

typedef enum BinidVar {
  BINID_VAR_X = 0,
  BINID_VAR_Y = 1,
} BinidVar;

typedef enum BinidStrategy {
  BINID_STRATEGY_SYMBOLIC = 0,
  BINID_STRATEGY_POINTS = 1,
  BINID_STRATEGY_BOTH = 2,
} BinidStrategy;

/**
 * Outcome of a verification sweep.
 */
typedef enum BinidVerdict {
  BINID_VERDICT_PASS = 0,
  BINID_VERDICT_FAIL = 1,
  BINID_VERDICT_ERROR = 2,
  BINID_VERDICT_INCONSISTENT = 3,
} BinidVerdict;

typedef enum BinidFormat {
  BINID_FORMAT_TEXT = 0,
  BINID_FORMAT_MACHINE = 1,
} BinidFormat;

/**
 * An ordered list of identities.
 */
typedef struct BinidIdentitySet BinidIdentitySet;

/**
 * Exact polynomial in x and y.
 */
typedef struct BinidPolynomial BinidPolynomial;

typedef struct BinidReport BinidReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. Valid until the
 * next `binid_` call on the same thread.
 */
const char *binid_last_error_message(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library, not yet freed.
 */
void binid_string_free(char *s);

/**
 * Elaborates `expr` under `bindings` (`"n=3,m=1"`, or NULL for none).
 *
 * # Safety
 * `expr` and `bindings` must be NULL or NUL-terminated strings; `out` must
 * be valid for a write.
 */
enum BinidStatus binid_expand(const char *expr, const char *bindings, struct BinidPolynomial **out);

/**
 * Normal form such as `x^2 + 2*x*y + y^2`.
 *
 * # Safety
 * `poly` must be a live handle; `out` must be valid for a write.
 */
enum BinidStatus binid_polynomial_to_string(const struct BinidPolynomial *poly, char **out);

/**
 * Evaluates at `x`, `y` given as decimal integers or `p/q` fractions; NULL
 * means 0. The value is written as a string in the same form.
 *
 * # Safety
 * `poly` must be a live handle; strings NULL or NUL-terminated; `out` valid.
 */
enum BinidStatus binid_polynomial_eval(const struct BinidPolynomial *poly,
                                       const char *x,
                                       const char *y,
                                       char **out);

/**
 * Degree in `var`; -1 for the zero polynomial.
 *
 * # Safety
 * `poly` must be a live handle; `out` valid for a write.
 */
enum BinidStatus binid_polynomial_degree(const struct BinidPolynomial *poly,
                                         enum BinidVar var,
                                         int64_t *out);

/**
 * # Safety
 * `poly` must be NULL or a handle not yet freed.
 */
void binid_polynomial_free(struct BinidPolynomial *poly);

/**
 * The built-in identities.
 *
 * # Safety
 * `out` must be valid for a write.
 */
enum BinidStatus binid_catalog_new(struct BinidIdentitySet **out);

/**
 * Parses identity-file text.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` valid for a write.
 */
enum BinidStatus binid_identity_set_parse(const char *text, struct BinidIdentitySet **out);

/**
 * Number of identities; 0 for NULL.
 *
 * # Safety
 * `set` must be NULL or a live handle.
 */
size_t binid_identity_set_len(const struct BinidIdentitySet *set);

/**
 * Name of identity `index`, borrowed from `set`; NULL when out of range.
 *
 * # Safety
 * `set` must be NULL or a live handle.
 */
const char *binid_identity_set_name(const struct BinidIdentitySet *set, size_t index);

/**
 * # Safety
 * `set` must be NULL or a handle not yet freed.
 */
void binid_identity_set_free(struct BinidIdentitySet *set);

/**
 * Verifies identity `index` of `set` over `ranges` (`"n=0..20,m=0..3"`;
 * NULL or unnamed parameters use the default sweep).
 *
 * # Safety
 * `set` must be a live handle; `ranges` NULL or NUL-terminated; `out` valid.
 */
enum BinidStatus binid_verify(const struct BinidIdentitySet *set,
                              size_t index,
                              const char *ranges,
                              enum BinidStrategy strategy,
                              struct BinidReport **out);

/**
 * `BINID_VERDICT_ERROR` for NULL.
 *
 * # Safety
 * `report` must be NULL or a live handle.
 */
enum BinidVerdict binid_report_verdict(const struct BinidReport *report);

/**
 * Number of bindings checked; 0 for NULL.
 *
 * # Safety
 * `report` must be NULL or a live handle.
 */
size_t binid_report_binding_count(const struct BinidReport *report);

/**
 * Number of failure records; 0 for NULL.
 *
 * # Safety
 * `report` must be NULL or a live handle.
 */
size_t binid_report_failure_count(const struct BinidReport *report);

/**
 * # Safety
 * `report` must be a live handle; `out` valid for a write.
 */
enum BinidStatus binid_report_render(const struct BinidReport *report,
                                     enum BinidFormat format,
                                     char **out);

/**
 * # Safety
 * `report` must be NULL or a handle not yet freed.
 */
void binid_report_free(struct BinidReport *report);

/**
 * `C(n, k)` for a decimal integer `n` (negative allowed), as a string.
 *
 * # Safety
 * `n` must be a NUL-terminated string; `out` valid for a write.
 */
enum BinidStatus binid_int_binomial(const char *n, uint64_t k, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BINID_H */
