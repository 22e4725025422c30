#ifndef PERMPATH_H
#define PERMPATH_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PermpathStatus {
  PERMPATH_STATUS_OK = 0,
  PERMPATH_STATUS_NULL_POINTER = 1,
  PERMPATH_STATUS_INVALID_UTF8 = 2,
  PERMPATH_STATUS_PARSE = 3,
  PERMPATH_STATUS_INVALID_INPUT = 4,
  PERMPATH_STATUS_PRECONDITION = 5,
  PERMPATH_STATUS_UNSUPPORTED = 6,
  PERMPATH_STATUS_OUT_OF_RANGE = 7,
  PERMPATH_STATUS_PANIC = 8,
} PermpathStatus;

typedef struct PermpathPath PermpathPath;

typedef struct PermpathPermutation PermpathPermutation;

// Coefficients of a truncated series, as decimal strings.
typedef struct PermpathSeries PermpathSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failure on this thread. Valid until the next call
// on the same thread; do not free.
const char *permpath_last_error(void);

// Releases a string returned by this library.
//
// # Safety
// `s` must come from this library and not be freed twice.
void permpath_string_free(char *s);

// Parses one-line notation such as `"2 6 8 3"`.
//
// # Safety
// `s` must be a valid C string and `out` a valid pointer.
enum PermpathStatus permpath_perm_parse(const char *s, struct PermpathPermutation **out);

// # Safety
// `p` must come from this library and not be freed twice.
void permpath_perm_free(struct PermpathPermutation *p);

// Length of the permutation, 0 for a null handle.
//
// # Safety
// `p` must be null or a live handle.
size_t permpath_perm_len(const struct PermpathPermutation *p);

// One-line notation as a newly allocated string.
//
// # Safety
// `p` must be a live handle and `out` a valid pointer.
enum PermpathStatus permpath_perm_to_string(const struct PermpathPermutation *p, char **out);

// Parses a path such as `"U L1 D0"`.
//
// # Safety
// `s` must be a valid C string and `out` a valid pointer.
enum PermpathStatus permpath_path_parse(const char *s, struct PermpathPath **out);

// # Safety
// `m` must come from this library and not be freed twice.
void permpath_path_free(struct PermpathPath *m);

// # Safety
// `m` must be a live handle and `out` a valid pointer.
enum PermpathStatus permpath_path_to_string(const struct PermpathPath *m, char **out);

// The colored Motzkin path of a permutation.
//
// # Safety
// `p` must be a live handle and `out` a valid pointer.
enum PermpathStatus permpath_theta(const struct PermpathPermutation *p, struct PermpathPath **out);

// The permutation of a colored Motzkin path.
//
// # Safety
// `m` must be a live handle and `out` a valid pointer.
enum PermpathStatus permpath_theta_inv(const struct PermpathPath *m,
                                       struct PermpathPermutation **out);

// Expands the continued fraction of a family (`"All"`, `"Cyclic"`, ...)
// keeping the variables in `marks` (letters from `xvwtq`, may be empty).
//
// # Safety
// `subset` and `marks` must be valid C strings and `out` a valid pointer.
enum PermpathStatus permpath_fraction(const char *subset,
                                      const char *marks,
                                      size_t order,
                                      struct PermpathSeries **out);

// Number of coefficients, `order + 1`.
//
// # Safety
// `s` must be null or a live handle.
size_t permpath_series_len(const struct PermpathSeries *s);

// Borrowed coefficient `n`; valid while the series lives. Null if out of
// range.
//
// # Safety
// `s` must be null or a live handle.
const char *permpath_series_coeff(const struct PermpathSeries *s, size_t n);

// # Safety
// `s` must come from this library and not be freed twice.
void permpath_series_free(struct PermpathSeries *s);

// Recovers J-fraction weights from comma-separated terms; the result is a
// JSON object with `ell`, `dee`, `status` and `classification`.
//
// # Safety
// `terms` must be a valid C string and `out_json` a valid pointer.
enum PermpathStatus permpath_invert(const char *terms, char **out_json);

// Set partition of a cyclic permutation with increasing excedances, in the
// form `{1,9},{2}`.
//
// # Safety
// `p` must be a live handle and `out` a valid pointer.
enum PermpathStatus permpath_cie_partition(const struct PermpathPermutation *p, char **out);

// Möbius-sum count for a family such as `"C(213,312)"`, as a decimal
// string.
//
// # Safety
// `family` must be a valid C string and `out` a valid pointer.
enum PermpathStatus permpath_mobius_count(const char *family, size_t n, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PERMPATH_H */
