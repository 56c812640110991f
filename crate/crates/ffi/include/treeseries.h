#ifndef TREESERIES_H
#define TREESERIES_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ts_status {
  TS_STATUS_OK = 0,
  TS_STATUS_NULL_POINTER = 1,
  TS_STATUS_INVALID_UTF8 = 2,
  TS_STATUS_PARSE = 3,
  TS_STATUS_COMPUTE = 4,
  TS_STATUS_INVALID_ARGUMENT = 5,
  TS_STATUS_PANIC = 6,
} ts_status;

// How series text is read.
typedef enum ts_carrier {
  // Diffeomorphism form, composed with `ts_series_compose`.
  TS_CARRIER_OPERAD = 0,
  // Invertible form under the over product.
  TS_CARRIER_MONOID_OVER = 1,
  // Invertible form under the under product.
  TS_CARRIER_MONOID_UNDER = 2,
} ts_carrier;

typedef struct ts_series ts_series;

typedef struct ts_tensor ts_tensor;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty after success.
// The pointer stays valid until the next call on the same thread.
const char *ts_last_error(void);

// Parse a series from text or a JSON document. A negative `truncation`
// means the largest grading present in the input.
//
// # Safety
// `src` must be a NUL-terminated string and `out` a valid pointer.
enum ts_status ts_series_parse(const char *src,
                               enum ts_carrier carrier,
                               int64_t truncation,
                               struct ts_series **out);

// `a ∘ b` for two series in diffeomorphism form.
//
// # Safety
// `a` and `b` must be live handles and `out` a valid pointer.
enum ts_status ts_series_compose(const struct ts_series *a,
                                 const struct ts_series *b,
                                 struct ts_series **out);

// Monoid product `a · b`.
//
// # Safety
// `a` and `b` must be live handles and `out` a valid pointer.
enum ts_status ts_series_multiply(const struct ts_series *a,
                                  const struct ts_series *b,
                                  struct ts_series **out);

// The right action `f^ψ`.
//
// # Safety
// `f` and `psi` must be live handles and `out` a valid pointer.
enum ts_status ts_series_act(const struct ts_series *f,
                             const struct ts_series *psi,
                             struct ts_series **out);

// Inverse for the monoid product.
//
// # Safety
// `a` must be a live handle and `out` a valid pointer.
enum ts_status ts_series_invert(const struct ts_series *a, struct ts_series **out);

// Inverse for composition.
//
// # Safety
// `a` must be a live handle and `out` a valid pointer.
enum ts_status ts_series_comp_invert(const struct ts_series *a, struct ts_series **out);

// Canonical text; release with `ts_string_free`.
//
// # Safety
// `s` must be a live handle and `out` a valid pointer.
enum ts_status ts_series_to_text(const struct ts_series *s, char **out);

// JSON document; release with `ts_string_free`.
//
// # Safety
// `s` must be a live handle and `out` a valid pointer.
enum ts_status ts_series_to_json(const struct ts_series *s, char **out);

// Number of nonzero terms, or -1 for a null handle.
//
// # Safety
// `s` must be null or a live handle.
int64_t ts_series_len(const struct ts_series *s);

// # Safety
// `s` must be null or a handle not yet freed.
void ts_series_free(struct ts_series *s);

// Coproduct or coaction named `algebra` (as on the command line, e.g.
// `dif`, `rho`, `inv-over`) applied to a generator code such as
// `1100100` or `a3`.
//
// # Safety
// Strings must be NUL-terminated and `out` a valid pointer.
enum ts_status ts_coproduct(const char *algebra,
                            const char *generator,
                            bool commutative,
                            struct ts_tensor **out);

// Antipode of a generator for the named coproduct.
//
// # Safety
// Strings must be NUL-terminated and `out` a valid pointer.
enum ts_status ts_antipode(const char *algebra,
                           const char *generator,
                           bool commutative,
                           struct ts_tensor **out);

// Counit of a one-legged tensor, as a decimal or fraction string.
//
// # Safety
// `t` must be a live handle and `out` a valid pointer.
enum ts_status ts_tensor_counit(const struct ts_tensor *t, char **out);

// # Safety
// `t` must be a live handle and `out` a valid pointer.
enum ts_status ts_tensor_to_json(const struct ts_tensor *t, char **out);

// Number of terms, or -1 for a null handle.
//
// # Safety
// `t` must be null or a live handle.
int64_t ts_tensor_len(const struct ts_tensor *t);

// # Safety
// `t` must be null or a handle not yet freed.
void ts_tensor_free(struct ts_tensor *t);

// # Safety
// `s` must be null or a string returned by this library and not yet freed.
void ts_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TREESERIES_H */
