#ifndef NUCC_H
#define NUCC_H

/* Generated by cbindgen from crates/ffi. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum NuccSchemeKind {
  NUCC_SCHEME_KIND_CHAIKIN = 0,
  NUCC_SCHEME_KIND_EXP_B_SPLINE = 1,
  NUCC_SCHEME_KIND_NUCC = 2,
} NuccSchemeKind;

typedef enum NuccStatus {
  NUCC_STATUS_OK = 0,
  NUCC_STATUS_NULL_POINTER = 1,
  NUCC_STATUS_INVALID_ARGUMENT = 2,
  NUCC_STATUS_INSUFFICIENT_SUPPORT = 3,
  NUCC_STATUS_TRIGONOMETRIC_SINGULARITY = 4,
  NUCC_STATUS_PARAMETER_OUT_OF_RANGE = 5,
  NUCC_STATUS_DEGENERATE_SYSTEM = 6,
  NUCC_STATUS_DOMAIN_TOO_SMALL = 7,
  NUCC_STATUS_INVALID_CONFIG = 8,
  NUCC_STATUS_BUFFER_TOO_SMALL = 9,
  NUCC_STATUS_PANIC = 10,
} NuccStatus;

typedef enum NuccVariant {
  NUCC_VARIANT_AUTO = 0,
  NUCC_VARIANT_PRIMARY = 1,
  NUCC_VARIANT_ALTERNATIVE = 2,
} NuccVariant;

/**
 * Scheme configuration.
 */
typedef struct NuccConfig NuccConfig;

/**
 * Refined curve, points stored as interleaved `x, y`.
 */
typedef struct NuccCurve NuccCurve;

/**
 * Refined scalar sequence.
 */
typedef struct NuccSequence NuccSequence;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null.
 *
 * The pointer stays valid until the next `nucc_*` call on the same thread.
 */
const char *nucc_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *nucc_version(void);

/**
 * Creates a configuration with the library defaults.
 *
 * `gamma` is only read for `NUCC_SCHEME_KIND_EXP_B_SPLINE`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum NuccStatus nucc_config_new(enum NuccSchemeKind kind, double gamma, struct NuccConfig **out);

/**
 * # Safety
 * `cfg` must be null or a handle from [`nucc_config_new`] not yet freed.
 */
void nucc_config_free(struct NuccConfig *cfg);

/**
 * `|ε|` at `k0 = 0`, rescaled by `2^{-2 k0}`; `positive_only` fixes its sign.
 *
 * # Safety
 * `cfg` must be a live handle.
 */
enum NuccStatus nucc_config_set_epsilon(struct NuccConfig *cfg,
                                        double magnitude,
                                        bool positive_only);

/**
 * Variant threshold at `k0 = 0`, rescaled by `2^{-2 k0}`.
 *
 * # Safety
 * `cfg` must be a live handle.
 */
enum NuccStatus nucc_config_set_threshold(struct NuccConfig *cfg, double threshold);

/**
 * # Safety
 * `cfg` must be a live handle.
 */
enum NuccStatus nucc_config_set_variant(struct NuccConfig *cfg, enum NuccVariant variant);

/**
 * # Safety
 * `cfg` must be a live handle.
 */
enum NuccStatus nucc_config_set_clamp(struct NuccConfig *cfg, bool clamp);

/**
 * Fixes `λ` for every NUCC rule; NaN restores the data-adaptive choice.
 *
 * # Safety
 * `cfg` must be a live handle.
 */
enum NuccStatus nucc_config_set_fixed_lambda(struct NuccConfig *cfg, double lambda);

/**
 * Refines `len` level-0 values with spacing `2^{-k0}` by `levels` steps.
 *
 * # Safety
 * `cfg` must be a live handle, `values` must point to `len` doubles and
 * `out` to writable storage for one handle.
 */
enum NuccStatus nucc_refine(const struct NuccConfig *cfg,
                            const double *values,
                            size_t len,
                            uint32_t k0,
                            uint32_t levels,
                            bool periodic,
                            struct NuccSequence **out);

/**
 * # Safety
 * `seq` must be null or a handle from [`nucc_refine`] not yet freed.
 */
void nucc_sequence_free(struct NuccSequence *seq);

/**
 * Number of values; 0 for a null handle.
 *
 * # Safety
 * `seq` must be null or a live handle.
 */
size_t nucc_sequence_len(const struct NuccSequence *seq);

/**
 * Borrowed pointer to the values, valid while the handle lives.
 *
 * # Safety
 * `seq` must be null or a live handle.
 */
const double *nucc_sequence_values(const struct NuccSequence *seq);

/**
 * Index of the first value and level of the sequence.
 *
 * # Safety
 * `seq` must be a live handle; `first_index` and `level` may be null.
 */
enum NuccStatus nucc_sequence_info(const struct NuccSequence *seq,
                                   int64_t *first_index,
                                   uint32_t *level);

/**
 * Writes the grid abscissa of every value into `out[0..capacity]`.
 *
 * # Safety
 * `seq` must be a live handle and `out` must point to `capacity` doubles.
 */
enum NuccStatus nucc_sequence_abscissae(const struct NuccSequence *seq,
                                        double *out,
                                        size_t capacity);

/**
 * Refines a polygon given as `n_points` interleaved `x, y` pairs.
 *
 * # Safety
 * `cfg` must be a live handle, `xy` must point to `2 * n_points` doubles
 * and `out` to writable storage for one handle.
 */
enum NuccStatus nucc_refine_curve(const struct NuccConfig *cfg,
                                  const double *xy,
                                  size_t n_points,
                                  bool closed,
                                  uint32_t levels,
                                  struct NuccCurve **out);

/**
 * # Safety
 * `curve` must be null or a handle from [`nucc_refine_curve`] not yet freed.
 */
void nucc_curve_free(struct NuccCurve *curve);

/**
 * Number of points; 0 for a null handle.
 *
 * # Safety
 * `curve` must be null or a live handle.
 */
size_t nucc_curve_len(const struct NuccCurve *curve);

/**
 * Borrowed pointer to `2 * len` interleaved coordinates.
 *
 * # Safety
 * `curve` must be null or a live handle.
 */
const double *nucc_curve_points(const struct NuccCurve *curve);

/**
 * # Safety
 * `curve` must be null or a live handle.
 */
bool nucc_curve_is_closed(const struct NuccCurve *curve);

/**
 * `sinh(c γ h) / sinh(γ h)` with `γ² = lambda`.
 *
 * # Safety
 * `out` must point to one writable double.
 */
enum NuccStatus nucc_sinh_ratio(double lambda, double h, double c, double *out);

/**
 * `(e^{c γ h} - 1) / (e^{γ h} - 1)`.
 *
 * # Safety
 * `out` must point to one writable double.
 */
enum NuccStatus nucc_exp_ratio(double gamma, double h, double c, double *out);

/**
 * The scaled one-dimensional Franke test function.
 */
double nucc_franke_1d(double t);

/**
 * Order table on the Franke function for `k0` in `[k0_first, k0_last]`.
 *
 * Row `i` goes to `max_errors[i]` and `est_orders[i]`; the first order is NaN.
 *
 * # Safety
 * `cfg` must be a live handle; `max_errors` and `est_orders` must each point
 * to `capacity` doubles.
 */
enum NuccStatus nucc_order_table(const struct NuccConfig *cfg,
                                 uint32_t k0_first,
                                 uint32_t k0_last,
                                 double domain_lo,
                                 double domain_hi,
                                 uint32_t eval_level,
                                 double *max_errors,
                                 double *est_orders,
                                 size_t capacity);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NUCC_H */
