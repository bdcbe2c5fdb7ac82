#ifndef LIVSIC_H
#define LIVSIC_H

/* Generated by cbindgen; do not edit. */

#include <stdint.h>
#include <stddef.h>

/**
 * Result codes. Values 1 to 17 mirror the library's error codes.
 */
typedef enum LivsicStatus {
  LIVSIC_STATUS_OK = 0,
  LIVSIC_STATUS_INVALID_ARGUMENT = 1,
  LIVSIC_STATUS_UNSUPPORTED_POLE_ORDER = 2,
  LIVSIC_STATUS_POLE_ON_DIAGONAL = 3,
  LIVSIC_STATUS_POLE_AT_DIVISOR = 4,
  LIVSIC_STATUS_NOT_IN_LD = 5,
  LIVSIC_STATUS_RAMIFIED_FIBER = 6,
  LIVSIC_STATUS_SINGULAR_BASE_PLANE = 7,
  LIVSIC_STATUS_TRANSVERSALITY_FAILURE = 8,
  LIVSIC_STATUS_BASE_POINT = 9,
  LIVSIC_STATUS_DEGENERATE_SPAN = 10,
  LIVSIC_STATUS_NORMALIZATION_FAILURE = 11,
  LIVSIC_STATUS_SECTION_NOT_REAL = 12,
  LIVSIC_STATUS_NOT_NORMALIZED = 13,
  LIVSIC_STATUS_UNKNOWN_EXAMPLE = 14,
  LIVSIC_STATUS_NOT_HERMITIAN = 15,
  LIVSIC_STATUS_INCONSISTENCY = 16,
  LIVSIC_STATUS_CALIBRATION = 17,
  LIVSIC_STATUS_NULL_POINTER = 100,
  LIVSIC_STATUS_INVALID_UTF8 = 101,
  LIVSIC_STATUS_PANIC = 102,
} LivsicStatus;

/**
 * Opaque rational curve parametrization.
 */
typedef struct LivsicCurve LivsicCurve;

/**
 * Opaque tensor in `Λ^{k+1}C^{d+1} ⊗ M_n(C)`.
 */
typedef struct LivsicGamma LivsicGamma;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer is
 * valid until the next call into this library from the same thread.
 */
const char *livsic_last_error(void);

/**
 * # Safety
 * `s` must come from a `livsic_*_to_json` call and not be freed twice.
 */
void livsic_string_free(char *s);

/**
 * One of the printed example tensors by name.
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out` must be writable.
 */
enum LivsicStatus livsic_gamma_builtin(const char *name, struct LivsicGamma **out);

/**
 * # Safety
 * `json` must be a NUL-terminated GammaFile document; `out` must be writable.
 */
enum LivsicStatus livsic_gamma_from_json(const char *json, struct LivsicGamma **out);

/**
 * Serializes to a GammaFile document; free the result with [`livsic_string_free`].
 *
 * # Safety
 * `gamma` must be a live handle; `out` must be writable.
 */
enum LivsicStatus livsic_gamma_to_json(const struct LivsicGamma *gamma, char **out);

/**
 * # Safety
 * `gamma` must be null or a handle not freed before.
 */
void livsic_gamma_free(struct LivsicGamma *gamma);

/**
 * # Safety
 * `gamma` must be a live handle; each output pointer must be writable.
 */
enum LivsicStatus livsic_gamma_dims(const struct LivsicGamma *gamma,
                                    uintptr_t *d,
                                    uintptr_t *k,
                                    uintptr_t *n);

/**
 * Kernel dimension of the stacked `γ ∧ μ`; `μ` has `d + 1` entries and
 * `mu_im` may be null for a real point.
 *
 * # Safety
 * `mu_re` (and `mu_im` if non-null) must point to `d + 1` doubles.
 */
enum LivsicStatus livsic_gamma_membership(const struct LivsicGamma *gamma,
                                          const double *mu_re,
                                          const double *mu_im,
                                          uintptr_t *kernel_dim);

/**
 * `γ(V)` for a basis of `d − k` row-major vectors of length `d + 1`.
 * Writes `n × n` row-major real and imaginary parts.
 *
 * # Safety
 * Inputs must hold `(d − k)(d + 1)` doubles (`basis_im` may be null);
 * outputs must hold `n²` doubles each.
 */
enum LivsicStatus livsic_gamma_contract(const struct LivsicGamma *gamma,
                                        const double *basis_re,
                                        const double *basis_im,
                                        double *out_re,
                                        double *out_im);

/**
 * # Safety
 * `gamma` must be a live handle; `degree` must be writable.
 */
enum LivsicStatus livsic_gamma_degree(const struct LivsicGamma *gamma,
                                      uintptr_t trials,
                                      uint64_t seed,
                                      uintptr_t *degree);

/**
 * Built-in parametrizations: the three example curves, `pick` and `conic`.
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out` must be writable.
 */
enum LivsicStatus livsic_curve_builtin(const char *name, struct LivsicCurve **out);

/**
 * # Safety
 * `json` must be a NUL-terminated CurveFile document; `out` must be writable.
 */
enum LivsicStatus livsic_curve_from_json(const char *json, struct LivsicCurve **out);

/**
 * # Safety
 * `curve` must be null or a handle not freed before.
 */
void livsic_curve_free(struct LivsicCurve *curve);

/**
 * Bezoutian construction of a tensor whose degeneracy set is the curve,
 * in the curve's own coordinates.
 *
 * # Safety
 * `curve` must be a live handle; `out` must be writable.
 */
enum LivsicStatus livsic_construct(const struct LivsicCurve *curve,
                                   uint64_t seed,
                                   struct LivsicGamma **out);

/**
 * Witness test for the real plane spanned by `d − 1` row-major vectors of
 * length `d + 1`. Sets `witness` to 0 or 1 and `definite_sign` to −1, 0
 * (undetermined) or +1.
 *
 * # Safety
 * `plane` must hold `(d − 1)(d + 1)` doubles; outputs must be writable.
 */
enum LivsicStatus livsic_witness(const struct LivsicCurve *curve,
                                 const double *plane,
                                 uintptr_t count,
                                 uint64_t seed,
                                 double tol,
                                 int32_t *witness,
                                 int32_t *definite_sign);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LIVSIC_H */
