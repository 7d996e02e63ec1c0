#ifndef RADON_LINES_H
#define RADON_LINES_H

/* Generated by cbindgen from radon-lines-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes mirroring the library error type.
 */
typedef enum RlStatus {
  RL_STATUS_OK = 0,
  RL_STATUS_ORIGIN_PLANE = 1,
  RL_STATUS_UNSUPPORTED_DIMENSION = 2,
  RL_STATUS_ODD_COMPONENT = 3,
  RL_STATUS_DEGREE_OVERFLOW = 4,
  RL_STATUS_DECAY_TOO_SLOW = 5,
  RL_STATUS_NON_POSITIVE_POINT = 6,
  RL_STATUS_GRID_TOO_COARSE = 7,
  RL_STATUS_ORDER_TOO_SMALL = 8,
  RL_STATUS_TAIL_UNBOUNDED = 9,
  RL_STATUS_DIVERGENT = 10,
  RL_STATUS_NOT_EVEN = 11,
  RL_STATUS_CLASS_VIOLATION = 12,
  RL_STATUS_INVALID_ARGUMENT = 13,
  RL_STATUS_INTERNAL_PANIC = 14,
} RlStatus;

/**
 * Opaque engine: dimension, grids, harmonic basis, and a cache of builtin
 * quasi-radial functions.
 */
typedef struct RlEngine RlEngine;

/**
 * C callback type for hyperplane functions phi(theta, t).
 */
typedef double (*RlHyperplaneFn)(const double *theta, uintptr_t n, double t, void *ctx);

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Stable name of a status code, as a NUL-terminated static string.
 */
const char *rl_status_name(enum RlStatus status);

/**
 * Library version as a NUL-terminated static string.
 */
const char *rl_version(void);

/**
 * Create an engine for dimension n (3..=6).
 *
 * # Safety
 * `out` must be a valid pointer to an engine-handle slot.
 */
enum RlStatus rl_engine_new(uintptr_t n,
                            uintptr_t sphere_resolution,
                            uintptr_t cutoff,
                            struct RlEngine **out);

/**
 * Release an engine. Passing NULL is a no-op.
 *
 * # Safety
 * `engine` must have been returned by `rl_engine_new` and not freed yet.
 */
void rl_engine_free(struct RlEngine *engine);

/**
 * Read back the engine configuration. NULL out-pointers are skipped.
 *
 * # Safety
 * `engine` must be live; non-NULL out-pointers must be valid.
 */
enum RlStatus rl_engine_info(const struct RlEngine *engine,
                             uintptr_t *out_n,
                             uintptr_t *out_sphere_resolution,
                             uintptr_t *out_cutoff);

/**
 * Funk-Hecke multiplier of the Funk transform on degree-k harmonics.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum RlStatus rl_funk_multiplier(uintptr_t k, uintptr_t n, double *out);

/**
 * kappa_ell constant in closed form.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum RlStatus rl_kappa(uint32_t ell, uintptr_t n, double *out);

/**
 * Surface area of the unit sphere S^m.
 */
double rl_sphere_surface(uintptr_t m);

/**
 * Erdelyi-Kober fractional integral of a sampled radial profile.
 * side: 0 = minus (integral over (t, inf)), 1 = plus (over (0, t)).
 *
 * # Safety
 * `grid` and `values` must point to `len` doubles; `out` must be valid.
 */
enum RlStatus rl_ek_integral(const double *grid,
                             const double *values,
                             uintptr_t len,
                             double decay_rate,
                             double alpha,
                             int32_t side,
                             double t,
                             double *out);

/**
 * Erdelyi-Kober derivative D^{n/2-1} of a sampled radial profile.
 *
 * # Safety
 * As for `rl_ek_integral`.
 */
enum RlStatus rl_ek_derivative(const double *grid,
                               const double *values,
                               uintptr_t len,
                               double decay_rate,
                               uintptr_t n,
                               int32_t side,
                               double t,
                               double *out);

/**
 * Quasi-orthogonal image of a point: the hyperplane h(x/|x|, -1/|x|),
 * written as a unit normal and a level.
 *
 * # Safety
 * `x` must point to n doubles; `out_normal` to n doubles; `out_level` valid.
 */
enum RlStatus rl_nu_point(const double *x, uintptr_t n, double *out_normal, double *out_level);

/**
 * Quasi-orthogonal image of a hyperplane: the point -normal/level.
 *
 * # Safety
 * `normal` must point to n doubles; `out_point` to n doubles.
 */
enum RlStatus rl_nu_hyperplane(const double *normal, uintptr_t n, double level, double *out_point);

/**
 * Forward Radon transform of a builtin quasi-radial function at the
 * hyperplane (theta, t). Builtins: "gaussian", "gaussian_harmonic".
 *
 * # Safety
 * `engine` must be live; `name` NUL-terminated; `theta` n doubles.
 */
enum RlStatus rl_radon_forward_builtin(const struct RlEngine *engine,
                                       const char *name,
                                       const double *theta,
                                       double t,
                                       double *out);

/**
 * Dual transform of a caller-supplied hyperplane function at the line
 * (omega, u). The refinement check is controlled by `check` (0/1).
 *
 * # Safety
 * `engine` live; `omega`, `u` n doubles; `phi` a valid callback for the
 * whole call; `out` valid.
 */
enum RlStatus rl_dual_apply_fn(const struct RlEngine *engine,
                               RlHyperplaneFn phi,
                               void *ctx,
                               const double *omega,
                               const double *u,
                               uintptr_t resolution,
                               int32_t check,
                               double *out);

/**
 * Dual transform of a builtin hyperplane function. Builtins: "gaussian",
 * "abs_t_theta2", "kelvin_pair", "phi_p", "theta2_t".
 *
 * # Safety
 * As for `rl_dual_apply_fn`, with `name` NUL-terminated.
 */
enum RlStatus rl_dual_apply_builtin(const struct RlEngine *engine,
                                    const char *name,
                                    const double *omega,
                                    const double *u,
                                    uintptr_t resolution,
                                    int32_t check,
                                    double *out);

/**
 * Kelvin-route inversion of the dual transform of a builtin hyperplane
 * function at the hyperplane (normal, level). `marchaud` selects the
 * difference formula of order `ell`; `mu` declares the weighted class.
 *
 * # Safety
 * `engine` live; `name` NUL-terminated; `normal` n doubles; `out` valid.
 */
enum RlStatus rl_kelvin_invert_builtin(const struct RlEngine *engine,
                                       const char *name,
                                       const double *normal,
                                       double level,
                                       double mu,
                                       int32_t marchaud,
                                       uint32_t ell,
                                       uintptr_t resolution,
                                       double *out);

/**
 * Run the analytic self-test suite (restricted to dimension n, or all
 * dimensions when n = 0) and report pass/fail counts.
 *
 * # Safety
 * `out_passed` and `out_failed` must be valid pointers.
 */
enum RlStatus rl_selftest(uintptr_t n, uintptr_t *out_passed, uintptr_t *out_failed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RADON_LINES_H */
