#ifndef QGS_H
#define QGS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QgsStatus {
  QGS_STATUS_OK = 0,
  QGS_STATUS_NULL_POINTER = 1,
  QGS_STATUS_DOMAIN = 2,
  QGS_STATUS_RESOURCE = 3,
  QGS_STATUS_NUMERICAL = 4,
  QGS_STATUS_INVALID = 5,
  QGS_STATUS_PANIC = 6,
} QgsStatus;

typedef enum QgsVerdict {
  QGS_VERDICT_FINITE = 0,
  QGS_VERDICT_DIVERGENT = 1,
  QGS_VERDICT_INCONCLUSIVE = 2,
} QgsVerdict;

/**
 * Opaque deformation parameter `(N, q)`.
 */
typedef struct QgsParam QgsParam;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or NULL.
 */
const char *qgs_last_error(void);

/**
 * Parameter with `N >= 2` and `0 < q <= q0(N)`. Free with `qgs_param_free`.
 */
enum QgsStatus qgs_param_new(uint32_t n, double q, struct QgsParam **out);

/**
 * The Kac point `q = q0(N)`.
 */
enum QgsStatus qgs_param_kac(uint32_t n, struct QgsParam **out);

/**
 * Parses `q` as a decimal, a fraction `p/r` or `q0`; decimals stay exact.
 */
enum QgsStatus qgs_param_parse(uint32_t n, const char *q, struct QgsParam **out);

void qgs_param_free(struct QgsParam *p);

enum QgsStatus qgs_param_q(const struct QgsParam *p, double *out);

enum QgsStatus qgs_param_q0(const struct QgsParam *p, double *out);

/**
 * Quantum integer `[n]_q`.
 */
enum QgsStatus qgs_q_number(const struct QgsParam *p, size_t n, double *out);

/**
 * Dirichlet eigenvalue `Delta_alpha`.
 */
enum QgsStatus qgs_delta(const struct QgsParam *p, size_t alpha, double *out);

/**
 * Semigroup coefficient `c_alpha(t)`, `t` in `(-1, 1]`.
 */
enum QgsStatus qgs_semigroup_coeff(const struct QgsParam *p, size_t alpha, double t, double *out);

/**
 * Ratio of the eigenvalue gap to its `q`-power bound.
 */
enum QgsStatus qgs_gap_ratio(const struct QgsParam *p,
                             size_t alpha,
                             size_t beta,
                             int64_t gamma,
                             double *out);

/**
 * Hilbert-Schmidt summability verdict and the root-test value.
 */
enum QgsStatus qgs_hs_certificate(const struct QgsParam *p,
                                  double t,
                                  size_t alpha_max,
                                  enum QgsVerdict *out_verdict,
                                  double *out_ratio);

/**
 * Recoupling defect and its bound `q^{alpha + (k - r)/2}`.
 */
enum QgsStatus qgs_pentagon_defect(const struct QgsParam *p,
                                   size_t alpha,
                                   size_t r,
                                   size_t s,
                                   int64_t k,
                                   int64_t l,
                                   bool align_phase,
                                   double *out_defect,
                                   double *out_bound);

/**
 * Quantum trace of the Jones-Wenzl projection `p_n` and the expected `[n+1]_q`.
 */
enum QgsStatus qgs_jw_qtrace(const struct QgsParam *p,
                             size_t n,
                             double *out_qtrace,
                             double *out_expected);

/**
 * Exact check of the free-product expansion for the algebra types of `b`,
 * `x` and `a`. `out_pass` receives whether the residual vanishes and the
 * remainder respects the length bound.
 */
enum QgsStatus qgs_freeprod_verify(const uint8_t *b,
                                   size_t k,
                                   const uint8_t *x,
                                   size_t n,
                                   const uint8_t *a,
                                   size_t m,
                                   bool *out_pass);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QGS_H */
