#ifndef OFFORD_H
#define OFFORD_H

/* Generated by cbindgen from offord-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result discipline for every exported function.
 */
typedef enum OffordStatus {
  OFFORD_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  OFFORD_STATUS_NULL_ARGUMENT = 1,
  /**
   * The input could not be parsed or validated.
   */
  OFFORD_STATUS_INVALID_INPUT = 2,
  /**
   * The inputs are well-formed but outside a theorem's hypotheses.
   */
  OFFORD_STATUS_PRECONDITION = 3,
  /**
   * A panic was caught at the boundary; state is unchanged.
   */
  OFFORD_STATUS_PANIC = 4,
} OffordStatus;

/**
 * Opaque handle to a lattice distribution.
 */
typedef struct OffordDist OffordDist;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Last error message for this thread, or null when the last call succeeded.
 * The pointer stays valid until the next offord call on the same thread.
 */
const char *offord_last_error_message(void);

/**
 * Parses a problem spec (a family object or a weighted-sum object) and
 * builds the realized lattice distribution. For weighted sums the law is
 * that of scale·(a·X); the exact scale is written to `out_scale` when it is
 * non-null (1 for plain families).
 *
 * # Safety
 * `spec_json` must be NUL-terminated; `out_dist` must be a valid pointer.
 * The returned handle must be released with offord_dist_free.
 */
enum OffordStatus offord_dist_from_json(const char *spec_json,
                                        struct OffordDist **out_dist,
                                        int64_t *out_scale);

/**
 * Releases a distribution handle. Null is a no-op.
 *
 * # Safety
 * `dist` must be a handle from this library, not yet freed.
 */
void offord_dist_free(struct OffordDist *dist);

/**
 * Convolves two distributions into a new handle.
 *
 * # Safety
 * All pointers must be valid; the result must be freed by the caller.
 */
enum OffordStatus offord_dist_convolve(const struct OffordDist *a,
                                       const struct OffordDist *b,
                                       struct OffordDist **out_dist);

/**
 * Largest atom M(X) = sup_x P(X = x).
 *
 * # Safety
 * `dist` and `out_value` must be valid pointers.
 */
enum OffordStatus offord_dist_max_prob(const struct OffordDist *dist, double *out_value);

/**
 * Mean and variance on the handle's own lattice.
 *
 * # Safety
 * `dist` must be valid; each out pointer may be null to skip that moment.
 */
enum OffordStatus offord_dist_moments(const struct OffordDist *dist,
                                      double *out_mean,
                                      double *out_variance);

/**
 * Whether the pmf is log-concave with contiguous support (1) or not (0).
 *
 * # Safety
 * `dist` and `out_flag` must be valid pointers.
 */
enum OffordStatus offord_dist_is_log_concave(const struct OffordDist *dist, int32_t *out_flag);

/**
 * Rényi entropy H_alpha; alpha may be 0, 1 (Shannon), any positive value,
 * or INFINITY for min-entropy.
 *
 * # Safety
 * `dist` and `out_value` must be valid pointers.
 */
enum OffordStatus offord_renyi_entropy(const struct OffordDist *dist,
                                       double alpha,
                                       double *out_value);

/**
 * Entropy power N_alpha = exp(2 H_alpha).
 *
 * # Safety
 * `dist` and `out_value` must be valid pointers.
 */
enum OffordStatus offord_entropy_power(const struct OffordDist *dist,
                                       double alpha,
                                       double *out_value);

/**
 * Largest-atom bound 1/sqrt(1 + c Sum Var) over the component list, with
 * the symmetric constant chosen automatically.
 *
 * # Safety
 * `components` must point to `n` valid handles; `out_bound` must be valid.
 */
enum OffordStatus offord_bound_concentration(const struct OffordDist *const *components,
                                             size_t n,
                                             double *out_bound);

/**
 * Entropy-power lower bound 1 + c Sum Var at the given order.
 *
 * # Safety
 * `components` must point to `n` valid handles; `out_bound` must be valid.
 */
enum OffordStatus offord_bound_entropy_power(const struct OffordDist *const *components,
                                             size_t n,
                                             double alpha,
                                             double *out_bound);

/**
 * Progression bound l/sqrt(1 + c Sum Var + c (l^2-1)/12), clamped to 1.
 *
 * # Safety
 * `components` must point to `n` valid handles; `out_bound` must be valid.
 */
enum OffordStatus offord_bound_ap(const struct OffordDist *const *components,
                                  size_t n,
                                  uint32_t length,
                                  double *out_bound);

/**
 * Exact progression supremum sup_x P(X in {x + (m_num/m_den) j, j=1..l}).
 * The achieving anchor is written as the exact rational
 * out_anchor_num/out_anchor_den when both pointers are non-null.
 *
 * # Safety
 * `dist` and `out_value` must be valid pointers.
 */
enum OffordStatus offord_ap_sup_probability(const struct OffordDist *dist,
                                            uint32_t length,
                                            int64_t m_num,
                                            int64_t m_den,
                                            double *out_value,
                                            int64_t *out_anchor_num,
                                            int64_t *out_anchor_den);

/**
 * Exhaustive worst-case search over nonzero integer coefficient vectors
 * with |a_i| <= coefficient_box. The maximizing vector is written to
 * `out_witness`, which must have room for `n` entries.
 *
 * # Safety
 * `components` must point to `n` valid handles; `out_value` and
 * `out_witness` must be valid for writes (`out_witness` for `n` writes).
 */
enum OffordStatus offord_worst_case_search(const struct OffordDist *const *components,
                                           size_t n,
                                           int64_t coefficient_box,
                                           double *out_value,
                                           int64_t *out_witness);

/**
 * Runs the certification sweep described by a JSON config ("{}" for the
 * defaults) and returns the full report as a JSON string. The number of
 * failing cases is written to `out_failures` when it is non-null. The
 * returned string must be released with offord_string_free.
 *
 * # Safety
 * `config_json` must be NUL-terminated; `out_report_json` must be valid.
 */
enum OffordStatus offord_verify_json(const char *config_json,
                                     char **out_report_json,
                                     uint64_t *out_failures);

/**
 * Releases a string returned by this library. Null is a no-op.
 *
 * # Safety
 * `text` must have been returned by this library, not yet freed.
 */
void offord_string_free(char *text);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* OFFORD_H */
