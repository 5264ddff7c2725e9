#ifndef RIDGENET_H
#define RIDGENET_H

/* Generated by cbindgen from ridgenet-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>
typedef struct RnNetwork RnNetwork;

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum RnStatus {
  RnStatusOk = 0,
  RnStatusInvalidArgument = 1,
  RnStatusNotImplemented = 2,
  RnStatusConstructionFailed = 3,
  RnStatusIndeterminate = 4,
  RnStatusIo = 5,
  RnStatusParse = 6,
  RnStatusNullPointer = 7,
  RnStatusPanic = 8,
} RnStatus;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * # Safety
 * `ptr` must be null or a string previously returned by this library and
 * not yet freed.
 */
void rn_string_free(char *ptr);

/**
 * Most recent error message on this thread, or null if none. Caller frees
 * with [`rn_string_free`].
 */
char *rn_last_error_message(void);

/**
 * Library version as a heap-allocated string; free with [`rn_string_free`].
 */
char *rn_version(void);

/**
 * Classify the pair (Lambda^m G^(base_order), eta) and report K.
 *
 * `eta_name` uses the CLI names (`relu`, `step`, `tpow:k`, `sigmoid`,
 * `dsigmoid:k`, `softplus`, `tanh`, `rbf`, `drbf:k`, `delta`, `ddelta:k`,
 * `linear`). Outputs may be null when not wanted.
 *
 * # Safety
 * `eta_name` must be a valid NUL-terminated string; non-null out pointers
 * must be writable.
 */
enum RnStatus rn_compute_k(uint32_t m,
                           uint32_t base_order,
                           const char *eta_name,
                           double *out_k_re,
                           double *out_k_im,
                           int *out_classification);

/**
 * The m = 1 diagnosis grid as CSV text
 * (`activation,psi,classification,K_re,K_im`). Free with
 * [`rn_string_free`].
 *
 * # Safety
 * `out_csv` must be a writable pointer.
 */
enum RnStatus rn_diagnose_csv(uint32_t m, char **out_csv);

/**
 * Synthesize a network approximating the uniformly sampled signal
 * `values[i]` at `x_start + i * x_step`, without backpropagation. The
 * ridgelet is constructed automatically from the activation. Free the
 * handle with [`rn_network_free`].
 *
 * # Safety
 * `values` must point to `len` readable doubles; `eta_name` must be a
 * valid string; `out_network` must be writable.
 */
enum RnStatus rn_synthesize_1d(double x_start,
                               double x_step,
                               const double *values,
                               uintptr_t len,
                               const char *eta_name,
                               double a_range,
                               double a_step,
                               double b_range,
                               double b_step,
                               RnNetwork **out_network);

/**
 * Number of hidden units, or 0 for a null handle.
 *
 * # Safety
 * `net` must be null or a live handle from this library.
 */
uintptr_t rn_network_unit_count(const RnNetwork *net);

/**
 * Evaluate the network at `n` arbitrary points.
 *
 * # Safety
 * `xs` must point to `n` readable doubles and `out` to `n` writable ones;
 * `net` must be a live handle.
 */
enum RnStatus rn_network_eval_1d(const RnNetwork *net, const double *xs, uintptr_t n, double *out);

/**
 * Write the network in the `ridgenet-v1` text format.
 *
 * # Safety
 * `net` must be a live handle; `path` a valid string.
 */
enum RnStatus rn_network_save(const RnNetwork *net, const char *path);

/**
 * Load a `ridgenet-v1` network file into a fresh handle.
 *
 * # Safety
 * `path` must be a valid string; `out_network` writable.
 */
enum RnStatus rn_network_load(const char *path, RnNetwork **out_network);

/**
 * # Safety
 * `net` must be null or a handle not yet freed.
 */
void rn_network_free(RnNetwork *net);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RIDGENET_H */
