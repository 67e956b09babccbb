#ifndef SILENCE_H
#define SILENCE_H

#pragma once

/* Generated by cbindgen from crates/ffi/src. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum SilenceStatus {
  SILENCE_STATUS_OK = 0,
  SILENCE_STATUS_NULL_POINTER = 1,
  SILENCE_STATUS_INVALID_ARGUMENT = 2,
  SILENCE_STATUS_INVALID_DATA = 3,
  SILENCE_STATUS_EMPTY_DISTRIBUTION = 4,
  SILENCE_STATUS_OUT_OF_DOMAIN = 5,
  SILENCE_STATUS_INSUFFICIENT_DATA = 6,
  SILENCE_STATUS_DEGENERATE_SCALE = 7,
  SILENCE_STATUS_IO = 8,
  SILENCE_STATUS_PANIC = 9,
} SilenceStatus;

/**
 * Sampled `p(n)` curve.
 */
typedef struct SilenceCurve SilenceCurve;

/**
 * Cumulative length distribution `R(n)`.
 */
typedef struct SilenceDistribution SilenceDistribution;

/**
 * Multiset of low-variability period lengths.
 */
typedef struct SilenceIntervals SilenceIntervals;

typedef struct SilenceKnot {
  uint64_t n;
  uint64_t count;
} SilenceKnot;

typedef struct SilenceFit {
  double alpha;
  double r0;
  uint64_t fit_min;
  uint64_t fit_max;
  double residual;
  size_t knots_used;
} SilenceFit;

typedef struct SilenceSample {
  uint64_t n;
  double p;
  double pn;
  double survivors;
} SilenceSample;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread. Valid until the next
 * failing call on the same thread; never null.
 */
const char *silence_last_error_message(void);

/**
 * Name of the random generator used for surrogates. Static, never null.
 */
const char *silence_generator_name(void);

/**
 * Copies `len` lengths (each at least 1) into a new interval set.
 */
enum SilenceStatus silence_intervals_from_lengths(const uint64_t *lengths,
                                                  size_t len,
                                                  struct SilenceIntervals **out);

/**
 * Low-variability periods of a log-price series for window `window` and
 * threshold `delta_sigma` (in units of the signal's standard deviation).
 */
enum SilenceStatus silence_intervals_from_log_prices(const double *log_prices,
                                                     size_t len,
                                                     size_t window,
                                                     double delta_sigma,
                                                     struct SilenceIntervals **out);

/**
 * `count` power-law lengths with exponent `alpha` from seed `seed`.
 */
enum SilenceStatus silence_intervals_generate(uint64_t count,
                                              double alpha,
                                              uint64_t seed,
                                              struct SilenceIntervals **out);

/**
 * Number of intervals; 0 for a null handle.
 */
size_t silence_intervals_len(const struct SilenceIntervals *intervals);

/**
 * Copies up to `capacity` lengths into `buffer` and stores the number copied
 * in `written`.
 */
enum SilenceStatus silence_intervals_copy(const struct SilenceIntervals *intervals,
                                          uint64_t *buffer,
                                          size_t capacity,
                                          size_t *written);

void silence_intervals_free(struct SilenceIntervals *intervals);

/**
 * Builds `R(n)`. Fails with `EMPTY_DISTRIBUTION` for an empty set.
 */
enum SilenceStatus silence_distribution_build(const struct SilenceIntervals *intervals,
                                              struct SilenceDistribution **out);

/**
 * `R(1)`; 0 for a null handle.
 */
uint64_t silence_distribution_total(const struct SilenceDistribution *dist);

/**
 * Longest period `N`; 0 for a null handle.
 */
uint64_t silence_distribution_longest(const struct SilenceDistribution *dist);

size_t silence_distribution_knot_count(const struct SilenceDistribution *dist);

enum SilenceStatus silence_distribution_knot(const struct SilenceDistribution *dist,
                                             size_t index,
                                             struct SilenceKnot *out);

/**
 * Smoothed `R~(n)` for real `n` in `[1, N]`.
 */
enum SilenceStatus silence_distribution_interpolate(const struct SilenceDistribution *dist,
                                                    double n,
                                                    double *out);

/**
 * Log-log least squares over the knots in `[n_min, n_max]`.
 */
enum SilenceStatus silence_distribution_fit_alpha(const struct SilenceDistribution *dist,
                                                  uint64_t n_min,
                                                  uint64_t n_max,
                                                  struct SilenceFit *out);

/**
 * Silence-breaking probability `p(n)` for integer `n` in `[1, N]`.
 */
enum SilenceStatus silence_probability(const struct SilenceDistribution *dist,
                                       uint64_t n,
                                       double *out);

void silence_distribution_free(struct SilenceDistribution *dist);

/**
 * `p(n)` up to `floor(cutoff_fraction * N)`.
 */
enum SilenceStatus silence_curve_build(const struct SilenceDistribution *dist,
                                       double cutoff_fraction,
                                       struct SilenceCurve **out);

size_t silence_curve_len(const struct SilenceCurve *curve);

uint64_t silence_curve_cutoff(const struct SilenceCurve *curve);

enum SilenceStatus silence_curve_sample(const struct SilenceCurve *curve,
                                        size_t index,
                                        struct SilenceSample *out);

/**
 * Weighted plateau of `p(n) * n` over samples with `n >= lower`.
 */
enum SilenceStatus silence_curve_plateau(const struct SilenceCurve *curve,
                                         uint64_t lower,
                                         double *out);

void silence_curve_free(struct SilenceCurve *curve);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SILENCE_H */
