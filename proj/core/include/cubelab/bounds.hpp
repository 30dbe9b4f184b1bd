#pragma once

#include <cstdint>
#include <gmpxx.h>

namespace cubelab {

/// Natural log of a probability bound, clamped at 0 (= probability 1).
/// `vacuous` marks a clamp: the bound proved nothing. Exponents like
/// 2^(width-k-2) live only inside this log; nothing here materializes them
/// linearly.
struct LogProbability {
  long double log_value = 0.0L;
  bool vacuous = false;
};

struct BoundQuery {
  unsigned width = 0;
  unsigned k = 1;
  mpq_class epsilon;
  mpq_class delta;
};

/// P(|S_n/n - p| >= delta) <= 2 exp(-n delta^2 / 4) for n Bernoulli trials;
/// returns the log of the right-hand side.
LogProbability bernstein_log_bound(uint64_t n, const mpq_class& delta);

/// Failure bound for the translate-intersection clause over every X of size
/// <= k: log of 2^(width (k+1)^2) * exp(-2^(width-k-2) delta^2).
LogProbability intersection_failure_log_bound(const BoundQuery& q);

/// Failure bound for the even-split clause against one density-epsilon
/// witness: log of 2^(width+1) * exp(-2^width epsilon delta^2 / 4).
LogProbability split_failure_log_bound(const BoundQuery& q);

/// Least width at which both failure bounds are <= target (a log
/// probability, required < 0). Certified by direct re-evaluation: the
/// result w satisfies both bounds at w and fails at least one at w-1.
unsigned minimal_width(unsigned k, const mpq_class& epsilon,
                       const mpq_class& delta, long double target_log);

/// Level-n parameters of the geometric schedule delta_n = 4^-(n+3),
/// k_n = 2^(n+3).
struct ScheduleEntry {
  uint64_t k;
  mpq_class delta;
};
ScheduleEntry geometric_schedule(unsigned n);

/// Seeded Monte Carlo tail experiment for the Bernstein bound: counts
/// trials of n fair coin flips whose success frequency deviates from 1/2
/// by at least delta. The deviation test is exact integer arithmetic.
struct TailExperiment {
  uint64_t trials = 0;
  uint64_t exceed_count = 0;
};
TailExperiment bernstein_tail_experiment(uint64_t n, const mpq_class& delta,
                                         uint64_t trials, uint64_t seed);

}  // namespace cubelab
