#include "cubelab/bounds.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "cubelab/dyadic.hpp"
#include "cubelab/rng.hpp"

namespace cubelab {

namespace {

constexpr long double kLn2 = 0.6931471805599453094172321214581766L;

LogProbability clamp(long double raw) {
  if (raw > 0.0L || std::isnan(raw)) return {0.0L, true};
  return {raw, false};
}

// 2^e * q as an exact rational, e possibly huge.
mpq_class pow2_times(const mpq_class& q, long e) {
  mpq_class out;
  if (e >= 0)
    mpq_mul_2exp(out.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  else
    mpq_div_2exp(out.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  return out;
}

}  // namespace

LogProbability bernstein_log_bound(uint64_t n, const mpq_class& delta) {
  if (delta <= 0) throw std::invalid_argument("bernstein: delta must be > 0");
  mpq_class exponent = delta * delta * mpz_class(static_cast<unsigned long>(n));
  exponent /= 4;
  return clamp(kLn2 - to_long_double(exponent));
}

LogProbability intersection_failure_log_bound(const BoundQuery& q) {
  if (q.delta <= 0) throw std::invalid_argument("delta must be > 0");
  const long double poly =
      static_cast<long double>(q.width) * (q.k + 1.0L) * (q.k + 1.0L) * kLn2;
  const long e = static_cast<long>(q.width) - static_cast<long>(q.k) - 2;
  const mpq_class exponent = pow2_times(q.delta * q.delta, e);
  return clamp(poly - to_long_double(exponent));
}

LogProbability split_failure_log_bound(const BoundQuery& q) {
  if (q.delta <= 0) throw std::invalid_argument("delta must be > 0");
  if (q.epsilon < 0) throw std::invalid_argument("epsilon must be >= 0");
  const long double poly = (q.width + 1.0L) * kLn2;
  const mpq_class exponent =
      pow2_times(q.epsilon * q.delta * q.delta / 4, q.width);
  return clamp(poly - to_long_double(exponent));
}

unsigned minimal_width(unsigned k, const mpq_class& epsilon,
                       const mpq_class& delta, long double target_log) {
  if (!(target_log < 0.0L))
    throw std::invalid_argument("minimal_width: target must be < 0");
  constexpr unsigned kSearchCap = 1u << 20;
  for (unsigned w = 1; w <= kSearchCap; ++w) {
    BoundQuery q{w, k, epsilon, delta};
    const auto b1 = intersection_failure_log_bound(q);
    const auto b2 = split_failure_log_bound(q);
    if (!b1.vacuous && !b2.vacuous && b1.log_value <= target_log &&
        b2.log_value <= target_log)
      return w;
  }
  throw std::runtime_error("minimal_width: no width below search cap");
}

ScheduleEntry geometric_schedule(unsigned n) {
  if (n > 56) throw std::invalid_argument("schedule index too large for k");
  ScheduleEntry e;
  e.k = uint64_t{1} << (n + 3);
  e.delta = pow2_times(mpq_class(1), -2L * (static_cast<long>(n) + 3));
  return e;
}

TailExperiment bernstein_tail_experiment(uint64_t n, const mpq_class& delta,
                                         uint64_t trials, uint64_t seed) {
  if (delta <= 0) throw std::invalid_argument("delta must be > 0");
  Rng rng(seed);
  TailExperiment out{trials, 0};
  const uint64_t full_words = n / 64;
  const uint64_t tail_bits = n % 64;
  // |S/n - 1/2| >= delta  <=>  |2S - n| * delta_den >= 2 n delta_num,
  // all in exact integers.
  const mpz_class threshold = 2 * delta.get_num() * mpz_class(static_cast<unsigned long>(n));
  for (uint64_t t = 0; t < trials; ++t) {
    uint64_t successes = 0;
    for (uint64_t w = 0; w < full_words; ++w)
      successes += std::popcount(rng.next_word());
    if (tail_bits)
      successes += std::popcount(rng.next_word() & ((uint64_t{1} << tail_bits) - 1));
    const int64_t dev2 = 2 * static_cast<int64_t>(successes) - static_cast<int64_t>(n);
    mpz_class lhs = mpz_class(static_cast<long>(dev2 < 0 ? -dev2 : dev2)) * delta.get_den();
    if (lhs >= threshold) ++out.exceed_count;
  }
  return out;
}

}  // namespace cubelab
