#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cubelab/budget.hpp"
#include "cubelab/partition.hpp"

namespace cubelab {

enum class EnumerationMode { kExhaustive, kSampled };

struct VerifySpec {
  EnumerationMode mode = EnumerationMode::kExhaustive;
  /// Number of sampled X in sampled mode (uniform k-subsets, seeded
  /// shuffle).
  uint64_t samples = 0;
  uint64_t sample_seed = 0;
  /// Fix 0 in X (deviation is invariant under X -> X + t, so this loses
  /// nothing and divides the work by 2^width). The slow non-reduced sweep
  /// stays available for cross-checks.
  bool reduce_translation = true;
  uint64_t budget = kDefaultPointOpBudget;
};

/// Outcome of the translate-intersection check: for every examined X with
/// 1 <= |X| <= k, the density of ⋂_{x in X}(a0+x) must be within delta of
/// 2^-|X|. Deviations are exact dyadics; `pass` is an exact comparison.
struct IntersectionReport {
  unsigned k = 0;
  mpq_class delta;
  EnumerationMode mode = EnumerationMode::kExhaustive;
  bool reduce_translation = true;
  uint64_t samples = 0;
  uint64_t sample_seed = 0;
  uint64_t checked = 0;  // number of X examined
  std::vector<PointMask> worst_X;
  DyadicRational worst_intersection_density;
  DyadicRational worst_deviation;
  bool pass = false;
};

IntersectionReport verify_intersections(const Partition& p, unsigned k,
                                        const mpq_class& delta,
                                        const VerifySpec& spec = {});

/// Estimated point-operations of the exhaustive sweep (refusal threshold).
uint64_t intersection_work_estimate(unsigned width, unsigned k,
                                    bool reduce_translation);

/// Even-split check of one witness set: good_shifts is exactly
/// { s : | |(a0+s) ∩ U| / 2^width  -  |U| / 2^(width+1) | < delta }.
struct EvenSplitReport {
  DyadicRational u_density;
  mpq_class delta;
  DenseSubset good_shifts;
  DyadicRational good_density;
  DyadicRational worst_deviation;  // over all shifts, for diagnostics
  uint32_t worst_shift = 0;
  bool pass = false;  // good_density > 1 - delta
};

EvenSplitReport even_split_report(const Partition& p, const DenseSubset& U,
                                  const mpq_class& delta);

/// Las Vegas loop: sample (seed, attempt)-deterministic partitions until
/// one passes the intersection check at (k, delta) and every witness's
/// even-split check at delta2. Exhaustion is a structured outcome, not an
/// exception.
struct FindPartitionOutcome {
  bool found = false;
  std::optional<Partition> partition;
  uint64_t attempts = 0;
  uint64_t intersection_failures = 0;
  uint64_t split_failures = 0;
  std::vector<uint64_t> witness_failures;  // per witness
  std::optional<IntersectionReport> intersection_report;  // of the winner
  std::vector<EvenSplitReport> witness_reports;           // of the winner
};

FindPartitionOutcome find_partition(const IndexSet& universe, SampleMode smode,
                                    unsigned k, const mpq_class& delta,
                                    const std::vector<DenseSubset>& witnesses,
                                    const mpq_class& delta2,
                                    const VerifySpec& spec, uint64_t max_tries,
                                    uint64_t seed);

}  // namespace cubelab
