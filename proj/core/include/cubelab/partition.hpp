#pragma once

#include <cstdint>

#include "cubelab/dense_set.hpp"

namespace cubelab {

enum class SampleMode { kFairCoin, kBalanced };

/// A partition 2^I = a0 ∪ a1 (disjoint). a1 is stored explicitly and
/// checked to be the complement.
class Partition {
 public:
  Partition(DenseSubset a0, DenseSubset a1);
  static Partition from_a0(DenseSubset a0) {
    DenseSubset a1 = a0.complement();
    return Partition(std::move(a0), std::move(a1));
  }

  const IndexSet& universe() const { return a0_.universe(); }
  unsigned width() const { return a0_.width(); }
  const DenseSubset& a0() const { return a0_; }
  const DenseSubset& a1() const { return a1_; }
  const DenseSubset& side(int i) const { return i == 0 ? a0_ : a1_; }

  bool balanced() const {
    return a0_.cardinality() == universe().point_count() / 2;
  }
  /// Both sides non-empty.
  bool degenerate() const { return a0_.empty() || a1_.empty(); }

  bool operator==(const Partition& o) const {
    return a0_ == o.a0_;
  }

 private:
  DenseSubset a0_;
  DenseSubset a1_;
};

/// Seed-deterministic random partition. Fair-coin mode puts each point in
/// a0 independently with probability 1/2; balanced mode draws a0 uniformly
/// among subsets of size exactly 2^(width-1).
Partition sample_partition(const IndexSet& universe, SampleMode mode,
                           uint64_t seed);

const char* sample_mode_name(SampleMode m);
SampleMode sample_mode_from_name(const std::string& name);

}  // namespace cubelab
