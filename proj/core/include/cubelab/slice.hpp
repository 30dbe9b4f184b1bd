#pragma once

#include <vector>

#include "cubelab/distribution.hpp"
#include "cubelab/tower.hpp"

namespace cubelab {

/// A contiguous run of tower blocks k .. k+n (inclusive) and the joint
/// coordinate interval K they span. All slice-local sets live over 2^K
/// with block k in the low bits.
class BlockSlice {
 public:
  BlockSlice(const BlockTower& tower, size_t first_block, size_t last_block);

  const BlockTower& tower() const { return *tower_; }
  size_t first_block() const { return first_; }
  size_t last_block() const { return last_; }
  size_t block_count() const { return last_ - first_ + 1; }
  /// Width of the slice-local prefix covering stage levels 0..i.
  unsigned prefix_width(size_t levels) const;
  unsigned total_width() const { return prefix_width(block_count()); }
  IndexSet universe() const;
  const Partition& stage_partition(size_t i) const {
    return tower_->partition(first_ + i);
  }
  const ScheduleRow& stage_schedule(size_t i) const {
    return tower_->schedule(first_ + i);
  }

 private:
  const BlockTower* tower_;
  size_t first_;
  size_t last_;
};

/// m_i over the slice prefix of levels 0..i: m_i(s) = (extensions of s in
/// J) / 2^|K|. All levels share the total |J| / 2^|K|.
Distribution level_distribution(const DenseSubset& J, const BlockSlice& slice,
                                size_t i);

/// Removes from J every point extending a prefix whose level mass is
/// positive but below epsilon_(k+i) / 2^(prefix width), deepest level first
/// within a round, iterating to a fixpoint (removals can expose new light
/// ancestors).
struct TrimResult {
  DenseSubset trimmed;
  DyadicRational removed_mass;
  std::vector<DyadicRational> per_level_removed;  // by level index
  unsigned fixpoint_rounds = 0;
  /// Paper budget comparisons, recorded: sum eps_(k+i) and 2 eps_k.
  mpq_class eps_budget_sum;
  bool within_eps_sum = false;
  bool within_two_eps_head = false;
  /// eps_(k+i+1) <= eps_(k+i)/2 for every i (the ordering the budget
  /// argument uses).
  bool eps_halving_ordered = false;
};

TrimResult trim(const DenseSubset& J, const BlockSlice& slice,
                const std::vector<mpq_class>& eps_schedule);

/// Audits the trim postcondition directly from the definition.
bool trim_invariant_holds(const DenseSubset& J, const BlockSlice& slice,
                          const std::vector<mpq_class>& eps_schedule);

}  // namespace cubelab
