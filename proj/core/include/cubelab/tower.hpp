#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cubelab/partition.hpp"
#include "cubelab/verify.hpp"

namespace cubelab {

struct ScheduleRow {
  unsigned k = 1;
  mpq_class epsilon;
  mpq_class delta;
};

struct ConstraintCheck {
  std::string name;   // which side condition
  unsigned block;     // the block the condition constrains
  bool holds;
  std::string detail; // the exact quantities compared
};

/// A finite block tower: consecutive disjoint coordinate blocks I_n, each
/// carrying a partition of 2^{I_n}, plus the (k_n, epsilon_n, delta_n)
/// schedule. Construction never fails on a violated growth or ordering
/// condition; the constraint report records every check instead.
class BlockTower {
 public:
  BlockTower(std::vector<Partition> partitions,
             std::vector<ScheduleRow> schedule);

  size_t depth() const { return partitions_.size(); }
  const Partition& partition(size_t n) const { return partitions_[n]; }
  const ScheduleRow& schedule(size_t n) const { return schedule_[n]; }
  const std::vector<ScheduleRow>& schedule() const { return schedule_; }
  unsigned block_width(size_t n) const { return partitions_[n].width(); }
  /// First coordinate of block n (blocks are consecutive intervals).
  unsigned block_offset(size_t n) const { return offsets_[n]; }
  /// Total width of blocks [0, n).
  unsigned prefix_width(size_t n) const { return offsets_[n]; }
  unsigned total_width() const { return offsets_[depth()]; }

  IndexSet joint_universe(size_t nblocks) const;
  uint32_t restrict_to_block(uint32_t x, size_t n) const {
    return (x >> offsets_[n]) &
           ((uint32_t{1} << partitions_[n].width()) - 1);
  }

  const std::vector<ConstraintCheck>& constraint_report() const {
    return constraint_report_;
  }

 private:
  std::vector<Partition> partitions_;
  std::vector<ScheduleRow> schedule_;
  std::vector<unsigned> offsets_;  // depth()+1 entries, cumulative widths
  std::vector<ConstraintCheck> constraint_report_;
};

struct TowerBlockSpec {
  unsigned width;
  unsigned k;
  mpq_class epsilon;
  mpq_class delta;
  SampleMode mode = SampleMode::kBalanced;
};

/// Structured outcome: exhaustion of a block's partition search is a
/// reported failure naming the block, not an exception.
struct BuildTowerOutcome {
  std::optional<BlockTower> tower;
  bool ok = false;
  size_t failed_block = 0;
  uint64_t failed_attempts = 0;
};

BuildTowerOutcome build_tower(const std::vector<TowerBlockSpec>& spec,
                              uint64_t seed, const VerifySpec& verify_spec,
                              uint64_t max_tries_per_block);

/// Membership word of x across the first `nblocks` blocks: bit n is 0 iff
/// the restriction of x to I_n lies in a0_n. Total because each partition
/// covers its cube.
struct FiberCode {
  uint32_t bits = 0;
  unsigned length = 0;

  bool bit(unsigned n) const { return (bits >> n) & 1u; }
  std::string str() const {
    std::string s(length, '0');
    for (unsigned i = 0; i < length; ++i)
      if (bit(i)) s[i] = '1';
    return s;
  }
};

FiberCode f_eval(const BlockTower& t, uint32_t x, unsigned nblocks);

/// The product structure F^{-1}(y) = prod_n a^{y(n)}_n.
class Fiber {
 public:
  Fiber(const BlockTower& t, FiberCode y);

  const FiberCode& code() const { return y_; }
  /// prod |a^{y(n)}_n|, exact.
  const mpz_class& cardinality() const { return cardinality_; }
  const std::vector<const DenseSubset*>& sides() const { return sides_; }

  /// Extensional form over the joint universe of the first |y| blocks.
  DenseSubset materialize() const;
  bool contains(uint32_t x) const;
  /// mu_y(S) = |S ∩ fiber| / |fiber|, exact (dyadic only when balanced).
  mpq_class measure_of(const DenseSubset& S) const;

 private:
  const BlockTower* tower_;
  FiberCode y_;
  std::vector<const DenseSubset*> sides_;
  mpz_class cardinality_;
};

/// Extensional product of per-block sides over consecutive blocks.
DenseSubset product_set(const IndexSet& joint,
                        const std::vector<const DenseSubset*>& sides);

/// A finite union of depth-N cylinders, stored extensionally over the
/// joint universe of the first N blocks. Its measure is exactly
/// |members| / 2^(total width).
struct CylinderUnion {
  unsigned depth;
  DenseSubset members;

  DyadicRational measure() const { return members.density(); }
};

}  // namespace cubelab
