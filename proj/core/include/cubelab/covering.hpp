#pragma once

#include <optional>
#include <vector>

#include "cubelab/budget.hpp"
#include "cubelab/tower.hpp"

namespace cubelab {

/// One good prefix t at depth n together with the data derived from it:
/// the high-conditional-density set U_n^t and the flagged shifts Z_n^t.
struct PrefixData {
  uint32_t prefix = 0;      // point of the joint universe of blocks [0, n)
  DenseSubset u_set;        // U_n^t over 2^{I_n}
  DenseSubset z_set;        // Z_n^t over 2^{I_n}
  bool z_bound_ok = false;  // |Z_n^t| <= n + 10
};

/// Everything the covering argument computes for one cylinder union:
/// good prefixes by depth (depth 0 holds the single empty prefix), the
/// per-prefix U- and Z-sets, and the unions Z_n.
struct CoveringWitness {
  unsigned depth = 0;
  std::vector<std::vector<PrefixData>> levels;  // levels[n]: good prefixes of width P_n
  std::vector<DenseSubset> z_unions;            // Z_n over 2^{I_n}

  /// z restricted to some block n lands in Z_n.
  bool in_w(const BlockTower& t, uint32_t z) const {
    for (unsigned n = 0; n < depth; ++n)
      if (z_unions[n].contains(t.restrict_to_block(z, n))) return true;
    return false;
  }
};

/// Conditional-measure thresholds: depth 0 uses >= 3/4 (= 1 - 1/2^2), depth
/// n uses >= 1 - 1/2^(n+2). A prefix is good when its restriction avoided
/// the U-set at every earlier depth; only good prefixes are expanded.
CoveringWitness covering_witness(const BlockTower& t, const CylinderUnion& U);

/// Exact check of the sumset lower bound behind the Z-set size argument:
/// for every X of size n+10, |X + a^i_n| / 2^|I_n| >= (2^(n+2)-2)/(2^(n+2)-1).
/// Equivalent form searched: no X of that size keeps
/// |⋂_{x in X}(a^(1-i)_n + x)| above floor(2^|I_n| / (2^(n+2)-1)).
/// Branch-and-bound with monotone pruning; exact when it finishes.
enum class SumsetBoundStatus { kHeld, kViolated, kVacuous, kBudgetExceeded };

struct SumsetBoundCheck {
  unsigned block = 0;
  int side = 0;
  unsigned set_size = 0;       // n + 10
  uint64_t threshold = 0;      // intersection bound implied by the inequality
  SumsetBoundStatus status = SumsetBoundStatus::kHeld;
  std::vector<PointMask> violating_X;  // when violated
};

SumsetBoundCheck check_sumset_bound(const Partition& p, unsigned block_index,
                                    int side, uint64_t node_budget = 1 << 24);

struct CoveringCounterexample {
  uint32_t z = 0;
  FiberCode y;
};

/// Exhaustive covering check: every (z, y) with F^{-1}(y) ⊆ U + z must have
/// z flagged by the witness. Returns all violations (expected none) plus
/// the per-block sumset attributions so a failure can be traced.
struct CoveringCheckResult {
  std::vector<CoveringCounterexample> counterexamples;
  CoveringWitness witness;
  std::vector<SumsetBoundCheck> attributions;  // per (block, side)
  uint64_t pairs_checked = 0;
};

CoveringCheckResult covering_check(const BlockTower& t, const CylinderUnion& U,
                                   uint64_t budget = kDefaultPointOpBudget);

}  // namespace cubelab
