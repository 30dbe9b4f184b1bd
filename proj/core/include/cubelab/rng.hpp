#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cubelab/dense_set.hpp"

namespace cubelab {

/// splitmix64 step; used to derive independent per-attempt / per-block
/// seeds from a user seed so streams never overlap.
uint64_t derive_seed(uint64_t seed, uint64_t stream);

/// Deterministic seeded generator. mt19937_64 output is pinned by the
/// standard, and the rejection sampler below avoids the
/// implementation-defined std::uniform_int_distribution, so identical seeds
/// give identical values on every platform.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next_word() { return engine_(); }

  /// Unbiased uniform draw from [0, n).
  uint64_t below(uint64_t n);

  /// Uniformly random subset: each point kept with probability 1/2.
  DenseSubset fair_coin_subset(const IndexSet& u);

  /// Uniformly random subset of exactly `size` points (partial
  /// Fisher-Yates over the point list).
  DenseSubset exact_size_subset(const IndexSet& u, uint64_t size);

  /// `count` distinct points, uniform over all count-subsets, in the order
  /// the shuffle produced them.
  std::vector<uint32_t> distinct_points(const IndexSet& u, uint32_t count);

 private:
  std::mt19937_64 engine_;
};

}  // namespace cubelab
