#include "cubelab/partition.hpp"

#include <stdexcept>

#include "cubelab/rng.hpp"

namespace cubelab {

Partition::Partition(DenseSubset a0, DenseSubset a1)
    : a0_(std::move(a0)), a1_(std::move(a1)) {
  if (!(a0_.universe() == a1_.universe()))
    throw std::invalid_argument("partition sides live in different universes");
  if (a1_ != a0_.complement())
    throw std::invalid_argument("partition sides are not complementary");
}

Partition sample_partition(const IndexSet& universe, SampleMode mode,
                           uint64_t seed) {
  Rng rng(seed);
  DenseSubset a0 = mode == SampleMode::kFairCoin
                       ? rng.fair_coin_subset(universe)
                       : rng.exact_size_subset(universe,
                                               universe.point_count() / 2);
  return Partition::from_a0(std::move(a0));
}

const char* sample_mode_name(SampleMode m) {
  return m == SampleMode::kFairCoin ? "fair-coin" : "balanced";
}

SampleMode sample_mode_from_name(const std::string& name) {
  if (name == "fair-coin") return SampleMode::kFairCoin;
  if (name == "balanced") return SampleMode::kBalanced;
  throw std::invalid_argument("unknown sample mode: " + name);
}

}  // namespace cubelab
