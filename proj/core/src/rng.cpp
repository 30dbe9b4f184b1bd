#include "cubelab/rng.hpp"

#include <numeric>
#include <stdexcept>

namespace cubelab {

uint64_t derive_seed(uint64_t seed, uint64_t stream) {
  uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

uint64_t Rng::below(uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::below(0)");
  const uint64_t limit = ~uint64_t{0} - (~uint64_t{0} % n);
  uint64_t r;
  do {
    r = engine_();
  } while (r >= limit);
  return r % n;
}

DenseSubset Rng::fair_coin_subset(const IndexSet& u) {
  const size_t nwords = static_cast<size_t>((u.point_count() + 63) / 64);
  std::vector<uint64_t> words(nwords);
  for (auto& w : words) w = engine_();
  if (u.point_count() < 64) words.back() &= (uint64_t{1} << u.point_count()) - 1;
  return DenseSubset::from_words(u, std::move(words));
}

DenseSubset Rng::exact_size_subset(const IndexSet& u, uint64_t size) {
  const uint64_t n = u.point_count();
  if (size > n)
    throw std::invalid_argument("exact_size_subset: size exceeds 2^width");
  std::vector<uint32_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0u);
  for (uint64_t i = 0; i < size; ++i) {
    const uint64_t j = i + below(n - i);
    std::swap(idx[i], idx[j]);
  }
  idx.resize(size);
  return DenseSubset::from_points(u, idx);
}

std::vector<uint32_t> Rng::distinct_points(const IndexSet& u, uint32_t count) {
  const uint64_t n = u.point_count();
  if (count > n)
    throw std::invalid_argument("distinct_points: count exceeds 2^width");
  std::vector<uint32_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0u);
  for (uint32_t i = 0; i < count; ++i) {
    const uint64_t j = i + below(n - i);
    std::swap(idx[i], idx[j]);
  }
  idx.resize(count);
  return idx;
}

}  // namespace cubelab
