#include "cubelab/slice.hpp"

#include <algorithm>
#include <stdexcept>

namespace cubelab {

BlockSlice::BlockSlice(const BlockTower& tower, size_t first_block,
                       size_t last_block)
    : tower_(&tower), first_(first_block), last_(last_block) {
  if (first_ > last_ || last_ >= tower.depth())
    throw std::invalid_argument("slice range outside the tower");
  const unsigned w =
      tower.prefix_width(last_ + 1) - tower.prefix_width(first_);
  if (w > IndexSet::kAbsoluteWidthCap)
    throw std::invalid_argument("slice width exceeds the subset cap");
}

unsigned BlockSlice::prefix_width(size_t levels) const {
  if (levels > block_count())
    throw std::invalid_argument("level count outside the slice");
  return tower_->prefix_width(first_ + levels) - tower_->prefix_width(first_);
}

IndexSet BlockSlice::universe() const {
  return IndexSet(total_width(),
                  "K[" + std::to_string(first_) + ".." + std::to_string(last_) + "]",
                  IndexSet::kAbsoluteWidthCap);
}

Distribution level_distribution(const DenseSubset& J, const BlockSlice& slice,
                                size_t i) {
  if (i >= slice.block_count())
    throw std::invalid_argument("level index outside the slice");
  if (J.width() != slice.total_width())
    throw std::invalid_argument("J universe width != slice width");
  return project_set_to_distribution(J, slice.prefix_width(i + 1));
}

TrimResult trim(const DenseSubset& J, const BlockSlice& slice,
                const std::vector<mpq_class>& eps_schedule) {
  const size_t levels = slice.block_count();
  if (eps_schedule.size() != levels)
    throw std::invalid_argument("epsilon schedule length != slice blocks");
  if (J.width() != slice.total_width())
    throw std::invalid_argument("J universe width != slice width");

  const unsigned kw = slice.total_width();
  TrimResult res{J, DyadicRational::zero(),
                 std::vector<DyadicRational>(levels, DyadicRational::zero()),
                 0, mpq_class(0), false, false, false};

  bool dirty = true;
  while (dirty) {
    dirty = false;
    ++res.fixpoint_rounds;
    // Deepest level first within a round.
    for (size_t ii = levels; ii-- > 0;) {
      const unsigned pw = slice.prefix_width(ii + 1);
      const uint32_t mask = static_cast<uint32_t>((uint64_t{1} << pw) - 1);
      std::vector<uint64_t> counts(uint64_t{1} << pw, 0);
      res.trimmed.for_each_point([&](uint32_t t) { ++counts[t & mask]; });
      // light  <=>  0 < count/2^|K| < eps / 2^pw
      //        <=>  0 < count * eps_den * 2^pw < eps_num * 2^|K|
      const mpz_class rhs = eps_schedule[ii].get_num() << (kw - pw);
      const mpz_class& eden = eps_schedule[ii].get_den();
      std::vector<uint32_t> light;
      for (uint32_t s = 0; s < counts.size(); ++s) {
        if (counts[s] == 0) continue;
        if (mpz_class(static_cast<unsigned long>(counts[s])) * eden < rhs)
          light.push_back(s);
      }
      if (light.empty()) continue;
      dirty = true;
      uint64_t removed_points = 0;
      std::vector<uint64_t> words = res.trimmed.words();
      // Clear every point extending a light prefix; light is sorted.
      res.trimmed.for_each_point([&](uint32_t t) {
        const uint32_t prefix = t & mask;
        const auto it = std::lower_bound(light.begin(), light.end(), prefix);
        if (it != light.end() && *it == prefix) {
          words[t >> 6] &= ~(uint64_t{1} << (t & 63u));
          ++removed_points;
        }
      });
      res.trimmed = DenseSubset::from_words(res.trimmed.universe(), std::move(words));
      const DyadicRational removed(
          mpz_class(static_cast<unsigned long>(removed_points)), kw);
      res.per_level_removed[ii] = res.per_level_removed[ii] + removed;
      res.removed_mass = res.removed_mass + removed;
    }
  }
  // The final round found nothing; it only confirmed the fixpoint.
  --res.fixpoint_rounds;

  mpq_class eps_sum = 0;
  for (const auto& e : eps_schedule) eps_sum += e;
  res.eps_budget_sum = eps_sum;
  res.within_eps_sum = res.removed_mass <= eps_sum;
  res.within_two_eps_head = res.removed_mass < 2 * eps_schedule.front();
  res.eps_halving_ordered = true;
  for (size_t i = 0; i + 1 < eps_schedule.size(); ++i)
    if (!(eps_schedule[i + 1] <= eps_schedule[i] / 2))
      res.eps_halving_ordered = false;
  return res;
}

bool trim_invariant_holds(const DenseSubset& J, const BlockSlice& slice,
                          const std::vector<mpq_class>& eps_schedule) {
  const size_t levels = slice.block_count();
  const unsigned kw = slice.total_width();
  for (size_t i = 0; i < levels; ++i) {
    const Distribution mi = level_distribution(J, slice, i);
    const unsigned pw = slice.prefix_width(i + 1);
    const mpz_class rhs = eps_schedule[i].get_num() << (kw - pw);
    const mpz_class& eden = eps_schedule[i].get_den();
    for (uint32_t s = 0; s < mi.domain().point_count(); ++s) {
      const int64_t c = mi.numerator(s);
      if (c == 0) continue;
      if (mpz_class(static_cast<long>(c)) * eden < rhs) return false;
    }
  }
  return true;
}

}  // namespace cubelab
