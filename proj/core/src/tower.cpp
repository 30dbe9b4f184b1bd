#include "cubelab/tower.hpp"

#include <stdexcept>

#include "cubelab/dyadic.hpp"
#include "cubelab/rng.hpp"

namespace cubelab {

namespace {

std::string q_str(const mpq_class& q) { return rational_str(q); }

}  // namespace

BlockTower::BlockTower(std::vector<Partition> partitions,
                       std::vector<ScheduleRow> schedule)
    : partitions_(std::move(partitions)), schedule_(std::move(schedule)) {
  if (partitions_.empty())
    throw std::invalid_argument("tower needs at least one block");
  if (schedule_.size() != partitions_.size())
    throw std::invalid_argument("schedule length != block count");
  offsets_.resize(partitions_.size() + 1, 0);
  for (size_t n = 0; n < partitions_.size(); ++n) {
    if (partitions_[n].degenerate())
      throw std::invalid_argument("degenerate partition at block " +
                                  std::to_string(n));
    offsets_[n + 1] = offsets_[n] + partitions_[n].width();
  }
  if (offsets_.back() > IndexSet::kAbsoluteWidthCap)
    throw std::invalid_argument("tower total width exceeds the subset cap");

  // Side conditions; violations are recorded, never enforced.
  for (size_t n = 0; n + 1 < partitions_.size(); ++n) {
    const unsigned prefix = offsets_[n + 1];
    const mpz_class pow_prefix = mpz_class(1) << prefix;

    {
      // |I_{n+1}| >= 4^(n+10) * 2^(|I_0| + ... + |I_n|)
      mpz_class needed = mpz_class(1) << (2 * (n + 10));
      needed *= pow_prefix;
      const mpz_class have(partitions_[n + 1].width());
      constraint_report_.push_back(
          {"growth", static_cast<unsigned>(n + 1), have >= needed,
           "width " + have.get_str() + " vs required " + needed.get_str()});
    }
    {
      // min(I_{n+1}) >= max(I_n): automatic for consecutive intervals,
      // recorded for completeness.
      constraint_report_.push_back(
          {"block-order", static_cast<unsigned>(n + 1), true,
           "blocks are consecutive coordinate intervals"});
    }
    {
      // 2^prefix * delta_{n+1} < epsilon_{n+1}
      const mpq_class lhs = mpq_class(pow_prefix) * schedule_[n + 1].delta;
      constraint_report_.push_back(
          {"delta-eps-product", static_cast<unsigned>(n + 1),
           lhs < schedule_[n + 1].epsilon,
           q_str(lhs) + " < " + q_str(schedule_[n + 1].epsilon)});
    }
    {
      // epsilon_{n+1} < 2^-n
      mpq_class ceiling;
      mpq_div_2exp(ceiling.get_mpq_t(), mpq_class(1).get_mpq_t(), n);
      constraint_report_.push_back(
          {"eps-ceiling", static_cast<unsigned>(n + 1),
           schedule_[n + 1].epsilon < ceiling,
           q_str(schedule_[n + 1].epsilon) + " < " + q_str(ceiling)});
    }
    {
      // 2^prefix * epsilon_{n+1} < delta_n
      const mpq_class lhs = mpq_class(pow_prefix) * schedule_[n + 1].epsilon;
      constraint_report_.push_back(
          {"eps-delta-product", static_cast<unsigned>(n + 1),
           lhs < schedule_[n].delta,
           q_str(lhs) + " < " + q_str(schedule_[n].delta)});
    }
  }
}

IndexSet BlockTower::joint_universe(size_t nblocks) const {
  if (nblocks < 1 || nblocks > depth())
    throw std::invalid_argument("block count outside [1, depth]");
  return IndexSet(offsets_[nblocks], "blocks[0.." + std::to_string(nblocks - 1) + "]",
                  IndexSet::kAbsoluteWidthCap);
}

BuildTowerOutcome build_tower(const std::vector<TowerBlockSpec>& spec,
                              uint64_t seed, const VerifySpec& verify_spec,
                              uint64_t max_tries_per_block) {
  BuildTowerOutcome out;
  std::vector<Partition> partitions;
  std::vector<ScheduleRow> schedule;
  partitions.reserve(spec.size());
  for (size_t n = 0; n < spec.size(); ++n) {
    const TowerBlockSpec& b = spec[n];
    IndexSet u(b.width, "I" + std::to_string(n));
    FindPartitionOutcome f =
        find_partition(u, b.mode, b.k, b.delta, {}, mpq_class(1), verify_spec,
                       max_tries_per_block, derive_seed(seed, n));
    if (!f.found) {
      out.ok = false;
      out.failed_block = n;
      out.failed_attempts = f.attempts;
      return out;
    }
    partitions.push_back(std::move(*f.partition));
    schedule.push_back({b.k, b.epsilon, b.delta});
  }
  out.tower.emplace(std::move(partitions), std::move(schedule));
  out.ok = true;
  return out;
}

FiberCode f_eval(const BlockTower& t, uint32_t x, unsigned nblocks) {
  if (nblocks < 1 || nblocks > t.depth())
    throw std::invalid_argument("block count outside [1, depth]");
  if (x >= (uint64_t{1} << t.prefix_width(nblocks)))
    throw std::invalid_argument("point outside the joint universe");
  FiberCode y;
  y.length = nblocks;
  for (unsigned n = 0; n < nblocks; ++n) {
    const uint32_t r = t.restrict_to_block(x, n);
    if (t.partition(n).a1().contains(r)) y.bits |= uint32_t{1} << n;
  }
  return y;
}

DenseSubset product_set(const IndexSet& joint,
                        const std::vector<const DenseSubset*>& sides) {
  // Incremental tensor build: append one block at a time. Once the prefix
  // is at least a word wide the copies are word-aligned.
  std::vector<uint64_t> prefix{1};  // the empty product: one point, bit 0
  uint64_t prefix_bits = 1;
  unsigned prefix_width = 0;
  for (const DenseSubset* side : sides) {
    const unsigned w = side->width();
    const uint64_t side_points = side->universe().point_count();
    const uint64_t out_bits = prefix_bits << w;
    std::vector<uint64_t> next((out_bits + 63) / 64, 0);
    if (prefix_bits >= 64) {
      const size_t chunk_words = prefix_bits >> 6;
      for (uint64_t q = 0; q < side_points; ++q) {
        if (!side->contains(static_cast<uint32_t>(q))) continue;
        const size_t base = static_cast<size_t>(q) * chunk_words;
        for (size_t wd = 0; wd < chunk_words; ++wd)
          next[base + wd] = prefix[wd];
      }
    } else {
      for (uint64_t q = 0; q < side_points; ++q) {
        if (!side->contains(static_cast<uint32_t>(q))) continue;
        const uint64_t base = q * prefix_bits;
        const uint64_t chunk = prefix[0];
        next[base >> 6] |= chunk << (base & 63u);
        if ((base & 63u) + prefix_bits > 64)
          next[(base >> 6) + 1] |= chunk >> (64 - (base & 63u));
      }
    }
    prefix = std::move(next);
    prefix_bits = out_bits;
    prefix_width += w;
  }
  if (prefix_width != joint.width())
    throw std::invalid_argument("side widths do not sum to the joint width");
  return DenseSubset::from_words(joint, std::move(prefix));
}

Fiber::Fiber(const BlockTower& t, FiberCode y) : tower_(&t), y_(y) {
  if (y.length < 1 || y.length > t.depth())
    throw std::invalid_argument("fiber code length outside [1, depth]");
  cardinality_ = 1;
  sides_.reserve(y.length);
  for (unsigned n = 0; n < y.length; ++n) {
    const DenseSubset& side = t.partition(n).side(y.bit(n) ? 1 : 0);
    sides_.push_back(&side);
    cardinality_ *= static_cast<unsigned long>(side.cardinality());
  }
}

DenseSubset Fiber::materialize() const {
  return product_set(tower_->joint_universe(y_.length), sides_);
}

bool Fiber::contains(uint32_t x) const {
  for (unsigned n = 0; n < y_.length; ++n)
    if (!sides_[n]->contains(tower_->restrict_to_block(x, n))) return false;
  return true;
}

mpq_class Fiber::measure_of(const DenseSubset& S) const {
  if (!(S.universe() == tower_->joint_universe(y_.length)))
    throw std::invalid_argument("subset universe != fiber universe");
  uint64_t inside = 0;
  S.for_each_point([&](uint32_t p) {
    if (contains(p)) ++inside;
  });
  mpq_class q(mpz_class(static_cast<unsigned long>(inside)), cardinality_);
  q.canonicalize();
  return q;
}

}  // namespace cubelab
