#include "cubelab/covering.hpp"

#include <bit>
#include <stdexcept>

namespace cubelab {

namespace {

// Counts members of U per value of the low `low_width` bits.
std::vector<uint64_t> prefix_counts(const CylinderUnion& U,
                                    unsigned low_width) {
  std::vector<uint64_t> counts(uint64_t{1} << low_width, 0);
  const uint32_t mask = static_cast<uint32_t>((uint64_t{1} << low_width) - 1);
  U.members.for_each_point([&](uint32_t p) { ++counts[p & mask]; });
  return counts;
}

// Z_n^t = { v : a^0_n + v ⊆ S or a^1_n + v ⊆ S }.
DenseSubset flagged_shifts(const Partition& p, const DenseSubset& S) {
  std::vector<uint32_t> pts;
  const uint64_t npoints = p.universe().point_count();
  for (uint64_t v = 0; v < npoints; ++v) {
    const PointMask pm(static_cast<uint32_t>(v));
    if (p.a0().subset_of_translated(S, pm) ||
        p.a1().subset_of_translated(S, pm))
      pts.push_back(static_cast<uint32_t>(v));
  }
  return DenseSubset::from_points(p.universe(), pts);
}

}  // namespace

CoveringWitness covering_witness(const BlockTower& t, const CylinderUnion& U) {
  if (U.depth < 1 || U.depth > t.depth())
    throw std::invalid_argument("cylinder union depth outside [1, depth]");
  if (!(U.members.universe() == t.joint_universe(U.depth)))
    throw std::invalid_argument("cylinder union universe mismatch");

  CoveringWitness wit;
  wit.depth = U.depth;
  wit.levels.resize(U.depth);
  const unsigned total = t.prefix_width(U.depth);

  // Good prefixes of depth n, built level by level; depth 0 is the empty
  // prefix (width 0), always good.
  std::vector<uint32_t> good{0};

  for (unsigned n = 0; n < U.depth; ++n) {
    const unsigned pw = t.prefix_width(n);         // width of t
    const unsigned bw = t.block_width(n);          // width of the new block
    if (good.size() > (uint64_t{1} << 22))
      throw budget_error(good.size(), uint64_t{1} << 22);
    const unsigned cw = pw + bw;                   // width of t concat s
    const std::vector<uint64_t> counts = prefix_counts(U, cw);
    // conditional density >= 1 - 1/2^(n+2)
    //   <=>  count * 2^(n+2) >= (2^(n+2) - 1) * 2^(total - cw)
    const mpz_class rhs = (mpz_class((uint64_t{1} << (n + 2)) - 1))
                          << (total - cw);
    const IndexSet& block_u = t.partition(n).universe();
    std::vector<uint32_t> next_good;

    for (uint32_t prefix : good) {
      std::vector<uint32_t> u_pts;
      for (uint32_t s = 0; s < block_u.point_count(); ++s) {
        const uint64_t c = counts[prefix | (s << pw)];
        if (mpz_class(static_cast<unsigned long>(c)) << (n + 2) >= rhs)
          u_pts.push_back(s);
      }
      PrefixData pd{prefix, DenseSubset::from_points(block_u, u_pts),
                    DenseSubset(block_u), false};
      pd.z_set = flagged_shifts(t.partition(n), pd.u_set);
      pd.z_bound_ok = pd.z_set.cardinality() <= n + 10;
      for (uint32_t s = 0; s < block_u.point_count(); ++s)
        if (!pd.u_set.contains(s)) next_good.push_back(prefix | (s << pw));
      wit.levels[n].push_back(std::move(pd));
    }

    DenseSubset zn(block_u);
    for (const PrefixData& pd : wit.levels[n]) zn = zn.unite(pd.z_set);
    wit.z_unions.push_back(std::move(zn));
    good = std::move(next_good);
  }
  return wit;
}

SumsetBoundCheck check_sumset_bound(const Partition& p, unsigned block_index,
                                    int side, uint64_t node_budget) {
  const unsigned n = block_index;
  const unsigned w = p.width();
  const uint64_t npoints = p.universe().point_count();
  SumsetBoundCheck out;
  out.block = n;
  out.side = side;
  out.set_size = n + 10;
  // |X + a^side| / 2^w >= (2^(n+2)-2)/(2^(n+2)-1)
  //   <=>  |⋂_{x in X} (a^(1-side) + x)| <= floor(2^w / (2^(n+2)-1))
  out.threshold = npoints / ((uint64_t{1} << (n + 2)) - 1);

  if (out.set_size > npoints) {
    out.status = SumsetBoundStatus::kVacuous;
    return out;
  }

  const DenseSubset& comp = p.side(1 - side);
  // DFS over X = {0, x1 < x2 < ...}; 0 is free by translation invariance.
  // A partial intersection at or below the threshold can never grow, so
  // the branch is safe to prune.
  uint64_t nodes = 0;
  std::vector<PointMask> chosen{PointMask(0)};
  bool violated = false;
  std::vector<PointMask> witness;

  std::function<void(std::vector<uint64_t>&, uint32_t, unsigned)> dfs =
      [&](std::vector<uint64_t>& acc, uint32_t next, unsigned size) {
        if (violated || nodes > node_budget) return;
        std::vector<uint64_t> child(acc.size());
        for (uint64_t x = next; x < npoints; ++x) {
          if (violated) return;
          // Keep enough room to finish the set.
          if (npoints - x < out.set_size - size) break;
          ++nodes;
          if (nodes > node_budget) return;
          const size_t xhi = static_cast<size_t>(x >> 6);
          const unsigned xlo = static_cast<unsigned>(x & 63u);
          uint64_t c = 0;
          const auto& src = comp.words();
          for (size_t wd = 0; wd < acc.size(); ++wd) {
            child[wd] = acc[wd] & detail::xor_shuffle_word(src[wd ^ xhi], xlo);
            c += std::popcount(child[wd]);
          }
          if (c <= out.threshold && size + 1 < out.set_size) continue;
          if (size + 1 == out.set_size) {
            if (c > out.threshold) {
              violated = true;
              chosen.push_back(PointMask(static_cast<uint32_t>(x)));
              witness = chosen;
              chosen.pop_back();
            }
            continue;
          }
          chosen.push_back(PointMask(static_cast<uint32_t>(x)));
          std::vector<uint64_t> saved = std::move(acc);
          acc = child;
          dfs(acc, static_cast<uint32_t>(x + 1), size + 1);
          acc = std::move(saved);
          chosen.pop_back();
        }
      };

  std::vector<uint64_t> acc = comp.words();
  dfs(acc, 1, 1);

  if (violated) {
    out.status = SumsetBoundStatus::kViolated;
    out.violating_X = witness;
  } else if (nodes > node_budget) {
    out.status = SumsetBoundStatus::kBudgetExceeded;
  } else {
    out.status = SumsetBoundStatus::kHeld;
  }
  return out;
}

CoveringCheckResult covering_check(const BlockTower& t, const CylinderUnion& U,
                                   uint64_t budget) {
  if (U.depth < 1 || U.depth > t.depth())
    throw std::invalid_argument("cylinder union depth outside [1, depth]");
  const unsigned total = t.prefix_width(U.depth);
  const uint64_t npoints = uint64_t{1} << total;
  const uint64_t nfibers = uint64_t{1} << U.depth;
  const uint64_t estimate = npoints * nfibers * (npoints / 64 + 1);
  if (estimate > budget) throw budget_error(estimate, budget);

  CoveringCheckResult res;
  res.witness = covering_witness(t, U);

  for (unsigned n = 0; n < U.depth; ++n)
    for (int side = 0; side < 2; ++side)
      res.attributions.push_back(check_sumset_bound(t.partition(n), n, side));

  for (uint64_t yb = 0; yb < nfibers; ++yb) {
    const FiberCode y{static_cast<uint32_t>(yb), U.depth};
    const DenseSubset fiber = Fiber(t, y).materialize();
    for (uint64_t z = 0; z < npoints; ++z) {
      ++res.pairs_checked;
      const PointMask zm(static_cast<uint32_t>(z));
      // F^{-1}(y) ⊆ U + z  <=>  (fiber + z) ⊆ U.
      if (!fiber.translate(zm).is_subset_of(U.members)) continue;
      if (!res.witness.in_w(t, static_cast<uint32_t>(z)))
        res.counterexamples.push_back({static_cast<uint32_t>(z), y});
    }
  }
  return res;
}

}  // namespace cubelab
