#include "cubelab/gf2.hpp"

#include <stdexcept>

namespace cubelab {

DenseSubset subgroup_closure(const IndexSet& u,
                             const std::vector<PointMask>& X) {
  DenseSubset span = DenseSubset::from_points(u, {0});
  for (PointMask x : X) {
    require_point(u, x);
    if (span.contains(x)) continue;
    span = span.unite(span.translate(x));
  }
  return span;
}

unsigned gf2_rank(const IndexSet& u, const std::vector<PointMask>& X) {
  // Basis vector with leading bit b lives in lead[b].
  uint32_t lead[32] = {};
  unsigned rank = 0;
  for (PointMask x : X) {
    require_point(u, x);
    uint32_t v = x.bits;
    while (v) {
      const unsigned b = 31u - static_cast<unsigned>(__builtin_clz(v));
      if (!lead[b]) {
        lead[b] = v;
        ++rank;
        break;
      }
      v ^= lead[b];
    }
  }
  return rank;
}

bool is_subgroup(const DenseSubset& G) {
  if (!G.contains(uint32_t{0})) return false;
  std::vector<PointMask> pts;
  pts.reserve(G.cardinality());
  G.for_each_point([&](uint32_t p) { pts.push_back(PointMask(p)); });
  const unsigned r = gf2_rank(G.universe(), pts);
  return G.cardinality() == (uint64_t{1} << r);
}

std::vector<DenseSubset> coset_selectors(const DenseSubset& G) {
  if (!is_subgroup(G))
    throw std::invalid_argument("coset_selectors: G is not a subgroup");
  const IndexSet& u = G.universe();
  const uint64_t g = G.cardinality();
  std::vector<std::vector<uint32_t>> buckets(g);
  DenseSubset covered(u);
  std::vector<uint64_t> covered_words(covered.words().size(), 0);
  const uint64_t npoints = u.point_count();
  for (uint32_t rep = 0; rep < npoints; ++rep) {
    if ((covered_words[rep >> 6] >> (rep & 63u)) & 1u) continue;
    // rep is the minimal representative of a fresh coset.
    const DenseSubset coset = G.translate(PointMask(rep));
    size_t j = 0;
    coset.for_each_point([&](uint32_t p) {
      buckets[j++].push_back(p);
      covered_words[p >> 6] |= uint64_t{1} << (p & 63u);
    });
  }
  std::vector<DenseSubset> selectors;
  selectors.reserve(g);
  for (const auto& b : buckets)
    selectors.push_back(DenseSubset::from_points(u, b));
  return selectors;
}

}  // namespace cubelab
