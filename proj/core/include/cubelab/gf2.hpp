#pragma once

#include <vector>

#include "cubelab/dense_set.hpp"

namespace cubelab {

/// XOR-span of X, always containing 0; |span| = 2^rank(X).
DenseSubset subgroup_closure(const IndexSet& u,
                             const std::vector<PointMask>& X);

/// GF(2) rank of the point list (row-reduction over the width bits).
unsigned gf2_rank(const IndexSet& u, const std::vector<PointMask>& X);

/// True iff G contains 0 and is XOR-closed. Checked via |G| == 2^rank(G).
bool is_subgroup(const DenseSubset& G);

/// Partition of 2^I into |G| disjoint selectors, one point per coset each:
/// cosets are enumerated by ascending minimal representative, the points of
/// each coset in ascending order, and selector j collects every coset's
/// j-th point. Distinct points of one selector never differ by an element
/// of G.
std::vector<DenseSubset> coset_selectors(const DenseSubset& G);

}  // namespace cubelab
