#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cubelab/dyadic.hpp"
#include "cubelab/index_set.hpp"

namespace cubelab {

namespace detail {

/// Permutes the 64 bits of a word by index XOR: output bit i = input bit
/// (i ^ xlo), xlo < 64. Six conditional butterfly layers.
inline uint64_t xor_shuffle_word(uint64_t v, unsigned xlo) {
  if (xlo & 1u) v = ((v & 0xAAAAAAAAAAAAAAAAull) >> 1) | ((v & 0x5555555555555555ull) << 1);
  if (xlo & 2u) v = ((v & 0xCCCCCCCCCCCCCCCCull) >> 2) | ((v & 0x3333333333333333ull) << 2);
  if (xlo & 4u) v = ((v & 0xF0F0F0F0F0F0F0F0ull) >> 4) | ((v & 0x0F0F0F0F0F0F0F0Full) << 4);
  if (xlo & 8u) v = ((v & 0xFF00FF00FF00FF00ull) >> 8) | ((v & 0x00FF00FF00FF00FFull) << 8);
  if (xlo & 16u) v = ((v & 0xFFFF0000FFFF0000ull) >> 16) | ((v & 0x0000FFFF0000FFFFull) << 16);
  if (xlo & 32u) v = (v >> 32) | (v << 32);
  return v;
}

}  // namespace detail

/// A subset of 2^I as a dense bit-vector: bit p set iff point p belongs.
/// Immutable value type; all operations return new sets or plain counts.
/// An XOR translate is a fixed permutation of the vector and costs
/// O(2^width / 64) words.
class DenseSubset {
 public:
  explicit DenseSubset(IndexSet universe);  // empty set
  /// Placeholder: the empty set over a width-1 universe. Lets report
  /// structs default-construct; any mixed-universe use throws.
  DenseSubset() : DenseSubset(IndexSet(1)) {}

  static DenseSubset empty_set(const IndexSet& u) { return DenseSubset(u); }
  static DenseSubset full_set(const IndexSet& u);
  static DenseSubset from_points(const IndexSet& u,
                                 const std::vector<uint32_t>& points);
  /// Takes ownership of a raw bit-vector (tail bits must be zero).
  static DenseSubset from_words(const IndexSet& u, std::vector<uint64_t> words);

  const IndexSet& universe() const { return universe_; }
  unsigned width() const { return universe_.width(); }
  uint64_t cardinality() const { return card_; }
  bool empty() const { return card_ == 0; }
  /// Exact |S| / 2^width.
  DyadicRational density() const {
    return DyadicRational::ratio(mpz_class(static_cast<unsigned long>(card_)),
                                 width());
  }

  bool contains(uint32_t point) const {
    return (words_[point >> 6] >> (point & 63u)) & 1u;
  }
  bool contains(PointMask p) const { return contains(p.bits); }

  const std::vector<uint64_t>& words() const { return words_; }
  size_t word_count() const { return words_.size(); }

  /// {s ^ x : s in S}; cardinality preserved.
  DenseSubset translate(PointMask x) const;
  DenseSubset complement() const;
  DenseSubset intersect(const DenseSubset& o) const;
  DenseSubset unite(const DenseSubset& o) const;
  DenseSubset minus(const DenseSubset& o) const;

  bool is_subset_of(const DenseSubset& o) const;
  bool operator==(const DenseSubset& o) const {
    return universe_ == o.universe_ && words_ == o.words_;
  }
  bool operator!=(const DenseSubset& o) const { return !(*this == o); }

  uint64_t intersection_count(const DenseSubset& o) const;
  /// |this ∩ (o ^ x)| without materializing the translate.
  uint64_t translated_intersection_count(const DenseSubset& o,
                                         PointMask x) const;
  /// this ⊆ (o ^ x), again without materializing.
  bool subset_of_translated(const DenseSubset& o, PointMask x) const;

  std::vector<uint32_t> points() const;
  void for_each_point(const std::function<void(uint32_t)>& fn) const;

  /// Little-endian hex: digit j encodes points 4j..4j+3, point 4j is the
  /// least significant bit of the digit.
  std::string to_hex() const;
  static DenseSubset from_hex(const IndexSet& u, const std::string& hex);

  /// Recomputes the popcount and checks the cached cardinality (invariant
  /// audit hook for tests).
  bool cardinality_consistent() const;

 private:
  void recount();
  void require_same_universe(const DenseSubset& o) const;

  IndexSet universe_;
  std::vector<uint64_t> words_;
  uint64_t card_ = 0;
};

/// ⋂_{x in X} (a0 ^ x) with exact cardinality. X must be non-empty; the
/// |X| = 0 convention (full set) is the caller's business.
DenseSubset intersect_translates(const DenseSubset& a0,
                                 const std::vector<PointMask>& X);

/// Cardinality of the above without materializing intermediate sets beyond
/// one accumulator.
uint64_t intersect_translates_count(const DenseSubset& a0,
                                    const std::vector<PointMask>& X);

/// A copy of `src` with every word XOR-shuffled by xlo (the in-word half of
/// a translate). Combined with a word-index XOR by xhi this is the full
/// translate; exposed so sweeps over all shifts can hoist the shuffle.
std::vector<uint64_t> shuffle_words(const std::vector<uint64_t>& src,
                                    unsigned xlo);

}  // namespace cubelab
