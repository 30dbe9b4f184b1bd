#pragma once

#include <cstdint>
#include <vector>

#include "cubelab/dense_set.hpp"

namespace cubelab {

/// A mass function on the points of 2^domain with the per-point cap
/// 1/2^width. All masses share one power-of-two denominator 2^log2_den so
/// sums are plain int64 arithmetic; log2_den <= 62 keeps every partial sum
/// representable (total <= 2^log2_den by the cap).
class Distribution {
 public:
  Distribution(IndexSet domain, unsigned log2_den,
               std::vector<int64_t> numerators);

  static Distribution zero(const IndexSet& domain, unsigned log2_den);
  /// Constant mass c/2^log2_den at every point.
  static Distribution constant(const IndexSet& domain, unsigned log2_den,
                               int64_t numerator);

  const IndexSet& domain() const { return domain_; }
  unsigned width() const { return domain_.width(); }
  unsigned log2_den() const { return log2_den_; }

  int64_t numerator(uint32_t s) const { return num_[s]; }
  int64_t total_numerator() const { return total_; }
  const std::vector<int64_t>& numerators() const { return num_; }

  DyadicRational mass(uint32_t s) const {
    return DyadicRational(mpz_class(static_cast<long>(num_[s])), log2_den_);
  }
  /// Total mass, exact.
  DyadicRational total() const {
    return DyadicRational(mpz_class(static_cast<long>(total_)), log2_den_);
  }
  DenseSubset support() const;

  /// Sum of masses over an arbitrary subset, exact.
  DyadicRational mass_of(const DenseSubset& S) const;
  int64_t numerator_sum(const DenseSubset& S) const;

  bool operator==(const Distribution& o) const {
    return domain_ == o.domain_ && log2_den_ == o.log2_den_ && num_ == o.num_;
  }

 private:
  IndexSet domain_;
  unsigned log2_den_;
  std::vector<int64_t> num_;
  int64_t total_;
};

/// m(s) = |{t in J : t restricted to the first prefix_width coordinates
/// equals s}| / 2^|K|, a distribution on the prefix cube. The cap follows
/// automatically: a prefix has at most 2^(|K|-prefix_width) extensions.
Distribution project_set_to_distribution(const DenseSubset& J,
                                         unsigned prefix_width);

/// ceil(1/delta); rejected when delta <= 0 or the bin count is absurd.
unsigned level_count(const mpq_class& delta);

/// The level sets U_i = { s : i delta / 2^w < m(s) <= (i+1) delta / 2^w }
/// for 0 <= i < ceil(1/delta). Zero-mass points land in no bin.
std::vector<DenseSubset> level_sets(const Distribution& m,
                                    const mpq_class& delta);

/// m^t(s) = 2^prefix_width * m(t concat s) on the suffix cube; total equals
/// 2^prefix_width * (mass of the prefix t under projection).
Distribution conditional_distribution(const Distribution& m,
                                      unsigned prefix_width, uint32_t t);

}  // namespace cubelab
