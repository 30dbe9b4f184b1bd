#include "cubelab/distribution.hpp"

#include <stdexcept>

namespace cubelab {

Distribution::Distribution(IndexSet domain, unsigned log2_den,
                           std::vector<int64_t> numerators)
    : domain_(std::move(domain)), log2_den_(log2_den), num_(std::move(numerators)), total_(0) {
  if (log2_den_ > 62)
    throw std::invalid_argument("distribution log2 denominator above 62");
  if (log2_den_ < width())
    throw std::invalid_argument(
        "log2 denominator below width: cap 1/2^width unrepresentable");
  if (num_.size() != domain_.point_count())
    throw std::invalid_argument("numerator vector length != 2^width");
  const int64_t cap = int64_t{1} << (log2_den_ - width());
  for (int64_t v : num_) {
    if (v < 0) throw std::invalid_argument("negative mass");
    if (v > cap)
      throw std::invalid_argument("mass above the 1/2^width cap");
    total_ += v;
  }
}

Distribution Distribution::zero(const IndexSet& domain, unsigned log2_den) {
  return Distribution(domain, log2_den,
                      std::vector<int64_t>(domain.point_count(), 0));
}

Distribution Distribution::constant(const IndexSet& domain, unsigned log2_den,
                                    int64_t numerator) {
  return Distribution(domain, log2_den,
                      std::vector<int64_t>(domain.point_count(), numerator));
}

DenseSubset Distribution::support() const {
  std::vector<uint32_t> pts;
  for (uint32_t s = 0; s < num_.size(); ++s)
    if (num_[s] > 0) pts.push_back(s);
  return DenseSubset::from_points(domain_, pts);
}

int64_t Distribution::numerator_sum(const DenseSubset& S) const {
  if (!(S.universe() == domain_))
    throw std::invalid_argument("subset universe mismatch");
  int64_t acc = 0;
  S.for_each_point([&](uint32_t p) { acc += num_[p]; });
  return acc;
}

DyadicRational Distribution::mass_of(const DenseSubset& S) const {
  return DyadicRational(mpz_class(static_cast<long>(numerator_sum(S))),
                        log2_den_);
}

Distribution project_set_to_distribution(const DenseSubset& J,
                                         unsigned prefix_width) {
  const unsigned kw = J.width();
  if (prefix_width < 1 || prefix_width > kw)
    throw std::invalid_argument("prefix width outside [1, |K|]");
  IndexSet prefix(prefix_width);
  std::vector<int64_t> nums(prefix.point_count(), 0);
  const uint32_t mask = static_cast<uint32_t>(prefix.point_count() - 1);
  J.for_each_point([&](uint32_t t) { ++nums[t & mask]; });
  return Distribution(prefix, kw, std::move(nums));
}

unsigned level_count(const mpq_class& delta) {
  if (delta <= 0) throw std::invalid_argument("delta must be > 0");
  if (delta >= 1) return 1;
  mpz_class ell;
  mpz_cdiv_q(ell.get_mpz_t(), delta.get_den().get_mpz_t(),
             delta.get_num().get_mpz_t());
  if (ell > (1 << 22))
    throw std::invalid_argument("delta too small: over 2^22 level sets");
  return static_cast<unsigned>(ell.get_ui());
}

std::vector<DenseSubset> level_sets(const Distribution& m,
                                    const mpq_class& delta) {
  const unsigned ell = level_count(delta);
  const unsigned w = m.width();
  std::vector<std::vector<uint32_t>> buckets(ell);
  // s sits in bin ceil(m(s) 2^w / delta) - 1 when m(s) > 0.
  for (uint32_t s = 0; s < m.domain().point_count(); ++s) {
    const int64_t v = m.numerator(s);
    if (v <= 0) continue;
    // q = (v / 2^L) * 2^w / delta = v * 2^w * dden / (2^L * dnum)
    mpz_class n1 = mpz_class(static_cast<long>(v)) * delta.get_den();
    n1 <<= w;
    mpz_class d1 = delta.get_num() << m.log2_den();
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), n1.get_mpz_t(), d1.get_mpz_t());
    const unsigned long bin = q.get_ui() - 1;
    if (bin >= ell)
      throw std::logic_error("level set index out of range (cap violated?)");
    buckets[bin].push_back(s);
  }
  std::vector<DenseSubset> out;
  out.reserve(ell);
  for (unsigned i = 0; i < ell; ++i)
    out.push_back(DenseSubset::from_points(m.domain(), buckets[i]));
  return out;
}

Distribution conditional_distribution(const Distribution& m,
                                      unsigned prefix_width, uint32_t t) {
  const unsigned w = m.width();
  if (prefix_width < 1 || prefix_width >= w)
    throw std::invalid_argument("prefix width outside [1, width)");
  if (t >= (uint32_t{1} << prefix_width))
    throw std::invalid_argument("prefix point outside 2^prefix_width");
  IndexSet suffix(w - prefix_width);
  std::vector<int64_t> nums(suffix.point_count());
  for (uint32_t s = 0; s < nums.size(); ++s)
    nums[s] = m.numerator(t | (s << prefix_width));
  // scaling by 2^prefix_width lowers the denominator exponent
  return Distribution(suffix, m.log2_den() - prefix_width, std::move(nums));
}

}  // namespace cubelab
