#include "cubelab/dense_set.hpp"

#include <bit>
#include <stdexcept>

namespace cubelab {

namespace {

size_t words_for(const IndexSet& u) {
  return static_cast<size_t>((u.point_count() + 63) / 64);
}

uint64_t tail_mask(const IndexSet& u) {
  const uint64_t n = u.point_count();
  return n >= 64 ? ~uint64_t{0} : ((uint64_t{1} << n) - 1);
}

}  // namespace

DenseSubset::DenseSubset(IndexSet universe)
    : universe_(std::move(universe)), words_(words_for(universe_), 0) {}

DenseSubset DenseSubset::full_set(const IndexSet& u) {
  DenseSubset s(u);
  for (auto& w : s.words_) w = ~uint64_t{0};
  s.words_.back() &= tail_mask(u);
  s.card_ = u.point_count();
  return s;
}

DenseSubset DenseSubset::from_points(const IndexSet& u,
                                     const std::vector<uint32_t>& points) {
  DenseSubset s(u);
  for (uint32_t p : points) {
    require_point(u, PointMask(p));
    s.words_[p >> 6] |= uint64_t{1} << (p & 63u);
  }
  s.recount();
  return s;
}

DenseSubset DenseSubset::from_words(const IndexSet& u,
                                    std::vector<uint64_t> words) {
  if (words.size() != words_for(u))
    throw std::invalid_argument("word vector length mismatch");
  if ((words.back() & ~tail_mask(u)) != 0)
    throw std::invalid_argument("tail bits beyond 2^width must be zero");
  DenseSubset s(u);
  s.words_ = std::move(words);
  s.recount();
  return s;
}

void DenseSubset::recount() {
  uint64_t c = 0;
  for (uint64_t w : words_) c += std::popcount(w);
  card_ = c;
}

bool DenseSubset::cardinality_consistent() const {
  uint64_t c = 0;
  for (uint64_t w : words_) c += std::popcount(w);
  return c == card_ && (words_.back() & ~tail_mask(universe_)) == 0;
}

void DenseSubset::require_same_universe(const DenseSubset& o) const {
  if (!(universe_ == o.universe_))
    throw std::invalid_argument("universe mismatch: width " +
                                std::to_string(width()) + " vs " +
                                std::to_string(o.width()));
}

DenseSubset DenseSubset::translate(PointMask x) const {
  require_point(universe_, x);
  DenseSubset out(universe_);
  const size_t xhi = x.bits >> 6;
  const unsigned xlo = x.bits & 63u;
  const size_t n = words_.size();
  for (size_t w = 0; w < n; ++w)
    out.words_[w] = detail::xor_shuffle_word(words_[w ^ xhi], xlo);
  out.card_ = card_;
  return out;
}

DenseSubset DenseSubset::complement() const {
  DenseSubset out(universe_);
  const size_t n = words_.size();
  for (size_t w = 0; w < n; ++w) out.words_[w] = ~words_[w];
  out.words_.back() &= tail_mask(universe_);
  out.card_ = universe_.point_count() - card_;
  return out;
}

DenseSubset DenseSubset::intersect(const DenseSubset& o) const {
  require_same_universe(o);
  DenseSubset out(universe_);
  for (size_t w = 0; w < words_.size(); ++w)
    out.words_[w] = words_[w] & o.words_[w];
  out.recount();
  return out;
}

DenseSubset DenseSubset::unite(const DenseSubset& o) const {
  require_same_universe(o);
  DenseSubset out(universe_);
  for (size_t w = 0; w < words_.size(); ++w)
    out.words_[w] = words_[w] | o.words_[w];
  out.recount();
  return out;
}

DenseSubset DenseSubset::minus(const DenseSubset& o) const {
  require_same_universe(o);
  DenseSubset out(universe_);
  for (size_t w = 0; w < words_.size(); ++w)
    out.words_[w] = words_[w] & ~o.words_[w];
  out.recount();
  return out;
}

bool DenseSubset::is_subset_of(const DenseSubset& o) const {
  require_same_universe(o);
  for (size_t w = 0; w < words_.size(); ++w)
    if (words_[w] & ~o.words_[w]) return false;
  return true;
}

uint64_t DenseSubset::intersection_count(const DenseSubset& o) const {
  require_same_universe(o);
  uint64_t c = 0;
  for (size_t w = 0; w < words_.size(); ++w)
    c += std::popcount(words_[w] & o.words_[w]);
  return c;
}

uint64_t DenseSubset::translated_intersection_count(const DenseSubset& o,
                                                    PointMask x) const {
  require_same_universe(o);
  require_point(universe_, x);
  const size_t xhi = x.bits >> 6;
  const unsigned xlo = x.bits & 63u;
  uint64_t c = 0;
  for (size_t w = 0; w < words_.size(); ++w)
    c += std::popcount(words_[w] &
                       detail::xor_shuffle_word(o.words_[w ^ xhi], xlo));
  return c;
}

bool DenseSubset::subset_of_translated(const DenseSubset& o,
                                       PointMask x) const {
  require_same_universe(o);
  require_point(universe_, x);
  const size_t xhi = x.bits >> 6;
  const unsigned xlo = x.bits & 63u;
  for (size_t w = 0; w < words_.size(); ++w)
    if (words_[w] & ~detail::xor_shuffle_word(o.words_[w ^ xhi], xlo))
      return false;
  return true;
}

std::vector<uint32_t> DenseSubset::points() const {
  std::vector<uint32_t> out;
  out.reserve(card_);
  for_each_point([&](uint32_t p) { out.push_back(p); });
  return out;
}

void DenseSubset::for_each_point(
    const std::function<void(uint32_t)>& fn) const {
  for (size_t w = 0; w < words_.size(); ++w) {
    uint64_t v = words_[w];
    while (v) {
      const unsigned b = std::countr_zero(v);
      fn(static_cast<uint32_t>((w << 6) + b));
      v &= v - 1;
    }
  }
}

std::string DenseSubset::to_hex() const {
  static const char* digits = "0123456789abcdef";
  const uint64_t npoints = universe_.point_count();
  const size_t ndigits = static_cast<size_t>((npoints + 3) / 4);
  std::string out(ndigits, '0');
  for (size_t d = 0; d < ndigits; ++d) {
    const size_t w = d >> 4;
    const unsigned shift = (d & 15u) * 4;
    out[d] = digits[(words_[w] >> shift) & 0xFu];
  }
  return out;
}

DenseSubset DenseSubset::from_hex(const IndexSet& u, const std::string& hex) {
  const uint64_t npoints = u.point_count();
  const size_t ndigits = static_cast<size_t>((npoints + 3) / 4);
  if (hex.size() != ndigits)
    throw std::invalid_argument("hex string length " +
                                std::to_string(hex.size()) + ", expected " +
                                std::to_string(ndigits));
  std::vector<uint64_t> words(words_for(u), 0);
  for (size_t d = 0; d < ndigits; ++d) {
    const char c = hex[d];
    unsigned v;
    if (c >= '0' && c <= '9') v = c - '0';
    else if (c >= 'a' && c <= 'f') v = 10 + (c - 'a');
    else if (c >= 'A' && c <= 'F') v = 10 + (c - 'A');
    else throw std::invalid_argument("bad hex digit in subset string");
    words[d >> 4] |= uint64_t{v} << ((d & 15u) * 4);
  }
  if ((words.back() & ~tail_mask(u)) != 0)
    throw std::invalid_argument("hex string sets bits beyond 2^width");
  return from_words(u, std::move(words));
}

DenseSubset intersect_translates(const DenseSubset& a0,
                                 const std::vector<PointMask>& X) {
  if (X.empty())
    throw std::invalid_argument("intersect_translates: X must be non-empty");
  DenseSubset acc = a0.translate(X[0]);
  std::vector<uint64_t> words = acc.words();
  for (size_t i = 1; i < X.size(); ++i) {
    require_point(a0.universe(), X[i]);
    const size_t xhi = X[i].bits >> 6;
    const unsigned xlo = X[i].bits & 63u;
    const auto& src = a0.words();
    for (size_t w = 0; w < words.size(); ++w)
      words[w] &= detail::xor_shuffle_word(src[w ^ xhi], xlo);
  }
  return DenseSubset::from_words(a0.universe(), std::move(words));
}

uint64_t intersect_translates_count(const DenseSubset& a0,
                                    const std::vector<PointMask>& X) {
  if (X.empty())
    throw std::invalid_argument("intersect_translates: X must be non-empty");
  if (X.size() == 1) return a0.cardinality();
  if (X.size() == 2)
    return a0.translate(X[0]).translated_intersection_count(a0, X[1]);
  return intersect_translates(a0, X).cardinality();
}

std::vector<uint64_t> shuffle_words(const std::vector<uint64_t>& src,
                                    unsigned xlo) {
  std::vector<uint64_t> out(src.size());
  for (size_t w = 0; w < src.size(); ++w)
    out[w] = detail::xor_shuffle_word(src[w], xlo);
  return out;
}

}  // namespace cubelab
