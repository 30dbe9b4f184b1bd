#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cubelab {

/// Coordinate set of a finite Boolean hypercube (Z/2)^I. Only the size
/// matters algebraically; the label names tower blocks in reports.
class IndexSet {
 public:
  static constexpr unsigned kDefaultWidthCap = 24;
  // Point indices are uint32_t and subsets are dense bit-vectors; raising
  // the cap past this would need a different representation.
  static constexpr unsigned kAbsoluteWidthCap = 30;

  explicit IndexSet(unsigned width, std::string label = {},
                    unsigned cap = kDefaultWidthCap)
      : width_(width), label_(std::move(label)) {
    if (cap > kAbsoluteWidthCap) cap = kAbsoluteWidthCap;
    if (width < 1 || width > cap)
      throw std::invalid_argument("IndexSet width " + std::to_string(width) +
                                  " outside [1, " + std::to_string(cap) + "]");
  }

  unsigned width() const { return width_; }
  const std::string& label() const { return label_; }
  /// Number of points of 2^I.
  uint64_t point_count() const { return uint64_t{1} << width_; }

  friend bool operator==(const IndexSet& a, const IndexSet& b) {
    return a.width_ == b.width_;
  }

 private:
  unsigned width_;
  std::string label_;
};

/// One element of 2^I as a bitmask; coordinate i of the point is bit i.
struct PointMask {
  uint32_t bits = 0;

  PointMask() = default;
  explicit PointMask(uint32_t b) : bits(b) {}

  friend bool operator==(PointMask a, PointMask b) { return a.bits == b.bits; }
  friend bool operator<(PointMask a, PointMask b) { return a.bits < b.bits; }
  PointMask operator^(PointMask o) const { return PointMask(bits ^ o.bits); }
};

inline void require_point(const IndexSet& universe, PointMask p) {
  if (p.bits >= universe.point_count())
    throw std::invalid_argument("point 0x" + std::to_string(p.bits) +
                                " outside universe of width " +
                                std::to_string(universe.width()));
}

}  // namespace cubelab
