#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace cubelab {

/// Exact rational with a power-of-two denominator: numerator / 2^log2_den.
/// Canonical form keeps the numerator odd (or zero with log2_den == 0), so
/// equality is plain field comparison. All verdict arithmetic in this
/// library goes through this type or through mpq_class; no operation here
/// ever rounds.
class DyadicRational {
 public:
  DyadicRational() : num_(0), log2_den_(0) {}
  DyadicRational(mpz_class numerator, unsigned log2_denominator)
      : num_(std::move(numerator)), log2_den_(log2_denominator) {
    normalize();
  }
  explicit DyadicRational(long v) : num_(v), log2_den_(0) {}

  static DyadicRational zero() { return DyadicRational(); }
  static DyadicRational one() { return DyadicRational(1); }
  /// count / 2^log2_den, the shape every set density takes.
  static DyadicRational ratio(const mpz_class& count, unsigned log2_den) {
    return DyadicRational(count, log2_den);
  }

  const mpz_class& numerator() const { return num_; }
  unsigned log2_denominator() const { return log2_den_; }

  bool is_zero() const { return num_ == 0; }
  int sign() const { return sgn(num_); }

  DyadicRational operator+(const DyadicRational& o) const;
  DyadicRational operator-(const DyadicRational& o) const;
  DyadicRational operator*(const DyadicRational& o) const;
  DyadicRational operator-() const { return DyadicRational(-num_, log2_den_); }
  DyadicRational abs() const { return DyadicRational(::abs(num_), log2_den_); }

  /// Exact three-way compare; never converts to floating point.
  int compare(const DyadicRational& o) const;
  bool operator==(const DyadicRational& o) const {
    return num_ == o.num_ && log2_den_ == o.log2_den_;
  }
  bool operator!=(const DyadicRational& o) const { return !(*this == o); }
  bool operator<(const DyadicRational& o) const { return compare(o) < 0; }
  bool operator<=(const DyadicRational& o) const { return compare(o) <= 0; }
  bool operator>(const DyadicRational& o) const { return compare(o) > 0; }
  bool operator>=(const DyadicRational& o) const { return compare(o) >= 0; }

  /// Exact compare against an arbitrary rational (cross-multiplied).
  int compare(const mpq_class& q) const;
  bool operator<(const mpq_class& q) const { return compare(q) < 0; }
  bool operator<=(const mpq_class& q) const { return compare(q) <= 0; }
  bool operator>(const mpq_class& q) const { return compare(q) > 0; }
  bool operator>=(const mpq_class& q) const { return compare(q) >= 0; }

  mpq_class to_mpq() const;
  /// Decimal-ish debug form "num/2^k".
  std::string str() const;

 private:
  void normalize();

  mpz_class num_;
  unsigned log2_den_;
};

/// Parses "p", "p/q" or "p/2^k" into an exact rational. Throws
/// std::invalid_argument on malformed input or q == 0.
mpq_class parse_rational(const std::string& text);
std::string rational_str(const mpq_class& q);

/// Conversion for log-space reporting only; verdict paths never call this.
long double to_long_double(const mpq_class& q);
long double to_long_double(const mpz_class& z);

}  // namespace cubelab
