#include "cubelab/dyadic.hpp"

#include <cmath>
#include <stdexcept>

namespace cubelab {

void DyadicRational::normalize() {
  if (num_ == 0) {
    log2_den_ = 0;
    return;
  }
  if (log2_den_ == 0) return;
  const mp_bitcnt_t tz = mpz_scan1(num_.get_mpz_t(), 0);
  const mp_bitcnt_t drop = tz < log2_den_ ? tz : log2_den_;
  if (drop > 0) {
    mpz_tdiv_q_2exp(num_.get_mpz_t(), num_.get_mpz_t(), drop);
    log2_den_ -= static_cast<unsigned>(drop);
  }
}

DyadicRational DyadicRational::operator+(const DyadicRational& o) const {
  const unsigned d = std::max(log2_den_, o.log2_den_);
  mpz_class a = num_ << (d - log2_den_);
  mpz_class b = o.num_ << (d - o.log2_den_);
  return DyadicRational(a + b, d);
}

DyadicRational DyadicRational::operator-(const DyadicRational& o) const {
  const unsigned d = std::max(log2_den_, o.log2_den_);
  mpz_class a = num_ << (d - log2_den_);
  mpz_class b = o.num_ << (d - o.log2_den_);
  return DyadicRational(a - b, d);
}

DyadicRational DyadicRational::operator*(const DyadicRational& o) const {
  return DyadicRational(num_ * o.num_, log2_den_ + o.log2_den_);
}

int DyadicRational::compare(const DyadicRational& o) const {
  const unsigned d = std::max(log2_den_, o.log2_den_);
  mpz_class a = num_ << (d - log2_den_);
  mpz_class b = o.num_ << (d - o.log2_den_);
  return cmp(a, b);
}

int DyadicRational::compare(const mpq_class& q) const {
  // num/2^k vs qn/qd  <=>  num*qd vs qn*2^k   (qd > 0 by mpq canonical form)
  mpz_class lhs = num_ * q.get_den();
  mpz_class rhs = q.get_num() << log2_den_;
  return cmp(lhs, rhs);
}

mpq_class DyadicRational::to_mpq() const {
  mpq_class q(num_);
  mpq_class den(mpz_class(1) << log2_den_);
  q /= den;
  return q;
}

std::string DyadicRational::str() const {
  if (log2_den_ == 0) return num_.get_str();
  return num_.get_str() + "/2^" + std::to_string(log2_den_);
}

mpq_class parse_rational(const std::string& text) {
  const auto bad = [&] {
    return std::invalid_argument("malformed rational: '" + text + "'");
  };
  if (text.empty()) throw bad();
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      mpz_class n(text);
      return mpq_class(n);
    }
    const std::string ns = text.substr(0, slash);
    std::string ds = text.substr(slash + 1);
    if (ns.empty() || ds.empty()) throw bad();
    mpz_class num(ns);
    mpz_class den;
    if (ds.rfind("2^", 0) == 0) {
      const unsigned long e = std::stoul(ds.substr(2));
      den = mpz_class(1) << e;
    } else {
      den = mpz_class(ds);
    }
    if (den == 0) throw bad();
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    throw bad();
  }
}

std::string rational_str(const mpq_class& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

long double to_long_double(const mpz_class& z) {
  if (mpz_fits_slong_p(z.get_mpz_t()))
    return static_cast<long double>(mpz_get_si(z.get_mpz_t()));
  long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, z.get_mpz_t());
  return static_cast<long double>(mant) * std::exp2(static_cast<long double>(exp2));
}

long double to_long_double(const mpq_class& q) {
  return to_long_double(q.get_num()) / to_long_double(q.get_den());
}

}  // namespace cubelab
