#include "cubelab/dist_certificate.hpp"

namespace cubelab {

namespace {

// | sum{m(t): t in a0 ^ s} - total/2 | = |2 A - total| / 2^(L+1), exact.
DyadicRational shift_deviation(const Distribution& m, const DenseSubset& a0,
                               uint32_t s) {
  const DenseSubset side = a0.translate(PointMask(s));
  const int64_t a = m.numerator_sum(side);
  const int64_t d = 2 * a - m.total_numerator();
  return DyadicRational(mpz_class(static_cast<long>(d < 0 ? -d : d)),
                        m.log2_den() + 1);
}

}  // namespace

DistributionCertificate certify_distribution(const Distribution& m,
                                             const Partition& p,
                                             const mpq_class& delta,
                                             const mpq_class& epsilon,
                                             const CertifyOptions& opt) {
  if (!(m.domain() == p.universe()))
    throw std::invalid_argument("distribution domain != partition universe");
  if (delta <= 0) throw std::invalid_argument("delta must be > 0");
  if (m.total() < epsilon)
    throw std::invalid_argument("total mass below epsilon");

  const unsigned w = m.width();
  const mpq_class delta2 = delta * delta;
  const mpq_class delta3 = delta2 * delta;

  DistributionCertificate cert;
  cert.delta = delta;
  cert.epsilon = epsilon;
  cert.ell = level_count(delta);
  cert.mbar = m.total();
  cert.headline = 3 * delta;

  const std::vector<DenseSubset> bins = level_sets(m, delta);
  DenseSubset T = DenseSubset::full_set(m.domain());
  DyadicRational discarded;
  mpq_class mbar_prime = 0;
  mpq_class slack = 0;
  bool all_passed = true;

  for (unsigned i = 0; i < bins.size(); ++i) {
    BinSummary summary;
    summary.index = i;
    summary.coefficient = i * delta;
    summary.size = bins[i].cardinality();
    // kept  <=>  |U_i|/2^w >= delta^2
    summary.kept = bins[i].density() >= delta2;
    if (!summary.kept) {
      discarded = discarded + m.mass_of(bins[i]);
      cert.bins.push_back(std::move(summary));
      continue;
    }
    cert.kept.push_back(i);
    EvenSplitReport esr = even_split_report(p, bins[i], delta3);
    summary.good_density = esr.good_density;
    summary.density_pass = esr.pass;
    if (!esr.pass) {
      all_passed = false;
      if (opt.strict_bins)
        throw bin_split_error(
            i, "bin " + std::to_string(i) + " good-shift density " +
                   esr.good_density.str() + " misses 1 - delta^3");
    }
    T = T.intersect(esr.good_shifts);
    mbar_prime += summary.coefficient * bins[i].density().to_mpq();
    slack += summary.coefficient * delta3;
    cert.bins.push_back(std::move(summary));
  }

  cert.mbar_prime = mbar_prime;
  cert.discarded_mass = discarded;
  cert.binning_gap = cert.mbar.to_mpq() - mbar_prime;
  if (cert.binning_gap < 0)
    throw std::logic_error("negative binning gap: level sets are wrong");
  cert.split_slack = slack;
  cert.certified_error = cert.binning_gap / 2 + slack;
  cert.error_within_headline = cert.certified_error <= cert.headline;
  cert.T = std::move(T);
  cert.T_density = cert.T.density();
  cert.all_bins_passed = all_passed;
  cert.statement_density_ok = cert.T_density > mpq_class(1) - delta;
  cert.proof_density_ok = cert.T_density >= mpq_class(1) - delta2;

  if (opt.self_check) {
    const SplitSweepReport sweep =
        verify_distribution_split(m, p, cert.T, cert.certified_error);
    if (!sweep.pass)
      throw std::logic_error(
          "certificate self-check failed: ledger error is unsound");
    cert.checked_worst_deviation = sweep.worst_deviation;
  }
  return cert;
}

SplitSweepReport verify_distribution_split(const Distribution& m,
                                           const Partition& p,
                                           const DenseSubset& T,
                                           const mpq_class& bound) {
  if (!(m.domain() == p.universe()) || !(T.universe() == p.universe()))
    throw std::invalid_argument("universe mismatch");
  SplitSweepReport rep;
  if (T.empty()) {
    rep.vacuous = true;
    rep.pass = true;
    return rep;
  }
  bool first = true;
  bool ok = true;
  T.for_each_point([&](uint32_t s) {
    const DyadicRational dev = shift_deviation(m, p.a0(), s);
    if (first || dev > rep.worst_deviation) {
      rep.worst_deviation = dev;
      rep.worst_shift = s;
      first = false;
    }
    if (dev > bound) ok = false;
  });
  rep.pass = ok;
  return rep;
}

}  // namespace cubelab
