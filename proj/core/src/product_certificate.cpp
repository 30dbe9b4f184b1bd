#include "cubelab/product_certificate.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace cubelab {

namespace {

mpq_class mpq_ratio(const mpz_class& num, const mpz_class& den) {
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

mpz_class pow2(unsigned e) { return mpz_class(1) << e; }

std::vector<const DenseSubset*> pattern_sides(const BlockSlice& slice,
                                              uint32_t pattern) {
  std::vector<const DenseSubset*> sides;
  sides.reserve(slice.block_count());
  for (size_t j = 0; j < slice.block_count(); ++j)
    sides.push_back(&slice.stage_partition(j).side((pattern >> j) & 1u));
  return sides;
}

}  // namespace

BuildProductOutcome certify_shifted_products(const DenseSubset& J,
                                             const BlockSlice& slice,
                                             const ProductOptions& opt) {
  const size_t bc = slice.block_count();
  const unsigned kw = slice.total_width();
  if (J.width() != kw)
    throw std::invalid_argument("J universe width != slice width");

  std::vector<mpq_class> deltas = opt.stage_deltas;
  std::vector<mpq_class> eps = opt.trim_eps;
  if (deltas.empty())
    for (size_t i = 0; i < bc; ++i) deltas.push_back(slice.stage_schedule(i).delta);
  if (eps.empty())
    for (size_t i = 0; i < bc; ++i) eps.push_back(slice.stage_schedule(i).epsilon);
  if (deltas.size() != bc || eps.size() != bc)
    throw std::invalid_argument("stage schedule length != slice blocks");

  BuildProductOutcome out;
  ProductCertificate cert;
  cert.first_block = slice.first_block();
  cert.last_block = slice.last_block();
  cert.j_density = J.density();
  cert.hypothesis_density_ok =
      cert.j_density >= slice.stage_schedule(0).epsilon;
  cert.trim = trim(J, slice, eps);
  cert.degenerate_empty = cert.trim.trimmed.empty();
  if (slice.first_block() >= 1)
    cert.ledger.headline_delta =
        slice.tower().schedule(slice.first_block() - 1).delta;

  const DenseSubset& Jt = cert.trim.trimmed;
  const mpq_class mbar_prime = Jt.density().to_mpq();
  mpq_class error(0);
  DenseSubset T = DenseSubset::full_set(slice.universe());

  if (!cert.degenerate_empty) {
    // Stage 0: split certificate for the level-0 distribution.
    const Distribution m0 = level_distribution(Jt, slice, 0);
    CertifyOptions copt = opt.cert;
    try {
      DistributionCertificate c0 = certify_distribution(
          m0, slice.stage_partition(0), deltas[0], mpq_class(0), copt);
      error = c0.certified_error;
      cert.stage_densities.push_back(c0.T_density);
      cert.ledger.stages.push_back({0, mpq_class(0), c0.certified_error,
                                    mpq_class(0), error, 1,
                                    c0.certified_error, c0.T_density});
      T = std::move(c0.T);
    } catch (const bin_split_error& e) {
      out.ok = false;
      out.failure = std::string("stage 0: ") + e.what();
      out.failed_stage = 0;
      out.failed_conditional = 0;
      return out;
    }

    // Pmax tracks the largest possible number of product prefixes,
    // prod max(|a0|, |a1|) over the stage's prefix blocks.
    mpz_class pmax(std::max(slice.stage_partition(0).a0().cardinality(),
                            slice.stage_partition(0).a1().cardinality()));

    for (size_t st = 1; st < bc; ++st) {
      const unsigned pw = slice.prefix_width(st);
      const Distribution mst = level_distribution(Jt, slice, st);
      const Partition& part = slice.stage_partition(st);
      DenseSubset stage_T = DenseSubset::full_set(part.universe());
      uint64_t live = 0;
      mpq_class emax(0);
      try {
        for (uint32_t t = 0; t < (uint32_t{1} << pw); ++t) {
          Distribution cond = conditional_distribution(mst, pw, t);
          if (cond.total_numerator() == 0) continue;
          ++live;
          DistributionCertificate ct = certify_distribution(
              cond, part, deltas[st], mpq_class(0), copt);
          if (ct.certified_error > emax) emax = ct.certified_error;
          stage_T = stage_T.intersect(ct.T);
        }
      } catch (const bin_split_error& e) {
        out.ok = false;
        out.failure = "stage " + std::to_string(st) + ": " + e.what();
        out.failed_stage = st;
        return out;
      }
      // error_{st} = error_{st-1}/2 + min(pmax, live) * emax / 2^pw
      const mpz_class hit_count =
          pmax < mpz_class(static_cast<unsigned long>(live))
              ? pmax
              : mpz_class(static_cast<unsigned long>(live));
      const mpq_class stage_term =
          mpq_class(hit_count) * emax / mpq_class(pow2(pw));
      const mpq_class carry = error / 2;
      error = carry + stage_term;
      LedgerStage ls;
      ls.stage = st;
      ls.carry = carry;
      ls.stage_term = stage_term;
      ls.schedule_term = mpq_class(pow2(pw)) * deltas[st];
      ls.error_after = error;
      ls.live_conditionals = live;
      ls.max_conditional_error = emax;
      ls.stage_density = stage_T.density();
      cert.ledger.stages.push_back(std::move(ls));
      cert.stage_densities.push_back(stage_T.density());

      T = product_set(IndexSet(pw + part.width(), "", IndexSet::kAbsoluteWidthCap),
                      {&T, &stage_T});
      pmax *= std::max(part.a0().cardinality(), part.a1().cardinality());
    }
  }

  cert.ledger.final_error = error;
  cert.T = std::move(T);
  cert.T_density = cert.T.density();
  mpq_class prod(1);
  for (const auto& d : cert.stage_densities) prod *= d.to_mpq();
  cert.density_loss = 1 - prod;
  if (cert.ledger.headline_delta)
    cert.density_within_headline =
        cert.T_density > mpq_class(1) - *cert.ledger.headline_delta;

  // Per-pattern deviation bounds for the ORIGINAL J: the trimmed core obeys
  // the ledger; the removed points shift both the count and the target.
  const mpq_class removed = cert.trim.removed_mass.to_mpq();
  const mpz_class full = pow2(kw);
  for (uint32_t b = 0; b < (uint32_t{1} << bc); ++b) {
    PatternBound pb;
    pb.pattern = b;
    pb.product_size = 1;
    for (size_t j = 0; j < bc; ++j)
      pb.product_size *= static_cast<unsigned long>(
          slice.stage_partition(j).side((b >> j) & 1u).cardinality());
    const mpq_class rho = mpq_ratio(pb.product_size, full);
    const mpq_class gamma =
        mpq_ratio(pow2(kw - static_cast<unsigned>(bc)), pb.product_size);
    const mpq_class err_over_rho = error / rho;
    const mpq_class upper =
        gamma * mbar_prime - mbar_prime + err_over_rho + removed * (1 / rho - 1);
    const mpq_class lower =
        mbar_prime - gamma * mbar_prime + err_over_rho + removed;
    pb.bound = upper > lower ? upper : lower;
    if (pb.bound > cert.max_bound) cert.max_bound = pb.bound;
    cert.pattern_bounds.push_back(std::move(pb));
  }

  if (opt.final_verify) {
    const ProductSweepReport sweep =
        verify_shifted_products(J, slice, cert.T, cert.max_bound);
    if (!sweep.pass)
      throw std::logic_error(
          "product certificate self-check failed: ledger bound is unsound");
    cert.verified_all_patterns = true;
    cert.verify_worst_deviation = sweep.worst_deviation;
  }

  out.ok = true;
  out.certificate = std::move(cert);
  return out;
}

ProductSweepReport verify_shifted_products(const DenseSubset& J,
                                           const BlockSlice& slice,
                                           const DenseSubset& T,
                                           const mpq_class& bound,
                                           std::vector<uint32_t> patterns) {
  const size_t bc = slice.block_count();
  const unsigned kw = slice.total_width();
  if (J.width() != kw || T.width() != kw)
    throw std::invalid_argument("universe width mismatch");
  if (patterns.empty())
    for (uint32_t b = 0; b < (uint32_t{1} << bc); ++b) patterns.push_back(b);

  ProductSweepReport rep;
  if (T.empty()) {
    rep.vacuous = true;
    rep.pass = true;
    return rep;
  }

  const mpz_class jcard(static_cast<unsigned long>(J.cardinality()));
  const mpz_class full = pow2(kw);
  const size_t nwords = J.word_count();
  const uint64_t npoints = J.universe().point_count();
  const unsigned lo_span = npoints < 64 ? static_cast<unsigned>(npoints) : 64u;
  bool first = true;
  bool ok = true;

  for (uint32_t b : patterns) {
    if (b >= (uint32_t{1} << bc))
      throw std::invalid_argument("pattern outside 2^(block count)");
    const DenseSubset M = product_set(slice.universe(), pattern_sides(slice, b));
    const mpz_class msize(static_cast<unsigned long>(M.cardinality()));
    // counts[s] = |(J + s) ∩ M|, via the hoisted-shuffle sweep.
    std::vector<uint64_t> counts(npoints, 0);
    const auto& mw = M.words();
    const auto& jw = J.words();
    for (unsigned slo = 0; slo < lo_span; ++slo) {
      const std::vector<uint64_t> shuffled = shuffle_words(jw, slo);
      for (size_t shi = 0; shi < nwords; ++shi) {
        uint64_t c = 0;
        for (size_t w = 0; w < nwords; ++w)
          c += std::popcount(mw[w] & shuffled[w ^ shi]);
        counts[(shi << 6) | slo] = c;
      }
    }
    T.for_each_point([&](uint32_t s) {
      ++rep.checked;
      // deviation = | c/|M| - |J|/2^kw | = | c*2^kw - |J|*|M| | / (|M|*2^kw)
      mpz_class num = mpz_class(static_cast<unsigned long>(counts[s])) * full -
                      jcard * msize;
      if (num < 0) num = -num;
      const mpq_class dev = mpq_ratio(num, msize * full);
      if (first || dev > rep.worst_deviation) {
        rep.worst_deviation = dev;
        rep.worst_shift = s;
        rep.worst_pattern = b;
        first = false;
      }
      if (dev > bound) ok = false;
    });
  }
  rep.pass = ok;
  return rep;
}

GroupRatioReport group_ratio_report(const BlockTower& tower,
                                    const std::vector<RatioGroupSpec>& groups,
                                    uint32_t z, FiberCode x,
                                    bool enforce_normalization) {
  GroupRatioReport rep;
  rep.total = 0;
  size_t expect_first = 0;
  for (size_t g = 0; g < groups.size(); ++g) {
    const RatioGroupSpec& spec = groups[g];
    if (spec.first_block != expect_first)
      throw std::invalid_argument("groups must tile the blocks consecutively");
    expect_first = spec.last_block + 1;
    if (spec.J == nullptr) throw std::invalid_argument("group without J");
    BlockSlice slice(tower, spec.first_block, spec.last_block);
    const unsigned kw = slice.total_width();
    if (spec.J->width() != kw)
      throw std::invalid_argument("group J width != slice width");
    if (x.length < spec.last_block + 1)
      throw std::invalid_argument("fiber code shorter than the groups");

    const uint32_t zg = (z >> tower.prefix_width(spec.first_block)) &
                        static_cast<uint32_t>((uint64_t{1} << kw) - 1);
    uint32_t local_pattern = 0;
    for (size_t j = 0; j < slice.block_count(); ++j)
      if (x.bit(static_cast<unsigned>(spec.first_block + j)))
        local_pattern |= uint32_t{1} << j;

    const DenseSubset M =
        product_set(slice.universe(), pattern_sides(slice, local_pattern));
    const uint64_t c = M.translated_intersection_count(*spec.J, PointMask(zg));

    GroupRatio gr;
    gr.index = g;
    gr.j_density = spec.J->density().to_mpq();
    gr.ratio = mpq_ratio(mpz_class(static_cast<unsigned long>(c)),
                         mpz_class(static_cast<unsigned long>(M.cardinality())));
    rep.total += gr.ratio;
    gr.partial_sum = rep.total;
    mpq_class expected;
    mpq_div_2exp(expected.get_mpq_t(), mpq_class(1).get_mpq_t(),
                 static_cast<mp_bitcnt_t>(g));
    gr.normalized = gr.j_density == expected;
    if (enforce_normalization && !gr.normalized)
      throw std::invalid_argument("group " + std::to_string(g) +
                                  " density is not 2^-" + std::to_string(g));
    if (spec.T != nullptr) {
      gr.bound_checked = true;
      gr.z_in_cert = spec.T->contains(zg);
      gr.bound_ok = !gr.z_in_cert || gr.ratio <= gr.j_density + spec.cert_bound;
    }
    rep.groups.push_back(std::move(gr));
  }
  return rep;
}

}  // namespace cubelab
