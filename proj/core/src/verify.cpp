#include "cubelab/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "cubelab/parallel.hpp"
#include "cubelab/rng.hpp"

namespace cubelab {

namespace {

struct Worst {
  DyadicRational deviation;
  DyadicRational density;
  std::vector<PointMask> X;
  bool set = false;

  void offer(const DyadicRational& dev, const DyadicRational& dens,
             const std::vector<PointMask>& x) {
    if (!set) {
      deviation = dev;
      density = dens;
      X = x;
      set = true;
      return;
    }
    const int c = dev.compare(deviation);
    if (c > 0 || (c == 0 && std::lexicographical_compare(
                                x.begin(), x.end(), X.begin(), X.end()))) {
      deviation = dev;
      density = dens;
      X = x;
    }
  }
};

DyadicRational size_deviation(uint64_t count, unsigned width, size_t m) {
  // | count/2^width - 2^-m |, exact.
  const DyadicRational d = DyadicRational::ratio(
      mpz_class(static_cast<unsigned long>(count)), width);
  const DyadicRational target(mpz_class(1), static_cast<unsigned>(m));
  return (d - target).abs();
}

// DFS over ascending tails extending `prefix_words` (the intersection
// accumulator); every visited node is one X of size depth+base_size.
void intersection_dfs(const DenseSubset& a0, std::vector<uint64_t>& acc,
                      std::vector<PointMask>& X, uint32_t next_min,
                      unsigned k, Worst& worst, uint64_t& checked) {
  const unsigned width = a0.width();
  uint64_t count = 0;
  for (uint64_t w : acc) count += std::popcount(w);
  worst.offer(size_deviation(count, width, X.size()),
              DyadicRational::ratio(mpz_class(static_cast<unsigned long>(count)), width), X);
  ++checked;
  if (X.size() >= k) return;
  const uint64_t npoints = a0.universe().point_count();
  const auto& src = a0.words();
  std::vector<uint64_t> child(acc.size());
  for (uint64_t x = next_min; x < npoints; ++x) {
    const size_t xhi = static_cast<size_t>(x >> 6);
    const unsigned xlo = static_cast<unsigned>(x & 63u);
    for (size_t w = 0; w < acc.size(); ++w)
      child[w] = acc[w] & detail::xor_shuffle_word(src[w ^ xhi], xlo);
    X.push_back(PointMask(static_cast<uint32_t>(x)));
    std::swap(acc, child);
    intersection_dfs(a0, acc, X, static_cast<uint32_t>(x + 1), k, worst,
                     checked);
    std::swap(acc, child);
    X.pop_back();
  }
}

// Specialized exhaustive sweep for X = {0, x}: hoists the in-word shuffle
// so the inner loop is pure load/and/popcount.
void pair_sweep(const DenseSubset& a0, Worst& worst, uint64_t& checked) {
  const unsigned width = a0.width();
  const auto& base = a0.words();
  const size_t nwords = base.size();
  const uint64_t npoints = a0.universe().point_count();
  const unsigned lo_span = npoints < 64 ? static_cast<unsigned>(npoints) : 64u;

  struct ChunkWorst {
    uint64_t best_dev2 = 0;  // |2^m * count - 2^(width-m)| scaled; see below
    bool set = false;
    uint64_t x = 0;
    uint64_t count = 0;
  };
  // Deviation for m=2 is |count/2^w - 1/4| = |4c - 2^w| / 2^(w+2); compare
  // by the integer |4c - 2^w|, ties by smaller x.
  std::vector<ChunkWorst> per_lo(lo_span);

  parallel_chunks(
      lo_span,
      [&](unsigned, uint64_t lo_begin, uint64_t lo_end) {
        for (uint64_t xlo = lo_begin; xlo < lo_end; ++xlo) {
          const std::vector<uint64_t> shuffled =
              shuffle_words(base, static_cast<unsigned>(xlo));
          ChunkWorst cw;
          for (size_t xhi = 0; xhi < nwords; ++xhi) {
            const uint64_t x = static_cast<uint64_t>(xhi) << 6 | xlo;
            if (x == 0) continue;  // x = 0 is the X = {0} case
            uint64_t c = 0;
            for (size_t w = 0; w < nwords; ++w)
              c += std::popcount(base[w] & shuffled[w ^ xhi]);
            const int64_t signed_dev =
                4 * static_cast<int64_t>(c) - static_cast<int64_t>(npoints);
            const uint64_t dev2 = static_cast<uint64_t>(
                signed_dev < 0 ? -signed_dev : signed_dev);
            if (!cw.set || dev2 > cw.best_dev2) {
              cw.set = true;
              cw.best_dev2 = dev2;
              cw.x = x;
              cw.count = c;
            }
          }
          per_lo[xlo] = cw;
        }
      },
      [](unsigned) {});

  for (unsigned xlo = 0; xlo < lo_span; ++xlo) {
    const ChunkWorst& cw = per_lo[xlo];
    if (!cw.set) continue;
    checked += (nwords - (xlo == 0 ? 1 : 0));
    std::vector<PointMask> X{PointMask(0),
                             PointMask(static_cast<uint32_t>(cw.x))};
    worst.offer(
        DyadicRational(mpz_class(static_cast<unsigned long>(cw.best_dev2)),
                       width + 2),
        DyadicRational::ratio(mpz_class(static_cast<unsigned long>(cw.count)),
                              width),
        X);
  }
}

}  // namespace

uint64_t intersection_work_estimate(unsigned width, unsigned k,
                                    bool reduce_translation) {
  // Number of enumerated X times one dense sweep of 2^width points each.
  const long double npoints = std::exp2(static_cast<long double>(width));
  long double nodes = 0;
  long double cur = 1;  // C(npoints - 1, m - 1) running value
  const long double pool = reduce_translation ? npoints - 1 : npoints;
  for (unsigned m = 1; m <= k; ++m) {
    // reduced: C(npoints-1, m-1); full: C(npoints, m)
    if (reduce_translation) {
      if (m > 1) cur = cur * (pool - (m - 2)) / static_cast<long double>(m - 1);
    } else {
      cur = m == 1 ? pool : cur * (pool - (m - 1)) / static_cast<long double>(m);
    }
    nodes += cur;
  }
  const long double ops = nodes * npoints;
  if (ops > 9e18L) return ~uint64_t{0};
  return static_cast<uint64_t>(ops);
}

IntersectionReport verify_intersections(const Partition& p, unsigned k,
                                        const mpq_class& delta,
                                        const VerifySpec& spec) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (delta <= 0) throw std::invalid_argument("delta must be > 0");
  const unsigned width = p.width();
  IntersectionReport rep;
  rep.k = k;
  rep.delta = delta;
  rep.mode = spec.mode;
  rep.reduce_translation = spec.reduce_translation;
  rep.samples = spec.samples;
  rep.sample_seed = spec.sample_seed;

  Worst worst;
  uint64_t checked = 0;
  const DenseSubset& a0 = p.a0();

  if (spec.mode == EnumerationMode::kExhaustive) {
    const uint64_t est = intersection_work_estimate(width, k,
                                                    spec.reduce_translation);
    if (est > spec.budget) throw budget_error(est, spec.budget);
    if (spec.reduce_translation) {
      // X always contains 0; the root of the DFS is X = {0} with
      // accumulator a0 itself.
      std::vector<uint64_t> acc = a0.words();
      std::vector<PointMask> X{PointMask(0)};
      if (k == 2) {
        worst.offer(size_deviation(a0.cardinality(), width, 1), a0.density(),
                    X);
        ++checked;
        pair_sweep(a0, worst, checked);
      } else {
        intersection_dfs(a0, acc, X, 1, k, worst, checked);
      }
    } else {
      const uint64_t npoints = a0.universe().point_count();
      // Full enumeration: DFS from every starting point.
      for (uint64_t x0 = 0; x0 < npoints; ++x0) {
        DenseSubset first = a0.translate(PointMask(static_cast<uint32_t>(x0)));
        std::vector<uint64_t> acc0 = first.words();
        std::vector<PointMask> X0{PointMask(static_cast<uint32_t>(x0))};
        intersection_dfs(a0, acc0, X0, static_cast<uint32_t>(x0 + 1), k, worst,
                         checked);
      }
    }
  } else {
    if (spec.samples == 0)
      throw std::invalid_argument("sampled mode requires samples > 0");
    Rng rng(spec.sample_seed);
    for (uint64_t i = 0; i < spec.samples; ++i) {
      std::vector<uint32_t> pts = rng.distinct_points(p.universe(), k);
      std::sort(pts.begin(), pts.end());
      std::vector<PointMask> X;
      X.reserve(pts.size());
      for (uint32_t q : pts) X.push_back(PointMask(q));
      const uint64_t c = intersect_translates_count(a0, X);
      worst.offer(size_deviation(c, width, X.size()),
                  DyadicRational::ratio(mpz_class(static_cast<unsigned long>(c)), width),
                  X);
      ++checked;
    }
  }

  rep.checked = checked;
  rep.worst_X = worst.X;
  rep.worst_intersection_density = worst.density;
  rep.worst_deviation = worst.deviation;
  rep.pass = worst.set && worst.deviation < delta;
  return rep;
}

EvenSplitReport even_split_report(const Partition& p, const DenseSubset& U,
                                  const mpq_class& delta) {
  if (!(p.universe() == U.universe()))
    throw std::invalid_argument("witness set universe mismatch");
  if (U.empty()) throw std::invalid_argument("witness set must be non-empty");
  if (delta <= 0) throw std::invalid_argument("delta must be > 0");

  const unsigned width = p.width();
  const uint64_t npoints = p.universe().point_count();
  const size_t nwords = U.word_count();
  const auto& uw = U.words();
  const auto& a0w = p.a0().words();
  const uint64_t ucard = U.cardinality();

  // s in T_U  <=>  |2c(s) - |U|| / 2^(width+1) < delta
  //           <=>  |2c(s) - |U|| * delta_den < delta_num * 2^(width+1).
  const mpz_class rhs = delta.get_num() << (width + 1);
  const mpz_class& dden = delta.get_den();

  std::vector<uint64_t> good_words(nwords, 0);
  const unsigned lo_span = npoints < 64 ? static_cast<unsigned>(npoints) : 64u;

  struct LoResult {
    std::vector<uint64_t> good;
    uint64_t worst_dev2 = 0;
    uint32_t worst_shift = 0;
    bool set = false;
  };
  std::vector<LoResult> per_lo(lo_span);

  parallel_chunks(
      lo_span,
      [&](unsigned, uint64_t lo_begin, uint64_t lo_end) {
        for (uint64_t slo = lo_begin; slo < lo_end; ++slo) {
          LoResult r;
          r.good.assign(nwords, 0);
          const std::vector<uint64_t> shuffled =
              shuffle_words(a0w, static_cast<unsigned>(slo));
          for (size_t shi = 0; shi < nwords; ++shi) {
            uint64_t c = 0;
            for (size_t w = 0; w < nwords; ++w)
              c += std::popcount(uw[w] & shuffled[w ^ shi]);
            const int64_t sd =
                2 * static_cast<int64_t>(c) - static_cast<int64_t>(ucard);
            const uint64_t dev2 = static_cast<uint64_t>(sd < 0 ? -sd : sd);
            if (mpz_class(static_cast<unsigned long>(dev2)) * dden < rhs)
              r.good[shi] |= uint64_t{1} << slo;
            if (!r.set || dev2 > r.worst_dev2) {
              r.set = true;
              r.worst_dev2 = dev2;
              r.worst_shift = static_cast<uint32_t>(shi << 6 | slo);
            }
          }
          per_lo[slo] = std::move(r);
        }
      },
      [](unsigned) {});

  uint64_t worst_dev2 = 0;
  uint32_t worst_shift = 0;
  bool worst_set = false;
  for (unsigned slo = 0; slo < lo_span; ++slo) {
    const LoResult& r = per_lo[slo];
    for (size_t w = 0; w < nwords; ++w) good_words[w] |= r.good[w];
    if (r.set && (!worst_set || r.worst_dev2 > worst_dev2 ||
                  (r.worst_dev2 == worst_dev2 && r.worst_shift < worst_shift))) {
      worst_set = true;
      worst_dev2 = r.worst_dev2;
      worst_shift = r.worst_shift;
    }
  }

  EvenSplitReport rep;
  rep.u_density = U.density();
  rep.delta = delta;
  rep.good_shifts = DenseSubset::from_words(p.universe(), std::move(good_words));
  rep.good_density = rep.good_shifts.density();
  rep.worst_deviation =
      DyadicRational(mpz_class(static_cast<unsigned long>(worst_dev2)), width + 1);
  rep.worst_shift = worst_shift;
  // pass  <=>  |T_U| / 2^width > 1 - delta.
  rep.pass = rep.good_density > mpq_class(1) - delta;
  return rep;
}

FindPartitionOutcome find_partition(const IndexSet& universe, SampleMode smode,
                                    unsigned k, const mpq_class& delta,
                                    const std::vector<DenseSubset>& witnesses,
                                    const mpq_class& delta2,
                                    const VerifySpec& spec, uint64_t max_tries,
                                    uint64_t seed) {
  if (max_tries < 1) throw std::invalid_argument("max_tries must be >= 1");
  FindPartitionOutcome out;
  out.witness_failures.assign(witnesses.size(), 0);
  for (uint64_t attempt = 0; attempt < max_tries; ++attempt) {
    ++out.attempts;
    Partition p =
        sample_partition(universe, smode, derive_seed(seed, attempt));
    IntersectionReport c1 = verify_intersections(p, k, delta, spec);
    if (!c1.pass) {
      ++out.intersection_failures;
      continue;
    }
    bool all_ok = true;
    std::vector<EvenSplitReport> reps;
    reps.reserve(witnesses.size());
    for (size_t i = 0; i < witnesses.size(); ++i) {
      EvenSplitReport r = even_split_report(p, witnesses[i], delta2);
      if (!r.pass) {
        ++out.witness_failures[i];
        all_ok = false;
      }
      reps.push_back(std::move(r));
    }
    if (!all_ok) {
      ++out.split_failures;
      continue;
    }
    out.found = true;
    out.partition = std::move(p);
    out.intersection_report = std::move(c1);
    out.witness_reports = std::move(reps);
    return out;
  }
  return out;
}

}  // namespace cubelab
