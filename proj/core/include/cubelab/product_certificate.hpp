#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cubelab/dist_certificate.hpp"
#include "cubelab/slice.hpp"

namespace cubelab {

/// One inductive stage of the exact error recursion
/// error_{i+1} = error_i / 2 + (live conditionals hitting the product)
///               * max conditional error / 2^(prefix width).
/// The coarse schedule term 2^(prefix width) * delta is recorded for
/// comparison, never used in the bound.
struct LedgerStage {
  size_t stage = 0;
  mpq_class carry;
  mpq_class stage_term;
  mpq_class schedule_term;
  mpq_class error_after;
  uint64_t live_conditionals = 0;
  mpq_class max_conditional_error;
  DyadicRational stage_density;  // density of the stage's intersection set
};

struct ErrorLedger {
  std::vector<LedgerStage> stages;
  mpq_class final_error;  // error_n for the trimmed set
  /// delta_(k-1) when block k has a predecessor; the lemma's headline.
  std::optional<mpq_class> headline_delta;
};

struct PatternBound {
  uint32_t pattern = 0;     // bit j = chosen side of block k+j
  mpz_class product_size;   // |prod_j a^(pattern j)|
  mpq_class bound;          // certified deviation bound for the original J
};

/// Certificate that every shift in T splits the original J evenly against
/// every signed block product: for s in T and pattern b,
/// | |(J+s) ∩ M_b| / |M_b| - |J| / 2^|K| |  <=  bound(b) <= max_bound.
struct ProductCertificate {
  size_t first_block = 0;
  size_t last_block = 0;
  DyadicRational j_density;
  bool hypothesis_density_ok = false;  // |J|/2^|K| >= epsilon_k, recorded
  TrimResult trim;
  bool degenerate_empty = false;  // nothing survived the trim
  ErrorLedger ledger;
  DenseSubset T;
  DyadicRational T_density;
  std::vector<DyadicRational> stage_densities;
  /// T_density equals the product of stage densities exactly; the loss is
  /// 1 minus that product.
  mpq_class density_loss;
  std::optional<bool> density_within_headline;  // T_density > 1 - delta_(k-1)
  std::vector<PatternBound> pattern_bounds;
  mpq_class max_bound;
  bool verified_all_patterns = false;
  mpq_class verify_worst_deviation;
};

struct ProductOptions {
  /// Stage split tolerances; defaults to each block's schedule delta.
  std::vector<mpq_class> stage_deltas;
  /// Trim thresholds; defaults to each block's schedule epsilon.
  std::vector<mpq_class> trim_eps;
  /// Run the full (all shifts, all patterns) sweep before returning.
  bool final_verify = true;
  CertifyOptions cert;
};

struct BuildProductOutcome {
  bool ok = false;
  std::string failure;
  size_t failed_stage = 0;
  uint32_t failed_conditional = 0;
  std::optional<ProductCertificate> certificate;
};

BuildProductOutcome certify_shifted_products(const DenseSubset& J,
                                             const BlockSlice& slice,
                                             const ProductOptions& opt = {});

/// Independent exact sweep over shifts and sign patterns. An empty
/// `patterns` list means all 2^(block count) of them.
struct ProductSweepReport {
  bool vacuous = false;
  uint32_t worst_shift = 0;
  uint32_t worst_pattern = 0;
  mpq_class worst_deviation;
  uint64_t checked = 0;
  bool pass = false;
};

ProductSweepReport verify_shifted_products(const DenseSubset& J,
                                           const BlockSlice& slice,
                                           const DenseSubset& T,
                                           const mpq_class& bound,
                                           std::vector<uint32_t> patterns = {});

/// Ratio ledger for a family of disjoint consecutive slices: group g
/// contributes r_g = |(J_g + z|K_g) ∩ M_(x|g)| / |M_(x|g)|. When a
/// certificate set is supplied and z lands in it, r_g is checked against
/// |J_g|/2^|K_g| + bound_g.
struct RatioGroupSpec {
  size_t first_block;
  size_t last_block;
  const DenseSubset* J = nullptr;
  const DenseSubset* T = nullptr;  // optional certificate set
  mpq_class cert_bound;
};

struct GroupRatio {
  size_t index = 0;
  mpq_class j_density;
  mpq_class ratio;
  mpq_class partial_sum;
  bool z_in_cert = false;
  bool bound_checked = false;
  bool bound_ok = false;
  bool normalized = false;  // |J_g|/2^|K_g| == 2^-g (reported, not enforced)
};

struct GroupRatioReport {
  std::vector<GroupRatio> groups;
  mpq_class total;
};

GroupRatioReport group_ratio_report(const BlockTower& tower,
                                    const std::vector<RatioGroupSpec>& groups,
                                    uint32_t z, FiberCode x,
                                    bool enforce_normalization = false);

}  // namespace cubelab
