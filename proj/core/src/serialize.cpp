#include "cubelab/serialize.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "cubelab/dyadic.hpp"

namespace cubelab {

namespace {

using nlohmann::json;

json dyadic_json(const DyadicRational& d) {
  return json{{"num", d.numerator().get_str()},
              {"log2_den", d.log2_denominator()}};
}

DyadicRational dyadic_from(const json& j) {
  return DyadicRational(mpz_class(j.at("num").get<std::string>()),
                        j.at("log2_den").get<unsigned>());
}

json subset_json(const DenseSubset& s) {
  return json{{"width", s.width()},
              {"cardinality", s.cardinality()},
              {"hex", s.to_hex()}};
}

DenseSubset subset_from(const json& j) {
  const unsigned width = j.at("width").get<unsigned>();
  IndexSet u(width, "", IndexSet::kAbsoluteWidthCap);
  DenseSubset s = DenseSubset::from_hex(u, j.at("hex").get<std::string>());
  if (j.contains("cardinality") &&
      j.at("cardinality").get<uint64_t>() != s.cardinality())
    throw std::invalid_argument("subset cardinality does not match its bits");
  return s;
}

json partition_json(const Partition& p) {
  return json{{"width", p.width()},
              {"a0", subset_json(p.a0())},
              {"a1", subset_json(p.a1())}};
}

Partition partition_from(const json& j) {
  DenseSubset a0 = subset_from(j.at("a0"));
  if (j.contains("a1")) {
    DenseSubset a1 = subset_from(j.at("a1"));
    return Partition(std::move(a0), std::move(a1));
  }
  return Partition::from_a0(std::move(a0));
}

json schedule_json(const ScheduleRow& r) {
  return json{{"k", r.k},
              {"epsilon", rational_str(r.epsilon)},
              {"delta", rational_str(r.delta)}};
}

ScheduleRow schedule_from(const json& j) {
  return ScheduleRow{j.at("k").get<unsigned>(),
                     parse_rational(j.at("epsilon").get<std::string>()),
                     parse_rational(j.at("delta").get<std::string>())};
}

std::string dump(const json& j) { return j.dump(2); }

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("bad JSON: ") + e.what());
  }
}

}  // namespace

std::string subset_to_json(const DenseSubset& s) { return dump(subset_json(s)); }

DenseSubset subset_from_json(const std::string& text) {
  return subset_from(parse(text));
}

std::string partition_to_json(const Partition& p) {
  return dump(partition_json(p));
}

Partition partition_from_json(const std::string& text) {
  return partition_from(parse(text));
}

std::string distribution_to_json(const Distribution& d) {
  json masses = json::array();
  for (uint32_t s = 0; s < d.domain().point_count(); ++s) {
    const DyadicRational m = d.mass(s);
    masses.push_back(json::array(
        {m.numerator().get_str(), m.log2_denominator()}));
  }
  return dump(json{{"width", d.width()}, {"masses", masses}});
}

Distribution distribution_from_json(const std::string& text) {
  const json j = parse(text);
  const unsigned width = j.at("width").get<unsigned>();
  IndexSet domain(width, "", IndexSet::kAbsoluteWidthCap);
  const json& masses = j.at("masses");
  if (masses.size() != domain.point_count())
    throw std::invalid_argument("mass array length != 2^width");
  // Renormalize all pairs to one common denominator exponent.
  unsigned max_den = width;
  std::vector<std::pair<mpz_class, unsigned>> raw;
  raw.reserve(masses.size());
  for (const json& m : masses) {
    mpz_class num(m.at(0).get<std::string>());
    const unsigned den = m.at(1).get<unsigned>();
    if (den > 62) throw std::invalid_argument("log2 denominator above 62");
    raw.emplace_back(std::move(num), den);
    if (den > max_den) max_den = den;
  }
  std::vector<int64_t> nums;
  nums.reserve(raw.size());
  for (auto& [num, den] : raw) {
    mpz_class scaled = num << (max_den - den);
    if (!scaled.fits_slong_p())
      throw std::invalid_argument("mass numerator too large");
    nums.push_back(scaled.get_si());
  }
  return Distribution(domain, max_den, std::move(nums));
}

std::string tower_to_json(const BlockTower& t) {
  json blocks = json::array();
  json schedule = json::array();
  for (size_t n = 0; n < t.depth(); ++n) {
    blocks.push_back(json{{"width", t.block_width(n)},
                          {"a0_hex", t.partition(n).a0().to_hex()}});
    schedule.push_back(schedule_json(t.schedule(n)));
  }
  json report = json::array();
  for (const ConstraintCheck& c : t.constraint_report())
    report.push_back(json{{"name", c.name},
                          {"block", c.block},
                          {"holds", c.holds},
                          {"detail", c.detail}});
  return dump(json{{"blocks", blocks},
                   {"schedule", schedule},
                   {"constraint_report", report}});
}

BlockTower tower_from_json(const std::string& text) {
  const json j = parse(text);
  std::vector<Partition> parts;
  std::vector<ScheduleRow> schedule;
  for (const json& b : j.at("blocks")) {
    IndexSet u(b.at("width").get<unsigned>());
    parts.push_back(Partition::from_a0(
        DenseSubset::from_hex(u, b.at("a0_hex").get<std::string>())));
  }
  for (const json& s : j.at("schedule")) schedule.push_back(schedule_from(s));
  return BlockTower(std::move(parts), std::move(schedule));
}

std::string cylinder_to_json(const CylinderUnion& u) {
  return dump(json{{"depth", u.depth}, {"members", subset_json(u.members)}});
}

CylinderUnion cylinder_from_json(const std::string& text) {
  const json j = parse(text);
  return CylinderUnion{j.at("depth").get<unsigned>(),
                       subset_from(j.at("members"))};
}

std::string intersection_report_to_json(const IntersectionReport& r) {
  json wx = json::array();
  for (PointMask x : r.worst_X) wx.push_back(x.bits);
  return dump(json{
      {"k", r.k},
      {"delta", rational_str(r.delta)},
      {"mode", r.mode == EnumerationMode::kExhaustive ? "exhaustive" : "sampled"},
      {"reduce_translation", r.reduce_translation},
      {"samples", r.samples},
      {"sample_seed", r.sample_seed},
      {"checked", r.checked},
      {"worst_X", wx},
      {"worst_intersection_density", dyadic_json(r.worst_intersection_density)},
      {"worst_deviation", dyadic_json(r.worst_deviation)},
      {"pass", r.pass}});
}

std::string even_split_report_to_json(const EvenSplitReport& r,
                                      bool include_good_shifts) {
  json j{{"u_density", dyadic_json(r.u_density)},
         {"delta", rational_str(r.delta)},
         {"good_density", dyadic_json(r.good_density)},
         {"worst_deviation", dyadic_json(r.worst_deviation)},
         {"worst_shift", r.worst_shift},
         {"pass", r.pass}};
  if (include_good_shifts) j["good_shifts"] = subset_json(r.good_shifts);
  return dump(j);
}

std::string dist_certificate_to_json(const DistributionCertificate& c) {
  json bins = json::array();
  for (const BinSummary& b : c.bins) {
    json jb{{"index", b.index},
            {"coefficient", rational_str(b.coefficient)},
            {"size", b.size},
            {"kept", b.kept}};
    if (b.kept) {
      jb["good_density"] = dyadic_json(b.good_density);
      jb["density_pass"] = b.density_pass;
    }
    bins.push_back(std::move(jb));
  }
  return dump(json{
      {"delta", rational_str(c.delta)},
      {"epsilon", rational_str(c.epsilon)},
      {"ell", c.ell},
      {"bins", bins},
      {"kept", c.kept},
      {"mbar", dyadic_json(c.mbar)},
      {"mbar_prime", rational_str(c.mbar_prime)},
      {"discarded_mass", dyadic_json(c.discarded_mass)},
      {"binning_gap", rational_str(c.binning_gap)},
      {"split_slack", rational_str(c.split_slack)},
      {"certified_error", rational_str(c.certified_error)},
      {"headline", rational_str(c.headline)},
      {"error_within_headline", c.error_within_headline},
      {"T", subset_json(c.T)},
      {"T_density", dyadic_json(c.T_density)},
      {"all_bins_passed", c.all_bins_passed},
      {"statement_density_ok", c.statement_density_ok},
      {"proof_density_ok", c.proof_density_ok},
      {"checked_worst_deviation", dyadic_json(c.checked_worst_deviation)}});
}

std::string product_certificate_to_json(const ProductCertificate& c) {
  json stages = json::array();
  for (const LedgerStage& s : c.ledger.stages)
    stages.push_back(json{{"stage", s.stage},
                          {"carry", rational_str(s.carry)},
                          {"stage_term", rational_str(s.stage_term)},
                          {"schedule_term", rational_str(s.schedule_term)},
                          {"error_after", rational_str(s.error_after)},
                          {"live_conditionals", s.live_conditionals},
                          {"max_conditional_error",
                           rational_str(s.max_conditional_error)},
                          {"stage_density", dyadic_json(s.stage_density)}});
  json patterns = json::array();
  for (const PatternBound& p : c.pattern_bounds)
    patterns.push_back(json{{"pattern", p.pattern},
                            {"product_size", p.product_size.get_str()},
                            {"bound", rational_str(p.bound)}});
  json per_level = json::array();
  for (const DyadicRational& d : c.trim.per_level_removed)
    per_level.push_back(dyadic_json(d));
  json j{{"first_block", c.first_block},
         {"last_block", c.last_block},
         {"j_density", dyadic_json(c.j_density)},
         {"hypothesis_density_ok", c.hypothesis_density_ok},
         {"trim",
          json{{"removed_mass", dyadic_json(c.trim.removed_mass)},
               {"per_level_removed", per_level},
               {"fixpoint_rounds", c.trim.fixpoint_rounds},
               {"eps_budget_sum", rational_str(c.trim.eps_budget_sum)},
               {"within_eps_sum", c.trim.within_eps_sum},
               {"within_two_eps_head", c.trim.within_two_eps_head},
               {"eps_halving_ordered", c.trim.eps_halving_ordered}}},
         {"degenerate_empty", c.degenerate_empty},
         {"ledger",
          json{{"stages", stages},
               {"final_error", rational_str(c.ledger.final_error)}}},
         {"T", subset_json(c.T)},
         {"T_density", dyadic_json(c.T_density)},
         {"density_loss", rational_str(c.density_loss)},
         {"pattern_bounds", patterns},
         {"max_bound", rational_str(c.max_bound)},
         {"verified_all_patterns", c.verified_all_patterns},
         {"verify_worst_deviation", rational_str(c.verify_worst_deviation)}};
  if (c.ledger.headline_delta)
    j["ledger"]["headline_delta"] = rational_str(*c.ledger.headline_delta);
  if (c.density_within_headline)
    j["density_within_headline"] = *c.density_within_headline;
  return dump(j);
}

std::string covering_witness_to_json(const CoveringWitness& w) {
  json levels = json::array();
  for (unsigned n = 0; n < w.depth; ++n) {
    json lvl = json::array();
    for (const PrefixData& pd : w.levels[n])
      lvl.push_back(json{{"prefix", pd.prefix},
                         {"u_set", subset_json(pd.u_set)},
                         {"z_set", subset_json(pd.z_set)},
                         {"z_bound_ok", pd.z_bound_ok}});
    levels.push_back(std::move(lvl));
  }
  json zs = json::array();
  for (const DenseSubset& z : w.z_unions) zs.push_back(subset_json(z));
  return dump(json{{"depth", w.depth}, {"levels", levels}, {"z_unions", zs}});
}

ProductCertificateSummary product_certificate_summary_from_json(
    const std::string& text) {
  const json j = parse(text);
  return ProductCertificateSummary{
      j.at("first_block").get<size_t>(), j.at("last_block").get<size_t>(),
      subset_from(j.at("T")),
      parse_rational(j.at("max_bound").get<std::string>())};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

}  // namespace cubelab
