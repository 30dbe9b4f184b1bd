#pragma once

#include <cstdint>
#include <gmpxx.h>
#include <memory>
#include <string>

#include "cubelab/dyadic.hpp"

namespace cubelab {

const char* artifact_version();

/// Builds the machine-readable run report. The "verdicts" subtree carries
/// only exact values (booleans, integers, rational strings, dyadic pairs);
/// floats are confined to the "log_bounds" subtree. Serialization is
/// canonical and embeds (config hash, seed, version), so identical runs
/// produce byte-identical reports; wall-clock timing therefore stays out
/// of the file.
class ReportBuilder {
 public:
  explicit ReportBuilder(std::string command);
  ~ReportBuilder();
  ReportBuilder(ReportBuilder&&) noexcept;
  ReportBuilder& operator=(ReportBuilder&&) noexcept;

  void config_str(const std::string& key, const std::string& value);
  void config_uint(const std::string& key, uint64_t value);
  void config_rational(const std::string& key, const mpq_class& value);
  void config_bool(const std::string& key, bool value);
  void seed(uint64_t seed);

  /// Dotted paths create nested objects: "clause1.worst.deviation".
  void verdict_bool(const std::string& path, bool v);
  void verdict_uint(const std::string& path, uint64_t v);
  void verdict_int(const std::string& path, int64_t v);
  void verdict_str(const std::string& path, const std::string& v);
  void verdict_rational(const std::string& path, const mpq_class& v);
  void verdict_dyadic(const std::string& path, const DyadicRational& v);
  /// Splices pre-serialized JSON (from serialize.hpp emitters) into the
  /// verdict tree. The fragment must itself be float-free; this is checked.
  void verdict_fragment(const std::string& path, const std::string& json_text);

  void log_bound(const std::string& name, long double value);
  void note(const std::string& name, const std::string& text);
  void pass(bool overall);

  std::string finish();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Audit: true iff the report's verdicts subtree contains no JSON float.
bool report_verdicts_exact(const std::string& report_json);
/// The embedded config hash, for reproducibility checks.
std::string report_config_hash(const std::string& report_json);

}  // namespace cubelab
