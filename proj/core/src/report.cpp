#include "cubelab/report.hpp"

#include <cstdio>
#include <stdexcept>

#include <json.hpp>

namespace cubelab {

namespace {

using nlohmann::json;

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex64(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

json* descend(json& root, const std::string& path) {
  json* cur = &root;
  size_t pos = 0;
  while (true) {
    const size_t dot = path.find('.', pos);
    const std::string key = path.substr(pos, dot - pos);
    if (key.empty()) throw std::invalid_argument("empty report path segment");
    if (dot == std::string::npos) {
      cur = &(*cur)[key];
      return cur;
    }
    cur = &(*cur)[key];
    pos = dot + 1;
  }
}

bool float_free(const json& j) {
  if (j.is_number_float()) return false;
  if (j.is_object() || j.is_array())
    for (const auto& item : j)
      if (!float_free(item)) return false;
  return true;
}

}  // namespace

const char* artifact_version() {
#ifdef CUBELAB_VERSION_STRING
  return CUBELAB_VERSION_STRING;
#else
  return "0.0.0";
#endif
}

struct ReportBuilder::Impl {
  json config = json::object();
  json verdicts = json::object();
  json log_bounds = json::object();
  json notes = json::object();
  std::string command;
  uint64_t seed = 0;
  bool pass = false;
  bool pass_set = false;
};

ReportBuilder::ReportBuilder(std::string command) : impl_(new Impl) {
  impl_->command = std::move(command);
}
ReportBuilder::~ReportBuilder() = default;
ReportBuilder::ReportBuilder(ReportBuilder&&) noexcept = default;
ReportBuilder& ReportBuilder::operator=(ReportBuilder&&) noexcept = default;

void ReportBuilder::config_str(const std::string& key, const std::string& v) {
  impl_->config[key] = v;
}
void ReportBuilder::config_uint(const std::string& key, uint64_t v) {
  impl_->config[key] = v;
}
void ReportBuilder::config_rational(const std::string& key,
                                    const mpq_class& v) {
  impl_->config[key] = rational_str(v);
}
void ReportBuilder::config_bool(const std::string& key, bool v) {
  impl_->config[key] = v;
}
void ReportBuilder::seed(uint64_t s) { impl_->seed = s; }

void ReportBuilder::verdict_bool(const std::string& path, bool v) {
  *descend(impl_->verdicts, path) = v;
}
void ReportBuilder::verdict_uint(const std::string& path, uint64_t v) {
  *descend(impl_->verdicts, path) = v;
}
void ReportBuilder::verdict_int(const std::string& path, int64_t v) {
  *descend(impl_->verdicts, path) = v;
}
void ReportBuilder::verdict_str(const std::string& path,
                                const std::string& v) {
  *descend(impl_->verdicts, path) = v;
}
void ReportBuilder::verdict_rational(const std::string& path,
                                     const mpq_class& v) {
  *descend(impl_->verdicts, path) = rational_str(v);
}
void ReportBuilder::verdict_dyadic(const std::string& path,
                                   const DyadicRational& v) {
  *descend(impl_->verdicts, path) =
      json{{"num", v.numerator().get_str()}, {"log2_den", v.log2_denominator()}};
}
void ReportBuilder::verdict_fragment(const std::string& path,
                                     const std::string& json_text) {
  json fragment = json::parse(json_text);
  if (!float_free(fragment))
    throw std::invalid_argument("verdict fragment contains a float");
  *descend(impl_->verdicts, path) = std::move(fragment);
}

void ReportBuilder::log_bound(const std::string& name, long double value) {
  impl_->log_bounds[name] = static_cast<double>(value);
}
void ReportBuilder::note(const std::string& name, const std::string& text) {
  impl_->notes[name] = text;
}
void ReportBuilder::pass(bool overall) {
  impl_->pass = overall;
  impl_->pass_set = true;
}

std::string ReportBuilder::finish() {
  if (!float_free(impl_->verdicts))
    throw std::logic_error("float leaked into the verdict tree");
  json cfg = impl_->config;
  cfg["command"] = impl_->command;
  cfg["seed"] = impl_->seed;
  cfg["version"] = artifact_version();
  json report{{"config", cfg},
              {"config_hash", hex64(fnv1a(cfg.dump()))},
              {"verdicts", impl_->verdicts},
              {"log_bounds", impl_->log_bounds},
              {"notes", impl_->notes}};
  if (impl_->pass_set) report["pass"] = impl_->pass;
  return report.dump(2) + "\n";
}

bool report_verdicts_exact(const std::string& report_json) {
  const json j = json::parse(report_json);
  if (!j.contains("verdicts")) return false;
  return float_free(j.at("verdicts"));
}

std::string report_config_hash(const std::string& report_json) {
  return json::parse(report_json).at("config_hash").get<std::string>();
}

}  // namespace cubelab
