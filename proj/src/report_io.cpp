#include "posnorm/report_io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <stdexcept>

namespace posnorm {

namespace {

using nlohmann::json;

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<std::string> exponent_strings(const std::vector<Exponent>& values) {
  std::vector<std::string> out;
  for (const Exponent& e : values) out.push_back(e.to_string());
  return out;
}

std::vector<Exponent> exponents_from(const json& node, const char* field) {
  if (!node.is_array()) throw std::invalid_argument(std::string(field) + " must be an array");
  std::vector<Exponent> out;
  for (const auto& v : node) {
    if (v.is_string()) {
      out.push_back(Exponent::parse(v.get<std::string>()));
    } else if (v.is_number()) {
      out.push_back(Exponent::from_double(v.get<double>()));
    } else {
      throw std::invalid_argument(std::string(field) + " entries must be strings or numbers");
    }
  }
  return out;
}

}  // namespace

double round_significant(double x) {
  if (!std::isfinite(x) || x == 0) return x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

json to_json(const NormEstimate& est) {
  json witness = json::array();
  for (double v : est.witness) witness.push_back(round_significant(v));
  return {
      {"value", est.value},
      {"method", std::string(to_string(est.method))},
      {"iterations", est.iterations},
      {"converged", est.converged},
      {"lower", est.lower},
      {"upper", finite_or_null(est.upper)},
      {"witness", witness},
  };
}

json to_json(const Factorization& f) {
  json d = json::array();
  for (double v : f.d) d.push_back(round_significant(v));
  return {
      {"p", f.pair.p.to_string()},
      {"q", f.pair.q.to_string()},
      {"r", f.pair.r.to_string()},
      {"d", d},
      {"objective", f.objective},
      {"norm", finite_or_null(f.norm)},
      {"gap", finite_or_null(f.gap)},
      {"iterations", f.iterations},
      {"converged", f.converged},
      {"certified", f.certified},
  };
}

json to_json(const InequalityRecord& rec) {
  return {
      {"theorem", std::string(to_string(rec.kind))},
      {"matrix_id", rec.matrix_id},
      {"m", rec.rows},
      {"n", rec.cols},
      {"p", rec.pair.p.to_string()},
      {"q", rec.pair.q.to_string()},
      {"r", rec.pair.r.to_string()},
      {"s", rec.pair.s.to_string()},
      {"lhs", rec.lhs},
      {"rhs", rec.rhs},
      {"ratio", finite_or_null(rec.ratio)},
      {"pass", rec.pass},
  };
}

json config_to_json(const SuiteConfig& config) {
  json dists = json::array();
  for (const auto& d : config.distributions) dists.push_back(to_string(d));
  return {
      {"p_values", exponent_strings(config.p_values)},
      {"q_values", exponent_strings(config.q_values)},
      {"instances", config.instances},
      {"min_rows", config.min_rows},
      {"max_rows", config.max_rows},
      {"min_cols", config.min_cols},
      {"max_cols", config.max_cols},
      {"distributions", dists},
      {"identity_sizes", config.identity_sizes},
      {"master_seed", config.master_seed},
      {"slack", config.slack},
      {"duality_tolerance", config.duality_tolerance},
      {"check_duality", config.check_duality},
      {"escalation_resolution", config.escalation_resolution},
      {"norm",
       {{"tol", config.norm.tol},
        {"max_iter", config.norm.max_iter},
        {"multistarts", config.norm.multistarts},
        {"seed", config.norm.seed}}},
  };
}

SuiteConfig config_from_json(const json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("suite config must be a JSON object");
  SuiteConfig cfg = SuiteConfig::defaults();
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "p_values") {
        cfg.p_values = exponents_from(value, "p_values");
      } else if (key == "q_values") {
        cfg.q_values = exponents_from(value, "q_values");
      } else if (key == "instances") {
        cfg.instances = value.get<std::size_t>();
      } else if (key == "min_rows") {
        cfg.min_rows = value.get<std::size_t>();
      } else if (key == "max_rows") {
        cfg.max_rows = value.get<std::size_t>();
      } else if (key == "min_cols") {
        cfg.min_cols = value.get<std::size_t>();
      } else if (key == "max_cols") {
        cfg.max_cols = value.get<std::size_t>();
      } else if (key == "distributions") {
        cfg.distributions.clear();
        for (const auto& d : value) cfg.distributions.push_back(parse_distribution(d.get<std::string>()));
      } else if (key == "identity_sizes") {
        cfg.identity_sizes = value.get<std::vector<std::size_t>>();
      } else if (key == "master_seed") {
        cfg.master_seed = value.get<std::uint64_t>();
      } else if (key == "slack") {
        cfg.slack = value.get<double>();
      } else if (key == "duality_tolerance") {
        cfg.duality_tolerance = value.get<double>();
      } else if (key == "check_duality") {
        cfg.check_duality = value.get<bool>();
      } else if (key == "escalation_resolution") {
        cfg.escalation_resolution = value.get<std::size_t>();
      } else if (key == "norm") {
        for (const auto& [nkey, nvalue] : value.items()) {
          if (nkey == "tol") {
            cfg.norm.tol = nvalue.get<double>();
          } else if (nkey == "max_iter") {
            cfg.norm.max_iter = nvalue.get<std::size_t>();
          } else if (nkey == "multistarts") {
            cfg.norm.multistarts = nvalue.get<std::size_t>();
          } else if (nkey == "seed") {
            cfg.norm.seed = nvalue.get<std::uint64_t>();
          } else {
            throw std::invalid_argument("unknown field norm." + nkey);
          }
        }
      } else {
        throw std::invalid_argument("unknown field " + key);
      }
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad suite config: ") + e.what());
  }
  return cfg;
}

json report_to_json(const VerificationReport& report, const std::optional<std::string>& generated_at) {
  json summary = json::object();
  for (const auto& [kind, s] : report.summary) {
    summary[std::string(to_string(kind))] = {
        {"passed", s.passed}, {"failed", s.failed}, {"worst_ratio", finite_or_null(s.worst_ratio)}};
  }
  json records = json::array();
  for (const auto& rec : report.records) records.push_back(to_json(rec));
  json doc = {
      {"config", config_to_json(report.config)},
      {"summary", summary},
      {"violations", report.violations()},
      {"escalations", report.escalations},
      {"records", records},
  };
  if (generated_at) doc["generated_at"] = *generated_at;
  return doc;
}

void write_records_csv(std::ostream& out, std::span<const InequalityRecord> records) {
  out << kRecordCsvHeader << '\n';
  for (const auto& rec : records) {
    out << to_string(rec.kind) << ',' << rec.rows << ',' << rec.cols << ','
        << rec.pair.p.to_string() << ',' << rec.pair.q.to_string() << ',' << rec.pair.r.to_string()
        << ',' << rec.pair.s.to_string() << ',' << format_double(rec.lhs) << ','
        << format_double(rec.rhs) << ',' << format_double(rec.ratio) << ','
        << (rec.pass ? "true" : "false") << '\n';
  }
}

std::string utc_timestamp() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace posnorm
