#include "cli.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "posnorm/factorization.hpp"
#include "posnorm/matrix_io.hpp"
#include "posnorm/opnorm.hpp"
#include "posnorm/report_io.hpp"
#include "posnorm/verify.hpp"

namespace posnorm::cli {

namespace {

using nlohmann::json;

constexpr const char* kFooter = R"(Exponents accept integers, decimals, fractions such as 4/3, and "inf".

Exit codes: 0 success, 1 usage error, 2 I/O or parse error,
            3 verify/suite recorded a violation.

Record CSV columns (verify, suite --format csv):
  theorem,m,n,p,q,r,s,lhs,rhs,ratio,pass
  theorem is one of T1-rows, T1-cols, T2-i, T2-ii, T2-improved, dominance,
  duality; exponents are exact ("4/3", "inf"); pass is true/false.)";

// Errors that map to exit code 2.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Settings {
  std::string input;
  std::string matrix_format = "auto";
  bool abs_values = false;
  std::string format = "json";
  std::string out_path;
  std::string p_text;
  std::string q_text;
  double tol = -1;
  std::size_t max_iter = 0;
  std::size_t multistarts = 8;
  std::size_t restarts = 4;
  std::size_t resolution = 0;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string config_path;
  std::optional<std::size_t> instances;
  bool no_timestamp = false;
};

PositiveMatrix load_matrix(const Settings& s) {
  MatrixFormat fmt = parse_matrix_format(s.matrix_format);
  try {
    return parse_matrix(s.input, fmt, s.abs_values);
  } catch (const MatrixParseError& e) {
    throw IoError(e.what());
  }
}

void emit(const Settings& s, const std::string& text, std::ostream& out) {
  if (s.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(s.out_path, std::ios::binary);
  if (!file) throw IoError("cannot write '" + s.out_path + "'");
  file << text;
  if (!file) throw IoError("error writing '" + s.out_path + "'");
}

std::string join(const std::vector<double>& values) {
  std::ostringstream os;
  os.precision(12);
  for (std::size_t i = 0; i < values.size(); ++i) os << (i ? ";" : "") << values[i];
  return os.str();
}

NormOptions norm_options(const Settings& s) {
  NormOptions opts;
  if (s.tol > 0) opts.tol = s.tol;
  if (s.max_iter > 0) opts.max_iter = s.max_iter;
  opts.multistarts = s.multistarts;
  opts.seed = s.seed;
  return opts;
}

SuiteConfig load_config(const Settings& s) {
  SuiteConfig cfg = SuiteConfig::defaults();
  if (!s.config_path.empty()) {
    std::ifstream in(s.config_path);
    if (!in) throw IoError("cannot open config '" + s.config_path + "'");
    json doc;
    try {
      doc = json::parse(in);
      cfg = config_from_json(doc);
    } catch (const json::exception& e) {
      throw IoError(s.config_path + ": " + e.what());
    } catch (const std::invalid_argument& e) {
      throw IoError(s.config_path + ": " + e.what());
    }
  }
  if (s.seed_given) cfg.master_seed = s.seed;
  if (s.instances) cfg.instances = *s.instances;
  return cfg;
}

int cmd_norm(const Settings& s, std::ostream& out) {
  const Exponent p = Exponent::parse(s.p_text);
  const Exponent q = Exponent::parse(s.q_text);
  PositiveMatrix a = load_matrix(s);
  NormEstimate est = operator_norm(a, p, q, norm_options(s));
  if (s.resolution > 0 && q <= p) {
    NormEstimate oracle = grid_oracle(a, make_exponent_pair(p, q), s.resolution);
    est.upper = std::min(est.upper, oracle.upper);
    est.lower = std::max(est.lower, oracle.value);
    est.value = std::max(est.value, oracle.value);
  }
  if (s.format == "csv") {
    std::ostringstream os;
    os.precision(17);
    os << "value,method,iterations,converged,lower,upper,witness\n"
       << est.value << ',' << to_string(est.method) << ',' << est.iterations << ','
       << (est.converged ? "true" : "false") << ',' << est.lower << ',' << est.upper << ','
       << join(est.witness) << '\n';
    emit(s, os.str(), out);
  } else {
    json doc = to_json(est);
    doc["p"] = p.to_string();
    doc["q"] = q.to_string();
    emit(s, doc.dump(2) + "\n", out);
  }
  return kExitOk;
}

int cmd_factorize(const Settings& s, std::ostream& out) {
  const ExponentPair pair = make_exponent_pair(Exponent::parse(s.p_text), Exponent::parse(s.q_text));
  PositiveMatrix a = load_matrix(s);
  FactorizationOptions opts;
  if (s.tol > 0) opts.tol = s.tol;
  if (s.max_iter > 0) opts.max_iter = s.max_iter;
  opts.restarts = s.restarts;
  opts.seed = s.seed;
  opts.norm_opts.multistarts = s.multistarts;
  opts.norm_opts.seed = s.seed;
  Factorization f = optimize(a, pair, opts);
  if (s.format == "csv") {
    std::ostringstream os;
    os.precision(17);
    os << "objective,gap,norm,iterations,d\n"
       << f.objective << ',' << f.gap << ',' << f.norm << ',' << f.iterations << ',' << join(f.d)
       << '\n';
    emit(s, os.str(), out);
  } else {
    emit(s, to_json(f).dump(2) + "\n", out);
  }
  return kExitOk;
}

int emit_records(const Settings& s, const std::vector<InequalityRecord>& records, std::ostream& out) {
  std::size_t violations = 0;
  for (const auto& r : records) violations += r.pass ? 0 : 1;
  if (s.format == "csv") {
    std::ostringstream os;
    write_records_csv(os, records);
    emit(s, os.str(), out);
  } else {
    json arr = json::array();
    for (const auto& r : records) arr.push_back(to_json(r));
    json doc = {{"records", arr}, {"violations", violations}};
    emit(s, doc.dump(2) + "\n", out);
  }
  return violations == 0 ? kExitOk : kExitViolation;
}

int cmd_verify(const Settings& s, std::ostream& out) {
  SuiteConfig cfg = load_config(s);
  if (!s.p_text.empty()) cfg.p_values = {Exponent::parse(s.p_text)};
  if (!s.q_text.empty()) cfg.q_values = {Exponent::parse(s.q_text)};
  if (s.tol > 0) cfg.norm.tol = s.tol;
  if (s.max_iter > 0) cfg.norm.max_iter = s.max_iter;
  cfg.norm.multistarts = s.multistarts;
  PositiveMatrix a = load_matrix(s);
  return emit_records(s, verify_matrix(a, cfg, s.input), out);
}

int cmd_suite(const Settings& s, std::ostream& out) {
  SuiteConfig cfg = load_config(s);
  VerificationReport report = run_suite(cfg);
  if (s.format == "csv") {
    std::ostringstream os;
    write_records_csv(os, report.records);
    emit(s, os.str(), out);
  } else {
    std::optional<std::string> stamp;
    if (!s.no_timestamp) stamp = utc_timestamp();
    emit(s, report_to_json(report, stamp).dump(2) + "\n", out);
  }
  return report.violations() == 0 ? kExitOk : kExitViolation;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Operator norms, mixed norms and diagonal factorizations of nonnegative matrices",
               "posnorm"};
  app.footer(kFooter);
  app.require_subcommand(1);
  Settings s;

  auto add_matrix_input = [&](CLI::App* cmd) {
    cmd->add_option("--input,-i", s.input, "Matrix file (CSV or JSON)")->required();
    cmd->add_option("--matrix-format", s.matrix_format, "auto, csv or json")
        ->check(CLI::IsMember({"auto", "csv", "json"}));
    cmd->add_flag("--abs", s.abs_values, "Replace entries by their absolute values");
  };
  auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("--format", s.format, "Output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out,-o", s.out_path, "Write to this file instead of stdout");
  };
  auto add_seed = [&](CLI::App* cmd) {
    cmd->add_option_function<std::uint64_t>(
        "--seed",
        [&](const std::uint64_t& v) {
          s.seed = v;
          s.seed_given = true;
        },
        "Random seed");
  };

  CLI::App* norm = app.add_subcommand("norm", "Estimate ||A||_{p,q}");
  add_matrix_input(norm);
  add_output(norm);
  norm->add_option("--p", s.p_text, "Domain exponent")->required();
  norm->add_option("--q", s.q_text, "Target exponent")->required();
  norm->add_option("--tol", s.tol, "Relative objective change for convergence");
  norm->add_option("--max-iter", s.max_iter, "Power iteration cap");
  norm->add_option("--multistarts", s.multistarts, "Number of power iteration starts");
  norm->add_option("--resolution", s.resolution, "Also bracket with the grid oracle (n <= 4)");
  add_seed(norm);

  CLI::App* factorize = app.add_subcommand("factorize", "Optimize A = diag(d) B");
  add_matrix_input(factorize);
  add_output(factorize);
  factorize->add_option("--p", s.p_text, "Domain exponent")->required();
  factorize->add_option("--q", s.q_text, "Target exponent")->required();
  factorize->add_option("--tol", s.tol, "Smallest coordinate step in log d");
  factorize->add_option("--max-iter", s.max_iter, "Coordinate sweeps per restart");
  factorize->add_option("--restarts", s.restarts, "Randomized restarts");
  factorize->add_option("--multistarts", s.multistarts, "Starts for each norm evaluation");
  add_seed(factorize);

  CLI::App* verify = app.add_subcommand("verify", "Check the inequalities for one matrix");
  add_matrix_input(verify);
  add_output(verify);
  verify->add_option("--p", s.p_text, "Single domain exponent (default: config grid)");
  verify->add_option("--q", s.q_text, "Single target exponent (default: config grid)");
  verify->add_option("--config", s.config_path, "Suite config JSON supplying the pair grid");
  verify->add_option("--tol", s.tol, "Norm convergence tolerance");
  verify->add_option("--max-iter", s.max_iter, "Power iteration cap");
  verify->add_option("--multistarts", s.multistarts, "Number of power iteration starts");

  CLI::App* suite = app.add_subcommand("suite", "Run the randomized verification suite");
  add_output(suite);
  suite->add_option("--config", s.config_path, "Suite config JSON (default: built-in)");
  suite->add_option("--instances", s.instances, "Override the number of random instances");
  suite->add_flag("--no-timestamp", s.no_timestamp, "Omit generated_at from JSON output");
  add_seed(suite);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*norm) return cmd_norm(s, out);
    if (*factorize) return cmd_factorize(s, out);
    if (*verify) return cmd_verify(s, out);
    return cmd_suite(s, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
}

}  // namespace posnorm::cli
