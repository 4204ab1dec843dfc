#ifndef POSNORM_VERIFY_HPP_
#define POSNORM_VERIFY_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "posnorm/exponent.hpp"
#include "posnorm/matrix.hpp"
#include "posnorm/opnorm.hpp"

namespace posnorm {

enum class CheckKind {
  kT1Rows,       // [sum_j (sum_k a_jk^2)^(r/2)]^(1/r) <= ||A||_{p,q}
  kT1Cols,       // same with rows and columns exchanged
  kT2I,          // entrywise l_r <= ||A||_{p,q}, r >= 2
  kT2II,         // entrywise l_s <= ||A||_{p,q}, r <= 2
  kT2Improved,   // entrywise l_r <= ||A||_{p,q}, any r
  kDominance,    // entrywise l_s <= entrywise l_r, r <= 2
  kDuality,      // ||A||_{p,q} = ||A^T||_{q*,p*}
};

inline constexpr CheckKind kAllCheckKinds[] = {
    CheckKind::kT1Rows,     CheckKind::kT1Cols,    CheckKind::kT2I,    CheckKind::kT2II,
    CheckKind::kT2Improved, CheckKind::kDominance, CheckKind::kDuality,
};

std::string_view to_string(CheckKind kind);
std::optional<CheckKind> parse_check_kind(std::string_view text);

// One evaluated inequality lhs <= M * rhs with M = 1. For kDuality lhs and
// rhs are the two norms and `pass` means relative agreement.
struct InequalityRecord {
  CheckKind kind;
  double lhs = 0;
  double rhs = 0;
  double ratio = 0;
  bool pass = false;
  ExponentPair pair;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::string matrix_id;
};

inline constexpr double kDefaultSlack = 1e-9;
inline constexpr double kDefaultDualityTolerance = 1e-6;

// Requires 1 <= q <= 2 <= p. Returns {T1-rows, T1-cols}.
std::vector<InequalityRecord> check_theorem1(const PositiveMatrix& a, const ExponentPair& pair,
                                             const NormEstimate& norm_est,
                                             std::string_view matrix_id = {},
                                             double slack = kDefaultSlack);

// Requires 1 <= q <= p. Emits T2-i when r >= 2, T2-ii when r <= 2, and
// T2-improved always.
std::vector<InequalityRecord> check_theorem2(const PositiveMatrix& a, const ExponentPair& pair,
                                             const NormEstimate& norm_est,
                                             std::string_view matrix_id = {},
                                             double slack = kDefaultSlack);

// Requires r <= 2: entrywise l_s <= entrywise l_r.
InequalityRecord check_improvement_dominance(const PositiveMatrix& a, const ExponentPair& pair,
                                             std::string_view matrix_id = {},
                                             double slack = kDefaultSlack);

// Compares operator_norm with norm_via_duality. Also fails when q <= 2 <= p
// but the dual indices violate p* <= 2 <= q*.
InequalityRecord check_duality_identity(const PositiveMatrix& a, const ExponentPair& pair,
                                        const NormOptions& opts = {},
                                        std::string_view matrix_id = {},
                                        double tolerance = kDefaultDualityTolerance);

enum class Distribution { kUniform, kExponential, kSparse };

struct MatrixDistribution {
  Distribution kind = Distribution::kUniform;
  double density = 1.0;  // kSparse only
};

// "uniform", "exponential", "sparse:0.5".
MatrixDistribution parse_distribution(std::string_view text);
std::string to_string(const MatrixDistribution& dist);

// Deterministic for a fixed seed. Uniform entries lie in [0, 1); sparse
// keeps each uniform entry with probability `density` and zeroes the rest.
PositiveMatrix random_positive_matrix(std::size_t m, std::size_t n, const MatrixDistribution& dist,
                                      std::uint64_t seed);

struct SuiteConfig {
  std::vector<Exponent> p_values;
  std::vector<Exponent> q_values;
  std::size_t instances = 500;
  std::size_t min_rows = 1;
  std::size_t max_rows = 10;
  std::size_t min_cols = 1;
  std::size_t max_cols = 10;
  std::vector<MatrixDistribution> distributions;
  std::vector<std::size_t> identity_sizes;
  std::uint64_t master_seed = 1;
  double slack = kDefaultSlack;
  double duality_tolerance = kDefaultDualityTolerance;
  bool check_duality = true;
  std::size_t escalation_resolution = 400;
  NormOptions norm;

  // p in {2, 5/2, 3, 4, inf}, q in {1, 4/3, 3/2, 2}, 500 instances up to
  // 10 x 10, identity family n = 1..10.
  static SuiteConfig defaults();
};

struct CheckSummary {
  std::size_t passed = 0;
  std::size_t failed = 0;
  double worst_ratio = 0;
};

struct VerificationReport {
  SuiteConfig config;
  std::vector<InequalityRecord> records;
  std::map<CheckKind, CheckSummary> summary;
  // Number of norm estimates that went through the escalation protocol.
  std::size_t escalations = 0;

  std::size_t violations() const;
};

// Instance i uses seed mix(master_seed, i); the pair grid is filtered by
// each check's hypotheses. A failed T1/T2 record triggers re-certification
// (grid oracle when n <= 4 and p < inf, else 4x multistarts) before it is
// kept as a violation.
VerificationReport run_suite(const SuiteConfig& config);

// All checks that apply to a single matrix (as used by run_suite).
std::vector<InequalityRecord> verify_matrix(const PositiveMatrix& a, const SuiteConfig& config,
                                            std::string_view matrix_id,
                                            std::size_t* escalations = nullptr);

}  // namespace posnorm

#endif  // POSNORM_VERIFY_HPP_
