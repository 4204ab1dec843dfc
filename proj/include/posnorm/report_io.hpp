#ifndef POSNORM_REPORT_IO_HPP_
#define POSNORM_REPORT_IO_HPP_

#include <optional>
#include <ostream>
#include <span>
#include <string>

#include <json.hpp>

#include "posnorm/factorization.hpp"
#include "posnorm/opnorm.hpp"
#include "posnorm/verify.hpp"

namespace posnorm {

// Column order of every record CSV.
inline constexpr const char* kRecordCsvHeader = "theorem,m,n,p,q,r,s,lhs,rhs,ratio,pass";

// Rounds to 12 significant digits.
double round_significant(double x);

// {value, method, iterations, converged, lower, upper, witness}; upper is
// null when unbounded, witness entries carry 12 significant digits.
nlohmann::json to_json(const NormEstimate& est);
// {d, objective, gap, norm, iterations, converged, certified, p, q, r}.
nlohmann::json to_json(const Factorization& f);
nlohmann::json to_json(const InequalityRecord& rec);

nlohmann::json config_to_json(const SuiteConfig& config);
// Missing fields keep their SuiteConfig::defaults() value; unknown fields
// throw std::invalid_argument.
SuiteConfig config_from_json(const nlohmann::json& doc);

// `generated_at` is emitted only when given.
nlohmann::json report_to_json(const VerificationReport& report,
                              const std::optional<std::string>& generated_at = std::nullopt);

void write_records_csv(std::ostream& out, std::span<const InequalityRecord> records);

// UTC, ISO 8601.
std::string utc_timestamp();

}  // namespace posnorm

#endif  // POSNORM_REPORT_IO_HPP_
