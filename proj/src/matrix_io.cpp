#include "posnorm/matrix_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace posnorm {

namespace {

std::string position(std::size_t row, std::size_t col) {
  return "(" + std::to_string(row + 1) + "," + std::to_string(col + 1) + ")";
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double admit_entry(double value, std::size_t row, std::size_t col, bool abs_values) {
  if (!std::isfinite(value)) {
    throw MatrixParseError("non-finite entry at " + position(row, col));
  }
  if (abs_values) return std::abs(value);
  if (value < 0) {
    std::ostringstream msg;
    msg << "negative entry " << value << " at " << position(row, col)
        << " (use --abs to take absolute values)";
    throw MatrixParseError(msg.str());
  }
  return value;
}

PositiveMatrix build(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw MatrixParseError("matrix has no rows");
  const std::size_t n = rows.front().size();
  if (n == 0) throw MatrixParseError("matrix has no columns");
  for (std::size_t j = 1; j < rows.size(); ++j) {
    if (rows[j].size() != n) {
      throw MatrixParseError("ragged rows: row " + std::to_string(j + 1) + " has " +
                             std::to_string(rows[j].size()) + " entries, row 1 has " +
                             std::to_string(n));
    }
  }
  return PositiveMatrix::from_rows(rows);
}

PositiveMatrix parse_csv(std::string_view text, bool abs_values) {
  std::vector<std::vector<double>> rows;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = trim(text.substr(start, end - start));
    start = end + 1;
    if (line.empty()) continue;

    const std::size_t row = rows.size();
    std::vector<double> values;
    std::size_t field_start = 0;
    while (true) {
      std::size_t comma = line.find(',', field_start);
      std::string_view token =
          trim(line.substr(field_start, comma == std::string_view::npos ? std::string_view::npos
                                                                         : comma - field_start));
      const std::size_t col = values.size();
      std::string_view digits = token;
      if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
      double value = 0;
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
      if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size()) {
        throw MatrixParseError("non-numeric token '" + std::string(token) + "' at " +
                               position(row, col));
      }
      values.push_back(admit_entry(value, row, col, abs_values));
      if (comma == std::string_view::npos) break;
      field_start = comma + 1;
    }
    rows.push_back(std::move(values));
  }
  return build(rows);
}

PositiveMatrix parse_json(std::string_view text, bool abs_values) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw MatrixParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_array()) throw MatrixParseError("JSON matrix must be an array of rows");
  std::vector<std::vector<double>> rows;
  for (std::size_t j = 0; j < doc.size(); ++j) {
    const auto& row = doc[j];
    if (!row.is_array()) {
      throw MatrixParseError("JSON row " + std::to_string(j + 1) + " is not an array");
    }
    std::vector<double> values;
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (!row[k].is_number()) {
        throw MatrixParseError("non-numeric token '" + row[k].dump() + "' at " + position(j, k));
      }
      values.push_back(admit_entry(row[k].get<double>(), j, k, abs_values));
    }
    rows.push_back(std::move(values));
  }
  return build(rows);
}

}  // namespace

MatrixFormat parse_matrix_format(std::string_view text) {
  if (text == "auto") return MatrixFormat::kAuto;
  if (text == "csv") return MatrixFormat::kCsv;
  if (text == "json") return MatrixFormat::kJson;
  throw std::invalid_argument("unknown matrix format '" + std::string(text) + "'");
}

PositiveMatrix parse_matrix_text(std::string_view text, MatrixFormat format, bool abs_values) {
  if (format == MatrixFormat::kAuto) {
    std::string_view body = trim(text);
    format = !body.empty() && body.front() == '[' ? MatrixFormat::kJson : MatrixFormat::kCsv;
  }
  return format == MatrixFormat::kJson ? parse_json(text, abs_values) : parse_csv(text, abs_values);
}

PositiveMatrix parse_matrix(const std::filesystem::path& path, MatrixFormat format, bool abs_values) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MatrixParseError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (format == MatrixFormat::kAuto) {
    if (path.extension() == ".json") format = MatrixFormat::kJson;
    if (path.extension() == ".csv") format = MatrixFormat::kCsv;
  }
  try {
    return parse_matrix_text(buf.str(), format, abs_values);
  } catch (const MatrixParseError& e) {
    throw MatrixParseError(path.string() + ": " + e.what());
  }
}

}  // namespace posnorm
