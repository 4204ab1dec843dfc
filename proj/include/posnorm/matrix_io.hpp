#ifndef POSNORM_MATRIX_IO_HPP_
#define POSNORM_MATRIX_IO_HPP_

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "posnorm/matrix.hpp"

namespace posnorm {

enum class MatrixFormat { kAuto, kCsv, kJson };

MatrixFormat parse_matrix_format(std::string_view text);

// Unreadable file, malformed text, ragged rows, or a rejected entry.
class MatrixParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// CSV: one row per line, comma-separated decimals, blank lines ignored.
// JSON: a 2-D array of numbers. kAuto picks JSON when the text starts with
// '['. With `abs_values` every entry is replaced by its absolute value;
// otherwise a negative entry is an error naming its 1-based (row,col).
// Non-finite entries are always an error.
PositiveMatrix parse_matrix_text(std::string_view text, MatrixFormat format, bool abs_values);

// As above; kAuto also looks at a ".json" / ".csv" extension.
PositiveMatrix parse_matrix(const std::filesystem::path& path, MatrixFormat format, bool abs_values);

}  // namespace posnorm

#endif  // POSNORM_MATRIX_IO_HPP_
