#include "posnorm/norms.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace posnorm {

double vector_norm(std::span<const double> x, const Exponent& p) {
  double largest = 0;
  for (double v : x) {
    if (!std::isfinite(v)) throw std::invalid_argument("vector_norm: non-finite entry");
    largest = std::max(largest, std::abs(v));
  }
  if (largest == 0 || p.is_infinite()) return largest;

  const double power = p.value();
  const bool is_one = p.exact_inverse() == Rational(1);
  const bool is_two = p.exact_inverse() == Rational(1, 2);
  double sum = 0;
  for (double v : x) {
    double t = std::abs(v) / largest;
    if (t == 0) continue;  // 0^p = 0
    if (is_one) {
      sum += t;
    } else if (is_two) {
      sum += t * t;
    } else {
      sum += std::pow(t, power);
    }
  }
  if (is_one) return largest * sum;
  if (is_two) return largest * std::sqrt(sum);
  return largest * std::pow(sum, p.inverse());
}

double mixed_norm_rows(const PositiveMatrix& a, const Exponent& outer, const Exponent& inner) {
  std::vector<double> row_norms(a.rows());
  for (std::size_t j = 0; j < a.rows(); ++j) row_norms[j] = vector_norm(a.row(j), inner);
  return vector_norm(row_norms, outer);
}

double mixed_norm_cols(const PositiveMatrix& a, const Exponent& outer, const Exponent& inner) {
  std::vector<double> col_norms(a.cols());
  for (std::size_t k = 0; k < a.cols(); ++k) col_norms[k] = vector_norm(a.column(k), inner);
  return vector_norm(col_norms, outer);
}

double entrywise_norm(const PositiveMatrix& a, const Exponent& p) {
  return vector_norm(a.entries(), p);
}

}  // namespace posnorm
