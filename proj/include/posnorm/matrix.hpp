#ifndef POSNORM_MATRIX_HPP_
#define POSNORM_MATRIX_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace posnorm {

// Dense row-major m x n matrix whose entries are finite and nonnegative.
// Entries are validated once at construction; the matrix is immutable after.
class PositiveMatrix {
 public:
  // Throws std::invalid_argument on a zero dimension, a size mismatch, or a
  // negative / non-finite entry.
  PositiveMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

  static PositiveMatrix from_rows(const std::vector<std::vector<double>>& rows);
  static PositiveMatrix zeros(std::size_t rows, std::size_t cols);
  static PositiveMatrix identity(std::size_t n);
  static PositiveMatrix diagonal(std::span<const double> d);
  // u * v^T.
  static PositiveMatrix outer(std::span<const double> u, std::span<const double> v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double operator()(std::size_t j, std::size_t k) const { return entries_[j * cols_ + k]; }
  std::span<const double> row(std::size_t j) const {
    return std::span<const double>(entries_).subspan(j * cols_, cols_);
  }
  std::vector<double> column(std::size_t k) const;
  std::span<const double> entries() const { return entries_; }

  bool is_zero() const;
  bool is_zero_row(std::size_t j) const;

  // A x and A^T y.
  std::vector<double> apply(std::span<const double> x) const;
  std::vector<double> apply_transpose(std::span<const double> y) const;

  // c * A for c >= 0.
  PositiveMatrix scaled(double c) const;

  friend bool operator==(const PositiveMatrix& a, const PositiveMatrix& b) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> entries_;
};

// The adjoint of a real nonnegative matrix: (A^T)[k][j] = A[j][k].
PositiveMatrix transpose(const PositiveMatrix& a);

// e_j in R^n, zero-based j. Throws std::out_of_range when j >= n.
std::vector<double> basis_vector(std::size_t n, std::size_t j);

}  // namespace posnorm

#endif  // POSNORM_MATRIX_HPP_
