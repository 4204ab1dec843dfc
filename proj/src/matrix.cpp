#include "posnorm/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace posnorm {

PositiveMatrix::PositiveMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows_ == 0 || cols_ == 0) throw std::invalid_argument("matrix dimensions must be positive");
  if (entries_.size() != rows_ * cols_) {
    throw std::invalid_argument("matrix has " + std::to_string(entries_.size()) +
                                " entries, expected " + std::to_string(rows_ * cols_));
  }
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    double a = entries_[i];
    if (!std::isfinite(a) || a < 0) {
      throw std::invalid_argument("entry (" + std::to_string(i / cols_ + 1) + "," +
                                  std::to_string(i % cols_ + 1) +
                                  ") is not a finite nonnegative number");
    }
    // Canonicalize -0.0 so equality and printing are stable.
    if (a == 0) entries_[i] = 0.0;
  }
}

PositiveMatrix PositiveMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) throw std::invalid_argument("empty matrix");
  std::size_t n = rows.front().size();
  std::vector<double> entries;
  entries.reserve(rows.size() * n);
  for (std::size_t j = 0; j < rows.size(); ++j) {
    if (rows[j].size() != n) {
      throw std::invalid_argument("row " + std::to_string(j + 1) + " has " +
                                  std::to_string(rows[j].size()) + " entries, expected " +
                                  std::to_string(n));
    }
    entries.insert(entries.end(), rows[j].begin(), rows[j].end());
  }
  return PositiveMatrix(rows.size(), n, std::move(entries));
}

PositiveMatrix PositiveMatrix::zeros(std::size_t rows, std::size_t cols) {
  return PositiveMatrix(rows, cols, std::vector<double>(rows * cols, 0.0));
}

PositiveMatrix PositiveMatrix::identity(std::size_t n) {
  std::vector<double> entries(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) entries[j * n + j] = 1.0;
  return PositiveMatrix(n, n, std::move(entries));
}

PositiveMatrix PositiveMatrix::diagonal(std::span<const double> d) {
  std::size_t n = d.size();
  std::vector<double> entries(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) entries[j * n + j] = d[j];
  return PositiveMatrix(n, n, std::move(entries));
}

PositiveMatrix PositiveMatrix::outer(std::span<const double> u, std::span<const double> v) {
  std::vector<double> entries;
  entries.reserve(u.size() * v.size());
  for (double uj : u) {
    for (double vk : v) entries.push_back(uj * vk);
  }
  return PositiveMatrix(u.size(), v.size(), std::move(entries));
}

std::vector<double> PositiveMatrix::column(std::size_t k) const {
  std::vector<double> c(rows_);
  for (std::size_t j = 0; j < rows_; ++j) c[j] = (*this)(j, k);
  return c;
}

bool PositiveMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](double a) { return a == 0; });
}

bool PositiveMatrix::is_zero_row(std::size_t j) const {
  auto r = row(j);
  return std::all_of(r.begin(), r.end(), [](double a) { return a == 0; });
}

std::vector<double> PositiveMatrix::apply(std::span<const double> x) const {
  if (x.size() != cols_) throw std::invalid_argument("dimension mismatch in A x");
  std::vector<double> y(rows_, 0.0);
  for (std::size_t j = 0; j < rows_; ++j) {
    double acc = 0;
    const double* a = entries_.data() + j * cols_;
    for (std::size_t k = 0; k < cols_; ++k) acc += a[k] * x[k];
    y[j] = acc;
  }
  return y;
}

std::vector<double> PositiveMatrix::apply_transpose(std::span<const double> y) const {
  if (y.size() != rows_) throw std::invalid_argument("dimension mismatch in A^T y");
  std::vector<double> x(cols_, 0.0);
  for (std::size_t j = 0; j < rows_; ++j) {
    const double* a = entries_.data() + j * cols_;
    double yj = y[j];
    for (std::size_t k = 0; k < cols_; ++k) x[k] += a[k] * yj;
  }
  return x;
}

PositiveMatrix PositiveMatrix::scaled(double c) const {
  if (!std::isfinite(c) || c < 0) throw std::invalid_argument("scale must be finite and >= 0");
  std::vector<double> entries(entries_);
  for (double& a : entries) a *= c;
  return PositiveMatrix(rows_, cols_, std::move(entries));
}

PositiveMatrix transpose(const PositiveMatrix& a) {
  std::vector<double> entries(a.rows() * a.cols());
  for (std::size_t j = 0; j < a.rows(); ++j) {
    for (std::size_t k = 0; k < a.cols(); ++k) entries[k * a.rows() + j] = a(j, k);
  }
  return PositiveMatrix(a.cols(), a.rows(), std::move(entries));
}

std::vector<double> basis_vector(std::size_t n, std::size_t j) {
  if (j >= n) {
    throw std::out_of_range("basis index " + std::to_string(j) + " out of range for dimension " +
                            std::to_string(n));
  }
  std::vector<double> e(n, 0.0);
  e[j] = 1.0;
  return e;
}

}  // namespace posnorm
