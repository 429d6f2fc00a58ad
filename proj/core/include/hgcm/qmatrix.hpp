#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hgcm/rational.hpp"

namespace hgcm {

using QVector = std::vector<Rational>;

class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SingularMatrixError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Small dense row-major matrix of exact rationals.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
  /// Throws ShapeError on ragged input.
  QMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static QMatrix identity(std::size_t n);
  /// Throws ShapeError on ragged input.
  static QMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  std::span<const Rational> entries() const { return entries_; }

  QMatrix transpose() const;
  /// Throws ShapeError unless `v.size() == cols()`.
  QVector operator*(std::span<const Rational> v) const;
  /// Throws ShapeError on incompatible shapes.
  QMatrix operator*(const QMatrix& rhs) const;

  /// Sub-matrix on the given row and column indices.
  QMatrix select(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const;

  bool is_symmetric() const;

  friend bool operator==(const QMatrix&, const QMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

/// Exact determinant by fraction-free (Bareiss) elimination.
/// Throws ShapeError for non-square input.
Rational det(const QMatrix& m);

/// Unique x with m * x = v. Throws ShapeError on shape mismatch and
/// SingularMatrixError when det(m) = 0.
QVector solve(const QMatrix& m, std::span<const Rational> v);

/// Rank over the rationals (fraction-free elimination).
std::size_t rank(const QMatrix& m);

/// x^T g y.
Rational bilinear(const QMatrix& g, std::span<const Rational> x, std::span<const Rational> y);

std::string to_string(const QMatrix& m);

}  // namespace hgcm
