#include "hgcm/qmatrix.hpp"

#include <numeric>
#include <sstream>
#include <utility>

namespace hgcm {

namespace {

// Integer matrix whose rows are the rows of `m` scaled by the lcm of their
// denominators. Row scaling changes neither rank nor the zero pattern of the
// determinant; `scale` receives the product of all factors.
std::vector<std::vector<Integer>> integral_rows(const QMatrix& m, Integer* scale) {
  std::vector<std::vector<Integer>> a(m.rows(), std::vector<Integer>(m.cols()));
  Integer total = 1;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Integer l = 1;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      Integer d = m(r, c).denominator();
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    for (std::size_t c = 0; c < m.cols(); ++c) {
      a[r][c] = m(r, c).numerator() * (l / m(r, c).denominator());
    }
    total *= l;
  }
  if (scale != nullptr) *scale = total;
  return a;
}

// In-place Bareiss elimination with row pivoting. Returns the rank; when
// the matrix is square and of full rank, a[n-1][n-1] is the determinant up
// to the returned sign.
std::size_t bareiss(std::vector<std::vector<Integer>>& a, std::size_t cols, int* sign) {
  const std::size_t rows = a.size();
  Integer prev = 1;
  std::size_t row = 0;
  int s = 1;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t pivot = row;
    while (pivot < rows && a[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != row) {
      std::swap(a[pivot], a[row]);
      s = -s;
    }
    for (std::size_t r = row + 1; r < rows; ++r) {
      for (std::size_t c = col + 1; c < cols; ++c) {
        Integer t = a[row][col] * a[r][c] - a[r][col] * a[row][c];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a[r][c] = std::move(t);
      }
      a[r][col] = 0;
    }
    prev = a[row][col];
    ++row;
  }
  if (sign != nullptr) *sign = s;
  return row;
}

}  // namespace

QMatrix::QMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw ShapeError("qmatrix: ragged initializer");
    for (long v : row) entries_.emplace_back(v);
  }
}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix QMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  QMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw ShapeError("qmatrix: ragged rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = Rational(static_cast<long>(rows[r][c]));
  }
  return m;
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

QVector QMatrix::operator*(std::span<const Rational> v) const {
  if (v.size() != cols_) throw ShapeError("qmatrix: vector length mismatch");
  QVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out[r] += (*this)(r, c) * v[c];
  return out;
}

QMatrix QMatrix::operator*(const QMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw ShapeError("qmatrix: product shape mismatch");
  QMatrix out(rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      if ((*this)(r, k).is_zero()) continue;
      for (std::size_t c = 0; c < rhs.cols_; ++c) out(r, c) += (*this)(r, k) * rhs(k, c);
    }
  return out;
}

QMatrix QMatrix::select(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const {
  QMatrix out(row_idx.size(), col_idx.size());
  for (std::size_t r = 0; r < row_idx.size(); ++r)
    for (std::size_t c = 0; c < col_idx.size(); ++c) out(r, c) = (*this)(row_idx[r], col_idx[c]);
  return out;
}

bool QMatrix::is_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = r + 1; c < cols_; ++c)
      if ((*this)(r, c) != (*this)(c, r)) return false;
  return true;
}

Rational det(const QMatrix& m) {
  if (!m.is_square()) throw ShapeError("det: matrix is not square");
  const std::size_t n = m.rows();
  if (n == 0) return Rational(1);
  Integer scale;
  auto a = integral_rows(m, &scale);
  int sign = 1;
  if (bareiss(a, n, &sign) < n) return Rational(0);
  return Rational(a[n - 1][n - 1] * sign, scale);
}

QVector solve(const QMatrix& m, std::span<const Rational> v) {
  if (!m.is_square()) throw ShapeError("solve: matrix is not square");
  if (v.size() != m.rows()) throw ShapeError("solve: right-hand side length mismatch");
  const std::size_t n = m.rows();
  QMatrix a(n, n + 1);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) a(r, c) = m(r, c);
    a(r, n) = v[r];
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col).is_zero()) ++pivot;
    if (pivot == n) throw SingularMatrixError("solve: singular matrix");
    if (pivot != col)
      for (std::size_t c = col; c <= n; ++c) std::swap(a(pivot, c), a(col, c));
    const Rational inv = Rational(1) / a(col, col);
    for (std::size_t c = col; c <= n; ++c) a(col, c) *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a(r, col).is_zero()) continue;
      const Rational f = a(r, col);
      for (std::size_t c = col; c <= n; ++c) a(r, c) -= f * a(col, c);
    }
  }
  QVector x(n);
  for (std::size_t r = 0; r < n; ++r) x[r] = a(r, n);
  return x;
}

std::size_t rank(const QMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  auto a = integral_rows(m, nullptr);
  return bareiss(a, m.cols(), nullptr);
}

Rational bilinear(const QMatrix& g, std::span<const Rational> x, std::span<const Rational> y) {
  if (!g.is_square() || x.size() != g.rows() || y.size() != g.rows())
    throw ShapeError("bilinear: shape mismatch");
  Rational s;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_zero()) continue;
    Rational row;
    for (std::size_t j = 0; j < y.size(); ++j) row += g(i, j) * y[j];
    s += x[i] * row;
  }
  return s;
}

std::string to_string(const QMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    os << (r ? ", [" : "[");
    for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? ", " : "") << m(r, c);
    os << ']';
  }
  os << ']';
  return os.str();
}

}  // namespace hgcm
