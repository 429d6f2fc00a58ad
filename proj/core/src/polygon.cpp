#include "hgcm/polygon.hpp"

#include <string>

namespace hgcm {

PolygonDatum::PolygonDatum(std::size_t n) : n_(n), gram_(n * n, 0), lambda_(n, 1) {
  for (std::size_t i = 0; i < n; ++i) gram_[i * n + i] = 2;
}

PolygonDatum PolygonDatum::from_gram(const IntMatrix& gram, std::vector<std::int64_t> lambda) {
  const std::size_t n = gram.size();
  if (lambda.size() != n) throw InvalidDatumError("datum: lambda length does not match Gram size");
  PolygonDatum d(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (gram[i].size() != n) throw InvalidDatumError("datum: Gram matrix is not square");
    if (gram[i][i] != 2) throw InvalidDatumError("datum: diagonal entry " + std::to_string(i + 1) + " is not 2");
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (gram[i][j] != gram[j][i]) throw InvalidDatumError("datum: Gram matrix is not symmetric");
      d.set_pairing(i, j, gram[i][j]);
    }
  d.lambda_ = std::move(lambda);
  return d;
}

void PolygonDatum::set_pairing(std::size_t i, std::size_t j, std::int64_t value) {
  if (i == j) throw InvalidDatumError("datum: diagonal pairings are fixed at 2");
  gram_[i * n_ + j] = value;
  gram_[j * n_ + i] = value;
}

IntMatrix PolygonDatum::gram_rows() const {
  IntMatrix rows(n_, std::vector<std::int64_t>(n_));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) rows[i][j] = pairing(i, j);
  return rows;
}

QMatrix assemble_gram(const PolygonDatum& d) { return QMatrix::from_rows(d.gram_rows()); }

WeylData weyl_vector(const QMatrix& g3, std::span<const std::int64_t> lambda3) {
  if (g3.rows() != 3 || g3.cols() != 3 || lambda3.size() != 3)
    throw ShapeError("weyl_vector: expects a 3x3 Gram matrix and three coefficients");
  if (det(g3).sign() >= 0) throw NotHyperbolicError("weyl_vector: Gram matrix is not hyperbolic");
  const QVector rhs{Rational(-lambda3[0]), Rational(-lambda3[1]), Rational(-lambda3[2])};
  const QVector x = solve(g3, rhs);
  WeylData w{{x[0], x[1], x[2]}, Rational(0)};
  for (std::size_t i = 0; i < 3; ++i) w.r -= Rational(lambda3[i]) * x[i];
  return w;
}

bool divisibility_ok(std::int64_t lambda_i, std::int64_t lambda_j, std::int64_t g_ij) {
  if (lambda_i == 0) return lambda_j * g_ij == 0;
  return (lambda_j * g_ij) % lambda_i == 0;
}

CartanMatrix cartan_matrix(const PolygonDatum& d) {
  const std::size_t n = d.size();
  CartanMatrix a{IntMatrix(n, std::vector<std::int64_t>(n)), std::vector<Rational>(n)};
  for (std::size_t j = 0; j < n; ++j) {
    if (d.lambda(j) <= 0) throw InvalidRealizationError("cartan_matrix: non-positive twisting coefficient");
    a.symmetrizer[j] = Rational(Integer(1), Integer(d.lambda(j)) * d.lambda(j));
    for (std::size_t k = 0; k < n; ++k) {
      const std::int64_t num = d.lambda(k) * d.pairing(j, k);
      if (num % d.lambda(j) != 0)
        throw InvalidRealizationError("cartan_matrix: entry (" + std::to_string(j + 1) + "," +
                                      std::to_string(k + 1) + ") is not integral");
      a.entries[j][k] = num / d.lambda(j);
    }
  }
  return a;
}

SymmetrizedCartan symmetrized_cartan(const PolygonDatum& d) {
  const std::size_t n = d.size();
  SymmetrizedCartan b{IntMatrix(n, std::vector<std::int64_t>(n))};
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) b.entries[j][k] = d.lambda(j) * d.lambda(k) * d.pairing(j, k);
  return b;
}

std::array<Rational, 3> reflect(std::span<const Rational> x, std::size_t i, const QMatrix& g3) {
  if (x.size() != 3 || i >= 3 || g3.rows() != 3 || g3.cols() != 3) throw ShapeError("reflect: rank-3 data expected");
  // (delta_i, x) with (delta_i, delta_i) = 2, so s(x) = x - (delta_i, x) delta_i.
  Rational dot;
  for (std::size_t k = 0; k < 3; ++k) dot += g3(i, k) * x[k];
  std::array<Rational, 3> out{x[0], x[1], x[2]};
  out[i] -= dot;
  return out;
}

GeometricRealizationTable polygon_table(const PolygonDatum& d) {
  const std::size_t n = d.size();
  GeometricRealizationTable t;
  t.rows.assign(1 + n / 2, std::vector<std::int64_t>(n));
  for (std::size_t j = 0; j < n; ++j) t.rows[0][j] = d.lambda(j);
  for (std::size_t i = 1; i <= n / 2; ++i)
    for (std::size_t j = 0; j < n; ++j) t.rows[i][j] = -d.pairing(j, (j + i) % n);
  return t;
}

PolygonDatum datum_from_table(const GeometricRealizationTable& table) {
  if (table.rows.empty()) throw TableDecodeError("table: no rows");
  const std::size_t n = table.rows[0].size();
  if (n < 3) throw TableDecodeError("table: a polygon needs at least 3 sides");
  if (table.rows.size() != 1 + n / 2)
    throw TableDecodeError("table: expected " + std::to_string(1 + n / 2) + " rows for " + std::to_string(n) +
                           " sides, got " + std::to_string(table.rows.size()));
  for (const auto& row : table.rows)
    if (row.size() != n) throw TableDecodeError("table: ragged rows");
  PolygonDatum d(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (table.rows[0][j] <= 0) throw TableDecodeError("table: twisting coefficients must be positive");
    d.set_lambda(j, table.rows[0][j]);
  }
  for (std::size_t i = 1; i < table.rows.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::int64_t v = table.rows[i][j];
      if (v < 0)
        throw TableDecodeError("table: positive pairing at row " + std::to_string(i + 1) + ", column " +
                               std::to_string(j + 1));
      const std::size_t k = (j + i) % n;
      if (2 * i == n && k < j) {
        if (d.pairing(j, k) != -v)
          throw TableDecodeError("table: antipodal entries disagree in column " + std::to_string(j + 1));
        continue;
      }
      d.set_pairing(j, k, -v);
    }
  return d;
}

PolygonDatum relabel(const PolygonDatum& d, const DihedralMove& move) {
  const std::size_t n = d.size();
  PolygonDatum out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t si = move.apply(i, n);
    out.set_lambda(i, d.lambda(si));
    for (std::size_t j = i + 1; j < n; ++j) out.set_pairing(i, j, d.pairing(si, move.apply(j, n)));
  }
  return out;
}

std::string to_string(WeylType t) { return t == WeylType::elliptic ? "elliptic" : "parabolic"; }

}  // namespace hgcm
