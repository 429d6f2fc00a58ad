#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hgcm/qmatrix.hpp"
#include "hgcm/rational.hpp"

namespace hgcm {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

class InvalidDatumError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotHyperbolicError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class InvalidRealizationError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class TableDecodeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Combinatorial data of a closed n-gon: the pairings (delta_i, delta_j) of
/// the norm-2 side normals and the twisting coefficients lambda_i. Sides are
/// indexed 0..n-1 in cyclic order. Diagonal pairings are always 2.
///
/// Only the shape is enforced here; sign, adjacency and divisibility
/// conditions are checked by verify_realization().
class PolygonDatum {
 public:
  PolygonDatum() = default;
  /// All off-diagonal pairings zero, all lambda one.
  explicit PolygonDatum(std::size_t n);

  /// Throws InvalidDatumError unless `gram` is square, symmetric, has 2 on
  /// the diagonal and matches `lambda` in size.
  static PolygonDatum from_gram(const IntMatrix& gram, std::vector<std::int64_t> lambda);

  std::size_t size() const { return n_; }
  std::int64_t pairing(std::size_t i, std::size_t j) const { return gram_[i * n_ + j]; }
  /// Sets both (i, j) and (j, i). Throws InvalidDatumError for i == j.
  void set_pairing(std::size_t i, std::size_t j, std::int64_t value);
  std::int64_t lambda(std::size_t i) const { return lambda_[i]; }
  const std::vector<std::int64_t>& lambdas() const { return lambda_; }
  void set_lambda(std::size_t i, std::int64_t value) { lambda_[i] = value; }

  IntMatrix gram_rows() const;

  friend bool operator==(const PolygonDatum&, const PolygonDatum&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::int64_t> gram_;
  std::vector<std::int64_t> lambda_;
};

/// Lattice Weyl vector rho in the basis of three consecutive normals and
/// its square r = (rho, rho).
struct WeylData {
  std::array<Rational, 3> coords;
  Rational r;

  friend bool operator==(const WeylData&, const WeylData&) = default;
};

struct CartanMatrix {
  IntMatrix entries;
  /// epsilon_i = 1 / lambda_i^2.
  std::vector<Rational> symmetrizer;
};

struct SymmetrizedCartan {
  IntMatrix entries;
};

/// Row 0 is lambda; row i (1 <= i <= n/2) lists -(delta_j, delta_{j+i}) with
/// the second index taken cyclically.
struct GeometricRealizationTable {
  IntMatrix rows;

  friend bool operator==(const GeometricRealizationTable&, const GeometricRealizationTable&) = default;
};

/// Relabelling i -> (shift + i) mod n, or i -> (shift - i) mod n when
/// `reflect` is set.
struct DihedralMove {
  std::size_t shift = 0;
  bool reflect = false;

  std::size_t apply(std::size_t i, std::size_t n) const {
    return reflect ? (shift + n - i % n) % n : (shift + i) % n;
  }
  friend bool operator==(const DihedralMove&, const DihedralMove&) = default;
};

struct SymmetryGroup {
  enum class Kind { trivial, cyclic, dihedral };

  std::size_t order = 1;
  Kind kind = Kind::trivial;
  /// Number of rotations in the group (k in C_k or D_k).
  std::size_t rotations = 1;
  std::vector<DihedralMove> generators;
  std::vector<DihedralMove> elements;

  std::string name() const;
};

enum class WeylType { elliptic, parabolic };

struct ClassificationFlags {
  WeylType type = WeylType::elliptic;
  bool compact = false;
  bool untwisted = false;

  friend bool operator==(const ClassificationFlags&, const ClassificationFlags&) = default;
};

struct CheckFailure {
  std::string check;
  std::string detail;
};

struct RealizationReport {
  std::vector<CheckFailure> failures;
  std::optional<WeylData> weyl;
  std::size_t gram_rank = 0;
  std::size_t c_rank = 0;

  bool ok() const { return failures.empty(); }
};

/// Symmetric Gram matrix with diagonal 2.
QMatrix assemble_gram(const PolygonDatum& d);

/// Solves g3 * x = -lambda3 and returns x with r = x^T g3 x.
/// Throws NotHyperbolicError unless det(g3) < 0.
WeylData weyl_vector(const QMatrix& g3, std::span<const std::int64_t> lambda3);

/// lambda_i (delta_i, delta_i) | 2 lambda_j (delta_i, delta_j), i.e.
/// lambda_i | lambda_j * g_ij for norm-2 normals.
bool divisibility_ok(std::int64_t lambda_i, std::int64_t lambda_j, std::int64_t g_ij);

/// a_jk = lambda_k g_jk / lambda_j. Throws InvalidRealizationError if an
/// entry is not integral.
CartanMatrix cartan_matrix(const PolygonDatum& d);

/// b_jk = lambda_j lambda_k g_jk.
SymmetrizedCartan symmetrized_cartan(const PolygonDatum& d);

/// Image of x (coordinates in the basis delta_1..delta_3 with Gram g3) under
/// the reflection in delta_i, i in {0, 1, 2}.
std::array<Rational, 3> reflect(std::span<const Rational> x, std::size_t i, const QMatrix& g3);

GeometricRealizationTable polygon_table(const PolygonDatum& d);
/// Inverse of polygon_table(). Throws TableDecodeError on a wrong shape,
/// negative entries in pairing rows, non-positive lambda, or inconsistent
/// antipodal entries when n is even.
PolygonDatum datum_from_table(const GeometricRealizationTable& table);

/// Runs every check and reports each failure separately.
RealizationReport verify_realization(const PolygonDatum& d);

/// Throws std::invalid_argument if w.r > 0.
ClassificationFlags classify_flags(const PolygonDatum& d, const WeylData& w);

/// Datum relabelled so that new side i is old side move.apply(i).
PolygonDatum relabel(const PolygonDatum& d, const DihedralMove& move);

/// Stabilizer of the decorated cyclic sequence inside the dihedral group of
/// order 2n.
SymmetryGroup symmetry_group(const PolygonDatum& d);

std::string to_string(WeylType t);

}  // namespace hgcm
