#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hgcm/catalog.hpp"
#include "hgcm/polygon.hpp"
#include "hgcm/rational.hpp"

namespace hgcm {

class GoldenParseError : public std::invalid_argument {
 public:
  GoldenParseError(std::size_t line, const std::string& what)
      : std::invalid_argument("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// One `r = p/q` block of the golden text format.
struct Table1Row {
  Rational r;
  GeometricRealizationTable table;
  std::size_t line = 0;
};

/// Parses blank-line separated blocks: `r = p/q` followed by table rows.
/// Lines starting with `#` are comments. Throws GoldenParseError.
std::vector<Table1Row> parse_golden_blocks(std::string_view text);

struct NamedMatrix {
  std::string name;
  Rational r;
  IntMatrix matrix;
};

std::vector<NamedMatrix> parse_theorem_matrices(std::string_view text);

struct LatticeFixture {
  std::string name;
  IntMatrix basis_gram;
  IntMatrix roots;
  std::array<Rational, 3> rho;
  IntMatrix expected_cartan;
  Rational expected_r;
  std::size_t expected_sym_order = 0;
  Integer expected_lattice_det;
};

/// Expected Cartan matrix and Weyl square are taken from `matrices` by name.
std::vector<LatticeFixture> parse_lattice_fixtures(std::string_view text, const std::vector<NamedMatrix>& matrices);

/// Embedded copies of core/data/*.txt.
const std::vector<Table1Row>& table1_catalog();
const std::vector<NamedMatrix>& theorem_matrices();
const std::vector<LatticeFixture>& lattice_fixtures();

struct GoldenReport {
  std::string subject;
  std::vector<CheckFailure> failures;
  bool ok() const { return failures.empty(); }
};

/// Every row must decode, pass verify_realization and reproduce its r.
/// Produces at most one failure per row.
GoldenReport verify_table1(const std::vector<Table1Row>& rows);

GoldenReport verify_fixture(const LatticeFixture& f);

/// Determinant of the lattice spanned by integer root coordinates inside a
/// lattice with Gram matrix `basis_gram` (rank 3 assumed).
Integer root_lattice_det(const IntMatrix& basis_gram, const IntMatrix& roots);

struct CrossCheckReport {
  /// Golden rows the engine did not produce.
  std::vector<std::string> missing_from_engine;
  /// Engine records absent from the golden table.
  std::vector<std::string> missing_from_golden;
  /// r disagreements, duplicate or undecodable golden rows, and Cartan
  /// matrices without a named counterpart (or named matrices left unmatched).
  std::vector<std::string> mismatched;
  std::size_t matched = 0;

  std::size_t missing() const { return missing_from_engine.size() + missing_from_golden.size(); }
  bool ok() const { return missing() == 0 && mismatched.empty(); }
};

/// Bijection between engine records and golden rows under canonical forms,
/// plus the Cartan matrices of untwisted non-compact records against the
/// named symmetric matrices (up to dihedral relabelling, matched by r).
CrossCheckReport cross_check(const std::vector<CatalogRecord>& records, const std::vector<Table1Row>& golden,
                             const std::vector<NamedMatrix>& matrices);

/// Untwisted polygon datum whose Gram matrix is `m`.
PolygonDatum datum_from_matrix(const IntMatrix& m);

}  // namespace hgcm
