#include "hgcm/goldens.hpp"

#include <map>
#include <numeric>
#include <optional>
#include <sstream>

namespace hgcm {

namespace embedded {
std::string_view table1_text();
std::string_view theorem_matrices_text();
std::string_view lattice_fixtures_text();
}  // namespace embedded

namespace {

struct Line {
  std::size_t number;
  std::string text;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

// Blank-line separated blocks of non-comment lines.
std::vector<std::vector<Line>> split_blocks(std::string_view text) {
  std::vector<std::vector<Line>> blocks(1);
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++number;
    const std::string line = trim(raw);
    if (line.empty()) {
      if (!blocks.back().empty()) blocks.emplace_back();
    } else if (line.front() != '#') {
      blocks.back().push_back({number, line});
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  if (blocks.back().empty()) blocks.pop_back();
  return blocks;
}

std::vector<std::int64_t> parse_ints(const Line& line) {
  std::istringstream is(line.text);
  std::vector<std::int64_t> out;
  std::string tok;
  while (is >> tok) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw GoldenParseError(line.number, "expected an integer, got '" + tok + "'");
    }
  }
  return out;
}

// `key = value` with the given key; nullopt if the line has another shape.
std::optional<std::string> keyed(const Line& line, std::string_view key) {
  const auto eq = line.text.find('=');
  if (eq == std::string::npos || trim(std::string_view(line.text).substr(0, eq)) != key) return std::nullopt;
  return trim(std::string_view(line.text).substr(eq + 1));
}

Rational parse_value(const Line& line, std::string_view text) {
  try {
    return Rational::parse(text);
  } catch (const std::exception& e) {
    throw GoldenParseError(line.number, e.what());
  }
}

Rational parse_r(const Line& line, std::string_view key = "r") {
  const auto value = keyed(line, key);
  if (!value) throw GoldenParseError(line.number, "expected '" + std::string(key) + " = p/q'");
  return parse_value(line, *value);
}

std::string header_name(const Line& line, std::string_view word) {
  if (line.text.rfind(std::string(word) + " ", 0) != 0)
    throw GoldenParseError(line.number, "expected '" + std::string(word) + " <name>'");
  return trim(std::string_view(line.text).substr(word.size() + 1));
}

std::string row_text(const std::vector<std::int64_t>& row) {
  std::string s;
  for (std::size_t i = 0; i < row.size(); ++i) s += (i ? " " : "") + std::to_string(row[i]);
  return s;
}

std::string describe(const CatalogRecord& rec) {
  std::string s = "r = " + rec.r.to_string() + " [";
  for (std::size_t i = 0; i < rec.table.rows.size(); ++i) s += (i ? "; " : "") + row_text(rec.table.rows[i]);
  return s + "]";
}

std::string describe(const Table1Row& row) {
  std::string s = "r = " + row.r.to_string() + " [";
  for (std::size_t i = 0; i < row.table.rows.size(); ++i) s += (i ? "; " : "") + row_text(row.table.rows[i]);
  return s + "] (line " + std::to_string(row.line) + ")";
}

Rational form(const IntMatrix& g, std::span<const Rational> x, std::span<const Rational> y) {
  Rational s;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) s += x[i] * Rational(g[i][j]) * y[j];
  return s;
}

std::array<Rational, 3> as_rational(const std::vector<std::int64_t>& v) {
  return {Rational(v[0]), Rational(v[1]), Rational(v[2])};
}

}  // namespace

std::vector<Table1Row> parse_golden_blocks(std::string_view text) {
  std::vector<Table1Row> rows;
  for (const auto& block : split_blocks(text)) {
    Table1Row row;
    row.line = block.front().number;
    row.r = parse_r(block.front());
    for (std::size_t i = 1; i < block.size(); ++i) row.table.rows.push_back(parse_ints(block[i]));
    if (row.table.rows.empty()) throw GoldenParseError(row.line, "block has no table rows");
    const std::size_t width = row.table.rows.front().size();
    for (std::size_t i = 0; i < row.table.rows.size(); ++i)
      if (row.table.rows[i].size() != width) throw GoldenParseError(block[i + 1].number, "ragged table row");
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<NamedMatrix> parse_theorem_matrices(std::string_view text) {
  std::vector<NamedMatrix> out;
  for (const auto& block : split_blocks(text)) {
    if (block.size() < 3) throw GoldenParseError(block.front().number, "matrix block too short");
    NamedMatrix m;
    m.name = header_name(block[0], "matrix");
    m.r = parse_r(block[1]);
    for (std::size_t i = 2; i < block.size(); ++i) m.matrix.push_back(parse_ints(block[i]));
    for (std::size_t i = 0; i < m.matrix.size(); ++i)
      if (m.matrix[i].size() != m.matrix.size()) throw GoldenParseError(block[i + 2].number, "matrix is not square");
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<LatticeFixture> parse_lattice_fixtures(std::string_view text, const std::vector<NamedMatrix>& matrices) {
  std::vector<LatticeFixture> out;
  for (const auto& block : split_blocks(text)) {
    LatticeFixture f;
    f.name = header_name(block[0], "fixture");
    const auto named = std::find_if(matrices.begin(), matrices.end(), [&](const NamedMatrix& m) { return m.name == f.name; });
    if (named == matrices.end()) throw GoldenParseError(block[0].number, "no matrix named '" + f.name + "'");
    f.expected_cartan = named->matrix;
    f.expected_r = named->r;
    IntMatrix* target = nullptr;
    bool have_rho = false, have_det = false, have_sym = false;
    for (std::size_t i = 1; i < block.size(); ++i) {
      const Line& line = block[i];
      if (line.text == "gram") {
        target = &f.basis_gram;
      } else if (line.text == "roots") {
        target = &f.roots;
      } else if (auto rho = keyed(line, "rho")) {
        std::istringstream is(*rho);
        std::string tok;
        std::size_t k = 0;
        while (is >> tok) {
          if (k == 3) throw GoldenParseError(line.number, "rho needs three coordinates");
          f.rho[k++] = parse_value(line, tok);
        }
        if (k != 3) throw GoldenParseError(line.number, "rho needs three coordinates");
        have_rho = true;
        target = nullptr;
      } else if (auto det_text = keyed(line, "lattice_det")) {
        const Rational d = parse_value(line, *det_text);
        if (!d.is_integer()) throw GoldenParseError(line.number, "lattice_det must be an integer");
        f.expected_lattice_det = d.numerator();
        have_det = true;
        target = nullptr;
      } else if (auto order = keyed(line, "sym_order")) {
        const Rational o = parse_value(line, *order);
        if (!o.is_integer() || o.sign() <= 0) throw GoldenParseError(line.number, "sym_order must be a positive integer");
        f.expected_sym_order = static_cast<std::size_t>(o.numerator().get_ui());
        have_sym = true;
        target = nullptr;
      } else if (target != nullptr) {
        auto row = parse_ints(line);
        if (row.size() != 3) throw GoldenParseError(line.number, "expected three coordinates");
        target->push_back(std::move(row));
      } else {
        throw GoldenParseError(line.number, "unexpected line '" + line.text + "'");
      }
    }
    if (f.basis_gram.size() != 3 || f.roots.size() < 3 || !have_rho || !have_det || !have_sym)
      throw GoldenParseError(block[0].number, "fixture '" + f.name + "' is incomplete");
    out.push_back(std::move(f));
  }
  return out;
}

const std::vector<Table1Row>& table1_catalog() {
  static const std::vector<Table1Row> rows = parse_golden_blocks(embedded::table1_text());
  return rows;
}

const std::vector<NamedMatrix>& theorem_matrices() {
  static const std::vector<NamedMatrix> m = parse_theorem_matrices(embedded::theorem_matrices_text());
  return m;
}

const std::vector<LatticeFixture>& lattice_fixtures() {
  static const std::vector<LatticeFixture> f = parse_lattice_fixtures(embedded::lattice_fixtures_text(), theorem_matrices());
  return f;
}

GoldenReport verify_table1(const std::vector<Table1Row>& rows) {
  GoldenReport rep{"table1", {}};
  for (const auto& row : rows) {
    const std::string where = describe(row);
    try {
      const PolygonDatum d = datum_from_table(row.table);
      const RealizationReport vr = verify_realization(d);
      std::string checks;
      std::string details;
      for (const auto& f : vr.failures) {
        checks += (checks.empty() ? "" : ",") + f.check;
        details += "; " + f.detail;
      }
      if (vr.weyl && vr.weyl->r != row.r) {
        checks += (checks.empty() ? "" : ",") + std::string("weyl-square");
        details += "; recomputed r = " + vr.weyl->r.to_string();
      }
      if (!checks.empty()) rep.failures.push_back({checks, where + details});
    } catch (const std::exception& e) {
      rep.failures.push_back({"decode", where + ": " + e.what()});
    }
  }
  return rep;
}

Integer root_lattice_det(const IntMatrix& basis_gram, const IntMatrix& roots) {
  Integer index = 0;
  const std::size_t n = roots.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        const auto& a = roots[i];
        const auto& b = roots[j];
        const auto& c = roots[k];
        const Integer minor = Integer(a[0]) * (b[1] * c[2] - b[2] * c[1]) - Integer(a[1]) * (b[0] * c[2] - b[2] * c[0]) +
                              Integer(a[2]) * (b[0] * c[1] - b[1] * c[0]);
        mpz_gcd(index.get_mpz_t(), index.get_mpz_t(), minor.get_mpz_t());
      }
  const Rational d = det(QMatrix::from_rows(basis_gram));
  return d.numerator() * index * index;
}

GoldenReport verify_fixture(const LatticeFixture& f) {
  GoldenReport rep{"fixture " + f.name, {}};
  auto fail = [&](std::string check, std::string detail) { rep.failures.push_back({std::move(check), std::move(detail)}); };
  const std::size_t n = f.roots.size();
  IntMatrix gram(n, std::vector<std::int64_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rational v = form(f.basis_gram, as_rational(f.roots[i]), as_rational(f.roots[j]));
      gram[i][j] = to_int64(v.numerator());
    }
  if (gram != f.expected_cartan) {
    for (std::size_t i = 0; i < n && i < f.expected_cartan.size(); ++i)
      for (std::size_t j = 0; j < n && j < f.expected_cartan.size(); ++j)
        if (gram[i][j] != f.expected_cartan[i][j])
          fail("gram", "(delta_" + std::to_string(i + 1) + ", delta_" + std::to_string(j + 1) + ") = " +
                           std::to_string(gram[i][j]) + ", expected " + std::to_string(f.expected_cartan[i][j]));
    if (n != f.expected_cartan.size()) fail("gram", "root count differs from the matrix size");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Rational rd = form(f.basis_gram, f.rho, as_rational(f.roots[i]));
    const Rational want = -Rational(gram[i][i]) / Rational(2);
    if (rd != want)
      fail("weyl", "(rho, delta_" + std::to_string(i + 1) + ") = " + rd.to_string() + ", expected " + want.to_string());
  }
  const Rational rr = form(f.basis_gram, f.rho, f.rho);
  if (rr != f.expected_r) fail("weyl-square", "(rho, rho) = " + rr.to_string() + ", expected " + f.expected_r.to_string());
  try {
    const SymmetryGroup g = symmetry_group(datum_from_matrix(gram));
    if (g.order != f.expected_sym_order)
      fail("symmetry", "symmetry group order " + std::to_string(g.order) + ", expected " +
                           std::to_string(f.expected_sym_order));
  } catch (const std::exception& e) {
    fail("symmetry", e.what());
  }
  const Integer ld = root_lattice_det(f.basis_gram, f.roots);
  if (ld != f.expected_lattice_det)
    fail("lattice", "root lattice determinant " + ld.get_str() + ", expected " + f.expected_lattice_det.get_str());
  return rep;
}

PolygonDatum datum_from_matrix(const IntMatrix& m) {
  return PolygonDatum::from_gram(m, std::vector<std::int64_t>(m.size(), 1));
}

CrossCheckReport cross_check(const std::vector<CatalogRecord>& records, const std::vector<Table1Row>& golden,
                             const std::vector<NamedMatrix>& matrices) {
  CrossCheckReport rep;
  std::map<PackedDatum, const Table1Row*> wanted;
  for (const auto& row : golden) {
    try {
      const PackedDatum key = canonical_form(datum_from_table(row.table));
      if (!wanted.emplace(key, &row).second) rep.mismatched.push_back("duplicate golden row " + describe(row));
    } catch (const std::exception& e) {
      rep.mismatched.push_back("undecodable golden row " + describe(row) + ": " + e.what());
    }
  }
  std::map<PackedDatum, const CatalogRecord*> found;
  for (const auto& rec : records) {
    found.emplace(rec.canonical, &rec);
    const auto it = wanted.find(rec.canonical);
    if (it == wanted.end()) {
      rep.missing_from_golden.push_back(describe(rec));
    } else if (it->second->r != rec.r) {
      rep.mismatched.push_back(describe(rec) + " has golden r = " + it->second->r.to_string());
    } else {
      ++rep.matched;
    }
  }
  for (const auto& [key, row] : wanted)
    if (!found.contains(key)) rep.missing_from_engine.push_back(describe(*row));

  std::vector<bool> used(matrices.size(), false);
  for (const auto& rec : records) {
    if (!rec.flags.untwisted || rec.flags.compact) continue;
    bool hit = false;
    for (std::size_t i = 0; i < matrices.size(); ++i) {
      if (matrices[i].r != rec.r) continue;
      const PolygonDatum m = datum_from_matrix(matrices[i].matrix);
      if (m.size() == rec.datum.size() && canonical_form(PolygonDatum::from_gram(rec.cartan.entries, rec.datum.lambdas())) ==
                                              canonical_form(m)) {
        hit = true;
        used[i] = true;
      }
    }
    if (!hit) rep.mismatched.push_back("Cartan matrix of " + describe(rec) + " matches no named matrix with the same r");
  }
  for (std::size_t i = 0; i < matrices.size(); ++i)
    if (!used[i])
      rep.mismatched.push_back("named matrix " + matrices[i].name + " (r = " + matrices[i].r.to_string() +
                               ") matches no record");
  return rep;
}

}  // namespace hgcm
