#include <numeric>
#include <sstream>

#include "hgcm/polygon.hpp"

namespace hgcm {

namespace {

std::string side_pair(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

// First index triple whose Gram minor is non-singular, preferring cyclic
// windows of consecutive sides.
std::optional<std::array<std::size_t, 3>> find_basis(const QMatrix& gram) {
  const std::size_t n = gram.rows();
  auto nonsingular = [&](const std::array<std::size_t, 3>& idx) { return !det(gram.select(idx, idx)).is_zero(); };
  for (std::size_t i = 0; i < n; ++i) {
    std::array<std::size_t, 3> w{i, (i + 1) % n, (i + 2) % n};
    if (nonsingular(w)) return w;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        if (nonsingular({i, j, k})) return std::array<std::size_t, 3>{i, j, k};
  return std::nullopt;
}

}  // namespace

RealizationReport verify_realization(const PolygonDatum& d) {
  RealizationReport rep;
  const std::size_t n = d.size();
  auto fail = [&](std::string check, std::string detail) { rep.failures.push_back({std::move(check), std::move(detail)}); };
  if (n < 3) {
    fail("size", "a polygon needs at least 3 sides, got " + std::to_string(n));
    return rep;
  }

  bool lambda_positive = true;
  for (std::size_t i = 0; i < n; ++i)
    if (d.lambda(i) <= 0) {
      lambda_positive = false;
      fail("lambda", "lambda_" + std::to_string(i + 1) + " = " + std::to_string(d.lambda(i)) + " is not positive");
    }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (d.pairing(i, j) > 0) fail("nonpositive", "pairing " + side_pair(i, j) + " = " + std::to_string(d.pairing(i, j)));

  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    if (d.pairing(i, j) < -2) fail("adjacency", "pairing " + side_pair(i, j) + " = " + std::to_string(d.pairing(i, j)) + " < -2");
  }

  if (lambda_positive) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && !divisibility_ok(d.lambda(i), d.lambda(j), d.pairing(i, j)))
          fail("divisibility", "lambda_" + std::to_string(i + 1) + " does not divide lambda_" + std::to_string(j + 1) +
                                   " * g" + side_pair(i, j));
    std::int64_t g = 0;
    for (std::int64_t l : d.lambdas()) g = std::gcd(g, l);
    if (g != 1) fail("coprime", "gcd of twisting coefficients is " + std::to_string(g));
  }

  const QMatrix gram = assemble_gram(d);
  rep.gram_rank = rank(gram);
  if (rep.gram_rank != 3) fail("rank", "Gram matrix has rank " + std::to_string(rep.gram_rank) + ", expected 3");

  QMatrix c(n + 1, n);
  for (std::size_t j = 0; j < n; ++j) c(0, j) = Rational(d.lambda(j));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c(i + 1, j) = gram(i, j);
  rep.c_rank = rank(c);
  if (rep.c_rank != 3) fail("c-rank", "lambda-augmented Gram matrix has rank " + std::to_string(rep.c_rank) + ", expected 3");

  const auto basis = find_basis(gram);
  if (!basis) {
    fail("hyperbolic", "no three sides span a non-degenerate plane");
    return rep;
  }
  const QMatrix g3 = gram.select(*basis, *basis);
  if (det(g3).sign() > 0) {
    fail("hyperbolic", "Gram matrix of sides " + side_pair((*basis)[0], (*basis)[1]) + "," +
                           std::to_string((*basis)[2] + 1) + " is positive definite");
    return rep;
  }
  const std::array<std::int64_t, 3> l3{d.lambda((*basis)[0]), d.lambda((*basis)[1]), d.lambda((*basis)[2])};
  const WeylData w = weyl_vector(g3, l3);
  rep.weyl = w;
  for (std::size_t i = 0; i < n; ++i) {
    Rational dot;
    for (std::size_t k = 0; k < 3; ++k) dot += w.coords[k] * gram((*basis)[k], i);
    if (dot != Rational(-d.lambda(i)))
      fail("weyl", "(rho, delta_" + std::to_string(i + 1) + ") = " + dot.to_string() + ", expected " +
                       std::to_string(-d.lambda(i)));
  }
  return rep;
}

ClassificationFlags classify_flags(const PolygonDatum& d, const WeylData& w) {
  if (w.r.sign() > 0) throw std::invalid_argument("classify_flags: Weyl vector has positive square " + w.r.to_string());
  ClassificationFlags f;
  f.type = w.r.sign() < 0 ? WeylType::elliptic : WeylType::parabolic;
  const std::size_t n = d.size();
  f.compact = true;
  for (std::size_t i = 0; i < n; ++i)
    if (d.pairing(i, (i + 1) % n) == -2) f.compact = false;
  f.untwisted = true;
  for (std::int64_t l : d.lambdas())
    if (l != 1) f.untwisted = false;
  return f;
}

SymmetryGroup symmetry_group(const PolygonDatum& d) {
  const std::size_t n = d.size();
  SymmetryGroup g;
  g.elements.clear();
  g.rotations = 0;
  for (int reflect = 0; reflect < 2; ++reflect)
    for (std::size_t s = 0; s < n; ++s) {
      const DihedralMove m{s, reflect != 0};
      if (relabel(d, m) == d) g.elements.push_back(m);
    }
  g.order = g.elements.size();
  std::optional<DihedralMove> first_rotation;
  std::optional<DihedralMove> first_reflection;
  for (const auto& m : g.elements) {
    if (!m.reflect) {
      ++g.rotations;
      if (m.shift != 0 && !first_rotation) first_rotation = m;
    } else if (!first_reflection) {
      first_reflection = m;
    }
  }
  if (first_rotation) g.generators.push_back(*first_rotation);
  if (first_reflection) g.generators.push_back(*first_reflection);
  if (g.order == 1)
    g.kind = SymmetryGroup::Kind::trivial;
  else if (!first_reflection)
    g.kind = SymmetryGroup::Kind::cyclic;
  else
    g.kind = SymmetryGroup::Kind::dihedral;
  return g;
}

std::string SymmetryGroup::name() const {
  switch (kind) {
    case Kind::trivial:
      return "trivial";
    case Kind::cyclic:
      return "C_" + std::to_string(rotations);
    case Kind::dihedral:
      return "D_" + std::to_string(rotations);
  }
  return "?";
}

}  // namespace hgcm
