#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "hgcm/polygon.hpp"

namespace hgcm {

/// Flat encoding of a polygon datum: the values -(delta_j, delta_k) for
/// j < k in row-major upper-triangular order, followed by lambda_1..lambda_n.
struct PackedDatum {
  std::size_t n = 0;
  std::vector<std::int64_t> body;

  friend bool operator==(const PackedDatum&, const PackedDatum&) = default;
  friend auto operator<=>(const PackedDatum&, const PackedDatum&) = default;
};

/// Position of the pair (j, k), 0 <= j < k < n, inside PackedDatum::body.
constexpr std::size_t packed_index(std::size_t n, std::size_t j, std::size_t k) {
  return j * (2 * n - j - 1) / 2 + (k - j - 1);
}

PackedDatum pack(const PolygonDatum& d);
/// Throws InvalidDatumError if the body length is not n(n-1)/2 + n.
PolygonDatum unpack(const PackedDatum& p);

/// The 2n relabellings of p: rotations by 0..n-1 first, then the
/// reflections i -> (s - i) mod n for s = 0..n-1. Duplicates are kept.
std::vector<PackedDatum> dihedral_images(const PackedDatum& p);

/// Lexicographically smallest body over the dihedral orbit.
PackedDatum canonical_form(const PackedDatum& p);

inline PackedDatum canonical_form(const PolygonDatum& d) { return canonical_form(pack(d)); }

inline bool dihedral_equivalent(const PolygonDatum& a, const PolygonDatum& b) {
  return a.size() == b.size() && canonical_form(a) == canonical_form(b);
}

}  // namespace hgcm
