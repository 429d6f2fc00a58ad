#include "hgcm/canonical.hpp"

#include <algorithm>

namespace hgcm {

namespace {

PackedDatum apply_move(const PackedDatum& p, const DihedralMove& m) {
  const std::size_t n = p.n;
  const std::size_t pairs = n * (n - 1) / 2;
  PackedDatum out{n, std::vector<std::int64_t>(p.body.size())};
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t sj = m.apply(j, n);
    out.body[pairs + j] = p.body[pairs + sj];
    for (std::size_t k = j + 1; k < n; ++k) {
      const std::size_t sk = m.apply(k, n);
      out.body[packed_index(n, j, k)] = p.body[sj < sk ? packed_index(n, sj, sk) : packed_index(n, sk, sj)];
    }
  }
  return out;
}

}  // namespace

PackedDatum pack(const PolygonDatum& d) {
  const std::size_t n = d.size();
  PackedDatum p{n, {}};
  p.body.reserve(n * (n - 1) / 2 + n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k) p.body.push_back(-d.pairing(j, k));
  for (std::size_t j = 0; j < n; ++j) p.body.push_back(d.lambda(j));
  return p;
}

PolygonDatum unpack(const PackedDatum& p) {
  const std::size_t n = p.n;
  if (p.body.size() != n * (n - 1) / 2 + n) throw InvalidDatumError("packed datum: body has the wrong length");
  PolygonDatum d(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k) d.set_pairing(j, k, -p.body[packed_index(n, j, k)]);
  for (std::size_t j = 0; j < n; ++j) d.set_lambda(j, p.body[n * (n - 1) / 2 + j]);
  return d;
}

std::vector<PackedDatum> dihedral_images(const PackedDatum& p) {
  std::vector<PackedDatum> images;
  images.reserve(2 * p.n);
  for (int reflect = 0; reflect < 2; ++reflect)
    for (std::size_t s = 0; s < p.n; ++s) images.push_back(apply_move(p, {s, reflect != 0}));
  return images;
}

PackedDatum canonical_form(const PackedDatum& p) {
  if (p.n == 0) return p;
  auto images = dihedral_images(p);
  return *std::min_element(images.begin(), images.end());
}

}  // namespace hgcm
