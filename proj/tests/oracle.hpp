#pragma once

#include <array>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "hgcm/canonical.hpp"
#include "hgcm/polygon.hpp"

namespace hgcm::testing {

// Brute force over every integer Gram matrix with diagonal 2, off-diagonal
// entries in [min_pairing, 0], adjacent entries >= -2 and lambda in
// [1, lambda_max]^n. Keeps canonical forms of data passing
// verify_realization with a negative Weyl square.
inline std::set<PackedDatum> brute_force_catalog(std::size_t n, std::int64_t lambda_max, std::int64_t min_pairing) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::int64_t> lo;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      pairs.emplace_back(i, j);
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      lo.push_back(adjacent ? -2 : min_pairing);
    }
  std::set<PackedDatum> found;
  std::vector<std::int64_t> g(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) g[i * n + i] = 2;
  std::vector<std::int64_t> value(pairs.size(), 0);
  std::vector<std::int64_t> lambda(n, 1);

  auto det3 = [&](std::size_t a, std::size_t b, std::size_t c) {
    const std::int64_t m[3][3] = {{g[a * n + a], g[a * n + b], g[a * n + c]},
                                  {g[b * n + a], g[b * n + b], g[b * n + c]},
                                  {g[c * n + a], g[c * n + b], g[c * n + c]}};
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };
  auto rank_three_candidate = [&] {
    if (n == 3) return det3(0, 1, 2) < 0;
    if (n != 4) return true;
    // Laplace expansion along the last row.
    std::int64_t d = 0;
    const std::size_t cols[4][3] = {{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}};
    for (std::size_t k = 0; k < 4; ++k) {
      const auto* c = cols[k];
      const std::int64_t minor =
          g[0 * n + c[0]] * (g[1 * n + c[1]] * g[2 * n + c[2]] - g[1 * n + c[2]] * g[2 * n + c[1]]) -
              g[0 * n + c[1]] * (g[1 * n + c[0]] * g[2 * n + c[2]] - g[1 * n + c[2]] * g[2 * n + c[0]]) +
              g[0 * n + c[2]] * (g[1 * n + c[0]] * g[2 * n + c[1]] - g[1 * n + c[1]] * g[2 * n + c[0]]);
      d += ((3 + k) % 2 ? -1 : 1) * g[3 * n + k] * minor;
    }
    return d == 0;
  };
  auto divisible = [&] {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && !divisibility_ok(lambda[i], lambda[j], g[i * n + j])) return false;
    return true;
  };

  auto visit = [&] {
    if (!rank_three_candidate()) return;
    for (bool more = true; more;) {
      std::int64_t gcd = 0;
      for (auto l : lambda) gcd = std::gcd(gcd, l);
      if (gcd == 1 && divisible()) {
        PolygonDatum d(n);
        for (std::size_t k = 0; k < pairs.size(); ++k) d.set_pairing(pairs[k].first, pairs[k].second, value[k]);
        for (std::size_t i = 0; i < n; ++i) d.set_lambda(i, lambda[i]);
        const RealizationReport rep = verify_realization(d);
        if (rep.ok() && rep.weyl->r.sign() < 0) found.insert(canonical_form(d));
      }
      more = false;
      for (std::size_t i = 0; i < n && !more; ++i) {
        if (lambda[i] < lambda_max) {
          ++lambda[i];
          more = true;
        } else {
          lambda[i] = 1;
        }
      }
    }
  };

  for (bool more = true; more;) {
    for (std::size_t k = 0; k < pairs.size(); ++k)
      g[pairs[k].first * n + pairs[k].second] = g[pairs[k].second * n + pairs[k].first] = value[k];
    visit();
    more = false;
    for (std::size_t k = 0; k < pairs.size() && !more; ++k) {
      if (value[k] > lo[k]) {
        --value[k];
        more = true;
      } else {
        value[k] = 0;
      }
    }
  }
  return found;
}

}  // namespace hgcm::testing
