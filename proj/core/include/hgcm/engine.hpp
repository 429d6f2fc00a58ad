#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hgcm/canonical.hpp"
#include "hgcm/catalog.hpp"
#include "hgcm/polygon.hpp"
#include "hgcm/rational.hpp"

namespace hgcm {

/// Open chain of consecutive sides delta_1..delta_L with all their mutual
/// pairings, twisting coefficients and the Weyl vector expressed in the
/// basis of the first three sides.
class ChainState {
 public:
  ChainState() = default;
  /// Three-side window with a = -(d1,d2), b = -(d1,d3), c = -(d2,d3).
  /// Throws NotHyperbolicError if the window Gram matrix is not hyperbolic.
  static ChainState window(std::int64_t a, std::int64_t b, std::int64_t c, std::array<std::int64_t, 3> lambda);

  std::size_t length() const { return lambda_.size(); }
  std::int64_t pairing(std::size_t i, std::size_t j) const { return gram_[i * length() + j]; }
  std::int64_t lambda(std::size_t i) const { return lambda_[i]; }
  const std::vector<std::int64_t>& lambdas() const { return lambda_; }
  const WeylData& weyl() const { return weyl_; }
  /// (delta_1, delta_L): the pairing that decides closure.
  std::int64_t closing_pairing() const { return pairing(0, length() - 1); }

  /// Chain extended by one side with the given pairings to all existing
  /// sides (`to_new[i]` = (delta_i, delta_new)).
  ChainState appended(const std::vector<std::int64_t>& to_new, std::int64_t lambda_new) const;

  /// `count` consecutive sides starting at `first`, with rho re-expressed
  /// in the new first window. Throws std::out_of_range.
  ChainState sub_chain(std::size_t first, std::size_t count) const;

  PolygonDatum as_polygon() const;

  friend bool operator==(const ChainState&, const ChainState&) = default;

 private:
  std::vector<std::int64_t> gram_;
  std::vector<std::int64_t> lambda_;
  WeylData weyl_;
};

class MonotonicityCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SeedOptions {
  /// Hard ceiling on b = -(d1,d3) while scanning for a given radius.
  std::int64_t b_cap = 10000;
  /// When set, scan every b in [0, bound] instead of relying on the
  /// monotonicity of (rho, rho) in b.
  std::optional<std::int64_t> exhaustive_bound;
};

/// Sorted, duplicate-free negative Weyl squares of all admissible windows
/// with a, c in [0,2], b in [0,14] and lambda_i <= lambda_max.
std::vector<Rational> collect_radii(std::int64_t lambda_max);

/// All admissible three-side windows whose Weyl square equals r.
/// Throws MonotonicityCapError if a scan exceeds options.b_cap.
std::vector<ChainState> seed_triples(const Rational& r, std::int64_t lambda_max, const SeedOptions& options = {});

struct ChainPartition {
  std::vector<PolygonDatum> closed;
  std::vector<ChainState> extendable;
};

/// Chains with (d1, dL) >= -2 close into polygons (kept only when lambda is
/// coprime); the others are returned for extension.
ChainPartition partition_closed(const std::vector<ChainState>& chains);

/// Glues every pair of extendable chains of length L that overlap in L-1
/// sides into a chain of length L+1, computing the one unknown pairing.
std::vector<ChainState> extend_step(const std::vector<ChainState>& extendable, const Rational& r,
                                    std::int64_t lambda_max);

struct RunOptions {
  std::int64_t lambda_max = 6;
  std::size_t max_sides = 32;
  unsigned jobs = 1;
  std::optional<Rational> r_filter;
  SeedOptions seed;
};

struct EllipticRun {
  std::vector<CatalogRecord> records;
  /// Radii whose search produced a chain with max_sides sides.
  std::vector<Rational> capped_radii;
  std::vector<Rational> radii;

  bool cap_hit() const { return !capped_radii.empty(); }
};

EllipticRun run_elliptic(const RunOptions& options);

/// A chain that is invariant under a shift of `period` sides.
struct PeriodicChain {
  std::size_t period = 0;
  /// Minimal representative over rotations and reversal of the per-side
  /// data (lambda_i, -(d_i,d_{i+1}), -(d_i,d_{i+2})) of one period.
  std::vector<std::int64_t> signature;
  ChainState witness;
};

struct ParabolicReport {
  std::vector<CatalogRecord> closed;
  std::vector<PeriodicChain> periodic;
  /// Chains abandoned at max_sides without closing or recurring.
  std::size_t capped_chains = 0;
};

/// Smallest p >= 1 such that the chain is invariant under i -> i+p on its
/// overlap and long enough to contain a full window after the shift.
std::optional<std::size_t> chain_period(const ChainState& chain);
std::vector<std::int64_t> period_signature(const ChainState& chain, std::size_t period);

ParabolicReport run_parabolic(const RunOptions& options);

}  // namespace hgcm
