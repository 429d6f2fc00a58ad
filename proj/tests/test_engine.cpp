#include "doctest.h"

#include <algorithm>
#include <set>

#include "hgcm/engine.hpp"
#include "hgcm/goldens.hpp"

using namespace hgcm;

namespace {

Rational q(const char* s) { return Rational::parse(s); }

bool contains(const std::vector<ChainState>& v, const ChainState& x) { return std::find(v.begin(), v.end(), x) != v.end(); }

bool contains(const std::vector<Rational>& v, const Rational& x) { return std::find(v.begin(), v.end(), x) != v.end(); }

// (rho, delta_j) for the chain's own rho, computed from the first window.
Rational rho_pairing(const ChainState& ch, std::size_t j) {
  Rational s;
  for (std::size_t k = 0; k < 3; ++k) s += ch.weyl().coords[k] * Rational(ch.pairing(k, j));
  return s;
}

void check_chain_invariants(const ChainState& ch, const Rational& r, std::int64_t lambda_max) {
  CHECK(ch.weyl().r == r);
  for (std::size_t j = 0; j < ch.length(); ++j) {
    CHECK(rho_pairing(ch, j) == Rational(-ch.lambda(j)));
    CHECK(ch.lambda(j) >= 1);
    CHECK(ch.lambda(j) <= lambda_max);
    if (j + 1 < ch.length()) CHECK(ch.pairing(j, j + 1) >= -2);
    for (std::size_t k = j + 1; k < ch.length(); ++k) CHECK(ch.pairing(j, k) <= 0);
  }
  const PolygonDatum d = ch.as_polygon();
  CHECK(rank(assemble_gram(d)) == 3);
  if (ch.length() >= 4) {
    const ChainState shifted = ch.sub_chain(1, ch.length() - 1);
    CHECK(shifted.weyl().r == r);
    for (std::size_t j = 0; j < shifted.length(); ++j) CHECK(rho_pairing(shifted, j) == Rational(-shifted.lambda(j)));
  }
}

std::set<PackedDatum> forms(const std::vector<CatalogRecord>& records) {
  std::set<PackedDatum> out;
  for (const auto& r : records) out.insert(r.canonical);
  return out;
}

}  // namespace

TEST_CASE("chain windows") {
  const ChainState w = ChainState::window(0, 1, 2, {1, 1, 1});
  CHECK(w.length() == 3);
  CHECK(w.pairing(0, 2) == -1);
  CHECK(w.pairing(1, 2) == -2);
  CHECK(w.weyl().r == q("-23/2"));
  CHECK(w.closing_pairing() == -1);
  CHECK_THROWS_AS(ChainState::window(0, 0, 0, {1, 1, 1}), NotHyperbolicError);
  CHECK_THROWS_AS(w.sub_chain(1, 3), std::out_of_range);
  CHECK_THROWS_AS(w.appended({0, 0}, 1), std::invalid_argument);
}

TEST_CASE("collect_radii") {
  const auto r2 = collect_radii(2);
  CHECK(contains(r2, q("-59/2")));
  CHECK(contains(r2, -22));
  const auto r1 = collect_radii(1);
  for (const char* s : {"-23/2", "-4", "-7/2", "-13/6", "-3/2"}) CHECK(contains(r1, q(s)));
  for (const auto& r : r2) CHECK(r.sign() < 0);
  CHECK(std::is_sorted(r2.begin(), r2.end()));
  CHECK(std::adjacent_find(r2.begin(), r2.end()) == r2.end());
  for (const auto& r : r1) CHECK(contains(r2, r));
  CHECK_THROWS_AS(collect_radii(0), std::invalid_argument);

  // Independent recomputation through the generic solver.
  std::set<Rational> expected;
  for (std::int64_t a = 0; a <= 2; ++a)
    for (std::int64_t b = 0; b <= 14; ++b)
      for (std::int64_t c = 0; c <= 2; ++c)
        for (std::int64_t l0 = 1; l0 <= 2; ++l0)
          for (std::int64_t l1 = 1; l1 <= 2; ++l1)
            for (std::int64_t l2 = 1; l2 <= 2; ++l2) {
              const QMatrix g{{2, -a, -b}, {-a, 2, -c}, {-b, -c, 2}};
              if (det(g) >= 0) continue;
              const std::int64_t l[3] = {l0, l1, l2};
              bool div = true;
              for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                  if (i != j) div = div && divisibility_ok(l[i], l[j], g(i, j).numerator().get_si());
              if (!div) continue;
              const WeylData w = weyl_vector(g, std::vector<std::int64_t>{l0, l1, l2});
              if (w.r.sign() < 0) expected.insert(w.r);
            }
  CHECK(std::vector<Rational>(expected.begin(), expected.end()) == r2);
}

TEST_CASE("seed_triples") {
  const auto a10 = seed_triples(q("-23/2"), 1);
  CHECK(contains(a10, ChainState::window(0, 1, 2, {1, 1, 1})));
  const auto top = seed_triples(q("-59/2"), 2);
  CHECK(contains(top, ChainState::window(0, 2, 1, {1, 2, 2})));
  CHECK_FALSE(contains(top, ChainState::window(0, 1, 2, {1, 2, 2})));
  CHECK(contains(seed_triples(-22, 2), ChainState::window(0, 2, 1, {2, 1, 1})));

  const Rational below = collect_radii(2).front() - Rational(1);
  CHECK(seed_triples(below, 2).empty());

  for (const char* s : {"-59/2", "-7", "-4", "-1", "-1/6", "-1/24", "0"}) {
    CAPTURE(s);
    const auto fast = seed_triples(q(s), 3);
    const auto full = seed_triples(q(s), 3, SeedOptions{10000, 200});
    CHECK(fast.size() == full.size());
    for (const auto& ch : full) CHECK(contains(fast, ch));
    for (const auto& ch : fast) check_chain_invariants(ch, q(s), 3);
  }
  CHECK_THROWS_AS(seed_triples(q("-1/24"), 1, SeedOptions{2, std::nullopt}), MonotonicityCapError);
}

TEST_CASE("partition_closed") {
  const ChainState a10 = ChainState::window(0, 1, 2, {1, 1, 1});
  const ChainState wide = ChainState::window(0, 3, 0, {1, 1, 1});
  const ChainState even = ChainState::window(0, 1, 2, {2, 2, 2});
  const ChainState boundary = ChainState::window(0, 2, 1, {1, 2, 2});
  const ChainPartition p = partition_closed({a10, wide, even, boundary});
  REQUIRE(p.closed.size() == 2);
  CHECK(p.closed[0] == a10.as_polygon());
  CHECK(p.closed[1] == boundary.as_polygon());
  REQUIRE(p.extendable.size() == 1);
  CHECK(p.extendable[0] == wide);
}

TEST_CASE("extend_step glues the r = -7 square") {
  const Rational r(-7);
  const ChainPartition seeds = partition_closed(seed_triples(r, 3));
  const auto fours = extend_step(seeds.extendable, r, 3);
  const PolygonDatum square = datum_from_table(GeometricRealizationTable{{{1, 3, 3, 1}, {0, 1, 0, 1}, {3, 3, 3, 3}}});
  bool found = false;
  for (const auto& ch : fours) {
    check_chain_invariants(ch, r, 3);
    if (ch.lambdas() == std::vector<std::int64_t>{1, 3, 3, 1} && ch.pairing(0, 1) == 0 && ch.pairing(0, 2) == -3) {
      CHECK(ch.closing_pairing() == -1);
      found = true;
    }
  }
  CHECK(found);
  const ChainPartition next = partition_closed(fours);
  CHECK(std::any_of(next.closed.begin(), next.closed.end(),
                    [&](const PolygonDatum& d) { return dihedral_equivalent(d, square); }));
}

TEST_CASE("extend_step preserves chain invariants through long chains") {
  const Rational r(-1);
  std::vector<ChainState> chains = seed_triples(r, 4);
  std::size_t longest = 0;
  while (!chains.empty()) {
    for (const auto& ch : chains) check_chain_invariants(ch, r, 4);
    const ChainPartition p = partition_closed(chains);
    for (const auto& d : p.closed) longest = std::max(longest, d.size());
    chains = extend_step(p.extendable, r, 4);
  }
  CHECK(longest == 8);
}

TEST_CASE("extend_step rejects inconsistent input") {
  const ChainState w = ChainState::window(0, 3, 0, {1, 1, 1});
  CHECK(extend_step({}, -1, 1).empty());
  CHECK_THROWS_AS(extend_step({w}, -1, 1), std::invalid_argument);
  CHECK_THROWS_AS(extend_step({w, w.appended({-3, 0, -3}, 1)}, w.weyl().r, 1), std::invalid_argument);
  CHECK_THROWS_AS(extend_step({ChainState::window(0, 3, 0, {2, 1, 1})}, ChainState::window(0, 3, 0, {2, 1, 1}).weyl().r, 1),
                  std::invalid_argument);
}

TEST_CASE("run_elliptic at lambda_max 1") {
  RunOptions opt;
  opt.lambda_max = 1;
  const EllipticRun run = run_elliptic(opt);
  CHECK(run.records.size() == 16);
  CHECK_FALSE(run.cap_hit());
  CHECK(run.radii == collect_radii(1));
  std::size_t noncompact = 0;
  for (const auto& rec : run.records) {
    CHECK(rec.flags.untwisted);
    CHECK(verify_realization(rec.datum).ok());
    CHECK(verify_realization(rec.datum).weyl->r == rec.r);
    CHECK(contains(run.radii, rec.r));
    CHECK(rec.canonical == canonical_form(rec.datum));
    noncompact += !rec.flags.compact;
  }
  CHECK(noncompact == 12);
  CHECK(std::is_sorted(run.records.begin(), run.records.end(), record_less));

  opt.jobs = 3;
  const EllipticRun threaded = run_elliptic(opt);
  REQUIRE(threaded.records.size() == run.records.size());
  for (std::size_t i = 0; i < run.records.size(); ++i)
    CHECK(to_record_line(threaded.records[i]) == to_record_line(run.records[i]));
}

TEST_CASE("catalog grows with lambda_max") {
  RunOptions opt;
  opt.lambda_max = 1;
  const auto small = forms(run_elliptic(opt).records);
  opt.lambda_max = 2;
  const auto large = forms(run_elliptic(opt).records);
  CHECK(std::includes(large.begin(), large.end(), small.begin(), small.end()));
  CHECK(large.size() > small.size());
}

TEST_CASE("run_elliptic options") {
  RunOptions opt;
  opt.lambda_max = 4;
  opt.r_filter = -1;
  const EllipticRun r1 = run_elliptic(opt);
  CHECK(r1.radii == std::vector<Rational>{-1});
  CHECK(r1.records.size() == 6);
  const PolygonDatum octagon = datum_from_table(GeometricRealizationTable{
      {{1, 3, 4, 3, 1, 3, 4, 3}, {0, 0, 0, 0, 0, 0, 0, 0}, {4, 4, 4, 14, 4, 4, 4, 14}, {6, 6, 24, 24, 6, 6, 24, 24},
       {4, 20, 34, 20, 4, 20, 34, 20}}});
  CHECK(std::any_of(r1.records.begin(), r1.records.end(),
                    [&](const CatalogRecord& rec) { return rec.canonical == canonical_form(octagon); }));

  opt.max_sides = 5;
  const EllipticRun capped = run_elliptic(opt);
  CHECK(capped.cap_hit());
  CHECK(capped.capped_radii == std::vector<Rational>{-1});
  for (const auto& rec : capped.records) CHECK(rec.datum.size() <= 5);

  opt.lambda_max = 0;
  CHECK_THROWS_AS(run_elliptic(opt), std::invalid_argument);
  opt.lambda_max = 1;
  opt.max_sides = 2;
  CHECK_THROWS_AS(run_elliptic(opt), std::invalid_argument);
}

TEST_CASE("chain periods") {
  // Every side meets its neighbour at 0 and the next one at -6.
  const ChainState w = ChainState::window(0, 6, 0, {1, 1, 1});
  CHECK(w.weyl().r == 0);
  CHECK_FALSE(chain_period(w).has_value());
  const auto fours = extend_step({w}, 0, 1);
  REQUIRE(fours.size() == 1);
  const ChainState& ch = fours.front();
  check_chain_invariants(ch, 0, 1);
  CHECK(chain_period(ch) == std::optional<std::size_t>(1));
  CHECK(period_signature(ch, 1) == std::vector<std::int64_t>{1, 0, 6});
  CHECK_THROWS_AS(period_signature(ch, 2), std::invalid_argument);
}

TEST_CASE("run_parabolic properties") {
  for (std::int64_t lambda_max : {1, 2, 3}) {
    RunOptions opt;
    opt.lambda_max = lambda_max;
    opt.max_sides = 12;
    const ParabolicReport rep = run_parabolic(opt);
    for (const auto& rec : rep.closed) {
      CHECK(rec.r == 0);
      CHECK(verify_realization(rec.datum).ok());
      CHECK(rec.flags.type == WeylType::parabolic);
      CHECK(rec.datum.size() <= opt.max_sides);
    }
    CHECK_FALSE(rep.periodic.empty());
    std::set<std::vector<std::int64_t>> signatures;
    for (const auto& pc : rep.periodic) {
      const ChainState& w = pc.witness;
      CHECK(w.length() <= opt.max_sides);
      CHECK(w.weyl().r == 0);
      check_chain_invariants(w, 0, lambda_max);
      CHECK(chain_period(w) == pc.period);
      CHECK(period_signature(w, pc.period) == pc.signature);
      CHECK(signatures.insert(pc.signature).second);
      if (w.length() >= pc.period + 4) {
        const ChainState shifted = w.sub_chain(1, w.length() - 1);
        REQUIRE(chain_period(shifted).has_value());
        CHECK(*chain_period(shifted) == pc.period);
        CHECK(period_signature(shifted, pc.period) == pc.signature);
      }
    }
  }
}
