#include "hgcm/engine.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <numeric>
#include <set>
#include <thread>

namespace hgcm {

namespace {

// (rho, rho) of a three-side window, or nullopt when the window Gram matrix
// is not hyperbolic. With x = -g^{-1} lambda, (rho, rho) = lambda^T adj(g)
// lambda / det(g).
std::optional<Rational> window_square(std::int64_t a, std::int64_t b, std::int64_t c,
                                      const std::array<std::int64_t, 3>& l) {
  const Integer A(a), B(b), C(c);
  const Integer d = 8 - 2 * A * A - 2 * B * B - 2 * C * C - 2 * A * B * C;
  if (d >= 0) return std::nullopt;
  // Adjugate of [[2,-a,-b],[-a,2,-c],[-b,-c,2]].
  const Integer m00 = 4 - C * C, m11 = 4 - B * B, m22 = 4 - A * A;
  const Integer m01 = 2 * A + B * C, m02 = A * C + 2 * B, m12 = 2 * C + A * B;
  const Integer l0(l[0]), l1(l[1]), l2(l[2]);
  const Integer num = m00 * l0 * l0 + m11 * l1 * l1 + m22 * l2 * l2 +
                      2 * (m01 * l0 * l1 + m02 * l0 * l2 + m12 * l1 * l2);
  return Rational(num, d);
}

bool window_divisible(std::int64_t a, std::int64_t b, std::int64_t c, const std::array<std::int64_t, 3>& l) {
  return divisibility_ok(l[0], l[1], -a) && divisibility_ok(l[1], l[0], -a) && divisibility_ok(l[1], l[2], -c) &&
         divisibility_ok(l[2], l[1], -c) && divisibility_ok(l[0], l[2], -b) && divisibility_ok(l[2], l[0], -b);
}

template <class F>
void for_each_lambda_triple(std::int64_t lambda_max, F&& f) {
  for (std::int64_t l0 = 1; l0 <= lambda_max; ++l0)
    for (std::int64_t l1 = 1; l1 <= lambda_max; ++l1)
      for (std::int64_t l2 = 1; l2 <= lambda_max; ++l2) f(std::array<std::int64_t, 3>{l0, l1, l2});
}

std::int64_t integral_or(const Rational& q, bool* ok) {
  if (!q.is_integer()) {
    *ok = false;
    return 0;
  }
  return to_int64(q.numerator());
}

QMatrix window_gram(const ChainState& ch, std::size_t first) {
  QMatrix g(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) g(i, j) = Rational(ch.pairing(first + i, first + j));
  return g;
}

Rational det4(const ChainState& x, std::int64_t g14, std::int64_t g24, std::int64_t g34) {
  QMatrix g(4, 4);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) g(i, j) = Rational(x.pairing(i, j));
  const std::array<std::int64_t, 3> col{g14, g24, g34};
  for (std::size_t i = 0; i < 3; ++i) g(i, 3) = g(3, i) = Rational(col[i]);
  g(3, 3) = 2;
  return det(g);
}

// Candidate values of (d1, d4) for gluing a 3-window X with the window
// (d2, d3, d4). Non-degenerate case: the rho equation fixes g14. When rho
// has no d1 component the equation does not involve g14; then g14 must be
// an integral root of det(g) = 0, a quadratic in g14.
std::vector<std::int64_t> candidate_g14(const ChainState& x, std::int64_t g24, std::int64_t g34, std::int64_t lambda4) {
  const auto& ra = x.weyl().coords;
  if (!ra[0].is_zero()) {
    const Rational g14 = (Rational(-lambda4) - ra[1] * Rational(g24) - ra[2] * Rational(g34)) / ra[0];
    bool ok = true;
    const std::int64_t v = integral_or(g14, &ok);
    if (!ok || !det4(x, v, g24, g34).is_zero()) return {};
    return {v};
  }
  if (ra[1] * Rational(g24) + ra[2] * Rational(g34) != Rational(-lambda4)) return {};
  const Rational d0 = det4(x, 0, g24, g34);
  const Rational dp = det4(x, 1, g24, g34);
  const Rational dm = det4(x, -1, g24, g34);
  const Rational quad = (dp + dm) / Rational(2) - d0;
  const Rational lin = (dp - dm) / Rational(2);
  std::vector<Rational> roots;
  if (quad.is_zero()) {
    if (!lin.is_zero()) roots.push_back(-d0 / lin);
  } else {
    const Rational disc = lin * lin - Rational(4) * quad * d0;
    if (disc.sign() >= 0 && disc.is_integer()) {
      const Integer s = sqrt(disc.numerator());
      if (s * s == disc.numerator()) {
        roots.push_back((-lin + Rational(s)) / (Rational(2) * quad));
        if (s != 0) roots.push_back((-lin - Rational(s)) / (Rational(2) * quad));
      }
    }
  }
  std::vector<std::int64_t> out;
  for (const auto& q : roots) {
    bool ok = true;
    const std::int64_t v = integral_or(q, &ok);
    if (ok) out.push_back(v);
  }
  return out;
}

bool closing_pair_ok(std::int64_t g, std::int64_t lambda_first, std::int64_t lambda_last) {
  return g <= 0 && divisibility_ok(lambda_first, lambda_last, g) && divisibility_ok(lambda_last, lambda_first, g);
}

using OverlapKey = std::vector<std::int64_t>;

// Pairings and lambdas of `count` consecutive sides starting at `first`.
OverlapKey overlap_key(const ChainState& ch, std::size_t first, std::size_t count) {
  OverlapKey key;
  key.reserve(count * (count + 1) / 2 + count);
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = i + 1; j < count; ++j) key.push_back(ch.pairing(first + i, first + j));
  for (std::size_t i = 0; i < count; ++i) key.push_back(ch.lambda(first + i));
  return key;
}

struct RadiusOutcome {
  std::set<PackedDatum> closed;
  bool capped = false;
};

RadiusOutcome search_radius(const Rational& r, const RunOptions& opt) {
  RadiusOutcome out;
  std::vector<ChainState> chains = seed_triples(r, opt.lambda_max, opt.seed);
  while (!chains.empty()) {
    ChainPartition part = partition_closed(chains);
    for (const auto& d : part.closed) out.closed.insert(canonical_form(d));
    if (part.extendable.empty()) break;
    if (part.extendable.front().length() >= opt.max_sides) {
      out.capped = true;
      break;
    }
    chains = extend_step(part.extendable, r, opt.lambda_max);
  }
  return out;
}

template <class F>
void parallel_for(std::size_t count, unsigned jobs, F&& body) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (unsigned t = 0; t < jobs; ++t)
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = next++; i < count; i = next++) body(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

ChainState ChainState::window(std::int64_t a, std::int64_t b, std::int64_t c, std::array<std::int64_t, 3> lambda) {
  ChainState ch;
  ch.gram_ = {2, -a, -b, -a, 2, -c, -b, -c, 2};
  ch.lambda_.assign(lambda.begin(), lambda.end());
  ch.weyl_ = weyl_vector(window_gram(ch, 0), lambda);
  return ch;
}

ChainState ChainState::appended(const std::vector<std::int64_t>& to_new, std::int64_t lambda_new) const {
  const std::size_t n = length();
  if (to_new.size() != n) throw std::invalid_argument("chain: wrong number of pairings for the new side");
  ChainState ch;
  ch.gram_.assign((n + 1) * (n + 1), 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) ch.gram_[i * (n + 1) + j] = pairing(i, j);
    ch.gram_[i * (n + 1) + n] = ch.gram_[n * (n + 1) + i] = to_new[i];
  }
  ch.gram_[n * (n + 1) + n] = 2;
  ch.lambda_ = lambda_;
  ch.lambda_.push_back(lambda_new);
  ch.weyl_ = weyl_;
  return ch;
}

ChainState ChainState::sub_chain(std::size_t first, std::size_t count) const {
  if (count < 3 || first + count > length()) throw std::out_of_range("chain: sub-chain out of range");
  ChainState ch;
  ch.gram_.resize(count * count);
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < count; ++j) ch.gram_[i * count + j] = pairing(first + i, first + j);
  ch.lambda_.assign(lambda_.begin() + static_cast<std::ptrdiff_t>(first),
                    lambda_.begin() + static_cast<std::ptrdiff_t>(first + count));
  const std::array<std::int64_t, 3> l3{ch.lambda_[0], ch.lambda_[1], ch.lambda_[2]};
  ch.weyl_ = weyl_vector(window_gram(ch, 0), l3);
  return ch;
}

PolygonDatum ChainState::as_polygon() const {
  const std::size_t n = length();
  PolygonDatum d(n);
  for (std::size_t i = 0; i < n; ++i) {
    d.set_lambda(i, lambda_[i]);
    for (std::size_t j = i + 1; j < n; ++j) d.set_pairing(i, j, pairing(i, j));
  }
  return d;
}

std::vector<Rational> collect_radii(std::int64_t lambda_max) {
  if (lambda_max < 1) throw std::invalid_argument("collect_radii: lambda_max must be positive");
  std::set<Rational> radii;
  for (std::int64_t a = 0; a <= 2; ++a)
    for (std::int64_t b = 0; b <= 14; ++b)
      for (std::int64_t c = 0; c <= 2; ++c)
        for_each_lambda_triple(lambda_max, [&](const std::array<std::int64_t, 3>& l) {
          if (!window_divisible(a, b, c, l)) return;
          const auto r = window_square(a, b, c, l);
          if (r && r->sign() < 0) radii.insert(*r);
        });
  return {radii.begin(), radii.end()};
}

std::vector<ChainState> seed_triples(const Rational& r, std::int64_t lambda_max, const SeedOptions& options) {
  std::vector<ChainState> seeds;
  for (std::int64_t a = 0; a <= 2; ++a)
    for (std::int64_t c = 0; c <= 2; ++c)
      for_each_lambda_triple(lambda_max, [&](const std::array<std::int64_t, 3>& l) {
        if (options.exhaustive_bound) {
          for (std::int64_t b = 0; b <= *options.exhaustive_bound; ++b) {
            const auto rb = window_square(a, b, c, l);
            if (rb && *rb == r && window_divisible(a, b, c, l)) seeds.push_back(ChainState::window(a, b, c, l));
          }
          return;
        }
        for (std::int64_t b = 0;; ++b) {
          if (b > options.b_cap)
            throw MonotonicityCapError("seed_triples: b exceeded " + std::to_string(options.b_cap) + " for r = " +
                                       r.to_string() + ", a = " + std::to_string(a) + ", c = " + std::to_string(c));
          const auto rb = window_square(a, b, c, l);
          if (!rb || *rb < r) continue;
          if (*rb == r && window_divisible(a, b, c, l)) seeds.push_back(ChainState::window(a, b, c, l));
          break;
        }
      });
  return seeds;
}

ChainPartition partition_closed(const std::vector<ChainState>& chains) {
  ChainPartition part;
  for (const auto& ch : chains) {
    if (ch.closing_pairing() >= -2) {
      std::int64_t g = 0;
      for (std::int64_t l : ch.lambdas()) g = std::gcd(g, l);
      if (g == 1) part.closed.push_back(ch.as_polygon());
    } else {
      part.extendable.push_back(ch);
    }
  }
  return part;
}

std::vector<ChainState> extend_step(const std::vector<ChainState>& extendable, const Rational& r,
                                    std::int64_t lambda_max) {
  std::vector<ChainState> next;
  if (extendable.empty()) return next;
  const std::size_t len = extendable.front().length();
  for (const auto& ch : extendable) {
    if (ch.length() != len) throw std::invalid_argument("extend_step: chains of different lengths");
    if (ch.weyl().r != r) throw std::invalid_argument("extend_step: chain does not belong to r = " + r.to_string());
    for (std::int64_t l : ch.lambdas())
      if (l > lambda_max) throw std::invalid_argument("extend_step: twisting coefficient above lambda_max");
  }

  // Y chains indexed by their first len-1 sides.
  std::map<OverlapKey, std::vector<std::size_t>> by_head;
  for (std::size_t k = 0; k < extendable.size(); ++k) by_head[overlap_key(extendable[k], 0, len - 1)].push_back(k);

  if (len == 3) {
    for (const auto& x : extendable) {
      const auto it = by_head.find(overlap_key(x, 1, 2));
      if (it == by_head.end()) continue;
      for (std::size_t k : it->second) {
        const ChainState& y = extendable[k];
        const std::int64_t g24 = y.pairing(0, 2), g34 = y.pairing(1, 2), l4 = y.lambda(2);
        for (std::int64_t g14 : candidate_g14(x, g24, g34, l4)) {
          if (!closing_pair_ok(g14, x.lambda(0), l4)) continue;
          next.push_back(x.appended({g14, g24, g34}, l4));
        }
      }
    }
    return next;
  }

  // For len >= 4 the new side is expressed in Y's first window (which is
  // X's sides 2..4), so the rank-3 condition holds automatically.
  std::vector<std::optional<QVector>> tail_coords(extendable.size());
  for (const auto& x : extendable) {
    const auto it = by_head.find(overlap_key(x, 1, len - 1));
    if (it == by_head.end()) continue;
    for (std::size_t k : it->second) {
      const ChainState& y = extendable[k];
      if (!tail_coords[k]) {
        const QVector rhs{Rational(y.pairing(0, len - 1)), Rational(y.pairing(1, len - 1)),
                          Rational(y.pairing(2, len - 1))};
        tail_coords[k] = solve(window_gram(y, 0), rhs);
      }
      const QVector& cf = *tail_coords[k];
      const Rational g1n = cf[0] * Rational(x.pairing(0, 1)) + cf[1] * Rational(x.pairing(0, 2)) +
                           cf[2] * Rational(x.pairing(0, 3));
      bool ok = true;
      const std::int64_t v = integral_or(g1n, &ok);
      const std::int64_t l_new = y.lambda(len - 1);
      if (!ok || !closing_pair_ok(v, x.lambda(0), l_new)) continue;
      std::vector<std::int64_t> to_new(len);
      to_new[0] = v;
      for (std::size_t i = 1; i < len; ++i) to_new[i] = y.pairing(i - 1, len - 1);
      next.push_back(x.appended(to_new, l_new));
    }
  }
  return next;
}

EllipticRun run_elliptic(const RunOptions& opt) {
  if (opt.lambda_max < 1) throw std::invalid_argument("run_elliptic: lambda_max must be positive");
  if (opt.max_sides < 3) throw std::invalid_argument("run_elliptic: max_sides must be at least 3");
  EllipticRun run;
  for (const auto& r : collect_radii(opt.lambda_max))
    if (!opt.r_filter || *opt.r_filter == r) run.radii.push_back(r);

  std::vector<RadiusOutcome> outcomes(run.radii.size());
  parallel_for(run.radii.size(), opt.jobs, [&](std::size_t i) { outcomes[i] = search_radius(run.radii[i], opt); });

  for (std::size_t i = 0; i < run.radii.size(); ++i) {
    if (outcomes[i].capped) run.capped_radii.push_back(run.radii[i]);
    for (const auto& p : outcomes[i].closed) {
      CatalogRecord rec = make_record(unpack(p));
      if (rec.r != run.radii[i])
        throw std::logic_error("run_elliptic: record found under r = " + run.radii[i].to_string() + " has r = " +
                               rec.r.to_string());
      run.records.push_back(std::move(rec));
    }
  }
  sort_records(run.records);
  return run;
}

std::optional<std::size_t> chain_period(const ChainState& chain) {
  const std::size_t len = chain.length();
  for (std::size_t p = 1; p + 3 <= len; ++p) {
    bool periodic = true;
    for (std::size_t i = 0; periodic && i + p < len; ++i) {
      if (chain.lambda(i) != chain.lambda(i + p)) periodic = false;
      for (std::size_t j = i + 1; periodic && j + p < len; ++j)
        if (chain.pairing(i, j) != chain.pairing(i + p, j + p)) periodic = false;
    }
    if (periodic) return p;
  }
  return std::nullopt;
}

std::vector<std::int64_t> period_signature(const ChainState& chain, std::size_t period) {
  if (period == 0 || chain.length() < period + 3) throw std::invalid_argument("period_signature: chain too short");
  using Side = std::array<std::int64_t, 3>;
  std::vector<Side> fwd(period);
  for (std::size_t i = 0; i < period; ++i)
    fwd[i] = {chain.lambda(i), -chain.pairing(i, i + 1), -chain.pairing(i, i + 2)};
  // Read backwards, side i sees (d_i, d_{i-1}) and (d_i, d_{i-2}).
  std::vector<Side> bwd(period);
  for (std::size_t t = 0; t < period; ++t) {
    const std::size_t i = period - 1 - t;
    bwd[t] = {fwd[i][0], fwd[(i + period - 1) % period][1], fwd[(i + 2 * period - 2) % period][2]};
  }
  std::vector<std::int64_t> best;
  for (const auto* seq : {&fwd, &bwd})
    for (std::size_t s = 0; s < period; ++s) {
      std::vector<std::int64_t> flat;
      flat.reserve(3 * period);
      for (std::size_t t = 0; t < period; ++t) {
        const Side& side = (*seq)[(s + t) % period];
        flat.insert(flat.end(), side.begin(), side.end());
      }
      if (best.empty() || flat < best) best = std::move(flat);
    }
  return best;
}

ParabolicReport run_parabolic(const RunOptions& opt) {
  if (opt.lambda_max < 1) throw std::invalid_argument("run_parabolic: lambda_max must be positive");
  if (opt.max_sides < 3) throw std::invalid_argument("run_parabolic: max_sides must be at least 3");
  const Rational zero(0);
  ParabolicReport report;
  std::set<PackedDatum> closed;
  std::map<std::pair<std::size_t, std::vector<std::int64_t>>, ChainState> periodic;

  std::vector<ChainState> chains = seed_triples(zero, opt.lambda_max, opt.seed);
  while (!chains.empty()) {
    ChainPartition part = partition_closed(chains);
    for (const auto& d : part.closed) closed.insert(canonical_form(d));
    std::vector<ChainState> open;
    for (auto& ch : part.extendable) {
      if (const auto p = chain_period(ch)) {
        periodic.try_emplace({*p, period_signature(ch, *p)}, ch);
        continue;
      }
      open.push_back(std::move(ch));
    }
    if (open.empty()) break;
    if (open.front().length() >= opt.max_sides) {
      report.capped_chains = open.size();
      break;
    }
    chains = extend_step(open, zero, opt.lambda_max);
  }

  for (const auto& p : closed) report.closed.push_back(make_record(unpack(p)));
  sort_records(report.closed);
  for (auto& [key, witness] : periodic) report.periodic.push_back({key.first, key.second, witness});
  return report;
}

}  // namespace hgcm
