#include <benchmark/benchmark.h>

#include "hgcm/engine.hpp"
#include "hgcm/goldens.hpp"

using namespace hgcm;

static void BM_CollectRadii(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(collect_radii(state.range(0)));
}
BENCHMARK(BM_CollectRadii)->Arg(1)->Arg(2)->Arg(6);

static void BM_SeedTriples(benchmark::State& state) {
  const Rational r = Rational::parse("-1/6");
  for (auto _ : state) benchmark::DoNotOptimize(seed_triples(r, state.range(0)));
}
BENCHMARK(BM_SeedTriples)->Arg(1)->Arg(6);

static void BM_RunElliptic(benchmark::State& state) {
  RunOptions opt;
  opt.lambda_max = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(run_elliptic(opt));
}
BENCHMARK(BM_RunElliptic)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_CanonicalForm(benchmark::State& state) {
  std::vector<PackedDatum> packed;
  for (const auto& row : table1_catalog()) packed.push_back(pack(datum_from_table(row.table)));
  for (auto _ : state)
    for (const auto& p : packed) benchmark::DoNotOptimize(canonical_form(p));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(packed.size()));
}
BENCHMARK(BM_CanonicalForm);

static void BM_VerifyRealization(benchmark::State& state) {
  std::vector<PolygonDatum> data;
  for (const auto& row : table1_catalog()) data.push_back(datum_from_table(row.table));
  for (auto _ : state)
    for (const auto& d : data) benchmark::DoNotOptimize(verify_realization(d));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(data.size()));
}
BENCHMARK(BM_VerifyRealization);

BENCHMARK_MAIN();
