#include <random>

#include <benchmark/benchmark.h>

#include "stringy/count.hpp"
#include "stringy/epoly.hpp"
#include "stringy/padic.hpp"
#include "stringy/strata.hpp"
#include "stringy/stringy_e.hpp"

using namespace stringy;

namespace {

EPoly random_poly(std::mt19937_64& rng, std::int64_t den, int terms, std::int64_t max_num) {
  std::uniform_int_distribution<std::int64_t> e(0, max_num);
  std::uniform_int_distribution<long> c(-1000, 1000);
  EPoly p(den);
  for (int i = 0; i < terms; ++i) p += EPoly::monomial(e(rng), e(rng), c(rng), den);
  return p;
}

StratumTable random_table(std::mt19937_64& rng, std::size_t width) {
  StratumTable t(Flavor::Open, width);
  std::uniform_int_distribution<SubsetMask> j(0, (SubsetMask{1} << width) - 1);
  for (std::size_t i = 0; i < (std::size_t{1} << width) / 2; ++i) t.add(j(rng), random_poly(rng, 1, 3, 4));
  return t;
}

}  // namespace

static void BM_EPolyMultiply(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto terms = static_cast<int>(state.range(0));
  const EPoly a = random_poly(rng, 3, terms, 60);
  const EPoly b = random_poly(rng, 2, terms, 60);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_EPolyMultiply)->Arg(8)->Arg(32)->Arg(128);

static void BM_ClosedFromOpen(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const StratumTable t = random_table(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(closed_from_open(t));
}
BENCHMARK(BM_ClosedFromOpen)->DenseRange(4, 10, 3);

static void BM_StringyEBlowup(benchmark::State& state) {
  const ResolutionData r = blowup_strata(static_cast<unsigned>(state.range(0))).resolution;
  for (auto _ : state) {
    const StringyE e = stringy_E(r);
    benchmark::DoNotOptimize(is_polynomial(e.value, 1));
  }
}
BENCHMARK(BM_StringyEBlowup)->DenseRange(2, 6, 2);

static void BM_EnumerationOracle(benchmark::State& state) {
  MonomialForm f;
  f.exponents = {mpq_class(1, 2), mpq_class(7, 3)};
  f.dimension = 2;
  const LocalField field = LocalField::radical(9);
  for (auto _ : state) benchmark::DoNotOptimize(enumeration_oracle(f, field, state.range(0)));
}
BENCHMARK(BM_EnumerationOracle)->Arg(16)->Arg(64);

static void BM_BruteForceCount(benchmark::State& state) {
  const CountScheme s = CountScheme::blowup_origin_affine(2);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_count(s, static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_BruteForceCount)->Arg(5)->Arg(13);
BENCHMARK_MAIN();
