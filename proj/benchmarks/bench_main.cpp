#include "corb/chains.hpp"
#include "corb/lm_geometry.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace corb;

static void BM_Snf(benchmark::State &state) {
  const size_t n = static_cast<size_t>(state.range(0));
  std::mt19937 rng(1);
  IntMatrix A(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      A(i, j) = static_cast<int>(rng() % 41) - 20;
  for (auto _ : state)
    benchmark::DoNotOptimize(snf(A));
}
BENCHMARK(BM_Snf)->DenseRange(4, 16, 4);

static void BM_CheckFan(benchmark::State &state) {
  StackyFan f = build_fan({Family::A, static_cast<int>(state.range(0))});
  for (auto _ : state)
    benchmark::DoNotOptimize(check_fan(f));
}
BENCHMARK(BM_CheckFan)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

static void BM_CanonicalForm(benchmark::State &state) {
  const int rank = static_cast<int>(state.range(0));
  Field F = Field::prime(BigInt(10007));
  std::mt19937 rng(2);
  std::vector<Rational> c;
  for (int i = 0; i < 2 * rank; ++i)
    c.emplace_back(1 + static_cast<long>(rng() % 10006));
  FanPoint p = make_point(shared_fan({Family::A, rank}), F, c);
  for (auto _ : state)
    benchmark::DoNotOptimize(canonical_form_lattice(p));
}
BENCHMARK(BM_CanonicalForm)->DenseRange(1, 7, 2);

static void BM_FiberProfile(benchmark::State &state) {
  Field F = Field::prime(BigInt(1009));
  UPoly p{Rational(1)};
  for (long r = 1; r <= state.range(0); ++r)
    p = upoly_mul(F, p, UPoly{F.element(-r), Rational(1)});
  ExtendedPoint e = point_from_polynomial(F, p);
  for (auto _ : state)
    benchmark::DoNotOptimize(fiber_profile(e));
}
BENCHMARK(BM_FiberProfile)->DenseRange(3, 9, 3);

static void BM_Minkowski(benchmark::State &state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(verify_minkowski(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_Minkowski)->DenseRange(2, 5, 1)->Unit(benchmark::kMillisecond);

static void BM_VerifyDivisor(benchmark::State &state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(verify_divisor_relation(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_VerifyDivisor)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

static void BM_VerifyHyperplane(benchmark::State &state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(verify_section_hyperplane(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_VerifyHyperplane)->DenseRange(2, 5, 1)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
