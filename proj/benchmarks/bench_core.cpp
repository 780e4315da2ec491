#include <benchmark/benchmark.h>

#include <random>

#include "sklyanin/atlas.hpp"
#include "sklyanin/calibrate.hpp"
#include "sklyanin/center.hpp"
#include "sklyanin/suites.hpp"

using namespace skl;

namespace {

RatPair tau_n(int n) { return {Rational(1, n), Rational(0)}; }

const Curve& curve_n(int n) {
  static std::map<int, Curve> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    const LatticeParam lat;
    it = cache.emplace(n, Curve(lat, tau_n(n), calibrate(lat, tau_n(n)).best)).first;
  }
  return it->second;
}

void BM_Theta(benchmark::State& st) {
  const LatticeParam lat;
  cplx z(0.3, 0.4), acc = 0.0;
  for (auto _ : st) {
    for (ThetaChar ch : kAllChars) acc += theta(ch, z, lat);
    z += cplx(1e-9, 0.0);
  }
  benchmark::DoNotOptimize(acc);
}
BENCHMARK(BM_Theta);

void BM_Calibrate(benchmark::State& st) {
  const LatticeParam lat;
  for (auto _ : st) benchmark::DoNotOptimize(calibrate(lat, tau_n(static_cast<int>(st.range(0)))));
}
BENCHMARK(BM_Calibrate)->Arg(3)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_AlgebraBuild(benchmark::State& st) {
  const RelationSet R = build_relations(curve_n(5).J());
  for (auto _ : st) benchmark::DoNotOptimize(GradedAlgebra(R, static_cast<int>(st.range(0))));
}
BENCHMARK(BM_AlgebraBuild)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

void BM_LineModule(benchmark::State& st) {
  const Curve& C = curve_n(5);
  std::mt19937_64 rng(1);
  const auto p = C.random_point(rng), q = C.random_point(rng);
  for (auto _ : st) benchmark::DoNotOptimize(line_module(C, p, q, static_cast<int>(st.range(0))));
}
BENCHMARK(BM_LineModule)->Arg(8)->Arg(16)->Unit(benchmark::kMicrosecond);

void BM_CommonFatPoint(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const Curve& C = curve_n(n);
  std::mt19937_64 rng(2);
  const auto p = C.random_point(rng), q = C.random_point(rng);
  const auto p2 = C.random_point(rng);
  const auto q2 = -(p + q) - C.tau_multiple(2) - p2;
  for (auto _ : st) benchmark::DoNotOptimize(common_fatpoint(C, {p, q}, {p2, q2}, C.s() + 2));
}
BENCHMARK(BM_CommonFatPoint)->Arg(3)->Arg(5)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_StandardPolynomial(benchmark::State& st) {
  const int m = static_cast<int>(st.range(0));
  std::mt19937_64 rng(3);
  std::normal_distribution<double> N;
  std::vector<Mat> a(m, Mat(5, 5));
  for (auto& x : a)
    for (int i = 0; i < 25; ++i) x(i) = cplx(N(rng), N(rng));
  for (auto _ : st) benchmark::DoNotOptimize(standard_polynomial(a));
}
BENCHMARK(BM_StandardPolynomial)->DenseRange(6, 12, 2)->Unit(benchmark::kMillisecond);

void BM_SuiteAll(benchmark::State& st) {
  RunConfig cfg = *preset(st.range(0) == 3 ? "n3" : "n8");
  for (auto _ : st) benchmark::DoNotOptimize(run_suites(cfg));
}
BENCHMARK(BM_SuiteAll)->Arg(3)->Arg(8)->Unit(benchmark::kSecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
