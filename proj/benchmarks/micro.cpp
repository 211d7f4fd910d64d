#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "cqt/bench.hpp"
#include "cqt/funm_contour.hpp"
#include "cqt/funm_series.hpp"

namespace {

using namespace cqt;

std::mt19937_64 rng(7);

cplx draw() {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return {u(rng), u(rng)};
}

LaurentSymbol random_symbol(int lo, int hi, double mass) {
  std::vector<cplx> c(static_cast<std::size_t>(hi - lo + 1));
  double total = 0.0;
  for (auto& x : c) {
    x = draw();
    total += std::abs(x);
  }
  for (auto& x : c) x *= mass / total;
  return {lo, std::move(c)};
}

Correction random_correction(Index p, Index q, Index r, double mass) {
  Matrix u(p, r), v(q, r);
  for (Index i = 0; i < u.size(); ++i) u.data()[i] = draw();
  for (Index i = 0; i < v.size(); ++i) v.data()[i] = draw();
  return {u * (mass / (u * v.transpose()).cwiseAbs().sum()), v};
}

void BM_SymMul(benchmark::State& state, MulKernel kernel) {
  const int n = static_cast<int>(state.range(0));
  const LaurentSymbol a = random_symbol(-n, n, 1.0), b = random_symbol(-n, n, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(sym_mul(a, b, kernel));
  state.SetComplexityN(n);
}
BENCHMARK_CAPTURE(BM_SymMul, direct, MulKernel::Direct)->RangeMultiplier(4)->Range(4, 1024);
BENCHMARK_CAPTURE(BM_SymMul, fft, MulKernel::Fft)->RangeMultiplier(4)->Range(4, 1024);

void BM_CqtMul(benchmark::State& state) {
  const ToleranceConfig cfg;
  const int band = static_cast<int>(state.range(0));
  const CqtMatrix a{random_symbol(-band, band, 1.0), random_correction(3 * band, 3 * band, 3, 0.5)};
  const CqtMatrix b{random_symbol(-band, band, 1.0), random_correction(2 * band, 4 * band, 2, 0.5)};
  for (auto _ : state) benchmark::DoNotOptimize(cqt_mul(a, b, cfg));
}
BENCHMARK(BM_CqtMul)->Arg(2)->Arg(8)->Arg(32)->Unit(benchmark::kMicrosecond);

void BM_CqtInv(benchmark::State& state) {
  const ToleranceConfig cfg;
  LaurentSymbol off = random_symbol(-3, 3, 1.5);
  off = off - LaurentSymbol::constant(off.coeff(0));
  const CqtMatrix a{LaurentSymbol::constant(4.0) + off, random_correction(6, 6, 2, 0.5)};
  for (auto _ : state) benchmark::DoNotOptimize(cqt_inv(a, cfg));
}
BENCHMARK(BM_CqtInv)->Unit(benchmark::kMillisecond);

void BM_FqtInv(benchmark::State& state) {
  const ToleranceConfig cfg;
  const Index m = state.range(0);
  FiniteQtMatrix a = FiniteQtMatrix::toeplitz(m, LaurentSymbol(-1, {-1.0, 4.0, -1.0}));
  a.tl = random_correction(5, 5, 2, 0.5);
  a.br = random_correction(4, 4, 1, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(fqt_inv(a, cfg));
}
BENCHMARK(BM_FqtInv)->RangeMultiplier(4)->Range(64, 4096)->Unit(benchmark::kMillisecond);

void BM_HessenbergExp(benchmark::State& state) {
  const ToleranceConfig cfg;
  const auto k = static_cast<std::size_t>(state.range(0));
  const CqtMatrix a = CqtMatrix::toeplitz(LaurentSymbol(-1, std::vector<cplx>(k + 2, 1.0)));
  for (auto _ : state) benchmark::DoNotOptimize(funm_taylor(a, SeriesSpec::exp(), cfg));
}
BENCHMARK(BM_HessenbergExp)->DenseRange(1, 5)->Unit(benchmark::kMillisecond);

void BM_FiniteExp(benchmark::State& state) {
  const ToleranceConfig cfg;
  const FiniteQtMatrix a = laplacian_power(state.range(0), 10, cfg);
  for (auto _ : state) benchmark::DoNotOptimize(funm_taylor(a, SeriesSpec::exp(), cfg));
}
BENCHMARK(BM_FiniteExp)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_ContourSqrt(benchmark::State& state) {
  const ToleranceConfig cfg;
  const Index m = state.range(0);
  const FiniteQtMatrix a = fqt_add(FiniteQtMatrix::identity(m), laplacian_power(m, 10, cfg), cfg);
  const ContourSpec c = ContourSpec::circle({1.5, 0.0}, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(funm_contour(a, [](cplx z) { return std::sqrt(z); }, c, cfg));
  }
}
BENCHMARK(BM_ContourSqrt)->Arg(60)->Arg(200)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
