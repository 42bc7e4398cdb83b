#include <benchmark/benchmark.h>

#include <cmath>

#include "biqwlct/analysis.hpp"
#include "biqwlct/transform.hpp"

using namespace biqwlct;

namespace {

TransformConfig config(TransformPath path) {
  TransformConfig c;
  c.m1 = LctParam::make(1, 1, 0, 1);
  c.m2 = LctParam::make(0.8, -0.6, 0.6, 0.8);
  const double s = 1 / std::sqrt(3.0);
  c.mu = RootOfMinusOne::make({0.0, s, s, s});
  c.path = path;
  return c;
}

void BM_Multiply(benchmark::State& state) {
  Biquaternion a{Complex{0.3, 0.1}, Complex{-0.2, 0.7}, 0.5, Complex{0.0, 1.1}};
  const Biquaternion b{Complex{1.0, -0.4}, 0.2, Complex{0.9, 0.3}, -0.6};
  for (auto _ : state) {
    a = a * b;
    a = a * (1.0 / norm(a));
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_Multiply);

void BM_Exp(benchmark::State& state) {
  const Biquaternion h{Complex{0.3, 0.1}, Complex{-0.2, 0.7}, 0.5, Complex{0.0, 1.1}};
  for (auto _ : state) benchmark::DoNotOptimize(biqwlct::exp(h));
}
BENCHMARK(BM_Exp);

void BM_LctFast(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const GridSpec g = GridSpec::symmetric(n, n, 0.25, 0.25);
  const Field2D f = make_random_field(g, 1);
  const auto cfg = config(TransformPath::Fast);
  for (auto _ : state) benchmark::DoNotOptimize(rbiqlct_fast(f, cfg));
}
BENCHMARK(BM_LctFast)->RangeMultiplier(2)->Range(16, 256)->Unit(benchmark::kMillisecond);

void BM_LctDirect(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const GridSpec g = GridSpec::symmetric(n, n, 0.25, 0.25);
  const Field2D f = make_random_field(g, 1);
  const auto cfg = config(TransformPath::Direct);
  const GridSpec w = dual_grid(g, cfg.m1, cfg.m2);
  for (auto _ : state) benchmark::DoNotOptimize(rbiqlct_direct(f, cfg, w));
}
BENCHMARK(BM_LctDirect)->RangeMultiplier(2)->Range(16, 64)->Unit(benchmark::kMillisecond);

void BM_WlctFast(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const GridSpec g = GridSpec::symmetric(n, n, 0.25, 0.25);
  const Field2D f = make_random_field(g, 2);
  const Field2D phi = make_gaussian(1.0, 1.0, 1.0, g);
  const auto cfg = config(TransformPath::Fast);
  const GridSpec w = dual_grid(g, cfg.m1, cfg.m2);
  const GridSpec nu = nu_lattice(g, 4);
  for (auto _ : state) benchmark::DoNotOptimize(biqwlct::biqwlct(f, phi, cfg, w, nu));
}
BENCHMARK(BM_WlctFast)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
