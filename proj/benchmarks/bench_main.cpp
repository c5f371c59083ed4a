#include <benchmark/benchmark.h>

#include <cmath>

#include "lusin/bundle.hpp"
#include "lusin/catalog.hpp"
#include "lusin/convexity.hpp"
#include "lusin/grid.hpp"
#include "lusin/maximal.hpp"
#include "lusin/mollify.hpp"
#include "lusin/smoothmax.hpp"

namespace {

lusin::QuadraticBundle make_bundle(int atoms) {
  lusin::Rng rng(7);
  std::vector<lusin::BundleAtom> a;
  for (int i = 0; i < atoms; ++i) {
    double z = rng.uniform(-2.0, 2.0);
    a.push_back({lusin::Point(z), z * z, lusin::Point(2.0 * z)});
  }
  return lusin::QuadraticBundle(1.0, std::move(a));
}

void BM_BundleEval(benchmark::State& state) {
  lusin::QuadraticBundle b = make_bundle(static_cast<int>(state.range(0)));
  double x = -1.7;
  for (auto _ : state) {
    benchmark::DoNotOptimize(b.eval(lusin::Point(x)));
    x = x < 1.7 ? x + 1e-3 : -1.7;
  }
}
BENCHMARK(BM_BundleEval)->Arg(8)->Arg(64)->Arg(512);

void BM_ThetaKernel(benchmark::State& state) {
  lusin::ThetaKernel th(0.25);
  double t = -0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(th.value(t));
    t = t < 0.5 ? t + 1e-4 : -0.5;
  }
}
BENCHMARK(BM_ThetaKernel);

void BM_SmoothMax(benchmark::State& state) {
  lusin::ThetaKernel th(0.25);
  double x = -1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lusin::smooth_max(th, x * x, 1.0 - x));
    x = x < 1.0 ? x + 1e-4 : -1.0;
  }
}
BENCHMARK(BM_SmoothMax);

void BM_MaximalFunction(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  lusin::GridFunction g(lusin::Box(-1.0, 1.0), n);
  lusin::Rng rng(11);
  for (int i = 0; i < n; ++i) g.at(i) = rng.uniform();
  for (auto _ : state) {
    benchmark::DoNotOptimize(lusin::maximal_function(g));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_MaximalFunction)->Range(256, 16384)->Complexity();

void BM_Mollify(benchmark::State& state) {
  lusin::CatalogEntry e = lusin::make_abs_plus_quad();
  lusin::ValueOracle m = lusin::mollify(e.oracle, 0.1);
  double x = -2.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(m.value(lusin::Point(x)));
    x = x < 2.0 ? x + 1e-3 : -2.0;
  }
}
BENCHMARK(BM_Mollify);

void BM_CertifyConvexity(benchmark::State& state) {
  lusin::CatalogEntry e = lusin::make_abs_plus_quad();
  lusin::CertifyOptions opt;
  opt.trials = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        lusin::certify_strong_convexity(e.oracle, e.box, e.eta, opt));
  }
}
BENCHMARK(BM_CertifyConvexity)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
