#include <benchmark/benchmark.h>

#include "octic/certify.hpp"
#include "octic/elimination.hpp"

using namespace octic;

namespace {

// Nested square root sqrt(2 sqrt2 - 2) and arithmetic in the resulting tower.
void BM_TowerArithmetic(benchmark::State& state) {
  const TowerElem r = adjoin_sqrt(TowerElem(QSqrt2(-2, 2)));
  const TowerElem s = r + TowerElem(QSqrt2(1, 1));
  for (auto _ : state) {
    TowerElem x = s;
    for (int k = 0; k < 16; ++k) x = x * s + r;
    benchmark::DoNotOptimize(x / s);
  }
}
BENCHMARK(BM_TowerArithmetic);

void BM_TowerSign(benchmark::State& state) {
  const TowerElem r = adjoin_sqrt(TowerElem(QSqrt2(-2, 2)));
  const TowerElem x = r * r * r - TowerElem(QSqrt2(Rat(1), Rat(1))) * r;
  for (auto _ : state) benchmark::DoNotOptimize(x.sign());
}
BENCHMARK(BM_TowerSign);

// Eliminating a variable between the E0 quartic and its partial derivative.
void BM_QuarticResultant(benchmark::State& state) {
  const Poly G = segre_reduce(restrict(build_F(endrass_params()), PlaneId::E0)).poly;
  const Poly Gx = G.partial(0);
  for (auto _ : state) benchmark::DoNotOptimize(resultant(G, Gx, 0));
}
BENCHMARK(BM_QuarticResultant)->Unit(benchmark::kMillisecond);

void BM_Pipeline(benchmark::State& state) {
  const OcticParams p = endrass_params();
  const int jobs = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_pipeline(p, jobs).total);
}
BENCHMARK(BM_Pipeline)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->Iterations(2);

void BM_Certificate(benchmark::State& state) {
  const OcticParams p = endrass_params();
  for (auto _ : state) benchmark::DoNotOptimize(build_certificate(p, 4).pass);
}
BENCHMARK(BM_Certificate)->Unit(benchmark::kMillisecond)->Iterations(2);

}  // namespace

BENCHMARK_MAIN();
