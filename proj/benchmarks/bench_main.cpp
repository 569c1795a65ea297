#include <benchmark/benchmark.h>

#include "pluriminimal/family.hpp"
#include "pluriminimal/geometry.hpp"
#include "pluriminimal/jet.hpp"
#include "pluriminimal/relations.hpp"
#include "pluriminimal/sampling.hpp"
#include "pluriminimal/self_intersect.hpp"

namespace {

using namespace pluri;

WeierstrassData furuhata() {
  return split_pairs(solve_family({parse_expr("z1^3", 1), parse_expr("0", 1)})).data;
}

void BM_EvalJet2(benchmark::State& state) {
  const HoloExpr e = parse_expr("exp(z1*z2) + sin(z1^3 - 2*z2) * cos(z2)", 2);
  const Point z{{0.3, -0.7}, {1.1, 0.2}};
  for (auto _ : state) benchmark::DoNotOptimize(eval_jet2(e, z));
}
BENCHMARK(BM_EvalJet2);

void BM_Conformality(benchmark::State& state) {
  const auto d = furuhata();
  const auto points = polydisk_samples(2, 2.0, 100, 1);
  for (auto _ : state) benchmark::DoNotOptimize(check_conformality(d, points));
}
BENCHMARK(BM_Conformality);

void BM_SecondFundamentalForm(benchmark::State& state) {
  const auto d = furuhata();
  const Point z{{0.4, 0.1}, {-0.3, 0.8}};
  const Point dirs[] = {{{0.6, 0}, {0, 0.8}}};
  for (auto _ : state) benchmark::DoNotOptimize(second_fundamental_form(d, z, dirs));
}
BENCHMARK(BM_SecondFundamentalForm);

void BM_Kernel(benchmark::State& state) {
  const PolyBasis basis = PolyBasis::make(2, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernel(build_mu(basis)));
}
BENCHMARK(BM_Kernel)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_SelfIntersect(benchmark::State& state) {
  const auto d = furuhata();
  SelfIntersectOptions options;
  options.starts = 16;
  options.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(self_intersect(d, options));
}
BENCHMARK(BM_SelfIntersect)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
