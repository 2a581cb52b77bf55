// Serial reference loops against the OpenMP path on the per-sample kernels.
// Run with --benchmark_counters_tabular=true; the policy is the second
// argument (0 serial, 1 parallel).

#include <benchmark/benchmark.h>

#include <memory>
#include <random>

#include "torq/fields.hpp"
#include "torq/frenet.hpp"
#include "torq/slant.hpp"
#include "torq/synthesis.hpp"

using namespace torq;

namespace {

ExecPolicy policy(const benchmark::State& state) {
  return state.range(1) ? ExecPolicy::parallel : ExecPolicy::serial;
}

void BM_FrenetApparatus(benchmark::State& state) {
  const auto curve = builtin_curve("cone_loxodrome", {}, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(frenet_apparatus(curve, {.policy = policy(state)}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SlantReport(benchmark::State& state) {
  const auto curve = builtin_curve("cone_loxodrome", {}, static_cast<std::size_t>(state.range(0)));
  const auto fr = frenet_apparatus(curve);
  const auto axis = builtin_field("radial_unit", curve.metric);
  for (auto _ : state) benchmark::DoNotOptimize(slant_report(fr, axis, 1e-6, policy(state)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ClassifyField(benchmark::State& state) {
  const auto metric = std::make_shared<const ChartMetric>(builtin_metric("hyperbolic_upper_half", 3));
  const auto field = builtin_field("hyperbolic_em", metric);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-3.0, 3.0), w(0.2, 3.0);
  std::vector<Vec> pts;
  for (long i = 0; i < state.range(0); ++i) {
    Vec p(3);
    p << u(rng), u(rng), w(rng);
    pts.push_back(p);
  }
  for (auto _ : state) benchmark::DoNotOptimize(classify_field(field, pts, 1e-6, policy(state)));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_FrenetApparatus)->ArgsProduct({{201, 2001}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SlantReport)->ArgsProduct({{201, 2001}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClassifyField)->ArgsProduct({{1000, 10000}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
