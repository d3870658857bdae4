#include <benchmark/benchmark.h>

#include "foliate/families.hpp"
#include "foliate/geometry.hpp"
#include "foliate/verifier.hpp"

using namespace foliate;

namespace {

FamilySpec sample(FamilyId id, std::uint64_t index) {
  auto rng = sample_stream(1, index);
  const auto n = family_dimension(id);
  return draw_spec(id, MetricFrame::from_mask(n, index % (1u << n)), rng, {});
}

void BM_RationalAddMul(benchmark::State& state) {
  std::vector<Rational> xs;
  auto rng = sample_stream(2, 0);
  for (int i = 0; i < 256; ++i) xs.push_back(random_rational(rng, 50));
  for (auto _ : state) {
    Rational acc;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) acc.add_product(xs[i], xs[i + 1]);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_RationalAddMul);

void BM_Jacobi(benchmark::State& state) {
  const auto id = static_cast<FamilyId>(state.range(0));
  const auto setup = build_family(sample(id, 3));
  for (auto _ : state) benchmark::DoNotOptimize(satisfies_jacobi(setup.tensor()));
  state.SetLabel(std::string(family_name(id)));
}
BENCHMARK(BM_Jacobi)->DenseRange(0, 5);

void BM_Classify(benchmark::State& state) {
  const auto id = static_cast<FamilyId>(state.range(0));
  const auto setup = build_family(sample(id, 5));
  for (auto _ : state) benchmark::DoNotOptimize(classify(setup));
  state.SetLabel(std::string(family_name(id)));
}
BENCHMARK(BM_Classify)->DenseRange(0, 5);

void BM_ThetaOracle(benchmark::State& state) {
  const auto id = static_cast<FamilyId>(state.range(0));
  const auto spec = sample(id, 7);
  for (auto _ : state) benchmark::DoNotOptimize(oracle_solve_theta(spec));
  state.SetLabel(std::string(family_name(id)));
}
BENCHMARK(BM_ThetaOracle)->DenseRange(0, 5);

void BM_SweepSu2(benchmark::State& state) {
  SweepConfig c;
  c.family = FamilyId::kSU2;
  c.samples = 20;
  c.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep(c));
}
BENCHMARK(BM_SweepSu2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
