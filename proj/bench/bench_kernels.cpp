// Serial reference vs OpenMP kernels.
#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "modstar/charfn.hpp"
#include "modstar/density.hpp"
#include "modstar/geodesic.hpp"
#include "modstar/vardi.hpp"

using namespace modstar;

namespace {

WeightedEnsemble sample_ensemble(std::size_t n) {
  std::vector<Atom> atoms;
  atoms.reserve(n);
  for (std::size_t i = 0; i < n; ++i) atoms.push_back({std::tan(0.001 * static_cast<double>(i % 3000) - 1.5), 1.0});
  return WeightedEnsemble(std::move(atoms));
}

void BM_empirical_cf_serial(benchmark::State& st) {
  const auto ens = sample_ensemble(static_cast<std::size_t>(st.range(0)));
  const auto grid = LambdaGrid::uniform(-4, 4, 201);
  for (auto _ : st) benchmark::DoNotOptimize(serial::empirical_cf(ens, grid));
}
void BM_empirical_cf_omp(benchmark::State& st) {
  const auto ens = sample_ensemble(static_cast<std::size_t>(st.range(0)));
  const auto grid = LambdaGrid::uniform(-4, 4, 201);
  for (auto _ : st) benchmark::DoNotOptimize(empirical_cf(ens, grid));
}
BENCHMARK(BM_empirical_cf_serial)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_empirical_cf_omp)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_buckets_serial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(serial::build_dedekind_buckets(st.range(0)));
}
void BM_buckets_omp(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(DedekindBuckets::build(st.range(0)));
}
BENCHMARK(BM_buckets_serial)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_buckets_omp)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_eta_sums_serial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(serial::eta_power_sums(0.25, st.range(0), 1, 8));
}
void BM_eta_sums_omp(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(eta_power_sums(0.25, st.range(0), 1, 8));
}
BENCHMARK(BM_eta_sums_serial)->Arg(200000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_eta_sums_omp)->Arg(200000)->Unit(benchmark::kMillisecond);

void BM_classes_serial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(serial::enumerate_classes(static_cast<double>(st.range(0))));
}
void BM_classes_omp(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(enumerate_classes(static_cast<double>(st.range(0))));
}
BENCHMARK(BM_classes_serial)->Arg(1000000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_classes_omp)->Arg(1000000)->Unit(benchmark::kMillisecond);

void BM_density_min_serial(benchmark::State& st) {
  const RealPolynomial p({1.0, -1.0, 0.0, 0.5});
  for (auto _ : st) benchmark::DoNotOptimize(serial::density_grid_min(p, 2.0, 24.0, st.range(0)));
}
void BM_density_min_omp(benchmark::State& st) {
  const RealPolynomial p({1.0, -1.0, 0.0, 0.5});
  for (auto _ : st) benchmark::DoNotOptimize(density_grid_min(p, 2.0, 24.0, st.range(0)));
}
BENCHMARK(BM_density_min_serial)->Arg(200001)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_density_min_omp)->Arg(200001)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
