// Parallel kernels against their serial references.

#include "mcda/entropy.hpp"
#include "mcda/grey.hpp"
#include "mcda/sensitivity.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace mcda;

DecisionMatrix random_matrix(std::size_t n, std::size_t m, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  const auto all = all_indicator_ids();
  std::vector<std::string> rows;
  for (std::size_t i = 0; i < n; ++i) rows.push_back("r" + std::to_string(i));
  std::vector<double> v(n * m);
  for (auto& x : v) x = u(eng);
  return DecisionMatrix(rows, std::vector<IndicatorId>(all.begin(), all.begin() + static_cast<long>(m)), v);
}

NormalizedMatrix wide(std::size_t n, std::size_t m) {
  std::mt19937_64 eng(7);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  NormalizedMatrix z{n, m, std::vector<double>(n * m), NormalizationMethod::VectorNorm};
  for (auto& x : z.values) x = u(eng);
  return z;
}

void BM_EntropyParallel(benchmark::State& st) {
  const auto z = wide(static_cast<std::size_t>(st.range(0)), 256);
  for (auto _ : st) benchmark::DoNotOptimize(entropy_weights(z));
}
void BM_EntropySerial(benchmark::State& st) {
  const auto z = wide(static_cast<std::size_t>(st.range(0)), 256);
  for (auto _ : st) benchmark::DoNotOptimize(serial::entropy_weights(z));
}

std::vector<TimeSeries> histories(std::size_t count) {
  std::mt19937_64 eng(11);
  std::uniform_real_distribution<double> u(-10.0, 40.0);
  std::vector<TimeSeries> out;
  for (std::size_t i = 0; i < count; ++i) {
    TimeSeries s{"s" + std::to_string(i), 2010, {}};
    for (int k = 0; k < 12; ++k) s.values.push_back(u(eng));
    out.push_back(std::move(s));
  }
  return out;
}

void BM_ExtendParallel(benchmark::State& st) {
  const auto h = histories(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(extend_all(h, 2050));
}
void BM_ExtendSerial(benchmark::State& st) {
  const auto h = histories(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(serial::extend_all(h, 2050));
}

struct SubstitutionInput {
  TotalWeights omega;
  FeatureSelection sel;
  DecisionMatrix data;
};

SubstitutionInput substitution_input() {
  SubstitutionInput in;
  in.omega.ids = all_indicator_ids();
  for (std::size_t j = 0; j < in.omega.ids.size(); ++j)
    in.omega.omega.push_back(1.0 / static_cast<double>(j + 2));
  in.sel = select_features(in.omega, 10);
  in.data = random_matrix(500, 30, 3);
  return in;
}

void BM_SubstitutionParallel(benchmark::State& st) {
  const auto in = substitution_input();
  const PerturbationConfig cfg{1, 5, static_cast<std::size_t>(st.range(0))};
  for (auto _ : st) benchmark::DoNotOptimize(factor_substitution(in.sel, in.omega, in.data, cfg));
}
void BM_SubstitutionSerial(benchmark::State& st) {
  const auto in = substitution_input();
  const PerturbationConfig cfg{1, 5, static_cast<std::size_t>(st.range(0))};
  for (auto _ : st) benchmark::DoNotOptimize(serial::factor_substitution(in.sel, in.omega, in.data, cfg));
}

}  // namespace

BENCHMARK(BM_EntropyParallel)->Arg(1000)->Arg(20000);
BENCHMARK(BM_EntropySerial)->Arg(1000)->Arg(20000);
BENCHMARK(BM_ExtendParallel)->Arg(64)->Arg(4096);
BENCHMARK(BM_ExtendSerial)->Arg(64)->Arg(4096);
BENCHMARK(BM_SubstitutionParallel)->Arg(100)->Arg(2000);
BENCHMARK(BM_SubstitutionSerial)->Arg(100)->Arg(2000);

BENCHMARK_MAIN();
