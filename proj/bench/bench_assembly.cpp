// Parallel kernels against their serial references.
//   qsorep_bench --benchmark_filter=Assembly
// Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include "qsorep/appendix_identity.hpp"
#include "qsorep/repmatrix.hpp"

namespace {

using namespace qsorep;

// dims 64, 105, 350
Signature bench_signature(int64_t arg) {
  switch (arg) {
    case 0:
      return make_signature(6, {4, 2, 0});
    case 1:
      return make_signature(7, {4, 2, 0});
    default:
      return make_signature(8, {4, 2, 2, 0});
  }
}

void BM_AssemblyParallel(benchmark::State& state) {
  const auto sig = bench_signature(state.range(0));
  const auto mode = QMode::polar(0.3);
  for (auto _ : state) benchmark::DoNotOptimize(build_rep(sig, mode));
  state.counters["dim"] = static_cast<double>(dimension(sig));
}

void BM_AssemblySerial(benchmark::State& state) {
  const auto sig = bench_signature(state.range(0));
  const auto mode = QMode::polar(0.3);
  for (auto _ : state) benchmark::DoNotOptimize(build_rep_serial(sig, mode));
  state.counters["dim"] = static_cast<double>(dimension(sig));
}

const std::vector<LConfig>& identity_configs() {
  static const auto configs = pattern_configs(3, 4);
  return configs;
}

const std::vector<mpq_class> kS{mpq_class(3), mpq_class(7, 2), mpq_class(11, 5)};

void BM_IdentityParallel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_identity(identity_configs(), kS));
  state.counters["configs"] = static_cast<double>(identity_configs().size());
}

void BM_IdentitySerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_identity_serial(identity_configs(), kS));
  state.counters["configs"] = static_cast<double>(identity_configs().size());
}

}  // namespace

BENCHMARK(BM_AssemblyParallel)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AssemblySerial)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IdentityParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IdentitySerial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
