// OpenMP kernels against the serial reference implementations.
//   bench_kernels --benchmark_filter=Partial
// The references enumerate the whole (M u {0})^n box, so they stop at n = 16.

#include <benchmark/benchmark.h>

#include <map>

#include "magball/constructions.hpp"
#include "magball/lattice.hpp"

using namespace magball;

namespace {

// S2(q, 2) as a {1}-splitter: a packing, so every checker runs to completion
const SplitterSet& packing_instance(int q) {
  static std::map<int, SplitterSet> cache;
  auto it = cache.find(q);
  if (it == cache.end()) it = cache.emplace(q, bt_shift_to_splitter(bose_chowla_s2(q, 2).set)).first;
  return it->second;
}

void BM_PartialKernel(benchmark::State& st) {
  const auto& s = packing_instance(static_cast<int>(st.range(0)));
  const int jobs = static_cast<int>(st.range(1));
  for (auto _ : st) benchmark::DoNotOptimize(check_partial_split(s, jobs));
  st.SetLabel("N=" + std::to_string(s.group().moduli()[0]));
}

void BM_PartialReference(benchmark::State& st) {
  const auto& s = packing_instance(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(reference::check_partial_split(s));
}

void BM_HistogramKernel(benchmark::State& st) {
  const auto& s = packing_instance(static_cast<int>(st.range(0)));
  const int jobs = static_cast<int>(st.range(1));
  for (auto _ : st) benchmark::DoNotOptimize(multiplicity_histogram(s, jobs));
}

void BM_HistogramReference(benchmark::State& st) {
  const auto& s = packing_instance(static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(reference::multiplicity_histogram(s));
}

// code lattice of BCH(3, 2, 5) over B(8, 2, 1, 1)
void BM_PackingGeometric(benchmark::State& st) {
  static auto lat = code_lattice(bch_code(3, 2, 5).code, 1, 1);
  const int jobs = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(verify_packing_geometric(lat, {8, 2, 1, 1}, jobs));
}

void BM_PackingPairwise(benchmark::State& st) {
  static auto lat = code_lattice(bch_code(3, 2, 5).code, 1, 1);
  for (auto _ : st) benchmark::DoNotOptimize(reference::verify_packing_pairwise(lat, {8, 2, 1, 1}));
}

}  // namespace

BENCHMARK(BM_PartialKernel)->ArgsProduct({{8, 16, 32, 64}, {1, 4}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PartialReference)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HistogramKernel)->ArgsProduct({{8, 16, 32, 64}, {1, 4}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HistogramReference)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PackingGeometric)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PackingPairwise)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
