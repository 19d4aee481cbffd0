#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "mase/grid.hpp"
#include "mase/kernels.hpp"

using namespace mase;

namespace {

std::vector<double> sample(int n) {
  std::vector<double> v(n);
  for (int j = 0; j < n; ++j) v[j] = std::exp(-std::pow((j - 0.3 * n) / (0.05 * n), 2)) + 0.1 * std::sin(0.01 * j);
  return v;
}

template <auto Kernel>
void convolve(benchmark::State& state) {
  const Grid grid(static_cast<int>(state.range(0)), 40.0);
  const std::vector<double> table = kernels::periodic_kernel_table(grid);
  const std::vector<double> f = sample(grid.n_points());
  std::vector<double> out(f.size());
  for (auto _ : state) {
    Kernel(table, f, grid.spacing(), out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetComplexityN(state.range(0));
}

template <auto Kernel>
void reflection_scan(benchmark::State& state) {
  const std::vector<double> v = sample(static_cast<int>(state.range(0)));
  std::vector<double> out(v.size());
  for (auto _ : state) {
    Kernel(v, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetComplexityN(state.range(0));
}

}  // namespace

BENCHMARK(convolve<kernels::circular_convolve_serial>)->Name("circular_convolve/serial")->RangeMultiplier(2)->Range(256, 4096);
BENCHMARK(convolve<kernels::circular_convolve_omp>)->Name("circular_convolve/omp")->RangeMultiplier(2)->Range(256, 4096);
BENCHMARK(reflection_scan<kernels::reflection_scan_serial>)->Name("reflection_scan/serial")->RangeMultiplier(2)->Range(256, 4096);
BENCHMARK(reflection_scan<kernels::reflection_scan_omp>)->Name("reflection_scan/omp")->RangeMultiplier(2)->Range(256, 4096);

BENCHMARK_MAIN();
