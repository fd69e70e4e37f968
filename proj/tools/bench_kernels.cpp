// Serial reference against the OpenMP kernels.

#include <benchmark/benchmark.h>

#include <random>

#include "toricdiff/verification.hpp"

using namespace toricdiff;

namespace {

std::pair<WeylElement, WeylElement> operands(int terms) {
  std::mt19937_64 rng(20240611);
  auto a = verify::random_element(rng, 4, 6, terms);
  auto b = verify::random_element(rng, 4, 6, terms);
  return {std::move(a), std::move(b)};
}

void BM_multiply_serial(benchmark::State& state) {
  const auto [a, b] = operands(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(multiply_serial(a, b));
  state.counters["pairs"] = static_cast<double>(a.size() * b.size());
}

void BM_multiply_parallel(benchmark::State& state) {
  const auto [a, b] = operands(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(multiply_parallel(a, b));
  state.counters["pairs"] = static_cast<double>(a.size() * b.size());
}

struct SweepInput {
  MussonData target;
  IndexSet reflected;
  std::vector<WeylMonomial> monomials;
};

SweepInput sweep_input() {
  verify::GridOptions opts;
  opts.ns = {4};
  opts.ell_min = opts.ell_max = 1;
  const auto cases = verify::descent_cases(opts);
  const auto& c = cases[2];
  return {musson_data(c.x_prime, c.a_prime), c.witness.reflected,
          invariant_monomials(musson_data(c.x, c.a), static_cast<int>(4))};
}

void BM_sweep(benchmark::State& state) {
  static const SweepInput in = sweep_input();
  const bool parallel = state.range(0) != 0;
  for (auto _ : state)
    benchmark::DoNotOptimize(fourier_invariance_sweep(in.target, in.reflected, in.monomials, parallel));
  state.counters["monomials"] = static_cast<double>(in.monomials.size());
}

void BM_descent_grid(benchmark::State& state) {
  verify::GridOptions opts;
  opts.ns = {2, 3};
  opts.degree_bound = 3;
  opts.parallel = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(verify::fourier_descent(opts));
}

}  // namespace

BENCHMARK(BM_multiply_serial)->Arg(40)->Arg(120)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_multiply_parallel)->Arg(40)->Arg(120)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sweep)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_descent_grid)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
