// Serial reference vs OpenMP kernels.
#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "minimax/kernels.hpp"
#include "minimax/optimizers.hpp"
#include "minimax/problems.hpp"
#include "minimax/topology.hpp"

using namespace minimax;

namespace {

std::vector<double> latents(std::size_t n) {
  std::mt19937_64 g(1);
  std::normal_distribution<double> d;
  std::vector<double> z(n);
  for (auto& v : z) v = d(g);
  return z;
}

const Vec& generator() {
  static const Vec x = Vec::LinSpaced(kGeneratorParams, -0.5, 0.6);
  return x;
}

void BM_moments_serial(benchmark::State& st) {
  const auto z = latents(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::generator_moments_serial(generator(), z));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_moments_parallel(benchmark::State& st) {
  const auto z = latents(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(kernels::generator_moments_parallel(generator(), z));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_grad_moments_serial(benchmark::State& st) {
  const auto z = latents(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) {
    benchmark::DoNotOptimize(kernels::generator_grad_moments_serial(generator(), z));
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_grad_moments_parallel(benchmark::State& st) {
  const auto z = latents(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) {
    benchmark::DoNotOptimize(kernels::generator_grad_moments_parallel(generator(), z));
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

template <void (*Combine)(const CombinationMatrix&, const Mat&, Mat&)>
void BM_combine(benchmark::State& st) {
  const int k = static_cast<int>(st.range(0));
  const CombinationMatrix a = averaging_rule(build_random_connected(k, 0.2, 3));
  const Mat in = Mat::Random(64, k);
  Mat out(64, k);
  for (auto _ : st) {
    Combine(a, in, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_round(benchmark::State& st, Execution e) {
  const int k = static_cast<int>(st.range(0));
  QuadraticConfig q;
  q.num_agents = k;
  q.primal_dim = 32;
  q.dual_dim = 32;
  const auto p = quadratic_pl_problem(q);
  const CombinationMatrix a = averaging_rule(build_ring(k));
  NetworkState n;
  for (int i = 0; i < k; ++i) n.agents.push_back(AgentState::from_pair(Vec::Ones(32), Vec::Ones(32)));
  const StreamFactory f(5);
  for (auto _ : st) {
    n = dss_og_round(n, a, *p, {0.01, 0.02}, f, e);
    benchmark::DoNotOptimize(n.agents[0].x.data());
  }
}

}  // namespace

BENCHMARK(BM_moments_serial)->Arg(1 << 14)->Arg(1 << 18);
BENCHMARK(BM_moments_parallel)->Arg(1 << 14)->Arg(1 << 18);
BENCHMARK(BM_grad_moments_serial)->Arg(1 << 14)->Arg(1 << 18);
BENCHMARK(BM_grad_moments_parallel)->Arg(1 << 14)->Arg(1 << 18);
BENCHMARK(BM_combine<kernels::combine_serial>)->Name("BM_combine_serial")->Arg(16)->Arg(128);
BENCHMARK(BM_combine<kernels::combine_parallel>)->Name("BM_combine_parallel")->Arg(16)->Arg(128);
BENCHMARK_CAPTURE(BM_round, serial, Execution::kSerial)->Arg(8)->Arg(64);
BENCHMARK_CAPTURE(BM_round, parallel, Execution::kParallel)->Arg(8)->Arg(64);

BENCHMARK_MAIN();
