#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "paucopt/loss.hpp"
#include "paucopt/metrics.hpp"

namespace {

using namespace paucopt;

struct Fixture {
  std::vector<double> scores;
  std::vector<int> labels;
  std::vector<double> pos, neg;
  HyperParams hp{Task::opauc, 1.0, 0.5, 5.0, 1.5, 0.5};
  AuxState aux;

  explicit Fixture(std::size_t n) {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    scores.resize(n);
    labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      scores[i] = u(rng);
      labels[i] = i < (n + 1) / 2 ? 1 : 0;
      (labels[i] ? pos : neg).push_back(scores[i]);
    }
    if (neg.empty()) neg.push_back(u(rng));
    aux.a = 0.6;
    aux.b = 0.4;
    aux.gamma = -0.2;
    aux.s_prime = 2.5;
  }
};

void BM_InstanceWiseLossGrad(benchmark::State& state) {
  Fixture fx(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto result = batch_objective_and_grad(fx.scores, fx.labels, fx.aux, fx.hp);
    benchmark::DoNotOptimize(result.first);
  }
  state.SetComplexityN(state.range(0));
}

void BM_PairwiseSqRisk(benchmark::State& state) {
  Fixture fx(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    double risk = pairwise_sq_risk_opauc(fx.pos, fx.neg, fx.hp.beta);
    benchmark::DoNotOptimize(risk);
  }
  state.SetComplexityN(state.range(0));
}

void BM_EmpiricalOpauc(benchmark::State& state) {
  Fixture fx(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    double v = empirical_opauc(fx.pos, fx.neg, fx.hp.beta);
    benchmark::DoNotOptimize(v);
  }
}

}  // namespace

BENCHMARK(BM_InstanceWiseLossGrad)->RangeMultiplier(2)->Range(64, 2048)
    ->Complexity(benchmark::oN);
BENCHMARK(BM_PairwiseSqRisk)->RangeMultiplier(2)->Range(64, 2048)
    ->Complexity(benchmark::oNSquared);
BENCHMARK(BM_EmpiricalOpauc)->RangeMultiplier(2)->Range(64, 2048);

BENCHMARK_MAIN();
