#include "paucopt/bench.hpp"

#include <algorithm>
#include <chrono>
#include <random>

#include "paucopt/loss.hpp"
#include "paucopt/metrics.hpp"

namespace paucopt {

namespace {

using Clock = std::chrono::steady_clock;

// Mean wall time per call, sampling until min_ms has elapsed.
template <typename F>
double time_ms(F&& fn, double min_ms) {
  volatile double sink = 0.0;
  int calls = 0;
  const auto begin = Clock::now();
  double elapsed = 0.0;
  do {
    sink = sink + fn();
    ++calls;
    elapsed = std::chrono::duration<double, std::milli>(Clock::now() - begin)
                  .count();
  } while (elapsed < min_ms);
  (void)sink;
  return elapsed / calls;
}

}  // namespace

std::vector<BenchRow> run_loss_bench(std::span<const std::size_t> sizes,
                                     double min_ms_per_point,
                                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<BenchRow> rows;
  for (std::size_t n : sizes) {
    const std::size_t n_pos = (n + 1) / 2;
    std::vector<double> scores(n);
    std::vector<int> labels(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      scores[i] = u(rng);
      labels[i] = i < n_pos ? 1 : 0;
    }
    std::vector<double> pos(scores.begin(),
                            scores.begin() + static_cast<std::ptrdiff_t>(n_pos));
    std::vector<double> neg(scores.begin() + static_cast<std::ptrdiff_t>(n_pos),
                            scores.end());
    if (neg.empty()) neg.push_back(u(rng));

    // beta large enough that the top set is nonempty on tiny batches
    const double beta =
        std::max(0.5, 1.0 / static_cast<double>(neg.size()));
    const HyperParams hp(Task::opauc, 1.0, beta, 5.0, 1.5, 0.5);
    AuxState aux;
    aux.a = 0.6;
    aux.b = 0.4;
    aux.gamma = -0.2;
    aux.s_prime = 2.5;

    BenchRow row;
    row.batch_size = n;
    row.instancewise_ms = time_ms(
        [&] {
          return batch_objective_and_grad(scores, labels, aux, hp).first;
        },
        min_ms_per_point);
    row.pairwise_ms = time_ms(
        [&] { return pairwise_sq_risk_opauc(pos, neg, hp.beta); },
        min_ms_per_point);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace paucopt
