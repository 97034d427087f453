#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace paucopt {

struct BenchRow {
  std::size_t batch_size = 0;
  double instancewise_ms = 0.0;  // batch_objective_and_grad
  double pairwise_ms = 0.0;      // pairwise squared risk oracle
};

/// Times one loss-plus-gradient evaluation of the instance-wise
/// objective against the pairwise oracle on half-positive batches of the
/// given sizes. Only the loss calculation is timed; data setup is not.
std::vector<BenchRow> run_loss_bench(std::span<const std::size_t> sizes,
                                     double min_ms_per_point,
                                     std::uint64_t seed);

}  // namespace paucopt
