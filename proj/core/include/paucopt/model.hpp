#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "paucopt/dataio.hpp"

namespace paucopt {

enum class ModelKind { linear, mlp1 };

/// Scoring function f: R^dim -> (0,1). `linear` is a logistic-squashed
/// affine map; `mlp1` adds one tanh hidden layer of width `hidden`.
/// Weights are stored flat:
///   linear: [w(dim), c]
///   mlp1:   [W1(hidden x dim, row-major), c1(hidden), W2(hidden), c2]
struct ModelParams {
  ModelKind kind = ModelKind::linear;
  std::size_t dim = 0;
  std::size_t hidden = 0;  // ignored for linear
  std::vector<double> weights;
};

std::size_t weight_count(ModelKind kind, std::size_t dim, std::size_t hidden);

/// Weights ~ uniform(-1/sqrt(fan_in), +1/sqrt(fan_in)), biases zero.
ModelParams init_model(ModelKind kind, std::size_t dim, std::size_t hidden,
                       std::uint64_t seed);

/// Scores for the selected rows, each in (0,1). Pure.
std::vector<double> forward(const ModelParams& params, const SampleSet& set,
                            std::span<const std::size_t> idx);

/// Gradient of sum_i dL_dscore[i] * f(x_i) with respect to the flat
/// weight vector. No parameter mutation.
std::vector<double> backward(const ModelParams& params, const SampleSet& set,
                             std::span<const std::size_t> idx,
                             std::span<const double> dL_dscore);

/// JSON checkpoint of (kind, dim, hidden, weights); exact round-trip.
void save_checkpoint(const ModelParams& params, const std::string& path);
ModelParams load_checkpoint(const std::string& path);

}  // namespace paucopt
