#include "paucopt/model.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <stdexcept>

#include <json.hpp>

namespace paucopt {

namespace {

double logistic(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// Keeps scores strictly inside (0,1) even when the logit saturates.
double squash(double x) {
  return std::min(std::max(logistic(x), 1e-12), 1.0 - 1e-12);
}

void check_dim(const ModelParams& params, const SampleSet& set) {
  if (params.dim != set.dim)
    throw std::invalid_argument("model dimension " +
                                std::to_string(params.dim) +
                                " does not match feature dimension " +
                                std::to_string(set.dim));
}

}  // namespace

std::size_t weight_count(ModelKind kind, std::size_t dim, std::size_t hidden) {
  switch (kind) {
    case ModelKind::linear:
      return dim + 1;
    case ModelKind::mlp1:
      return hidden * dim + hidden + hidden + 1;
  }
  return 0;
}

ModelParams init_model(ModelKind kind, std::size_t dim, std::size_t hidden,
                       std::uint64_t seed) {
  if (dim == 0) throw std::invalid_argument("dimension must be >= 1");
  if (kind == ModelKind::mlp1 && hidden == 0)
    throw std::invalid_argument("mlp1 needs hidden >= 1");

  ModelParams params;
  params.kind = kind;
  params.dim = dim;
  params.hidden = kind == ModelKind::mlp1 ? hidden : 0;
  params.weights.assign(weight_count(kind, dim, params.hidden), 0.0);

  std::mt19937_64 rng(seed);
  auto fill = [&rng](double* w, std::size_t count, std::size_t fan_in) {
    std::uniform_real_distribution<double> u(
        -1.0 / std::sqrt(static_cast<double>(fan_in)),
        1.0 / std::sqrt(static_cast<double>(fan_in)));
    for (std::size_t i = 0; i < count; ++i) w[i] = u(rng);
  };
  if (kind == ModelKind::linear) {
    fill(params.weights.data(), dim, dim);  // bias stays 0
  } else {
    const std::size_t h = params.hidden;
    fill(params.weights.data(), h * dim, dim);          // W1
    fill(params.weights.data() + h * dim + h, h, h);    // W2; c1 stays 0
  }
  return params;
}

std::vector<double> forward(const ModelParams& params, const SampleSet& set,
                            std::span<const std::size_t> idx) {
  check_dim(params, set);
  std::vector<double> scores(idx.size());
  const std::size_t d = params.dim;
  if (params.kind == ModelKind::linear) {
    const double* w = params.weights.data();
    const double c = params.weights[d];
    for (std::size_t i = 0; i < idx.size(); ++i) {
      const auto x = set.row(idx[i]);
      double z = c;
      for (std::size_t j = 0; j < d; ++j) z += w[j] * x[j];
      scores[i] = squash(z);
    }
  } else {
    const std::size_t h = params.hidden;
    const double* w1 = params.weights.data();
    const double* c1 = w1 + h * d;
    const double* w2 = c1 + h;
    const double c2 = w2[h];
    std::vector<double> t(h);
    for (std::size_t i = 0; i < idx.size(); ++i) {
      const auto x = set.row(idx[i]);
      double z = c2;
      for (std::size_t k = 0; k < h; ++k) {
        double pre = c1[k];
        for (std::size_t j = 0; j < d; ++j) pre += w1[k * d + j] * x[j];
        t[k] = std::tanh(pre);
        z += w2[k] * t[k];
      }
      scores[i] = squash(z);
    }
  }
  return scores;
}

std::vector<double> backward(const ModelParams& params, const SampleSet& set,
                             std::span<const std::size_t> idx,
                             std::span<const double> dL_dscore) {
  check_dim(params, set);
  if (dL_dscore.size() != idx.size())
    throw std::invalid_argument("dL_dscore length does not match batch size");

  std::vector<double> grad(params.weights.size(), 0.0);
  const std::size_t d = params.dim;
  if (params.kind == ModelKind::linear) {
    const double* w = params.weights.data();
    const double c = params.weights[d];
    for (std::size_t i = 0; i < idx.size(); ++i) {
      const auto x = set.row(idx[i]);
      double z = c;
      for (std::size_t j = 0; j < d; ++j) z += w[j] * x[j];
      const double sv = squash(z);
      const double g = dL_dscore[i] * sv * (1.0 - sv);
      for (std::size_t j = 0; j < d; ++j) grad[j] += g * x[j];
      grad[d] += g;
    }
  } else {
    const std::size_t h = params.hidden;
    const double* w1 = params.weights.data();
    const double* c1 = w1 + h * d;
    const double* w2 = c1 + h;
    const double c2 = w2[h];
    double* g_w1 = grad.data();
    double* g_c1 = g_w1 + h * d;
    double* g_w2 = g_c1 + h;
    double* g_c2 = g_w2 + h;
    std::vector<double> t(h);
    for (std::size_t i = 0; i < idx.size(); ++i) {
      const auto x = set.row(idx[i]);
      double z = c2;
      for (std::size_t k = 0; k < h; ++k) {
        double pre = c1[k];
        for (std::size_t j = 0; j < d; ++j) pre += w1[k * d + j] * x[j];
        t[k] = std::tanh(pre);
        z += w2[k] * t[k];
      }
      const double sv = squash(z);
      const double g = dL_dscore[i] * sv * (1.0 - sv);
      *g_c2 += g;
      for (std::size_t k = 0; k < h; ++k) {
        g_w2[k] += g * t[k];
        const double gh = g * w2[k] * (1.0 - t[k] * t[k]);
        g_c1[k] += gh;
        for (std::size_t j = 0; j < d; ++j) g_w1[k * d + j] += gh * x[j];
      }
    }
  }
  return grad;
}

void save_checkpoint(const ModelParams& params, const std::string& path) {
  nlohmann::json j;
  j["kind"] = params.kind == ModelKind::linear ? "linear" : "mlp1";
  j["dim"] = params.dim;
  j["hidden"] = params.hidden;
  j["weights"] = params.weights;
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot write checkpoint");
  out << j.dump(2) << "\n";
}

ModelParams load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open checkpoint");
  nlohmann::json j;
  in >> j;
  ModelParams params;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "linear")
    params.kind = ModelKind::linear;
  else if (kind == "mlp1")
    params.kind = ModelKind::mlp1;
  else
    throw std::runtime_error(path + ": unknown model kind '" + kind + "'");
  params.dim = j.at("dim").get<std::size_t>();
  params.hidden = j.at("hidden").get<std::size_t>();
  params.weights = j.at("weights").get<std::vector<double>>();
  if (params.weights.size() !=
      weight_count(params.kind, params.dim, params.hidden))
    throw std::runtime_error(path + ": weight count does not match layout");
  return params;
}

}  // namespace paucopt
