#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

namespace paucopt::cli {

/// Everything a run needs, serializable so a config round-trips
/// losslessly through JSON.
struct RunConfig {
  std::string command;
  std::string task = "opauc";
  double alpha = 1.0;
  double beta = 1.0;
  double kappa = 5.0;
  double omega = -1.0;  // -1 selects max(0, kappa/2 - 1)
  double big_m = 1e9;

  std::string model = "linear";
  std::uint64_t hidden = 16;

  std::string synthetic;  // "npos:nneg:dim:separation", empty = none
  std::string csv;
  std::string label_col = "label";
  std::string test_csv;
  bool normalize = false;

  std::uint64_t epochs = 100;
  std::uint64_t batch_size = 128;
  bool stratified = false;
  std::uint64_t seed = 1;

  double lr_k = 2.0;
  double lr_m = 100.0;
  double c1 = 0.5;
  double c2 = 0.5;
  double nu = 0.05;
  double lambda = 0.05;
  std::uint64_t warmup_epochs = 0;
  double warmup_lr = 0.1;

  std::string trace_path = "trace.csv";
  std::string checkpoint_path = "model.json";
};

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(
    RunConfig, command, task, alpha, beta, kappa, omega, big_m, model, hidden,
    synthetic, csv, label_col, test_csv, normalize, epochs, batch_size,
    stratified, seed, lr_k, lr_m, c1, c2, nu, lambda, warmup_epochs, warmup_lr,
    trace_path, checkpoint_path)

}  // namespace paucopt::cli
