#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "paucopt/bench.hpp"
#include "paucopt/dataio.hpp"
#include "paucopt/loss.hpp"
#include "paucopt/metrics.hpp"
#include "paucopt/model.hpp"
#include "paucopt/optimizer.hpp"
#include "paucopt/oracle.hpp"
#include "paucopt/verify.hpp"
#include "run_config.hpp"

namespace {

using namespace paucopt;
using cli::RunConfig;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitPropertyFailure = 2;

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t x = seed + 0x9E3779B97F4A7C15ull * (salt + 1);
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

SampleSet load_data(const RunConfig& cfg, bool held_out) {
  SampleSet set;
  if (!cfg.synthetic.empty()) {
    std::istringstream in(cfg.synthetic);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(in, part, ':')) parts.push_back(part);
    if (parts.size() != 4)
      throw std::invalid_argument(
          "--synthetic expects npos:nneg:dim:separation");
    const std::size_t np = std::stoull(parts[0]);
    const std::size_t nn = std::stoull(parts[1]);
    const std::size_t dim = std::stoull(parts[2]);
    const double sep = std::stod(parts[3]);
    const std::uint64_t seed = held_out ? mix_seed(cfg.seed, 101) : cfg.seed;
    set = generate_synthetic(np, nn, dim, sep, seed);
  } else if (!cfg.csv.empty()) {
    set = load_csv(held_out ? cfg.test_csv : cfg.csv, cfg.label_col);
  } else {
    throw std::invalid_argument("provide --synthetic or --csv");
  }
  if (cfg.normalize) minmax_scale(set);
  return set;
}

HyperParams make_hyper(const RunConfig& cfg, double prior_p) {
  Task task;
  double beta = cfg.beta;
  double alpha = cfg.alpha;
  if (cfg.task == "opauc") {
    task = Task::opauc;
  } else if (cfg.task == "tpauc") {
    task = Task::tpauc;
  } else if (cfg.task == "auc") {
    task = Task::opauc;
    beta = 1.0;
    alpha = 1.0;
  } else {
    throw std::invalid_argument("task must be auc, opauc or tpauc");
  }
  const double omega = cfg.omega < 0.0 ? default_omega(cfg.kappa) : cfg.omega;
  return HyperParams(task, alpha, beta, cfg.kappa, omega, prior_p, cfg.big_m);
}

ModelParams make_model(const RunConfig& cfg, std::size_t dim) {
  if (cfg.model == "linear")
    return init_model(ModelKind::linear, dim, 0, mix_seed(cfg.seed, 7));
  if (cfg.model == "mlp1")
    return init_model(ModelKind::mlp1, dim, cfg.hidden, mix_seed(cfg.seed, 7));
  throw std::invalid_argument("model must be linear or mlp1");
}

// Plain SGD on the logistic cross-entropy, optional warm start before
// the minimax loop.
void warmup_cross_entropy(ModelParams& model, const SampleSet& set,
                          const RunConfig& cfg) {
  BatchSpec spec{cfg.batch_size, mix_seed(cfg.seed, 13), cfg.stratified};
  for (std::uint64_t epoch = 0; epoch < cfg.warmup_epochs; ++epoch) {
    for (const auto& batch : iter_batches(set, spec, epoch)) {
      const auto scores = forward(model, set, batch);
      std::vector<double> dL(scores.size());
      for (std::size_t i = 0; i < batch.size(); ++i) {
        const double y = set.labels[batch[i]];
        const double s = scores[i];
        dL[i] = (s - y) / (s * (1.0 - s)) / static_cast<double>(batch.size());
      }
      const auto grad = backward(model, set, batch, dL);
      for (std::size_t j = 0; j < model.weights.size(); ++j)
        model.weights[j] -= cfg.warmup_lr * grad[j];
    }
  }
}

void report_convergence_constants(const LearnParams& lp) {
  // Only the inequalities free of the analysis constants (L_G, mu, b,
  // tau) are checkable from the inputs.
  const double k3 = lp.k * lp.k * lp.k;
  struct Item {
    const char* label;
    bool ok;
  } items[] = {
      {"m >= 2", lp.m >= 2.0},
      {"m >= k^3", lp.m >= k3},
      {"m >= (c1*k)^3", lp.m >= std::pow(lp.c1 * lp.k, 3.0)},
      {"m >= (c2*k)^3", lp.m >= std::pow(lp.c2 * lp.k, 3.0)},
      {"c1 >= 2/(3k^3)", lp.c1 >= 2.0 / (3.0 * k3)},
      {"c2 >= 2/(3k^3)", lp.c2 >= 2.0 / (3.0 * k3)},
  };
  std::cerr << "convergence-constant check (informational):\n";
  for (const auto& item : items)
    std::cerr << "  " << (item.ok ? "ok  " : "VIOLATED  ") << item.label
              << "\n";
  std::cerr << "  (conditions on lambda and nu involve smoothness constants "
               "outside the run inputs and are not checked)\n";
}

nlohmann::json eval_metrics(const ModelParams& model, const SampleSet& set,
                            double alpha, double beta) {
  const auto pos = forward(model, set, set.pos_idx);
  const auto neg = forward(model, set, set.neg_idx);
  const std::size_t kp = quantile_count(pos.size(), alpha);
  const std::size_t kn = quantile_count(neg.size(), beta);
  nlohmann::json j;
  j["auc"] = empirical_auc(pos, neg);
  j["opauc"] = empirical_opauc(pos, neg, beta);
  j["tpauc"] = empirical_tpauc(pos, neg, alpha, beta);
  j["region"] = {
      {"alpha", alpha},
      {"beta", beta},
      {"alpha_hat", static_cast<double>(kp) / static_cast<double>(pos.size())},
      {"beta_hat", static_cast<double>(kn) / static_cast<double>(neg.size())},
      {"n_pos_alpha", kp},
      {"n_neg_beta", kn},
  };
  return j;
}

int cmd_train(const RunConfig& cfg, bool check_thm3) {
  const SampleSet set = load_data(cfg, false);
  const HyperParams hp = make_hyper(cfg, set.prior_p);

  LearnParams lp;
  lp.k = cfg.lr_k;
  lp.m = cfg.lr_m;
  lp.c1 = cfg.c1;
  lp.c2 = cfg.c2;
  lp.nu = cfg.nu;
  lp.lambda = cfg.lambda;
  const std::uint64_t steps_per_epoch =
      (set.n + cfg.batch_size - 1) / cfg.batch_size;
  lp.T = cfg.epochs * steps_per_epoch;
  validate_learn_params(lp);
  if (check_thm3) report_convergence_constants(lp);

  ModelParams model = make_model(cfg, set.dim);
  if (cfg.warmup_epochs > 0) warmup_cross_entropy(model, set, cfg);

  BatchSpec spec{cfg.batch_size, cfg.seed, cfg.stratified};
  const TrainResult result = train(set, std::move(model), hp, lp, spec);

  write_trace_csv(cfg.trace_path, result.trace);
  save_checkpoint(result.model, cfg.checkpoint_path);

  nlohmann::json out;
  out["train"] = eval_metrics(result.model, set, hp.alpha, hp.beta);
  const bool have_test = !cfg.synthetic.empty() || !cfg.test_csv.empty();
  if (have_test) {
    SampleSet test = load_data(cfg, true);
    out["test"] = eval_metrics(result.model, test, hp.alpha, hp.beta);
  }
  out["trace"] = cfg.trace_path;
  out["checkpoint"] = cfg.checkpoint_path;
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int cmd_eval(const RunConfig& cfg) {
  const SampleSet set = load_data(cfg, false);
  const ModelParams model = load_checkpoint(cfg.checkpoint_path);
  std::cout << eval_metrics(model, set, cfg.alpha, cfg.beta).dump(2) << "\n";
  return kExitOk;
}

int cmd_verify(std::uint64_t seed, const std::string& only, double tol_scale,
               const std::string& report_path) {
  auto results = run_property_suite(seed, only);
  nlohmann::json report = nlohmann::json::array();
  bool all_pass = true;
  for (auto& r : results) {
    if (tol_scale != 1.0) {
      r.tolerance *= tol_scale;
      r.pass = r.max_error <= r.tolerance;
    }
    all_pass = all_pass && r.pass;
    std::printf("%-34s instances=%-7zu max_error=%-12.3e %s\n", r.name.c_str(),
                r.instances, r.max_error, r.pass ? "pass" : "FAIL");
    report.push_back({{"name", r.name},
                      {"instances", r.instances},
                      {"max_error", r.max_error},
                      {"pass", r.pass}});
  }
  if (!report_path.empty()) {
    std::ofstream out(report_path);
    if (!out) throw std::runtime_error(report_path + ": cannot write report");
    out << report.dump(2) << "\n";
  }
  return all_pass ? kExitOk : kExitPropertyFailure;
}

int cmd_bench(const std::string& sizes_csv, double min_ms,
              const std::string& out_path, std::uint64_t seed) {
  std::vector<std::size_t> sizes;
  std::istringstream in(sizes_csv);
  std::string tok;
  while (std::getline(in, tok, ',')) sizes.push_back(std::stoull(tok));
  if (sizes.empty()) throw std::invalid_argument("no batch sizes given");

  const auto rows = run_loss_bench(sizes, min_ms, seed);
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error(out_path + ": cannot write");
  out << "batch_size,instancewise_ms,pairwise_ms\n";
  std::printf("%-12s %-18s %-18s\n", "batch", "instancewise_ms",
              "pairwise_ms");
  for (const auto& r : rows) {
    out << r.batch_size << "," << r.instancewise_ms << "," << r.pairwise_ms
        << "\n";
    std::printf("%-12zu %-18.6f %-18.6f\n", r.batch_size, r.instancewise_ms,
                r.pairwise_ms);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partial-AUC optimization toolkit: instance-wise minimax "
               "training, exact metrics, numerical verification"};
  app.require_subcommand(1);

  RunConfig cfg;
  bool check_thm3 = false;

  auto add_data_flags = [&](CLI::App* sub) {
    sub->add_option("--synthetic", cfg.synthetic,
                    "Synthetic data spec npos:nneg:dim:separation");
    sub->add_option("--csv", cfg.csv, "Training data CSV path");
    sub->add_option("--label-col", cfg.label_col,
                    "Label column name or zero-based index (default label)");
    sub->add_flag("--normalize", cfg.normalize,
                  "Min-max scale features to [0,1]");
    sub->add_option("--seed", cfg.seed, "Master seed (default 1)");
  };
  auto add_region_flags = [&](CLI::App* sub) {
    sub->add_option("--task", cfg.task, "auc | opauc | tpauc")
        ->check(CLI::IsMember({"auc", "opauc", "tpauc"}));
    sub->add_option("--alpha", cfg.alpha, "TPR lower bound, in (0,1]")
        ->check(CLI::Range(1e-9, 1.0));
    sub->add_option("--beta", cfg.beta, "FPR upper bound, in (0,1]")
        ->check(CLI::Range(1e-9, 1.0));
  };

  auto* t = app.add_subcommand("train", "Train a scoring model");
  add_data_flags(t);
  add_region_flags(t);
  t->add_option("--kappa", cfg.kappa, "Softplus sharpness, > 0 and <= 2 + 2*omega (default 5)");
  t->add_option("--omega", cfg.omega,
                "Concavity regularizer, >= 0; default max(0, kappa/2 - 1)");
  t->add_option("--model", cfg.model, "linear | mlp1")
      ->check(CLI::IsMember({"linear", "mlp1"}));
  t->add_option("--hidden", cfg.hidden, "Hidden width for mlp1, >= 1 (default 16)");
  t->add_option("--epochs", cfg.epochs, "Training epochs, >= 0 (default 100)");
  t->add_option("--batch-size", cfg.batch_size, "Mini-batch size, in [1, n] (default 128)");
  t->add_flag("--stratified", cfg.stratified,
              "Interleave classes proportionally in each batch");
  t->add_option("--k", cfg.lr_k, "Learning-rate numerator k, > 0 (default 2)");
  t->add_option("--m", cfg.lr_m, "Learning-rate offset m, >= max(1, k^3) (default 100)");
  t->add_option("--c1", cfg.c1, "Momentum constant for the descent estimate, >= 0 (default 0.5)");
  t->add_option("--c2", cfg.c2, "Momentum constant for the ascent estimate, >= 0 (default 0.5)");
  t->add_option("--nu", cfg.nu, "Descent step size, > 0 (default 0.05)");
  t->add_option("--lambda", cfg.lambda, "Ascent step size, > 0 (default 0.05)");
  t->add_option("--warmup-epochs", cfg.warmup_epochs,
                "Cross-entropy warm-up epochs, >= 0 (default 0)");
  t->add_option("--warmup-lr", cfg.warmup_lr, "Warm-up learning rate, > 0 (default 0.1)");
  t->add_option("--test-csv", cfg.test_csv, "Held-out CSV for test metrics");
  t->add_option("--trace", cfg.trace_path, "Trace CSV output path");
  t->add_option("--checkpoint", cfg.checkpoint_path,
                "Model checkpoint output path");
  t->add_flag("--check-thm3", check_thm3,
              "Report which convergence-constant inequalities hold");

  auto* e = app.add_subcommand("eval", "Evaluate a checkpoint");
  add_data_flags(e);
  add_region_flags(e);
  e->add_option("--checkpoint", cfg.checkpoint_path, "Checkpoint to load");

  std::uint64_t verify_seed = 7;
  std::string verify_only;
  std::string verify_report = "verify_report.json";
  double verify_tol = 1.0;
  auto* v = app.add_subcommand("verify",
                               "Run the numerical certificate suite");
  v->add_option("--seed", verify_seed, "Suite seed (default 7)");
  v->add_option("--only", verify_only, "Run a single named property");
  v->add_option("--report", verify_report, "JSON report path");
  v->add_option("--tol", verify_tol,
                "Tolerance scale factor, must be positive (default 1)");

  std::string bench_sizes = "64,128,256,512,1024,2048";
  double bench_min_ms = 50.0;
  std::string bench_out = "bench.csv";
  std::uint64_t bench_seed = 1;
  auto* b = app.add_subcommand(
      "bench", "Time the instance-wise loss against the pairwise oracle");
  b->add_option("--sizes", bench_sizes, "Comma-separated batch sizes");
  b->add_option("--min-ms", bench_min_ms, "Minimum sampling time per point");
  b->add_option("--out", bench_out, "Bench CSV output path");
  b->add_option("--seed", bench_seed, "Data seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(t)) {
      cfg.command = "train";
      return cmd_train(cfg, check_thm3);
    }
    if (app.got_subcommand(e)) {
      cfg.command = "eval";
      return cmd_eval(cfg);
    }
    if (app.got_subcommand(v)) {
      if (!(verify_tol > 0.0))
        throw std::invalid_argument("--tol must be positive");
      return cmd_verify(verify_seed, verify_only, verify_tol, verify_report);
    }
    if (app.got_subcommand(b))
      return cmd_bench(bench_sizes, bench_min_ms, bench_out, bench_seed);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}
