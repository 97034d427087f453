#include "paucopt/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

#include "paucopt/loss.hpp"
#include "paucopt/metrics.hpp"
#include "paucopt/model.hpp"
#include "paucopt/oracle.hpp"

namespace paucopt {

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::size_t uniform_count(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

std::vector<double> random_scores(Rng& rng, std::size_t n, bool quantized) {
  std::vector<double> v(n);
  for (double& x : v) x = uniform(rng, 0.0, 1.0);
  if (quantized)
    for (double& x : v) x = std::round(x * 100.0) / 100.0;
  return v;
}

struct Check {
  PropertyResult result;

  Check(std::string name, double tolerance) {
    result.name = std::move(name);
    result.tolerance = tolerance;
    result.pass = true;
  }

  void observe(double error) {
    result.max_error = std::max(result.max_error, error);
    if (!(error <= result.tolerance)) result.pass = false;
    ++result.instances;
  }

  // Count several observations as one instance.
  void observe_same_instance(double error) {
    result.max_error = std::max(result.max_error, error);
    if (!(error <= result.tolerance)) result.pass = false;
  }
};

PropertyResult atk_identity(std::uint64_t seed) {
  Check check("atk_identity", 1e-12);
  Rng rng(seed + 1);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = uniform_count(rng, 1, 50);
    auto values = random_scores(rng, n, i % 2 == 1);
    for (double& x : values) x = 10.0 * x - 5.0;
    double worst = 0.0;
    for (std::size_t k = 1; k <= n; ++k)
      worst = std::max(worst, std::abs(oracle::avg_topk(values, k) -
                                       oracle::atk_via_min_s(values, k)));
    check.observe(worst);
  }
  return check.result;
}

PropertyResult atk_quantile_form(std::uint64_t seed) {
  Check check("atk_quantile_form", 1e-12);
  Rng rng(seed + 2);
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = uniform_count(rng, 1, 50);
    const auto values = random_scores(rng, n, false);
    const std::size_t k = uniform_count(rng, 1, n);
    const double alpha = static_cast<double>(k) / static_cast<double>(n);
    // eta = k-th largest; the shifted expectation attains its minimum
    // there and the truncated mean matches alpha times the top-k mean.
    std::vector<double> sorted(values);
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    const double eta = sorted[k - 1];
    double truncated = 0.0;
    for (double x : values)
      if (x >= eta) truncated += x;
    truncated /= static_cast<double>(n);
    const double atk = oracle::avg_topk(values, k);
    check.observe(std::abs(truncated - alpha * atk));

    const auto shifted = [&](double s) {
      double acc = 0.0;
      for (double x : values) acc += std::max(x - s, 0.0);
      return s + acc / (alpha * static_cast<double>(n));
    };
    double min_over_candidates = shifted(eta);
    for (double s : values)
      min_over_candidates = std::min(min_over_candidates, shifted(s));
    check.observe_same_instance(std::abs(shifted(eta) - min_over_candidates));
    check.observe_same_instance(std::abs(min_over_candidates - atk));
  }
  return check.result;
}

PropertyResult opauc_closed_form_equivalence(std::uint64_t seed) {
  Check check("opauc_closed_form_equivalence", 1e-10);
  Rng rng(seed + 3);
  const double betas[] = {0.1, 0.3, 1.0 / 3.0, 0.5, 1.0};
  for (int i = 0; i < 500; ++i) {
    const double beta = betas[i % 5];
    const auto pos = random_scores(rng, uniform_count(rng, 1, 200), i % 3 == 0);
    const auto neg =
        random_scores(rng, uniform_count(rng, 10, 200), i % 3 == 0);
    const auto opt = oracle::closed_form_opauc(pos, neg, beta);
    const double risk = pairwise_sq_risk_opauc(pos, neg, beta);
    check.observe(std::abs(opt.value + 1.0 - risk));
  }
  return check.result;
}

PropertyResult tpauc_closed_form_equivalence(std::uint64_t seed) {
  Check check("tpauc_closed_form_equivalence", 1e-10);
  Rng rng(seed + 4);
  const double fracs[] = {0.3, 0.5, 1.0};
  for (int i = 0; i < 500; ++i) {
    const double alpha = fracs[i % 3];
    const double beta = fracs[(i / 3) % 3];
    const auto pos = random_scores(rng, uniform_count(rng, 4, 200), i % 3 == 0);
    const auto neg = random_scores(rng, uniform_count(rng, 4, 200), i % 3 == 0);
    const auto opt = oracle::closed_form_tpauc(pos, neg, alpha, beta);
    const double risk = pairwise_sq_risk_tpauc(pos, neg, alpha, beta);
    check.observe(std::abs(opt.value + 1.0 - risk));
  }
  return check.result;
}

PropertyResult hard_indicator_mean_relation(std::uint64_t seed) {
  Check check("hard_indicator_mean_relation", 1e-10);
  Rng rng(seed + 5);
  const double betas[] = {0.3, 0.5, 1.0};
  for (int i = 0; i < 200; ++i) {
    const double beta = betas[i % 3];
    const auto pos = random_scores(rng, uniform_count(rng, 2, 100), false);
    const auto neg = random_scores(rng, uniform_count(rng, 5, 100), false);
    const auto opt = oracle::closed_form_opauc(pos, neg, beta);
    const double mean = oracle::f_op_dataset_mean(
        pos, neg, opt.a_star, opt.b_star, opt.gamma_star, beta);
    const double risk = pairwise_sq_risk_opauc(pos, neg, beta);
    check.observe(std::abs(mean - (risk - 1.0)));
  }
  return check.result;
}

PropertyResult constrained_box_reformulation(std::uint64_t seed) {
  Check check("constrained_box_reformulation", 1e-6);
  Rng rng(seed + 6);
  const double betas[] = {0.3, 0.5, 1.0};
  for (int i = 0; i < 50; ++i) {
    const auto pos = random_scores(rng, uniform_count(rng, 2, 25), false);
    const auto neg = random_scores(rng, uniform_count(rng, 4, 25), false);
    const double beta = betas[i % 3];
    const auto opt = oracle::closed_form_opauc(pos, neg, beta);
    const double solved = oracle::nested_minimax_solve(pos, neg, beta);
    check.observe(std::abs(solved - opt.value));
  }
  return check.result;
}

PropertyResult multiplier_decoupling(std::uint64_t seed) {
  Check check("multiplier_decoupling", 1e-5);
  Rng rng(seed + 7);
  const double betas[] = {0.3, 0.5, 1.0};
  const double thetas[] = {0.0, 0.25, 0.5, 1.0, 2.0, 4.0};
  for (int i = 0; i < 50; ++i) {
    const auto pos = random_scores(rng, uniform_count(rng, 2, 25), false);
    const auto neg = random_scores(rng, uniform_count(rng, 4, 25), false);
    const double beta = betas[i % 3];
    const auto opt = oracle::closed_form_opauc(pos, neg, beta);
    const double solved = oracle::lagrangian_sweep_solve(pos, neg, beta,
                                                         thetas);
    check.observe(std::abs(solved - opt.value));
  }
  return check.result;
}

PropertyResult softplus_bias_supremum(std::uint64_t) {
  Check check("softplus_bias_supremum", 1e-9);
  double previous = std::numeric_limits<double>::infinity();
  for (double kappa : {2.0, 4.0, 8.0, 16.0, 32.0}) {
    const double sup = oracle::softplus_bias_sup(kappa);
    check.observe(std::abs(sup - std::log(2.0) / kappa));
    if (!(sup < previous)) check.result.pass = false;  // strictly decreasing
    previous = sup;
  }
  return check.result;
}

PropertyResult softplus_bias_halving(std::uint64_t) {
  Check check("softplus_bias_halving", 1e-6);
  for (double kappa : {2.0, 4.0, 8.0, 16.0}) {
    const double ratio = oracle::softplus_bias_sup(2.0 * kappa) /
                         oracle::softplus_bias_sup(kappa);
    check.observe(std::abs(ratio - 0.5));
  }
  return check.result;
}

PropertyResult softplus_dominance(std::uint64_t seed) {
  Check check("softplus_dominance", 0.0);
  Rng rng(seed + 8);
  for (int i = 0; i < 10000; ++i) {
    const double x = uniform(rng, -10.0, 10.0);
    const double kappa = uniform(rng, 0.5, 50.0);
    const double gap = softplus_r(x, kappa) - std::max(x, 0.0);
    // r_kappa dominates the hinge and the gap is capped by ln(2)/kappa.
    const double viol =
        std::max(-gap, gap - std::log(2.0) / kappa - 1e-15);
    check.observe(viol);
  }
  return check.result;
}

PropertyResult softplus_derivative(std::uint64_t seed) {
  Check check("softplus_derivative", 1e-6);
  Rng rng(seed + 9);
  const double h = 1e-5;
  for (int i = 0; i < 1000; ++i) {
    const double x = uniform(rng, -5.0, 5.0);
    const double kappa = uniform(rng, 0.5, 20.0);
    const double fd =
        (softplus_r(x + h, kappa) - softplus_r(x - h, kappa)) / (2.0 * h);
    check.observe(std::abs(softplus_r_prime(x, kappa) - fd));
  }
  return check.result;
}

PropertyResult negative_loss_increasing(std::uint64_t) {
  Check check("negative_loss_increasing", 1e-12);
  // d/df [(f-b)^2 + 2(1+gamma)f] = 2(f - b + 1 + gamma) >= 0 whenever
  // gamma >= b - 1; 50^3 grid, violations measured as negative slack.
  for (int ib = 0; ib < 50; ++ib) {
    const double b = ib / 49.0;
    for (int ig = 0; ig < 50; ++ig) {
      const double gamma = (b - 1.0) + (1.0 - (b - 1.0)) * ig / 49.0;
      double worst = 0.0;
      for (int is = 0; is < 50; ++is) {
        const double f = is / 49.0;
        const double deriv = 2.0 * (f - b + 1.0 + gamma);
        worst = std::max(worst, -deriv);
      }
      check.observe(worst);
    }
  }
  return check.result;
}

PropertyResult positive_loss_decreasing(std::uint64_t) {
  Check check("positive_loss_decreasing", 1e-12);
  // d/df [(f-a)^2 - 2(1+gamma)f] = 2(f - a - 1 - gamma) <= 0 whenever
  // gamma >= -a.
  for (int ia = 0; ia < 50; ++ia) {
    const double a = ia / 49.0;
    for (int ig = 0; ig < 50; ++ig) {
      const double gamma = -a + (1.0 + a) * ig / 49.0;
      double worst = 0.0;
      for (int is = 0; is < 50; ++is) {
        const double f = is / 49.0;
        const double deriv = 2.0 * (f - a - 1.0 - gamma);
        worst = std::max(worst, deriv);
      }
      check.observe(worst);
    }
  }
  return check.result;
}

struct ConcavityProbe {
  HyperParams hp{Task::opauc, 1.0, 1.0, 4.0, 1.0, 0.5};
  AuxState aux;
  std::vector<double> scores;
  std::vector<int> labels;
};

ConcavityProbe random_concavity_probe(Rng& rng, int i) {
  ConcavityProbe probe;
  const bool tpauc = i % 2 == 1;
  const double kappa = uniform(rng, 2.0, 6.0);
  const double omega = default_omega(kappa) + uniform(rng, 0.0, 1.0);
  const double fracs[] = {0.3, 0.5, 1.0};
  const double alpha = tpauc ? fracs[(i / 2) % 3] : 1.0;
  const double beta = fracs[(i / 4) % 3];
  const double prior = uniform(rng, 0.2, 0.8);
  probe.hp = HyperParams(tpauc ? Task::tpauc : Task::opauc, alpha, beta,
                         kappa, omega, prior);

  const std::size_t n = 128;
  const std::size_t n_pos = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::lround(prior * n)), 1, n - 1);
  probe.scores = random_scores(rng, n, false);
  probe.labels.assign(n, 0);
  for (std::size_t j = 0; j < n_pos; ++j) probe.labels[j] = 1;

  probe.aux.a = uniform(rng, 0.0, 1.0);
  probe.aux.b = uniform(rng, 0.0, 1.0);
  probe.aux.gamma = uniform(rng, -0.9, 0.9);
  probe.aux.s = uniform(rng, kSMin, kSMax);
  probe.aux.s_prime = uniform(rng, kSPrimeMin, kSPrimeMax);
  probe.aux.theta_a = uniform(rng, 0.0, 2.0);
  probe.aux.theta_b = uniform(rng, 0.0, 2.0);
  return probe;
}

// Exact curvature of the softplus terms in gamma; the quadratic part
// contributes -2(1+omega) and the multiplier terms are linear.
double analytic_gamma_curvature(const ConcavityProbe& probe) {
  const auto& hp = probe.hp;
  const auto& aux = probe.aux;
  const double w_neg = 1.0 / (hp.beta * (1.0 - hp.prior_p));
  const double w_pos = 1.0 / (hp.alpha * hp.prior_p);
  double acc = 0.0;
  for (std::size_t i = 0; i < probe.scores.size(); ++i) {
    const double f = probe.scores[i];
    if (probe.labels[i] == 0) {
      const double u = (f - aux.b) * (f - aux.b) +
                       2.0 * (1.0 + aux.gamma) * f - aux.s_prime;
      const double sig = softplus_r_prime(u, hp.kappa);
      acc += hp.kappa * sig * (1.0 - sig) * 4.0 * f * f * w_neg;
    } else if (hp.task == Task::tpauc) {
      const double u = (f - aux.a) * (f - aux.a) -
                       2.0 * (1.0 + aux.gamma) * f - aux.s;
      const double sig = softplus_r_prime(u, hp.kappa);
      acc += hp.kappa * sig * (1.0 - sig) * 4.0 * f * f * w_pos;
    }
  }
  return acc / static_cast<double>(probe.scores.size());
}

double gamma_second_difference(const ConcavityProbe& probe, double h) {
  AuxState aux = probe.aux;
  const auto at = [&](double gamma) {
    aux.gamma = gamma;
    return batch_objective(probe.scores, probe.labels, aux, probe.hp);
  };
  const double g = probe.aux.gamma;
  return (at(g + h) - 2.0 * at(g) + at(g - h)) / (h * h);
}

PropertyResult gamma_hessian_bound(std::uint64_t seed) {
  Check check("gamma_hessian_bound", 1e-5);
  Rng rng(seed + 10);
  for (int i = 0; i < 1000; ++i) {
    const auto probe = random_concavity_probe(rng, i);
    const double second = gamma_second_difference(probe, 1e-4);
    const double slack = analytic_gamma_curvature(probe);
    // second difference <= -2(1+omega) + slack, with the slack term the
    // exact softplus curvature.
    const double bound = -2.0 * (1.0 + probe.hp.omega) + slack;
    check.observe((second - bound) / std::max(1.0, std::abs(bound)));
  }
  return check.result;
}

// Worst-case curvature budget of the softplus terms in gamma: the
// sigmoid factor is at most 1/4, so the batch curvature never exceeds
// kappa * mean[f^2 * weight] over the active branches.
double gamma_curvature_budget(const ConcavityProbe& probe) {
  const auto& hp = probe.hp;
  double acc = 0.0;
  for (std::size_t i = 0; i < probe.scores.size(); ++i) {
    const double f = probe.scores[i];
    if (probe.labels[i] == 0)
      acc += f * f / (hp.beta * (1.0 - hp.prior_p));
    else if (hp.task == Task::tpauc)
      acc += f * f / (hp.alpha * hp.prior_p);
  }
  return hp.kappa * acc / static_cast<double>(probe.scores.size());
}

// Pointwise negativity in gamma, with omega raised (when the bare
// default is too small) to cover the region-rescaled curvature budget.
// The partial-region weights 1/(beta(1-p)) and 1/(alpha p) scale the
// softplus curvature past what kappa <= 2+2*omega alone absorbs, so
// "sufficiently large omega" is budget/2 - 1.
PropertyResult gamma_strong_concavity(std::uint64_t seed) {
  Check check("gamma_strong_concavity", 0.0);
  Rng rng(seed + 11);
  for (int i = 0; i < 1000; ++i) {
    auto probe = random_concavity_probe(rng, i);
    const double budget = gamma_curvature_budget(probe);
    probe.hp.omega = std::max(probe.hp.omega, budget / 2.0 - 1.0) +
                     uniform(rng, 1e-3, 0.5);
    check.observe(gamma_second_difference(probe, 1e-4));
  }
  return check.result;
}

PropertyResult feasible_negative_branch_range(std::uint64_t seed) {
  Check check("feasible_negative_branch_range", 0.0);
  Rng rng(seed + 12);
  for (int i = 0; i < 100000; ++i) {
    const double f = uniform(rng, 0.0, 1.0);
    const double b = uniform(rng, 0.0, 1.0);
    const double gamma = uniform(rng, -1.0, 1.0);
    const double sp = uniform(rng, kSPrimeMin, kSPrimeMax);
    const double u = (f - b) * (f - b) + 2.0 * (1.0 + gamma) * f - sp;
    check.observe(std::abs(u) - 5.0);
  }
  for (double f : {0.0, 1.0})
    for (double b : {0.0, 1.0})
      for (double gamma : {-1.0, 1.0})
        for (double sp : {kSPrimeMin, kSPrimeMax}) {
          const double u = (f - b) * (f - b) + 2.0 * (1.0 + gamma) * f - sp;
          check.observe(std::abs(u) - 5.0);
        }
  return check.result;
}

AuxState random_aux(Rng& rng) {
  AuxState aux;
  aux.a = uniform(rng, 0.0, 1.0);
  aux.b = uniform(rng, 0.0, 1.0);
  aux.gamma = uniform(rng, -1.0, 1.0);
  aux.s = uniform(rng, kSMin, kSMax);
  aux.s_prime = uniform(rng, kSPrimeMin, kSPrimeMax);
  aux.theta_a = uniform(rng, 0.0, 3.0);
  aux.theta_b = uniform(rng, 0.0, 3.0);
  return aux;
}

PropertyResult gradient_check_loss(std::uint64_t seed) {
  Check check("gradient_check_loss", 1e-5);
  Rng rng(seed + 13);
  const double h = 1e-5;
  for (int i = 0; i < 100; ++i) {
    const bool tpauc = i % 2 == 1;
    const double kappa = uniform(rng, 2.0, 6.0);
    const double omega = default_omega(kappa) + uniform(rng, 0.0, 0.5);
    const double fracs[] = {0.3, 0.5, 1.0};
    const HyperParams hp(tpauc ? Task::tpauc : Task::opauc, fracs[i % 3],
                         fracs[(i / 3) % 3], kappa, omega,
                         uniform(rng, 0.1, 0.9));
    const std::size_t n = uniform_count(rng, 2, 64);
    auto scores = random_scores(rng, n, false);
    std::vector<int> labels(n);
    for (auto& y : labels) y = uniform(rng, 0.0, 1.0) < hp.prior_p ? 1 : 0;
    const AuxState aux = random_aux(rng);

    const auto [obj, grads] = batch_objective_and_grad(scores, labels, aux, hp);

    double worst = 0.0;
    const auto compare = [&](double analytic, double plus, double minus) {
      const double fd = (plus - minus) / (2.0 * h);
      worst = std::max(worst,
                       std::abs(analytic - fd) / std::max(1.0, std::abs(fd)));
    };
    const auto at = [&](const AuxState& a) {
      return batch_objective(scores, labels, a, hp);
    };
    AuxState p = aux, m = aux;

    p.a = aux.a + h, m.a = aux.a - h;
    compare(grads.d_a, at(p), at(m));
    p = m = aux;
    p.b = aux.b + h, m.b = aux.b - h;
    compare(grads.d_b, at(p), at(m));
    p = m = aux;
    p.gamma = aux.gamma + h, m.gamma = aux.gamma - h;
    compare(grads.d_gamma, at(p), at(m));
    p = m = aux;
    p.s = aux.s + h, m.s = aux.s - h;
    compare(grads.d_s, at(p), at(m));
    p = m = aux;
    p.s_prime = aux.s_prime + h, m.s_prime = aux.s_prime - h;
    compare(grads.d_s_prime, at(p), at(m));
    p = m = aux;
    p.theta_a = aux.theta_a + h, m.theta_a = aux.theta_a - h;
    compare(grads.d_theta_a, at(p), at(m));
    p = m = aux;
    p.theta_b = aux.theta_b + h, m.theta_b = aux.theta_b - h;
    compare(grads.d_theta_b, at(p), at(m));

    for (int probe = 0; probe < 5; ++probe) {
      const std::size_t j = uniform_count(rng, 0, n - 1);
      const double orig = scores[j];
      scores[j] = orig + h;
      const double plus = batch_objective(scores, labels, aux, hp);
      scores[j] = orig - h;
      const double minus = batch_objective(scores, labels, aux, hp);
      scores[j] = orig;
      compare(grads.d_score[j], plus, minus);
    }
    check.observe(worst);
  }
  return check.result;
}

PropertyResult gradient_check_model_impl(std::uint64_t seed) {
  Check check("gradient_check_model", 1e-6);
  Rng rng(seed + 14);
  const double h = 1e-5;
  for (int i = 0; i < 100; ++i) {
    const bool mlp = i % 2 == 1;
    const std::size_t dim = uniform_count(rng, 1, mlp ? 6 : 10);
    const std::size_t hidden = mlp ? uniform_count(rng, 1, 8) : 0;
    const std::size_t n = uniform_count(rng, 1, 8);

    std::vector<double> features(n * dim);
    for (double& x : features) x = uniform(rng, -2.0, 2.0);
    std::vector<int> labels(n, 0);
    labels[0] = 1;
    if (n > 1) labels[n - 1] = 0;
    SampleSet set;
    try {
      set = make_sample_set(dim, features, labels);
    } catch (const std::invalid_argument&) {
      // single-row sets have one class only; rebuild with two rows
      features.resize(2 * dim);
      for (double& x : features) x = uniform(rng, -2.0, 2.0);
      set = make_sample_set(dim, features, {1, 0});
    }

    ModelParams params = init_model(mlp ? ModelKind::mlp1 : ModelKind::linear,
                                    dim, hidden, rng());
    for (double& w : params.weights) w += uniform(rng, -0.5, 0.5);

    std::vector<std::size_t> idx(set.n);
    for (std::size_t j = 0; j < set.n; ++j) idx[j] = j;
    std::vector<double> dL(set.n);
    for (double& v : dL) v = uniform(rng, -1.0, 1.0);

    const auto grad = backward(params, set, idx, dL);
    const auto weighted_sum = [&](const ModelParams& p) {
      const auto scores = forward(p, set, idx);
      double acc = 0.0;
      for (std::size_t j = 0; j < scores.size(); ++j)
        acc += dL[j] * scores[j];
      return acc;
    };

    double worst = 0.0;
    for (std::size_t j = 0; j < params.weights.size(); ++j) {
      ModelParams plus = params, minus = params;
      plus.weights[j] += h;
      minus.weights[j] -= h;
      const double fd = (weighted_sum(plus) - weighted_sum(minus)) / (2.0 * h);
      worst = std::max(worst,
                       std::abs(grad[j] - fd) / std::max(1.0, std::abs(fd)));
    }
    check.observe(worst);
  }
  return check.result;
}

const struct {
  const char* name;
  PropertyResult (*run)(std::uint64_t);
} kProperties[] = {
    {"atk_identity", atk_identity},
    {"atk_quantile_form", atk_quantile_form},
    {"opauc_closed_form_equivalence", opauc_closed_form_equivalence},
    {"tpauc_closed_form_equivalence", tpauc_closed_form_equivalence},
    {"hard_indicator_mean_relation", hard_indicator_mean_relation},
    {"constrained_box_reformulation", constrained_box_reformulation},
    {"multiplier_decoupling", multiplier_decoupling},
    {"softplus_bias_supremum", softplus_bias_supremum},
    {"softplus_bias_halving", softplus_bias_halving},
    {"softplus_dominance", softplus_dominance},
    {"softplus_derivative", softplus_derivative},
    {"negative_loss_increasing", negative_loss_increasing},
    {"positive_loss_decreasing", positive_loss_decreasing},
    {"gamma_hessian_bound", gamma_hessian_bound},
    {"gamma_strong_concavity", gamma_strong_concavity},
    {"feasible_negative_branch_range", feasible_negative_branch_range},
    {"gradient_check_loss", gradient_check_loss},
    {"gradient_check_model", gradient_check_model_impl},
};

}  // namespace

std::vector<std::string> property_names() {
  std::vector<std::string> names;
  for (const auto& p : kProperties) names.emplace_back(p.name);
  return names;
}

std::vector<PropertyResult> run_property_suite(std::uint64_t seed,
                                               const std::string& only) {
  std::vector<PropertyResult> results;
  bool matched = false;
  for (const auto& p : kProperties) {
    if (!only.empty() && only != p.name) continue;
    matched = true;
    results.push_back(p.run(seed));
  }
  if (!only.empty() && !matched)
    throw std::invalid_argument("unknown property '" + only + "'");
  return results;
}

}  // namespace paucopt
