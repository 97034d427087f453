#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <stdexcept>

#include <doctest.h>

#include "paucopt/loss.hpp"
#include "paucopt/metrics.hpp"
#include "paucopt/oracle.hpp"

using namespace paucopt;

TEST_CASE("softplus values and saturation") {
  CHECK(softplus_r(0.0, 4.0) == doctest::Approx(std::log(2.0) / 4.0)
                                    .epsilon(1e-15));
  CHECK(std::abs(softplus_r(10.0, 5.0) - 10.0) < 1e-21);
  CHECK(softplus_r(-10.0, 5.0) < 1e-21);
  CHECK(softplus_r(-10.0, 5.0) >= 0.0);
}

TEST_CASE("softplus derivative") {
  CHECK(softplus_r_prime(0.0, 3.0) == 0.5);
  CHECK(softplus_r_prime(50.0, 5.0) == doctest::Approx(1.0));
  const double h = 1e-5;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int i = 0; i < 100; ++i) {
    const double x = u(rng), kappa = 0.5 + 5.0 * std::abs(u(rng)) / 5.0;
    const double fd =
        (softplus_r(x + h, kappa) - softplus_r(x - h, kappa)) / (2.0 * h);
    CHECK(std::abs(softplus_r_prime(x, kappa) - fd) <= 1e-6);
  }
}

TEST_CASE("hyper-parameter validation") {
  CHECK_NOTHROW(HyperParams(Task::opauc, 1.0, 0.5, 5.0, 1.5, 0.1));
  CHECK_NOTHROW(HyperParams(Task::opauc, 1.0, 0.5, 2.0, 0.0, 0.1));
  CHECK_THROWS_WITH_AS(HyperParams(Task::opauc, 1.0, 0.5, 10.0, 0.0, 0.1),
                       doctest::Contains("strong concavity"),
                       std::invalid_argument);
  CHECK_THROWS_AS(HyperParams(Task::opauc, 0.0, 0.5, 2.0, 0.0, 0.1),
                  std::invalid_argument);
  CHECK_THROWS_AS(HyperParams(Task::opauc, 1.0, 1.5, 2.0, 0.0, 0.1),
                  std::invalid_argument);
  CHECK_THROWS_AS(HyperParams(Task::opauc, 1.0, 0.5, 2.0, 0.0, 1.0),
                  std::invalid_argument);
  CHECK(default_omega(5.0) == doctest::Approx(1.5));
  CHECK(default_omega(1.0) == 0.0);
}

TEST_CASE("hard-indicator instance objective") {
  const HyperParams hp(Task::opauc, 1.0, 0.5, 5.0, 1.5, 0.5);
  AuxState aux;
  aux.a = 0.5;
  aux.gamma = 0.0;
  CHECK(f_op_instance(0.5, 1, aux, 0.0, hp) == doctest::Approx(-2.0));

  aux.gamma = 0.3;
  CHECK(f_op_instance(0.2, 0, aux, 0.9, hp) ==
        doctest::Approx(-aux.gamma * aux.gamma));
}

TEST_CASE("hinge-shifted objective, inactive hinge") {
  const HyperParams hp(Task::opauc, 1.0, 0.5, 5.0, 1.5, 0.25);
  AuxState aux;
  aux.b = 0.0;
  aux.gamma = -1.0;
  aux.s_prime = 5.0;
  // u = (f-b)^2 + 0 - 5 <= -4 < 0, so only beta*s' survives.
  CHECK(g_op_instance(0.0, 0, aux, hp) ==
        doctest::Approx(5.0 / (1.0 - hp.prior_p) - 1.0));
}

TEST_CASE("positive branch shared between hard and shifted forms") {
  const HyperParams hp(Task::opauc, 1.0, 0.4, 4.0, 1.0, 0.3);
  AuxState aux;
  aux.a = 0.7;
  aux.gamma = 0.2;
  aux.s_prime = 1.0;
  for (double f : {0.0, 0.3, 0.9})
    CHECK(g_op_instance(f, 1, aux, hp) ==
          f_op_instance(f, 1, aux, /*threshold=*/2.0, hp));
}

TEST_CASE("minimizing over s' recovers the average top-k transformed loss") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::size_t n_neg = 20;
  const double beta = 0.25;  // k = 5 exactly
  const std::size_t k = quantile_count(n_neg, beta);
  const HyperParams hp(Task::opauc, 1.0, beta, 5.0, 1.5, 0.5);
  AuxState aux;
  aux.b = 0.4;
  aux.gamma = 0.1;  // >= b - 1, the monotone regime

  std::vector<double> scores(n_neg);
  std::vector<int> labels(n_neg, 0);
  for (auto& f : scores) f = u(rng);
  std::vector<double> ell(n_neg);
  for (std::size_t i = 0; i < n_neg; ++i)
    ell[i] = (scores[i] - aux.b) * (scores[i] - aux.b) +
             2.0 * (1.0 + aux.gamma) * scores[i];

  // negative-branch batch mean as a function of s', minimized over the
  // kink candidates
  double best = 1e300;
  for (double cand : ell) {
    AuxState probe = aux;
    probe.s_prime = cand;
    double mean = 0.0;
    for (std::size_t i = 0; i < n_neg; ++i)
      mean += g_op_instance(scores[i], 0, probe, hp) +
              probe.gamma * probe.gamma;
    best = std::min(best, mean / n_neg);
  }
  const double atk = oracle::avg_topk(ell, k);
  CHECK(best == doctest::Approx(atk / (1.0 - hp.prior_p)).epsilon(1e-12));
}

TEST_CASE("smoothed objective approaches the hinge form as kappa grows") {
  HyperParams hp(Task::opauc, 1.0, 0.5, 2.0, 0.0, 0.4);
  hp.kappa = 1e4;  // evaluation-only probe beyond the training guard
  AuxState aux;
  aux.a = 0.3;
  aux.b = 0.6;
  aux.gamma = 0.1;
  aux.s_prime = 2.0;
  const double w_neg = 1.0 / (hp.beta * (1.0 - hp.prior_p));
  for (double f : {0.05, 0.45, 0.85}) {
    for (int y : {0, 1}) {
      const double gap = g_op_kappa_omega_instance(f, y, aux, hp) -
                         g_op_instance(f, y, aux, hp) +
                         hp.omega * aux.gamma * aux.gamma;
      CHECK(gap >= -1e-15);
      CHECK(gap <= std::log(2.0) / hp.kappa * (y == 0 ? w_neg : 1.0) + 1e-15);
    }
  }
}

TEST_CASE("omega = 0 reduces to the smoothed unregularized form") {
  HyperParams hp(Task::opauc, 1.0, 0.5, 2.0, 0.0, 0.4);
  AuxState aux;
  aux.b = 0.2;
  aux.gamma = 0.5;
  aux.s_prime = 1.0;
  const double u = (0.7 - aux.b) * (0.7 - aux.b) +
                   2.0 * (1.0 + aux.gamma) * 0.7 - aux.s_prime;
  const double expect = -aux.gamma * aux.gamma +
                        (hp.beta * aux.s_prime + softplus_r(u, hp.kappa)) /
                            (hp.beta * (1.0 - hp.prior_p));
  CHECK(g_op_kappa_omega_instance(0.7, 0, aux, hp) ==
        doctest::Approx(expect).epsilon(1e-15));
}

TEST_CASE("two-way instance objective") {
  const double alpha = 0.5, p = 0.25, kappa = 4.0, omega = 1.0;
  const HyperParams hp(Task::tpauc, alpha, 0.5, kappa, omega, p);
  AuxState aux;
  aux.a = 0.3;
  aux.gamma = -1.0;
  aux.s = 1.0;
  // score = a and gamma = -1 make u = -s
  const double expect =
      (alpha * 1.0 + softplus_r(-1.0, kappa)) / (alpha * p) - (omega + 1.0);
  CHECK(g_tp_kappa_omega_instance(aux.a, 1, aux, hp) ==
        doctest::Approx(expect).epsilon(1e-15));
}

TEST_CASE("full-alpha two-way positive branch collapses to the one-way one") {
  // With alpha = 1 and the shift at (or below) its minimizing value, the
  // sharp-kappa limit of the shifted positive branch is the plain one.
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double p = 0.4;
  HyperParams tp(Task::tpauc, 1.0, 0.5, 2.0, 0.0, p);
  tp.kappa = 1e6;  // evaluation-only probe
  HyperParams op(Task::opauc, 1.0, 0.5, 2.0, 0.0, p);
  AuxState aux;
  aux.a = u(rng);
  aux.gamma = u(rng);
  aux.s = kSMin;  // below every transformed loss, hence a minimizer

  double tp_mean = 0.0, op_mean = 0.0;
  const int n = 50;
  for (int i = 0; i < n; ++i) {
    const double f = u(rng);
    tp_mean += g_tp_kappa_omega_instance(f, 1, aux, tp) +
               aux.gamma * aux.gamma;
    op_mean += g_op_instance(f, 1, aux, op) + aux.gamma * aux.gamma;
  }
  CHECK(tp_mean / n == doctest::Approx(op_mean / n).epsilon(1e-5));
}

TEST_CASE("multiplier penalty") {
  AuxState aux;
  CHECK(lagrangian_terms(aux, Task::opauc) == 0.0);
  CHECK(lagrangian_terms(aux, Task::tpauc) == 0.0);

  aux.theta_b = 2.0;
  aux.b = 1.0;
  aux.gamma = 0.0;
  CHECK(lagrangian_terms(aux, Task::opauc) == 0.0);

  AuxState tp;
  tp.theta_a = 1.0;
  tp.a = 0.3;
  tp.gamma = -0.5;
  CHECK(lagrangian_terms(tp, Task::tpauc) == doctest::Approx(-0.2));
}

TEST_CASE("batch gradients: class-absent branches stay inert") {
  const HyperParams hp(Task::tpauc, 0.5, 0.5, 4.0, 1.0, 0.5);
  AuxState aux;
  aux.a = 0.4;
  aux.b = 0.6;
  aux.theta_a = 0.7;
  aux.theta_b = 1.1;
  const std::vector<double> scores{0.2, 0.8, 0.5};
  const std::vector<int> all_pos{1, 1, 1};
  const auto [obj, g] = batch_objective_and_grad(scores, all_pos, aux, hp);
  (void)obj;
  CHECK(g.d_b == -aux.theta_b);          // multiplier part only
  CHECK(g.d_s_prime == 0.0);
  CHECK(g.d_theta_b == -(aux.b - 1.0 - aux.gamma));
}

TEST_CASE("one-way task keeps d_s and d_theta_a at zero") {
  const HyperParams hp(Task::opauc, 1.0, 0.5, 5.0, 1.5, 0.5);
  AuxState aux;
  aux.s = 0.5;
  aux.theta_a = 3.0;
  const std::vector<double> scores{0.2, 0.8};
  const std::vector<int> labels{1, 0};
  const auto [obj, g] = batch_objective_and_grad(scores, labels, aux, hp);
  (void)obj;
  CHECK(g.d_s == 0.0);
  CHECK(g.d_theta_a == 0.0);
}

TEST_CASE("duplicated batch halves per-instance score gradients") {
  const HyperParams hp(Task::opauc, 1.0, 0.5, 5.0, 1.5, 0.5);
  AuxState aux;
  aux.a = 0.5;
  aux.b = 0.5;
  aux.s_prime = 1.0;
  const std::vector<double> scores{0.2, 0.8, 0.6};
  const std::vector<int> labels{1, 0, 0};
  std::vector<double> scores2(scores);
  scores2.insert(scores2.end(), scores.begin(), scores.end());
  std::vector<int> labels2(labels);
  labels2.insert(labels2.end(), labels.begin(), labels.end());

  const auto [obj1, g1] = batch_objective_and_grad(scores, labels, aux, hp);
  const auto [obj2, g2] = batch_objective_and_grad(scores2, labels2, aux, hp);
  CHECK(obj1 == doctest::Approx(obj2).epsilon(1e-15));
  for (std::size_t i = 0; i < scores.size(); ++i)
    CHECK(g2.d_score[i] == doctest::Approx(0.5 * g1.d_score[i])
                               .epsilon(1e-15));
}

TEST_CASE("objective is invariant under batch permutation") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 3 + rng() % 60;
    std::vector<double> scores(n);
    std::vector<int> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
      scores[i] = u(rng);
      labels[i] = rng() % 2;
    }
    const HyperParams hp(trial % 2 ? Task::tpauc : Task::opauc, 0.5, 0.5, 4.0,
                         1.0, 0.3);
    AuxState aux;
    aux.a = u(rng);
    aux.b = u(rng);
    aux.gamma = 2.0 * u(rng) - 1.0;
    aux.s = u(rng);
    aux.s_prime = u(rng);

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<double> ps(n);
    std::vector<int> pl(n);
    for (std::size_t i = 0; i < n; ++i) {
      ps[i] = scores[perm[i]];
      pl[i] = labels[perm[i]];
    }
    // bitwise equality through the sorted reduction
    CHECK(batch_objective(scores, labels, aux, hp) ==
          batch_objective(ps, pl, aux, hp));
    CHECK(batch_objective_and_grad(scores, labels, aux, hp).first ==
          batch_objective_and_grad(ps, pl, aux, hp).first);
  }
}

TEST_CASE("empty batch is rejected") {
  const HyperParams hp(Task::opauc, 1.0, 0.5, 5.0, 1.5, 0.5);
  CHECK_THROWS_AS(batch_objective_and_grad({}, {}, AuxState{}, hp),
                  std::invalid_argument);
}

TEST_CASE("two-way batch mean at the closed-form optimum matches the "
          "pairwise risk") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::size_t n_pos = 20, n_neg = 40;
  std::vector<double> pos(n_pos), neg(n_neg);
  for (auto& x : pos) x = u(rng);
  for (auto& x : neg) x = u(rng);
  const double alpha = 0.5, beta = 0.5;
  const std::size_t kp = quantile_count(n_pos, alpha);
  const std::size_t kn = quantile_count(n_neg, beta);

  const auto opt = oracle::closed_form_tpauc(pos, neg, alpha, beta);

  // ATk shift minimizers: the k-th largest transformed loss per class.
  std::vector<double> ell_pos(n_pos), ell_neg(n_neg);
  for (std::size_t i = 0; i < n_pos; ++i)
    ell_pos[i] = (pos[i] - opt.a_star) * (pos[i] - opt.a_star) -
                 2.0 * (1.0 + opt.gamma_star) * pos[i];
  for (std::size_t j = 0; j < n_neg; ++j)
    ell_neg[j] = (neg[j] - opt.b_star) * (neg[j] - opt.b_star) +
                 2.0 * (1.0 + opt.gamma_star) * neg[j];
  std::sort(ell_pos.begin(), ell_pos.end(), std::greater<>());
  std::sort(ell_neg.begin(), ell_neg.end(), std::greater<>());

  HyperParams hp(Task::tpauc, alpha, beta, 2.0, 0.0,
                 static_cast<double>(n_pos) / (n_pos + n_neg));
  hp.kappa = 1e6;  // evaluation-only; the smoothing gap is ~1e-6/alpha
  AuxState aux;
  aux.a = opt.a_star;
  aux.b = opt.b_star;
  aux.gamma = opt.gamma_star;
  aux.s = ell_pos[kp - 1];
  aux.s_prime = ell_neg[kn - 1];

  std::vector<double> scores(pos);
  scores.insert(scores.end(), neg.begin(), neg.end());
  std::vector<int> labels(n_pos, 1);
  labels.insert(labels.end(), n_neg, 0);

  const double mean = batch_objective(scores, labels, aux, hp);
  const double risk = pairwise_sq_risk_tpauc(pos, neg, alpha, beta);
  CHECK(mean == doctest::Approx(risk - 1.0).epsilon(1e-5));
}
