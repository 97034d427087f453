#include "paucopt/loss.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace paucopt {

namespace {

double logistic(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// Fixed-point superaccumulator. Every addend lands in integer limbs, so
// the accumulated state is bitwise identical under any permutation of
// the inputs, and the reduction stays O(n). Headroom: one add deposits
// < 2^32 per limb, so ~2^31 adds fit before an int64 limb could wrap.
class ExactSum {
 public:
  void add(double x) {
    if (x == 0.0) return;
    int e;
    const double m = std::frexp(x, &e);  // x = m * 2^e, |m| in [0.5, 1)
    const auto mant = static_cast<std::int64_t>(std::ldexp(m, 53));
    const int bitpos = e - 53 + kBias;   // >= 0 for every finite double
    const int limb = bitpos >> 5;
    const int off = bitpos & 31;
    const auto wide = static_cast<__int128>(mant) << off;
    limbs_[limb] += static_cast<std::int64_t>(wide & 0xFFFFFFFF);
    limbs_[limb + 1] +=
        static_cast<std::int64_t>((wide >> 32) & 0xFFFFFFFF);
    limbs_[limb + 2] += static_cast<std::int64_t>(wide >> 64);
  }

  double value() const {
    std::int64_t limbs[kLimbs];
    std::copy(std::begin(limbs_), std::end(limbs_), std::begin(limbs));
    propagate(limbs);
    double sign = 1.0;
    if (limbs[kLimbs - 1] < 0) {
      // Render the magnitude: a negative total would otherwise leave a
      // borrow chain of full limbs that overflows the summation below.
      for (int i = 0; i < kLimbs; ++i) limbs[i] = -limbs_[i];
      propagate(limbs);
      sign = -1.0;
    }
    double acc = 0.0;
    for (int i = 0; i < kLimbs; ++i)
      if (limbs[i] != 0)
        acc += std::ldexp(static_cast<double>(limbs[i]), 32 * i - kBias);
    return sign * acc;
  }

 private:
  static constexpr int kBias = 1152;
  static constexpr int kLimbs = 70;

  static void propagate(std::int64_t (&limbs)[kLimbs]) {
    for (int i = 0; i + 1 < kLimbs; ++i) {
      const std::int64_t carry = limbs[i] >> 32;
      limbs[i] -= carry << 32;  // remainder in [0, 2^32)
      limbs[i + 1] += carry;
    }
  }

  std::int64_t limbs_[kLimbs] = {};
};

}  // namespace

HyperParams::HyperParams(Task task_, double alpha_, double beta_,
                         double kappa_, double omega_, double prior_p_,
                         double big_m_)
    : task(task_),
      alpha(alpha_),
      beta(beta_),
      kappa(kappa_),
      omega(omega_),
      prior_p(prior_p_),
      big_m(big_m_) {
  if (!(alpha > 0.0) || alpha > 1.0)
    throw std::invalid_argument("alpha must be in (0, 1]");
  if (!(beta > 0.0) || beta > 1.0)
    throw std::invalid_argument("beta must be in (0, 1]");
  if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
  if (omega < 0.0) throw std::invalid_argument("omega must be nonnegative");
  if (!(prior_p > 0.0) || !(prior_p < 1.0))
    throw std::invalid_argument("prior_p must be in (0, 1)");
  if (!(big_m > 0.0)) throw std::invalid_argument("M must be positive");
  if (kappa > 2.0 + 2.0 * omega + 1e-12)
    throw std::invalid_argument(
        "strong concavity violated: kappa > 2 + 2*omega");
}

double default_omega(double kappa) { return std::max(0.0, kappa / 2.0 - 1.0); }

double softplus_r(double x, double kappa) {
  return std::max(x, 0.0) + std::log1p(std::exp(-kappa * std::abs(x))) / kappa;
}

double softplus_r_prime(double x, double kappa) {
  return logistic(kappa * x);
}

double f_op_instance(double score, int y, const AuxState& aux,
                     double threshold, const HyperParams& hp) {
  const double f = score;
  double value = -aux.gamma * aux.gamma;
  if (y == 1) {
    value += ((f - aux.a) * (f - aux.a) - 2.0 * (1.0 + aux.gamma) * f) /
             hp.prior_p;
  } else if (f >= threshold) {
    value += ((f - aux.b) * (f - aux.b) + 2.0 * (1.0 + aux.gamma) * f) /
             ((1.0 - hp.prior_p) * hp.beta);
  }
  return value;
}

double g_op_instance(double score, int y, const AuxState& aux,
                     const HyperParams& hp) {
  const double f = score;
  double value = -aux.gamma * aux.gamma;
  if (y == 1) {
    value += ((f - aux.a) * (f - aux.a) - 2.0 * (1.0 + aux.gamma) * f) /
             hp.prior_p;
  } else {
    const double u = (f - aux.b) * (f - aux.b) +
                     2.0 * (1.0 + aux.gamma) * f - aux.s_prime;
    value += (hp.beta * aux.s_prime + std::max(u, 0.0)) /
             (hp.beta * (1.0 - hp.prior_p));
  }
  return value;
}

double g_op_kappa_omega_instance(double score, int y, const AuxState& aux,
                                 const HyperParams& hp) {
  const double f = score;
  double value = -(1.0 + hp.omega) * aux.gamma * aux.gamma;
  if (y == 1) {
    value += ((f - aux.a) * (f - aux.a) - 2.0 * (1.0 + aux.gamma) * f) /
             hp.prior_p;
  } else {
    const double u = (f - aux.b) * (f - aux.b) +
                     2.0 * (1.0 + aux.gamma) * f - aux.s_prime;
    value += (hp.beta * aux.s_prime + softplus_r(u, hp.kappa)) /
             (hp.beta * (1.0 - hp.prior_p));
  }
  return value;
}

double g_tp_kappa_omega_instance(double score, int y, const AuxState& aux,
                                 const HyperParams& hp) {
  const double f = score;
  double value = -(1.0 + hp.omega) * aux.gamma * aux.gamma;
  if (y == 1) {
    const double u = (f - aux.a) * (f - aux.a) -
                     2.0 * (1.0 + aux.gamma) * f - aux.s;
    value += (hp.alpha * aux.s + softplus_r(u, hp.kappa)) /
             (hp.alpha * hp.prior_p);
  } else {
    const double u = (f - aux.b) * (f - aux.b) +
                     2.0 * (1.0 + aux.gamma) * f - aux.s_prime;
    value += (hp.beta * aux.s_prime + softplus_r(u, hp.kappa)) /
             (hp.beta * (1.0 - hp.prior_p));
  }
  return value;
}

double lagrangian_terms(const AuxState& aux, Task task) {
  double value = -aux.theta_b * (aux.b - 1.0 - aux.gamma);
  if (task == Task::tpauc) value += -aux.theta_a * (-aux.a - aux.gamma);
  return value;
}

std::pair<double, GradBundle> batch_objective_and_grad(
    std::span<const double> scores, std::span<const int> labels,
    const AuxState& aux, const HyperParams& hp) {
  const std::size_t n = scores.size();
  if (n == 0) throw std::invalid_argument("empty batch");
  if (labels.size() != n)
    throw std::invalid_argument("scores and labels length mismatch");

  GradBundle g;
  g.d_score.assign(n, 0.0);
  const double scale = 1.0 / static_cast<double>(n);
  const double w_neg = 1.0 / (hp.beta * (1.0 - hp.prior_p));
  const double w_pos = hp.task == Task::tpauc
                           ? 1.0 / (hp.alpha * hp.prior_p)
                           : 1.0 / hp.prior_p;

  ExactSum terms;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = scores[i];
    if (labels[i] == 1) {
      const double df = 2.0 * (f - aux.a) - 2.0 * (1.0 + aux.gamma);
      if (hp.task == Task::opauc) {
        terms.add(
            ((f - aux.a) * (f - aux.a) - 2.0 * (1.0 + aux.gamma) * f) *
            w_pos);
        g.d_score[i] = scale * df * w_pos;
        g.d_a += scale * (-2.0 * (f - aux.a)) * w_pos;
        g.d_gamma += scale * (-2.0 * f) * w_pos;
      } else {
        const double u = (f - aux.a) * (f - aux.a) -
                         2.0 * (1.0 + aux.gamma) * f - aux.s;
        const double rp = softplus_r_prime(u, hp.kappa);
        terms.add((hp.alpha * aux.s + softplus_r(u, hp.kappa)) * w_pos);
        g.d_score[i] = scale * rp * df * w_pos;
        g.d_a += scale * rp * (-2.0 * (f - aux.a)) * w_pos;
        g.d_gamma += scale * rp * (-2.0 * f) * w_pos;
        g.d_s += scale * (hp.alpha - rp) * w_pos;
      }
    } else {
      const double u = (f - aux.b) * (f - aux.b) +
                       2.0 * (1.0 + aux.gamma) * f - aux.s_prime;
      const double rp = softplus_r_prime(u, hp.kappa);
      terms.add((hp.beta * aux.s_prime + softplus_r(u, hp.kappa)) * w_neg);
      g.d_score[i] = scale * rp * (2.0 * (f - aux.b) +
                                   2.0 * (1.0 + aux.gamma)) * w_neg;
      g.d_b += scale * rp * (-2.0 * (f - aux.b)) * w_neg;
      g.d_gamma += scale * rp * (2.0 * f) * w_neg;
      g.d_s_prime += scale * (hp.beta - rp) * w_neg;
    }
  }

  double objective = scale * terms.value();
  objective += -(1.0 + hp.omega) * aux.gamma * aux.gamma;
  objective += lagrangian_terms(aux, hp.task);

  g.d_gamma += -2.0 * (1.0 + hp.omega) * aux.gamma + aux.theta_b;
  g.d_b += -aux.theta_b;
  g.d_theta_b = -(aux.b - 1.0 - aux.gamma);
  if (hp.task == Task::tpauc) {
    g.d_gamma += aux.theta_a;
    g.d_a += aux.theta_a;
    g.d_theta_a = aux.a + aux.gamma;
  }
  return {objective, std::move(g)};
}

double batch_objective(std::span<const double> scores,
                       std::span<const int> labels, const AuxState& aux,
                       const HyperParams& hp) {
  const std::size_t n = scores.size();
  if (n == 0) throw std::invalid_argument("empty batch");
  ExactSum terms;
  for (std::size_t i = 0; i < n; ++i) {
    const double per_instance =
        hp.task == Task::opauc
            ? g_op_kappa_omega_instance(scores[i], labels[i], aux, hp)
            : g_tp_kappa_omega_instance(scores[i], labels[i], aux, hp);
    // Strip the constant gamma term; it is added once below.
    terms.add(per_instance + (1.0 + hp.omega) * aux.gamma * aux.gamma);
  }
  return terms.value() / static_cast<double>(n) -
         (1.0 + hp.omega) * aux.gamma * aux.gamma +
         lagrangian_terms(aux, hp.task);
}

}  // namespace paucopt
