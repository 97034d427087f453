#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace paucopt {

enum class Task { opauc, tpauc };

/// Feasible boxes for the auxiliary minimax variables.
inline constexpr double kSMin = -4.0;
inline constexpr double kSMax = 1.0;
inline constexpr double kSPrimeMin = 0.0;
inline constexpr double kSPrimeMax = 5.0;
inline constexpr double kGammaMin = -1.0;
inline constexpr double kGammaMax = 1.0;

/// Auxiliary minimax variables. a, b track the conditional score means,
/// gamma is the ascent variable, s / s_prime are the average-top-k shift
/// variables (s is used by the two-way task only), theta_a / theta_b are
/// the multipliers that decouple the gamma box.
struct AuxState {
  double a = 0.0;
  double b = 0.0;
  double gamma = 0.0;
  double s = 0.0;
  double s_prime = 0.0;
  double theta_a = 0.0;
  double theta_b = 0.0;
};

/// Task selector, region, smoothing and regularization constants.
/// Construction enforces kappa <= 2 + 2*omega, the strong-concavity
/// condition in gamma.
struct HyperParams {
  Task task = Task::opauc;
  double alpha = 1.0;
  double beta = 1.0;
  double kappa = 5.0;
  double omega = 1.5;
  double prior_p = 0.5;
  double big_m = 1e9;

  HyperParams() = default;
  HyperParams(Task task, double alpha, double beta, double kappa, double omega,
              double prior_p, double big_m = 1e9);
};

/// Smallest omega satisfying kappa <= 2 + 2*omega.
double default_omega(double kappa);

/// Per-batch partial derivatives of the batch objective. d_score holds
/// per-instance d(objective)/d(score_i); the scalars are the partials
/// for each auxiliary variable. d_s and d_theta_a are zero for the
/// one-way task.
struct GradBundle {
  std::vector<double> d_score;
  double d_a = 0.0;
  double d_b = 0.0;
  double d_gamma = 0.0;
  double d_s = 0.0;
  double d_s_prime = 0.0;
  double d_theta_a = 0.0;
  double d_theta_b = 0.0;
};

/// log(1 + exp(kappa*x)) / kappa, overflow-safe. Smooth upper bound on
/// max(x, 0) with gap at most ln(2)/kappa.
double softplus_r(double x, double kappa);

/// d/dx softplus_r(x, kappa) = logistic(kappa * x), in (0, 1).
double softplus_r_prime(double x, double kappa);

/// Hard-indicator instance objective for the one-way task: the negative
/// branch is gated by score >= threshold. Used by the verification
/// oracles; training uses the shifted forms below.
double f_op_instance(double score, int y, const AuxState& aux,
                     double threshold, const HyperParams& hp);

/// Instance objective with the hinge-shifted negative branch.
double g_op_instance(double score, int y, const AuxState& aux,
                     const HyperParams& hp);

/// g_op with the hinge replaced by softplus_r and the extra
/// -omega*gamma^2 regularizer.
double g_op_kappa_omega_instance(double score, int y, const AuxState& aux,
                                 const HyperParams& hp);

/// Two-way instance objective: both branches softplus-shifted, gamma
/// coefficient -(1+omega).
double g_tp_kappa_omega_instance(double score, int y, const AuxState& aux,
                                 const HyperParams& hp);

/// Additive multiplier penalty: -theta_b*(b - 1 - gamma) for the one-way
/// task, plus -theta_a*(-a - gamma) for the two-way task. Constant in
/// the instance, added once to the batch mean.
double lagrangian_terms(const AuxState& aux, Task task);

/// Batch-mean smoothed objective plus the multiplier terms, together
/// with every analytic partial. Scores must lie in [0,1]. The mean is
/// reduced in value-sorted order so the objective is invariant under
/// batch permutation.
std::pair<double, GradBundle> batch_objective_and_grad(
    std::span<const double> scores, std::span<const int> labels,
    const AuxState& aux, const HyperParams& hp);

/// Objective only (same reduction), for probes that do not need grads.
double batch_objective(std::span<const double> scores,
                       std::span<const int> labels, const AuxState& aux,
                       const HyperParams& hp);

}  // namespace paucopt
