#pragma once

#include <cstddef>
#include <span>

#include "paucopt/loss.hpp"

namespace paucopt::oracle {

/// Independent sort-and-sum oracles. Nothing here reuses helpers from
/// the loss module; that independence is what makes these checks worth
/// running.

/// Mean of the k largest values (rank-based).
double avg_topk(std::span<const double> values, std::size_t k);

/// min over s of { s + (1/k) * sum_i max(values[i] - s, 0) }, evaluated
/// at every candidate s in the value set. Equals avg_topk; the minimizer
/// is the k-th largest value.
double atk_via_min_s(std::span<const double> values, std::size_t k);

struct ClosedFormOptima {
  double a_star = 0.0;
  double b_star = 0.0;
  double gamma_star = 0.0;  // b_star - a_star
  double value = 0.0;       // E_a + E_b + (dE)^2 + 2*dE
};

/// a* = mean positive score, b* = mean of the top floor(beta*n_neg)
/// negative scores; value + 1 equals the pairwise squared risk.
ClosedFormOptima closed_form_opauc(std::span<const double> pos_scores,
                                   std::span<const double> neg_scores,
                                   double beta);

/// Two-way analogue: a* is the mean of the bottom floor(alpha*n_pos)
/// positive scores.
ClosedFormOptima closed_form_tpauc(std::span<const double> pos_scores,
                                   std::span<const double> neg_scores,
                                   double alpha, double beta);

/// Dataset mean of the hard-indicator instance objective at threshold
/// t = eta_beta, with the effective rank fraction k/n_neg in the weights.
double f_op_dataset_mean(std::span<const double> pos_scores,
                         std::span<const double> neg_scores, double a,
                         double b, double gamma, double beta);

/// Direct numerical solve of
///   min_{a,b in [0,1]} max_{gamma in [b-1,1]} min_{s' in [0,5]}
/// of the dataset-mean hinge objective for fixed scores, by nested
/// golden-section / grid refinement. One-way task only.
double nested_minimax_solve(std::span<const double> pos_scores,
                            std::span<const double> neg_scores, double beta);

/// Same saddle with the gamma box widened to [-1,1] and the constraint
/// moved into a multiplier penalty -theta_b*(b-1-gamma); returns the
/// minimum over a theta_b grid.
double lagrangian_sweep_solve(std::span<const double> pos_scores,
                              std::span<const double> neg_scores, double beta,
                              std::span<const double> theta_grid);

/// sup over x in [-5,5] of |softplus_r(x,kappa) - max(x,0)| by dense
/// grid plus the exact evaluation at x = 0 (where the supremum sits).
double softplus_bias_sup(double kappa);

}  // namespace paucopt::oracle
