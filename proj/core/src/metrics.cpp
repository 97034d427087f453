#include "paucopt/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace paucopt {

int zero_one_loss(double t) { return t < 0.0 ? 1 : 0; }

std::size_t quantile_count(std::size_t n, double frac) {
  if (!(frac > 0.0) || frac > 1.0)
    throw std::invalid_argument("region fraction must be in (0, 1]");
  // Absolute tolerance so 0.3 * 10 selects 3 items, not 2.
  const double k = std::floor(static_cast<double>(n) * frac + 1e-9);
  return std::min<std::size_t>(n, static_cast<std::size_t>(k));
}

namespace {

std::vector<std::size_t> ranked_indices(std::span<const double> values,
                                        std::size_t k, bool descending) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) {
                     return descending ? values[i] > values[j]
                                       : values[i] < values[j];
                   });
  order.resize(k);
  return order;
}

std::size_t checked_region(std::span<const double> values, double frac,
                           const char* what) {
  const std::size_t k = quantile_count(values.size(), frac);
  if (k == 0)
    throw std::invalid_argument(std::string("empty ") + what +
                                " set: floor(n * fraction) = 0");
  return k;
}

}  // namespace

std::vector<std::size_t> top_rank_indices(std::span<const double> values,
                                          std::size_t k) {
  return ranked_indices(values, std::min(k, values.size()), true);
}

std::vector<std::size_t> bottom_rank_indices(std::span<const double> values,
                                             std::size_t k) {
  return ranked_indices(values, std::min(k, values.size()), false);
}

double eta_beta(std::span<const double> neg_scores, double beta) {
  const std::size_t k = checked_region(neg_scores, beta, "top-beta");
  return neg_scores[top_rank_indices(neg_scores, k).back()];
}

double eta_alpha(std::span<const double> pos_scores, double alpha) {
  const std::size_t k = checked_region(pos_scores, alpha, "bottom-alpha");
  return pos_scores[bottom_rank_indices(pos_scores, k).back()];
}

double empirical_auc(std::span<const double> pos_scores,
                     std::span<const double> neg_scores) {
  if (pos_scores.empty() || neg_scores.empty())
    throw std::invalid_argument("need at least one score per class");
  std::vector<double> neg(neg_scores.begin(), neg_scores.end());
  std::sort(neg.begin(), neg.end());
  std::size_t violations = 0;
  for (double p : pos_scores) {
    // A pair violates exactly when the negative is strictly larger.
    violations += neg.size() -
                  static_cast<std::size_t>(
                      std::upper_bound(neg.begin(), neg.end(), p) -
                      neg.begin());
  }
  return 1.0 - static_cast<double>(violations) /
                   (static_cast<double>(pos_scores.size()) *
                    static_cast<double>(neg.size()));
}

double empirical_auc_bruteforce(std::span<const double> pos_scores,
                                std::span<const double> neg_scores) {
  if (pos_scores.empty() || neg_scores.empty())
    throw std::invalid_argument("need at least one score per class");
  std::size_t violations = 0;
  for (double p : pos_scores)
    for (double q : neg_scores) violations += zero_one_loss(p - q);
  return 1.0 - static_cast<double>(violations) /
                   (static_cast<double>(pos_scores.size()) *
                    static_cast<double>(neg_scores.size()));
}

double empirical_opauc(std::span<const double> pos_scores,
                       std::span<const double> neg_scores, double beta) {
  const std::size_t k = checked_region(neg_scores, beta, "top-beta");
  const auto top = top_rank_indices(neg_scores, k);
  std::size_t violations = 0;
  for (double p : pos_scores)
    for (std::size_t j : top) violations += zero_one_loss(p - neg_scores[j]);
  return 1.0 - static_cast<double>(violations) /
                   (static_cast<double>(pos_scores.size()) *
                    static_cast<double>(k));
}

double empirical_tpauc(std::span<const double> pos_scores,
                       std::span<const double> neg_scores, double alpha,
                       double beta) {
  const std::size_t kp = checked_region(pos_scores, alpha, "bottom-alpha");
  const std::size_t kn = checked_region(neg_scores, beta, "top-beta");
  const auto bottom = bottom_rank_indices(pos_scores, kp);
  const auto top = top_rank_indices(neg_scores, kn);
  std::size_t violations = 0;
  for (std::size_t i : bottom)
    for (std::size_t j : top)
      violations += zero_one_loss(pos_scores[i] - neg_scores[j]);
  return 1.0 - static_cast<double>(violations) /
                   (static_cast<double>(kp) * static_cast<double>(kn));
}

double pairwise_sq_risk_opauc(std::span<const double> pos_scores,
                              std::span<const double> neg_scores,
                              double beta) {
  const std::size_t k = checked_region(neg_scores, beta, "top-beta");
  const auto top = top_rank_indices(neg_scores, k);
  double sum = 0.0;
  for (double p : pos_scores)
    for (std::size_t j : top) {
      const double r = 1.0 - (p - neg_scores[j]);
      sum += r * r;
    }
  return sum / (static_cast<double>(pos_scores.size()) *
                static_cast<double>(k));
}

double pairwise_sq_risk_tpauc(std::span<const double> pos_scores,
                              std::span<const double> neg_scores, double alpha,
                              double beta) {
  const std::size_t kp = checked_region(pos_scores, alpha, "bottom-alpha");
  const std::size_t kn = checked_region(neg_scores, beta, "top-beta");
  const auto bottom = bottom_rank_indices(pos_scores, kp);
  const auto top = top_rank_indices(neg_scores, kn);
  double sum = 0.0;
  for (std::size_t i : bottom)
    for (std::size_t j : top) {
      const double r = 1.0 - (pos_scores[i] - neg_scores[j]);
      sum += r * r;
    }
  return sum / (static_cast<double>(kp) * static_cast<double>(kn));
}

}  // namespace paucopt
