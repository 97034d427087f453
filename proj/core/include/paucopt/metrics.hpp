#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace paucopt {

/// ROC sub-region. `alpha` bounds the true positive rate from below
/// (absent for the one-way case), `beta` bounds the false positive rate
/// from above. Both select rank-based sets of exactly floor(frac * n)
/// elements; a region whose selected set is empty is rejected.
struct RocRegion {
  std::optional<double> alpha;
  double beta = 1.0;
};

/// 1 if t < 0 and 0 otherwise; a tie (t == 0) counts as correctly ranked.
int zero_one_loss(double t);

/// floor(n * frac) with a small absolute tolerance so that decimal
/// fractions such as 0.3 that land one ulp under an integer still select
/// the mathematically intended count.
std::size_t quantile_count(std::size_t n, double frac);

/// Indices of the k largest (resp. smallest) values, ordered by value
/// with original-index tiebreak. Rank-based: duplicated values never
/// change the size of the selected set.
std::vector<std::size_t> top_rank_indices(std::span<const double> values,
                                          std::size_t k);
std::vector<std::size_t> bottom_rank_indices(std::span<const double> values,
                                             std::size_t k);

/// The floor(n_neg * beta)-th largest negative score.
/// Throws std::invalid_argument when the top set is empty.
double eta_beta(std::span<const double> neg_scores, double beta);

/// The floor(n_pos * alpha)-th smallest positive score.
double eta_alpha(std::span<const double> pos_scores, double alpha);

/// Fraction of (positive, negative) pairs ranked correctly, ties
/// favorable. O((n_pos + n_neg) log(n_pos + n_neg)).
double empirical_auc(std::span<const double> pos_scores,
                     std::span<const double> neg_scores);

/// O(n_pos * n_neg) reference used by tests.
double empirical_auc_bruteforce(std::span<const double> pos_scores,
                                std::span<const double> neg_scores);

/// AUC restricted to the top floor(n_neg * beta) negatives.
double empirical_opauc(std::span<const double> pos_scores,
                       std::span<const double> neg_scores, double beta);

/// AUC restricted to the bottom floor(n_pos * alpha) positives and the
/// top floor(n_neg * beta) negatives.
double empirical_tpauc(std::span<const double> pos_scores,
                       std::span<const double> neg_scores, double alpha,
                       double beta);

/// Mean of (1 - (f(x) - f(x')))^2 over all positives paired with the
/// top floor(n_neg * beta) negatives.
double pairwise_sq_risk_opauc(std::span<const double> pos_scores,
                              std::span<const double> neg_scores, double beta);

/// Restriction of the squared pairwise risk to the bottom-alpha
/// positives and top-beta negatives.
double pairwise_sq_risk_tpauc(std::span<const double> pos_scores,
                              std::span<const double> neg_scores, double alpha,
                              double beta);

}  // namespace paucopt
