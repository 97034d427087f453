#include "paucopt/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "paucopt/metrics.hpp"

namespace paucopt::oracle {

namespace {

std::vector<double> sorted_desc(std::span<const double> values) {
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

double mean(std::span<const double> v) {
  double acc = 0.0;
  for (double x : v) acc += x;
  return acc / static_cast<double>(v.size());
}

double mean_sq_dev(std::span<const double> v, double center) {
  double acc = 0.0;
  for (double x : v) acc += (x - center) * (x - center);
  return acc / static_cast<double>(v.size());
}

std::size_t checked_count(std::size_t n, double frac, const char* what) {
  const std::size_t k = quantile_count(n, frac);
  if (k == 0)
    throw std::invalid_argument(std::string("empty ") + what + " set");
  return k;
}

double golden_min(const std::function<double(double)>& f, double lo,
                  double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return f(0.5 * (a + b));
}

// Dense grid with window refinement around the incumbent.
double grid_min(const std::function<double(double)>& f, double lo, double hi,
                int pts, int levels) {
  double wlo = lo, whi = hi;
  double best_x = lo, best = std::numeric_limits<double>::infinity();
  for (int level = 0; level < levels; ++level) {
    const double step = (whi - wlo) / (pts - 1);
    for (int i = 0; i < pts; ++i) {
      const double x = wlo + i * step;
      const double v = f(x);
      if (v < best) {
        best = v;
        best_x = x;
      }
    }
    wlo = std::max(lo, best_x - step);
    whi = std::min(hi, best_x + step);
  }
  return best;
}

double grid_max(const std::function<double(double)>& f, double lo, double hi,
                int pts, int levels) {
  return -grid_min([&](double x) { return -f(x); }, lo, hi, pts, levels);
}

// Shared skeleton for the saddle solves: for fixed scores,
//   min_a E+[(f-a)^2]
//   + min_b  max_{gamma in box(b)}  [ -2(1+gamma)m+ - gamma^2 + penalty
//       + min_{s' in [0,5]} { s' + (1/(beta_hat*n-)) sum [l-(x') - s']_+ } ]
// with l-(x') = (f'-b)^2 + 2(1+gamma) f'. The effective rank fraction
// beta_hat = k/n- keeps the weights consistent with the rank-based sets.
struct SaddleSolver {
  std::span<const double> pos;
  std::span<const double> neg;
  double beta_hat;
  int pts;
  int levels;

  double pos_mean = 0.0;

  double inner_value(double b, double gamma, double theta_b,
                     bool gamma_from_b) const {
    std::vector<double> ell(neg.size());
    for (std::size_t j = 0; j < neg.size(); ++j)
      ell[j] = (neg[j] - b) * (neg[j] - b) + 2.0 * (1.0 + gamma) * neg[j];
    const double inv_kn = 1.0 / (beta_hat * static_cast<double>(neg.size()));
    const auto phi = [&](double sp) {
      double acc = 0.0;
      for (double l : ell) acc += std::max(l - sp, 0.0);
      return sp + inv_kn * acc;
    };
    double value = -2.0 * (1.0 + gamma) * pos_mean - gamma * gamma +
                   golden_min(phi, 0.0, 5.0, 1e-10);
    if (!gamma_from_b) value += -theta_b * (b - 1.0 - gamma);
    return value;
  }

  // gamma box [b-1, 1] (constrained form) or [-1, 1] with a multiplier.
  double solve(bool gamma_from_b, double theta_b) const {
    const auto outer = [&](double b) {
      const double glo = gamma_from_b ? b - 1.0 : -1.0;
      return grid_max(
          [&](double gamma) {
            return inner_value(b, gamma, theta_b, gamma_from_b);
          },
          glo, 1.0, pts, levels);
    };
    const double a_part = golden_min(
        [&](double a) {
          double acc = 0.0;
          for (double f : pos) acc += (f - a) * (f - a);
          return acc / static_cast<double>(pos.size());
        },
        0.0, 1.0, 1e-10);
    return a_part + grid_min(outer, 0.0, 1.0, pts, levels);
  }
};

}  // namespace

double avg_topk(std::span<const double> values, std::size_t k) {
  if (k == 0 || k > values.size())
    throw std::invalid_argument("k must be in [1, n]");
  auto v = sorted_desc(values);
  double acc = 0.0;
  for (std::size_t i = 0; i < k; ++i) acc += v[i];
  return acc / static_cast<double>(k);
}

double atk_via_min_s(std::span<const double> values, std::size_t k) {
  if (k == 0 || k > values.size())
    throw std::invalid_argument("k must be in [1, n]");
  const double inv_k = 1.0 / static_cast<double>(k);
  double best = std::numeric_limits<double>::infinity();
  // The minimizer sits at the k-th largest value, so scanning the value
  // set as candidates is exhaustive.
  for (double s : values) {
    double acc = 0.0;
    for (double x : values) acc += std::max(x - s, 0.0);
    best = std::min(best, s + inv_k * acc);
  }
  return best;
}

ClosedFormOptima closed_form_opauc(std::span<const double> pos_scores,
                                   std::span<const double> neg_scores,
                                   double beta) {
  const std::size_t k = checked_count(neg_scores.size(), beta, "top-beta");
  const auto neg_sorted = sorted_desc(neg_scores);
  const std::span<const double> top(neg_sorted.data(), k);

  ClosedFormOptima opt;
  opt.a_star = mean(pos_scores);
  opt.b_star = mean(top);
  opt.gamma_star = opt.b_star - opt.a_star;
  const double e_a = mean_sq_dev(pos_scores, opt.a_star);
  const double e_b = mean_sq_dev(top, opt.b_star);
  const double de = opt.gamma_star;
  opt.value = e_a + e_b + de * de + 2.0 * de;
  return opt;
}

ClosedFormOptima closed_form_tpauc(std::span<const double> pos_scores,
                                   std::span<const double> neg_scores,
                                   double alpha, double beta) {
  const std::size_t kp =
      checked_count(pos_scores.size(), alpha, "bottom-alpha");
  const std::size_t kn = checked_count(neg_scores.size(), beta, "top-beta");
  std::vector<double> pos_sorted(pos_scores.begin(), pos_scores.end());
  std::sort(pos_sorted.begin(), pos_sorted.end());
  const std::span<const double> bottom(pos_sorted.data(), kp);
  const auto neg_sorted = sorted_desc(neg_scores);
  const std::span<const double> top(neg_sorted.data(), kn);

  ClosedFormOptima opt;
  opt.a_star = mean(bottom);
  opt.b_star = mean(top);
  opt.gamma_star = opt.b_star - opt.a_star;
  const double e_a = mean_sq_dev(bottom, opt.a_star);
  const double e_b = mean_sq_dev(top, opt.b_star);
  const double de = opt.gamma_star;
  opt.value = e_a + e_b + de * de + 2.0 * de;
  return opt;
}

double f_op_dataset_mean(std::span<const double> pos_scores,
                         std::span<const double> neg_scores, double a,
                         double b, double gamma, double beta) {
  const std::size_t k = checked_count(neg_scores.size(), beta, "top-beta");
  const auto neg_sorted = sorted_desc(neg_scores);
  const double threshold = neg_sorted[k - 1];
  const double beta_hat = static_cast<double>(k) /
                          static_cast<double>(neg_scores.size());
  const double n = static_cast<double>(pos_scores.size() + neg_scores.size());
  const double p_hat = static_cast<double>(pos_scores.size()) / n;

  double acc = 0.0;
  for (double f : pos_scores)
    acc += ((f - a) * (f - a) - 2.0 * (1.0 + gamma) * f) / p_hat;
  for (double f : neg_scores)
    if (f >= threshold)
      acc += ((f - b) * (f - b) + 2.0 * (1.0 + gamma) * f) /
             ((1.0 - p_hat) * beta_hat);
  return acc / n - gamma * gamma;
}

double nested_minimax_solve(std::span<const double> pos_scores,
                            std::span<const double> neg_scores, double beta) {
  const std::size_t k = checked_count(neg_scores.size(), beta, "top-beta");
  SaddleSolver solver{pos_scores, neg_scores,
                      static_cast<double>(k) /
                          static_cast<double>(neg_scores.size()),
                      33, 4};
  solver.pos_mean = mean(pos_scores);
  return solver.solve(/*gamma_from_b=*/true, /*theta_b=*/0.0);
}

double lagrangian_sweep_solve(std::span<const double> pos_scores,
                              std::span<const double> neg_scores, double beta,
                              std::span<const double> theta_grid) {
  const std::size_t k = checked_count(neg_scores.size(), beta, "top-beta");
  SaddleSolver solver{pos_scores, neg_scores,
                      static_cast<double>(k) /
                          static_cast<double>(neg_scores.size()),
                      21, 3};
  solver.pos_mean = mean(pos_scores);
  double best = std::numeric_limits<double>::infinity();
  for (double theta : theta_grid)
    best = std::min(best, solver.solve(/*gamma_from_b=*/false, theta));
  return best;
}

double softplus_bias_sup(double kappa) {
  if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be positive");
  const auto bias = [kappa](double x) {
    return std::abs(softplus_r(x, kappa) - std::max(x, 0.0));
  };
  double sup = bias(0.0);  // the supremum sits here
  const int n = 20000;
  for (int i = 0; i <= n; ++i) {
    const double x = -5.0 + 10.0 * static_cast<double>(i) / n;
    sup = std::max(sup, bias(x));
  }
  return sup;
}

}  // namespace paucopt::oracle
