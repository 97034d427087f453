#include "paucopt/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "paucopt/metrics.hpp"

namespace paucopt {

namespace {

constexpr std::size_t kAuxCount = 6;  // a, b, s, s', theta_a, theta_b

double clamp(double v, double lo, double hi) {
  return std::min(std::max(v, lo), hi);
}

std::vector<int> gather_labels(const SampleSet& set,
                               std::span<const std::size_t> idx) {
  std::vector<int> labels(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) labels[i] = set.labels[idx[i]];
  return labels;
}

// Flat tau gradient [d_weights..., d_a, d_b, d_s, d_s', d_theta_a,
// d_theta_b] at the given parameters on the given batch; also reports the
// objective and the gamma partial.
void tau_gradient(const ModelParams& model, const AuxState& aux,
                  const SampleSet& set, std::span<const std::size_t> batch,
                  std::span<const int> labels, const HyperParams& hp,
                  std::vector<double>& out, double& d_gamma,
                  double& objective) {
  const auto scores = forward(model, set, batch);
  auto [obj, g] = batch_objective_and_grad(scores, labels, aux, hp);
  const auto d_weights = backward(model, set, batch, g.d_score);
  out.assign(d_weights.begin(), d_weights.end());
  out.push_back(g.d_a);
  out.push_back(g.d_b);
  out.push_back(g.d_s);
  out.push_back(g.d_s_prime);
  out.push_back(g.d_theta_a);
  out.push_back(g.d_theta_b);
  d_gamma = g.d_gamma;
  objective = obj;
}

}  // namespace

double lr_schedule(std::uint64_t t, double k, double m) {
  return k / std::cbrt(m + static_cast<double>(t));
}

void validate_learn_params(const LearnParams& lp) {
  if (!(lp.k > 0.0)) throw std::invalid_argument("k must be positive");
  if (lp.m < 1.0) throw std::invalid_argument("m must be >= 1");
  if (!(lp.nu > 0.0)) throw std::invalid_argument("nu must be positive");
  if (!(lp.lambda > 0.0))
    throw std::invalid_argument("lambda must be positive");
  if (lr_schedule(0, lp.k, lp.m) > 1.0 + 1e-12)
    throw std::invalid_argument(
        "eta_0 = k/m^(1/3) exceeds 1; need m >= k^3 for a feasible convex "
        "combination");
}

std::vector<double> pack_tau(const ModelParams& model, const AuxState& aux) {
  std::vector<double> tau(model.weights);
  tau.push_back(aux.a);
  tau.push_back(aux.b);
  tau.push_back(aux.s);
  tau.push_back(aux.s_prime);
  tau.push_back(aux.theta_a);
  tau.push_back(aux.theta_b);
  return tau;
}

void unpack_tau(std::span<const double> tau, ModelParams& model,
                AuxState& aux) {
  const std::size_t nw = tau.size() - kAuxCount;
  model.weights.assign(tau.begin(),
                       tau.begin() + static_cast<std::ptrdiff_t>(nw));
  aux.a = tau[nw];
  aux.b = tau[nw + 1];
  aux.s = tau[nw + 2];
  aux.s_prime = tau[nw + 3];
  aux.theta_a = tau[nw + 4];
  aux.theta_b = tau[nw + 5];
}

void project_tau(std::span<double> tau, std::size_t n_weights, double big_m) {
  double* aux = tau.data() + n_weights;
  aux[0] = clamp(aux[0], 0.0, 1.0);            // a
  aux[1] = clamp(aux[1], 0.0, 1.0);            // b
  aux[2] = clamp(aux[2], kSMin, kSMax);        // s
  aux[3] = clamp(aux[3], kSPrimeMin, kSPrimeMax);  // s'
  aux[4] = clamp(aux[4], 0.0, big_m);          // theta_a
  aux[5] = clamp(aux[5], 0.0, big_m);          // theta_b
}

double project_gamma(double gamma) { return clamp(gamma, kGammaMin, kGammaMax); }

double gradient_mapping_norm(const OptimState& state, const LearnParams& lp,
                             double big_m) {
  const auto tau = pack_tau(state.model, state.aux);
  std::vector<double> moved(tau.size());
  for (std::size_t i = 0; i < tau.size(); ++i)
    moved[i] = tau[i] - lp.nu * state.v[i];
  project_tau(moved, state.model.weights.size(), big_m);
  double sq = 0.0;
  for (std::size_t i = 0; i < tau.size(); ++i) {
    const double d = (tau[i] - moved[i]) / lp.nu;
    sq += d * d;
  }
  return std::sqrt(sq);
}

AuxState init_aux_state(const ModelParams& model, const SampleSet& set,
                        const HyperParams& hp) {
  const auto pos_scores = forward(model, set, set.pos_idx);
  const auto neg_scores = forward(model, set, set.neg_idx);

  double a = 0.0;
  for (double v : pos_scores) a += v;
  a /= static_cast<double>(pos_scores.size());

  const std::size_t k = quantile_count(neg_scores.size(), hp.beta);
  if (k == 0)
    throw std::invalid_argument("empty top-beta set: floor(beta * n_neg) = 0");
  double b = 0.0;
  for (std::size_t j : top_rank_indices(neg_scores, k)) b += neg_scores[j];
  b /= static_cast<double>(k);

  AuxState aux;
  aux.a = a;
  aux.b = b;
  aux.gamma = project_gamma(b - a);
  aux.s = 0.0;
  aux.s_prime = 2.5;
  aux.theta_a = 0.0;
  aux.theta_b = 0.0;
  return aux;
}

TraceRecord step(OptimState& state, const SampleSet& set,
                 std::span<const std::size_t> batch, const HyperParams& hp,
                 const LearnParams& lp, std::size_t* clamp_events) {
  const double eta = lr_schedule(state.t, lp.k, lp.m);

  // Momentum convex combination toward the projected descent/ascent
  // points; feasibility is preserved because both endpoints are feasible.
  const auto tau_old = pack_tau(state.model, state.aux);
  std::vector<double> tau_proj(tau_old.size());
  for (std::size_t i = 0; i < tau_old.size(); ++i)
    tau_proj[i] = tau_old[i] - lp.nu * state.v[i];
  project_tau(tau_proj, state.model.weights.size(), hp.big_m);
  std::vector<double> tau_new(tau_old.size());
  for (std::size_t i = 0; i < tau_old.size(); ++i)
    tau_new[i] = (1.0 - eta) * tau_old[i] + eta * tau_proj[i];

  const double gamma_old = state.aux.gamma;
  const double gamma_new =
      (1.0 - eta) * gamma_old +
      eta * project_gamma(gamma_old + lp.lambda * state.w);

  double rho = lp.c1 * eta * eta;
  double xi = lp.c2 * eta * eta;
  if (rho > 1.0 || xi > 1.0) {
    if (clamp_events && *clamp_events == 0)
      std::fprintf(stderr,
                   "warning: momentum weight rho/xi exceeded 1 at step %llu; "
                   "clamped (plain stochastic gradient on such steps)\n",
                   static_cast<unsigned long long>(state.t));
    if (clamp_events) ++*clamp_events;
    rho = std::min(rho, 1.0);
    xi = std::min(xi, 1.0);
  }

  const auto labels = gather_labels(set, batch);

  ModelParams model_new = state.model;
  AuxState aux_new = state.aux;
  unpack_tau(tau_new, model_new, aux_new);
  aux_new.gamma = gamma_new;

  // Variance-reduced estimates: both evaluations use the same batch, the
  // old parameters are kept until both are done.
  std::vector<double> g_new, g_old;
  double dgamma_new = 0.0, dgamma_old = 0.0;
  double obj_new = 0.0, obj_old = 0.0;
  tau_gradient(model_new, aux_new, set, batch, labels, hp, g_new, dgamma_new,
               obj_new);
  tau_gradient(state.model, state.aux, set, batch, labels, hp, g_old,
               dgamma_old, obj_old);

  for (std::size_t i = 0; i < state.v.size(); ++i)
    state.v[i] = g_new[i] + (1.0 - rho) * (state.v[i] - g_old[i]);
  state.w = dgamma_new + (1.0 - xi) * (state.w - dgamma_old);

  state.model = std::move(model_new);
  state.aux = aux_new;
  state.t += 1;

  TraceRecord rec;
  rec.eta = eta;
  rec.objective = obj_new;
  rec.grad_map_norm = gradient_mapping_norm(state, lp, hp.big_m);
  rec.a = state.aux.a;
  rec.b = state.aux.b;
  rec.gamma = state.aux.gamma;
  rec.s = state.aux.s;
  rec.s_prime = state.aux.s_prime;
  rec.theta_a = state.aux.theta_a;
  rec.theta_b = state.aux.theta_b;
  return rec;
}

TrainResult train(const SampleSet& set, ModelParams model,
                  const HyperParams& hp, const LearnParams& lp,
                  const BatchSpec& spec) {
  validate_learn_params(lp);

  OptimState state;
  state.model = std::move(model);
  state.aux = init_aux_state(state.model, set, hp);
  state.v.assign(state.model.weights.size() + kAuxCount, 0.0);
  state.w = 0.0;
  state.t = 0;

  TrainResult result;
  result.trace.reserve(lp.T);

  std::uint64_t done = 0;
  for (std::uint64_t epoch = 0; done < lp.T; ++epoch) {
    const auto slices = iter_batches(set, spec, epoch);
    for (const auto& slice : slices) {
      if (done >= lp.T) break;
      const auto t0 = std::chrono::steady_clock::now();
      TraceRecord rec =
          step(state, set, slice, hp, lp, &result.momentum_clamp_events);
      const auto t1 = std::chrono::steady_clock::now();
      rec.step = done;
      rec.epoch = epoch;
      rec.ms_per_step =
          std::chrono::duration<double, std::milli>(t1 - t0).count();

      const auto pos_scores = forward(state.model, set, set.pos_idx);
      const auto neg_scores = forward(state.model, set, set.neg_idx);
      rec.opauc = empirical_opauc(pos_scores, neg_scores, hp.beta);
      rec.tpauc = empirical_tpauc(pos_scores, neg_scores, hp.alpha, hp.beta);

      result.trace.push_back(rec);
      ++done;
    }
  }

  result.model = std::move(state.model);
  result.aux = state.aux;
  return result;
}

void write_trace_csv(const std::string& path,
                     std::span<const TraceRecord> trace) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot write trace");
  out << "step,epoch,eta,objective,opauc,tpauc,grad_map_norm,a,b,gamma,s,"
         "s_prime,theta_a,theta_b,ms_per_step\n";
  char buf[512];
  for (const auto& r : trace) {
    std::snprintf(buf, sizeof(buf),
                  "%llu,%llu,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                  "%.17g,%.17g,%.17g,%.17g,%.3f\n",
                  static_cast<unsigned long long>(r.step),
                  static_cast<unsigned long long>(r.epoch), r.eta, r.objective,
                  r.opauc, r.tpauc, r.grad_map_norm, r.a, r.b, r.gamma, r.s,
                  r.s_prime, r.theta_a, r.theta_b, r.ms_per_step);
    out << buf;
  }
}

}  // namespace paucopt
