#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "paucopt/dataio.hpp"
#include "paucopt/loss.hpp"
#include "paucopt/model.hpp"

namespace paucopt {

/// Learning constants of the momentum descent-ascent loop.
/// T is the total number of steps.
struct LearnParams {
  double k = 2.0;
  double m = 100.0;
  double c1 = 0.5;
  double c2 = 0.5;
  double nu = 0.05;
  double lambda = 0.05;
  std::uint64_t T = 0;
};

/// eta_t = k / (m + t)^(1/3).
double lr_schedule(std::uint64_t t, double k, double m);

/// Throws std::invalid_argument when eta_0 would exceed 1 (m < k^3) or a
/// constant is out of range.
void validate_learn_params(const LearnParams& lp);

/// Descent-side state. tau = (model weights, a, b, s, s', theta_a,
/// theta_b) packed flat; v estimates the tau gradient, w the gamma
/// gradient.
struct OptimState {
  ModelParams model;
  AuxState aux;
  std::vector<double> v;  // weights.size() + 6
  double w = 0.0;
  std::uint64_t t = 0;
};

/// Flat layout: [weights..., a, b, s, s', theta_a, theta_b].
std::vector<double> pack_tau(const ModelParams& model, const AuxState& aux);
void unpack_tau(std::span<const double> tau, ModelParams& model,
                AuxState& aux);

/// Coordinate-wise clamp of the auxiliary block; model weights are
/// unconstrained.
void project_tau(std::span<double> tau, std::size_t n_weights, double big_m);

double project_gamma(double gamma);

/// || (tau - P(tau - nu*v)) / nu ||2, the projected-gradient
/// stationarity measure.
double gradient_mapping_norm(const OptimState& state, const LearnParams& lp,
                             double big_m);

struct TraceRecord {
  std::uint64_t step = 0;
  std::uint64_t epoch = 0;
  double eta = 0.0;
  double objective = 0.0;
  double opauc = 0.0;
  double tpauc = 0.0;
  double grad_map_norm = 0.0;
  double a = 0.0, b = 0.0, gamma = 0.0, s = 0.0, s_prime = 0.0;
  double theta_a = 0.0, theta_b = 0.0;
  double ms_per_step = 0.0;
};

struct TrainResult {
  ModelParams model;
  AuxState aux;
  std::vector<TraceRecord> trace;
  std::size_t momentum_clamp_events = 0;  // steps where rho or xi hit 1
};

/// Warm start for the auxiliary block from one scoring pass: a = mean
/// positive score, b = mean of the top-beta negative scores, gamma =
/// clamp(b - a), s = 0, s' = 2.5, multipliers 0.
AuxState init_aux_state(const ModelParams& model, const SampleSet& set,
                        const HyperParams& hp);

/// One momentum convex-combination step with variance-reduced gradient
/// estimates; both gradient evaluations share `batch`. Returns the trace
/// row for the step (metrics columns left to the caller).
TraceRecord step(OptimState& state, const SampleSet& set,
                 std::span<const std::size_t> batch, const HyperParams& hp,
                 const LearnParams& lp, std::size_t* clamp_events);

/// Runs lp.T steps over seeded epochs of mini-batches and traces every
/// step. The trace's opauc/tpauc columns are train-set metrics at the
/// post-step parameters.
TrainResult train(const SampleSet& set, ModelParams model,
                  const HyperParams& hp, const LearnParams& lp,
                  const BatchSpec& spec);

/// Fixed-format writer shared by the CLI and the tests; byte-identical
/// output for identical traces.
void write_trace_csv(const std::string& path,
                     std::span<const TraceRecord> trace);

}  // namespace paucopt
