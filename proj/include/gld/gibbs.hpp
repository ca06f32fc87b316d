// Metropolis sampling of the stationary measure
//   nu_n(dx)  proportional to  exp( - sum_{i != j} V(scale * wrap(x_i - x_j)) ) dx.
//
// The energy omits the diagonal i = j, which only shifts it by the constant
// n * V(0) and cancels from every Metropolis ratio.  Moves are single-site
// Gaussian random walks; a move of one site touches 2(n-1) ordered pairs, so
// the energy delta costs O(n) using the evenness of V.
#pragma once

#include <functional>
#include <span>
#include <vector>

#include "gld/model.hpp"
#include "gld/particles.hpp"
#include "gld/rng.hpp"

namespace gld {

// sum_{i != j} V(scale * wrap(x_i - x_j)); the full O(n^2) assembly.
double gibbs_energy(const Configuration& config, const ModelParams& params);

// Chain position plus the incrementally maintained energy.  The cache is
// rebuilt from scratch every few thousand moves so float drift over long
// runs stays below 1e-9.
struct ChainState {
  Configuration config;
  double energy = 0.0;
  long long moves_since_rebuild = 0;
};

ChainState make_chain_state(Configuration config, const ModelParams& params);

// One single-site Metropolis move with proposal  x_i' = wrap01(x_i + sigma*xi).
// Returns whether the move was accepted.  Each call consumes one site index,
// one normal, and one uniform from `rng`, in that order.
bool mh_step(ChainState& state, const ModelParams& params, double proposal_sigma,
             RandomStream& rng);

struct GibbsOptions {
  int burn_in_sweeps = 200;  // one sweep = n single-site moves
  int thin_sweeps = 5;       // sweeps between retained samples
  int n_samples = 1000;
  double initial_sigma = 0.1;
  // Proposal width is adapted during burn-in until the acceptance rate sits
  // in [target_low, target_high], then frozen for the sampling phase.
  double target_low = 0.30;
  double target_high = 0.50;
};

struct GibbsSample {
  std::vector<Configuration> configs;
  double acceptance_rate = 0.0;  // measured over the sampling phase
  double proposal_sigma = 0.0;   // frozen width actually used
};

// Burn in from the equal-spacing configuration, then record n_samples
// configurations thin_sweeps apart.  Deterministic given (params, options,
// rng state).
GibbsSample sample_gibbs(const ModelParams& params, const GibbsOptions& options,
                         RandomStream& rng);

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

// Mean of f over the samples with a delete-one-batch jackknife standard
// error (batch count min(50, #samples)), which absorbs the autocorrelation
// left after thinning.
McEstimate mc_mean(const std::function<double(const Configuration&)>& f,
                   const std::vector<Configuration>& samples);

// Monte Carlo estimate of <f, g> = E[f * g] under the sampled measure, same
// jackknife error.
McEstimate mc_inner_product(const std::function<double(const Configuration&)>& f,
                            const std::function<double(const Configuration&)>& g,
                            const std::vector<Configuration>& samples);

// Integrated autocorrelation time of a scalar series by Sokal's adaptive
// window (tau = 1 + 2 sum rho_k, truncated at the first window W >= 5 tau).
double integrated_autocorr_time(std::span<const double> series);

}  // namespace gld
