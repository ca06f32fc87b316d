#include "gld/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gld {
namespace {

constexpr long long kRebuildInterval = 4096;
constexpr double kSigmaMin = 1e-4;
constexpr double kSigmaMax = 0.5;

void check_pair(const Configuration& config, const ModelParams& params) {
  params.validate();
  if (params.n != config.n()) {
    throw std::invalid_argument("gibbs: params.n does not match configuration size");
  }
}

}  // namespace

double gibbs_energy(const Configuration& config, const ModelParams& params) {
  check_pair(config, params);
  const int n = config.n();
  const double s = params.scale();
  const double beta = params.beta;
  const double* x = config.x.data();
  double e = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      e += 2.0 * V(s * wrap(x[i] - x[j]), beta);  // V even: both orderings equal
    }
  }
  return e;
}

ChainState make_chain_state(Configuration config, const ModelParams& params) {
  config.validate();
  ChainState state;
  state.energy = gibbs_energy(config, params);
  state.config = std::move(config);
  return state;
}

bool mh_step(ChainState& state, const ModelParams& params, double proposal_sigma,
             RandomStream& rng) {
  if (!(proposal_sigma > 0.0)) {
    throw std::invalid_argument("mh_step: proposal_sigma must be positive");
  }
  const int n = state.config.n();
  const double s = params.scale();
  const double beta = params.beta;
  double* x = state.config.x.data();

  const int i = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(n)));
  const double proposal = wrap01(x[i] + proposal_sigma * rng.normal());
  const double u = rng.uniform();

  double delta = 0.0;
  for (int j = 0; j < n; ++j) {
    if (j == i) continue;
    delta += 2.0 * (V(s * wrap(proposal - x[j]), beta) -
                    V(s * wrap(x[i] - x[j]), beta));
  }

  const bool accept = delta <= 0.0 || u < std::exp(-delta);
  if (accept) {
    x[i] = proposal;
    state.energy += delta;
  }
  if (++state.moves_since_rebuild >= kRebuildInterval) {
    state.energy = gibbs_energy(state.config, params);
    state.moves_since_rebuild = 0;
  }
  return accept;
}

GibbsSample sample_gibbs(const ModelParams& params, const GibbsOptions& options,
                         RandomStream& rng) {
  params.validate();
  if (options.n_samples < 1 || options.burn_in_sweeps < 0 ||
      options.thin_sweeps < 1 || !(options.initial_sigma > 0.0)) {
    throw std::invalid_argument("sample_gibbs: invalid options");
  }
  const int n = params.n;
  ChainState state = make_chain_state(equal_spacing(n), params);
  double sigma = std::clamp(options.initial_sigma, kSigmaMin, kSigmaMax);

  // Burn-in with width adaptation over 10-sweep windows.
  const int window_sweeps = 10;
  int window_accepts = 0, window_moves = 0;
  for (int sweep = 0; sweep < options.burn_in_sweeps; ++sweep) {
    for (int m = 0; m < n; ++m) {
      window_accepts += mh_step(state, params, sigma, rng) ? 1 : 0;
      ++window_moves;
    }
    if ((sweep + 1) % window_sweeps == 0) {
      const double rate = static_cast<double>(window_accepts) / window_moves;
      if (rate > options.target_high) {
        sigma = std::min(sigma * 1.2, kSigmaMax);
      } else if (rate < options.target_low) {
        sigma = std::max(sigma / 1.2, kSigmaMin);
      }
      window_accepts = window_moves = 0;
    }
  }

  GibbsSample out;
  out.proposal_sigma = sigma;
  out.configs.reserve(static_cast<std::size_t>(options.n_samples));
  long long accepts = 0, moves = 0;
  for (int sample = 0; sample < options.n_samples; ++sample) {
    for (int sweep = 0; sweep < options.thin_sweeps; ++sweep) {
      for (int m = 0; m < n; ++m) {
        accepts += mh_step(state, params, sigma, rng) ? 1 : 0;
        ++moves;
      }
    }
    out.configs.push_back(state.config);
  }
  out.acceptance_rate = moves > 0 ? static_cast<double>(accepts) / moves : 0.0;
  return out;
}

McEstimate mc_mean(const std::function<double(const Configuration&)>& f,
                   const std::vector<Configuration>& samples) {
  if (samples.empty()) {
    throw std::invalid_argument("mc_mean: no samples");
  }
  const std::size_t n = samples.size();
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = f(samples[i]);

  double total = 0.0;
  for (double vi : v) total += vi;
  McEstimate est;
  est.value = total / static_cast<double>(n);

  const std::size_t b = std::min<std::size_t>(50, n);
  if (b < 2) {
    est.std_error = 0.0;
    return est;
  }
  // Delete-one-batch jackknife on contiguous batches.
  std::vector<double> loo(b);
  for (std::size_t k = 0; k < b; ++k) {
    const std::size_t lo = k * n / b;
    const std::size_t hi = (k + 1) * n / b;
    double batch = 0.0;
    for (std::size_t i = lo; i < hi; ++i) batch += v[i];
    loo[k] = (total - batch) / static_cast<double>(n - (hi - lo));
  }
  double loo_mean = 0.0;
  for (double l : loo) loo_mean += l;
  loo_mean /= static_cast<double>(b);
  double ss = 0.0;
  for (double l : loo) ss += (l - loo_mean) * (l - loo_mean);
  est.std_error = std::sqrt(ss * static_cast<double>(b - 1) / static_cast<double>(b));
  return est;
}

McEstimate mc_inner_product(const std::function<double(const Configuration&)>& f,
                            const std::function<double(const Configuration&)>& g,
                            const std::vector<Configuration>& samples) {
  return mc_mean([&](const Configuration& c) { return f(c) * g(c); }, samples);
}

double integrated_autocorr_time(std::span<const double> series) {
  const std::size_t n = series.size();
  if (n < 8) {
    throw std::invalid_argument("integrated_autocorr_time: series too short");
  }
  double mean = 0.0;
  for (double s : series) mean += s;
  mean /= static_cast<double>(n);
  double c0 = 0.0;
  for (double s : series) c0 += (s - mean) * (s - mean);
  c0 /= static_cast<double>(n);
  if (c0 <= 0.0) return 1.0;

  double tau = 1.0;
  const std::size_t max_lag = n / 4;
  for (std::size_t k = 1; k <= max_lag; ++k) {
    double ck = 0.0;
    for (std::size_t i = 0; i + k < n; ++i) {
      ck += (series[i] - mean) * (series[i + k] - mean);
    }
    ck /= static_cast<double>(n - k);
    tau += 2.0 * ck / c0;
    // Sokal's stopping rule: once the window exceeds 5 tau, further lags are
    // dominated by noise.
    if (static_cast<double>(k) >= 5.0 * tau) break;
  }
  return std::max(tau, 1.0);
}

}  // namespace gld
