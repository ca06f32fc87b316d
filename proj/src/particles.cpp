#include "gld/particles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace gld {
namespace {

void check_pair(const Configuration& config, const ModelParams& params) {
  params.validate();
  if (params.n != config.n()) {
    throw std::invalid_argument("particle count mismatch: params.n = " +
                                std::to_string(params.n) + ", configuration has " +
                                std::to_string(config.n()));
  }
}

}  // namespace

void Configuration::validate() const {
  if (x.empty()) {
    throw std::invalid_argument("Configuration: empty position vector");
  }
  for (double xi : x) {
    if (!std::isfinite(xi) || xi < 0.0 || xi >= 1.0) {
      throw std::invalid_argument("Configuration: position outside [0,1)");
    }
  }
}

Configuration equal_spacing(int n) {
  if (n < 1) throw std::invalid_argument("equal_spacing: n must be >= 1");
  Configuration c;
  c.x.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) c.x[static_cast<std::size_t>(i)] = static_cast<double>(i) / n;
  return c;
}

Configuration iid_from_density(int n, std::span<const double> density,
                               RandomStream& rng) {
  if (n < 1) throw std::invalid_argument("iid_from_density: n must be >= 1");
  if (density.size() < 2) {
    throw std::invalid_argument("iid_from_density: need at least two grid values");
  }
  const std::size_t m = density.size();
  std::vector<double> cdf(m + 1, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    double v = density[j];
    if (!std::isfinite(v) || v < -1e-12) {
      throw std::invalid_argument("iid_from_density: negative density value");
    }
    cdf[j + 1] = cdf[j] + std::max(v, 0.0);
  }
  const double total = cdf[m];
  if (!(total > 0.0)) {
    throw std::invalid_argument("iid_from_density: density sums to zero");
  }
  Configuration c;
  c.x.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform() * total;
    // Cell containing u, then linear interpolation of the flat-cell CDF.
    const auto it = std::upper_bound(cdf.begin() + 1, cdf.end(), u);
    const std::size_t j = static_cast<std::size_t>(it - cdf.begin()) - 1;
    const double width = cdf.at(j + 1) - cdf[j];
    const double frac = width > 0.0 ? (u - cdf[j]) / width : 0.0;
    c.x[static_cast<std::size_t>(i)] =
        wrap01((static_cast<double>(j) + frac) / static_cast<double>(m));
  }
  return c;
}

std::vector<double> drift(const Configuration& config, const ModelParams& params) {
  check_pair(config, params);
  const int n = config.n();
  const double s = params.scale();
  const double beta = params.beta;
  const double* x = config.x.data();
  std::vector<double> b(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double w = wrap(x[i] - x[j]);
      const double f = Vprime(s * w, beta);
      b[static_cast<std::size_t>(i)] -= s * f;
      // The ordered pair (j,i) sees wrap(x_j - x_i) = -w, except at the
      // half-circle tie where both orderings wrap to -1/2.
      const double f_ji = (w == -0.5) ? f : -f;
      b[static_cast<std::size_t>(j)] -= s * f_ji;
    }
  }
  return b;
}

void step_em_with_noise(Configuration& config, const ModelParams& params,
                        double dt, std::span<const double> xi) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw std::invalid_argument("step_em: dt must be positive and finite");
  }
  if (xi.size() != config.x.size()) {
    throw std::invalid_argument("step_em: noise vector length mismatch");
  }
  const std::vector<double> b = drift(config, params);
  const double root_dt = std::sqrt(dt);
  for (std::size_t i = 0; i < config.x.size(); ++i) {
    config.x[i] = wrap01(config.x[i] + b[i] * dt + root_dt * xi[i]);
  }
}

void step_em(Configuration& config, const ModelParams& params, double dt,
             RandomStream& rng) {
  // Draw the noise first so exactly n variates are consumed in index order
  // whatever the drift evaluation does.
  std::vector<double> xi(config.x.size());
  for (double& v : xi) v = rng.normal();
  step_em_with_noise(config, params, dt, xi);
}

double empirical_pairing(const Configuration& config,
                         const std::function<double(double)>& h) {
  double sum = 0.0;
  for (double xi : config.x) sum += h(xi);
  return sum / static_cast<double>(config.n());
}

PairEnergy pair_energy_stat(const Configuration& config, const ModelParams& params) {
  check_pair(config, params);
  const int n = config.n();
  const double s = params.scale();
  const double beta = params.beta;
  const double* x = config.x.data();
  double off_diag = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      // V is even, so both orderings contribute the same value even at the
      // half-circle tie.
      off_diag += 2.0 * V(s * wrap(x[i] - x[j]), beta);
    }
  }
  PairEnergy e;
  e.without_diagonal = off_diag / n;
  e.with_diagonal = e.without_diagonal + V(0.0, beta);
  return e;
}

Trajectory simulate(Configuration& config, const ModelParams& params,
                    int n_steps, double dt,
                    const std::vector<Observable>& observables,
                    RandomStream& rng, const SimulateOptions& options) {
  config.validate();
  check_pair(config, params);
  if (n_steps < 0) throw std::invalid_argument("simulate: n_steps must be >= 0");
  if (options.stride < 1) throw std::invalid_argument("simulate: stride must be >= 1");

  Trajectory traj;
  traj.observable_names.reserve(observables.size());
  for (const auto& obs : observables) traj.observable_names.push_back(obs.name);

  auto record = [&](int step) {
    TrajectoryRecord rec;
    rec.time = step * dt;
    rec.values.reserve(observables.size());
    for (const auto& obs : observables) rec.values.push_back(obs.eval(config));
    traj.records.push_back(std::move(rec));
  };

  record(0);
  std::vector<double> xi(config.x.size(), 0.0);
  for (int step = 1; step <= n_steps; ++step) {
    if (options.zero_noise) {
      step_em_with_noise(config, params, dt, xi);
    } else {
      step_em(config, params, dt, rng);
    }
    if (step % options.stride == 0 || step == n_steps) record(step);
  }
  return traj;
}

}  // namespace gld
