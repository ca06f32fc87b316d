// Interacting particle system on the circle: drift assembly, Euler-Maruyama
// stepping, trajectory recording, and the empirical statistics read off a
// configuration.
//
// The SDE for n particles is
//   dx_i = -scale * sum_{j != i} V'(scale * wrap(x_i - x_j)) dt + d beta_i,
// scale = n^(1+alpha), with independent unit Brownian motions beta_i and
// positions folded back to [0,1) after every step.
#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "gld/model.hpp"
#include "gld/rng.hpp"

namespace gld {

// Particle positions, each in the fundamental domain [0, 1).
struct Configuration {
  std::vector<double> x;

  int n() const { return static_cast<int>(x.size()); }
  void validate() const;  // throws std::invalid_argument
};

// x_i = i/n: the zero-drift lattice configuration.
Configuration equal_spacing(int n);

// n iid draws from the probability density proportional to the (nonnegative)
// grid values `density` on the uniform grid j/M, sampled by inverting the
// piecewise-constant CDF.
Configuration iid_from_density(int n, std::span<const double> density,
                               RandomStream& rng);

// Drift vector b_i = -scale * sum_{j != i} V'(scale * wrap(x_i - x_j)).
// O(n^2) via the i<j half loop; the ordered-pair formula is reproduced
// exactly, including the non-antisymmetric half-circle tie.
std::vector<double> drift(const Configuration& config, const ModelParams& params);

// One Euler-Maruyama step with externally supplied noise (the zero-noise
// test hook): x_i <- wrap01(x_i + b_i dt + sqrt(dt) xi_i).
void step_em_with_noise(Configuration& config, const ModelParams& params,
                        double dt, std::span<const double> xi);

// One Euler-Maruyama step; consumes exactly n normal variates from `rng` in
// index order before the drift is applied.
void step_em(Configuration& config, const ModelParams& params, double dt,
             RandomStream& rng);

// (h, mu_n) = (1/n) sum_i h(x_i).
double empirical_pairing(const Configuration& config,
                         const std::function<double(double)>& h);

// (1/n) sum over ordered index pairs of V(scale * wrap(x_i - x_j)), reported
// both with the diagonal (which contributes V(0) per particle) and without.
struct PairEnergy {
  double with_diagonal = 0.0;
  double without_diagonal = 0.0;
};
PairEnergy pair_energy_stat(const Configuration& config, const ModelParams& params);

// A named scalar functional of the configuration, recorded along trajectories.
struct Observable {
  std::string name;
  std::function<double(const Configuration&)> eval;
};

struct TrajectoryRecord {
  double time = 0.0;
  std::vector<double> values;  // aligned with the observable list
};

struct Trajectory {
  std::vector<std::string> observable_names;
  std::vector<TrajectoryRecord> records;
};

struct SimulateOptions {
  int stride = 1;           // record every `stride` steps
  bool zero_noise = false;  // test hook: xi = 0
};

// Advance `config` by n_steps of Euler-Maruyama stepping, recording the
// observables at t = 0, every stride steps, and the final time.
Trajectory simulate(Configuration& config, const ModelParams& params,
                    int n_steps, double dt,
                    const std::vector<Observable>& observables,
                    RandomStream& rng, const SimulateOptions& options = {});

}  // namespace gld
