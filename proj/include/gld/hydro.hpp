// Nonlocal transport operator and pseudo-spectral solver for the
// macroscopic density equation
//
//     d/dt rho = 1/2 rho'' + beta * d/dtheta ( rho * D_beta rho )
//
// on the unit-circumference circle, where D_beta is the odd nonlocal
// operator
//
//     (D_beta rho)(theta) = int_0^{1/2} (rho(theta+tau) - rho(theta-tau))
//                           * tau^(-1-beta) dtau.
//
// The strong form above follows from the weak formulation
//
//     d/dt (rho, h) = 1/2 (rho, h'') + (beta/2) intint (h'(theta)-h'(tau))
//                     / (theta-tau) * |theta-tau|^(-beta) rho rho
//
// by one integration by parts in theta: the symmetric double integral is
// first rewritten as int h'(theta) * (-D_beta rho)(theta) rho(theta) dtheta
// (pair the (theta,tau) and (tau,theta) contributions), and moving the
// derivative off h' produces the divergence-form drift term.  The
// weak-strong consistency test cross-checks this identity numerically.
//
// D_beta diagonalizes in Fourier space.  Plugging e^{2 pi i k theta} into
// the difference kernel gives
//
//     e^{2 pi i k (theta+tau)} - e^{2 pi i k (theta-tau)}
//         = 2 i sin(2 pi k tau) e^{2 pi i k theta},
//
// so (D_beta rho)^_k = i * m_k * rho^_k with the odd real symbol
//
//     m_k = 2 int_0^{1/2} sin(2 pi k tau) tau^(-1-beta) dtau,
//
// m_0 = 0, m_{-k} = -m_k, and m_k ~ k^beta for large k.
#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "gld/test_function.hpp"

namespace gld::hydro {

// Grid samples of a probability density on the circle, theta_j = j / M.
struct DensityField {
  int grid_size = 0;           // M, a power of two >= 16
  std::vector<double> values;  // rho(theta_j), j = 0..M-1

  // Throws std::invalid_argument unless M is a power of two >= 16, values
  // has length M with finite entries, and mean(values) == 1 within 1e-12.
  void validate() const;

  static DensityField uniform(int grid_size);
  // Samples f on the grid; validity is the caller's concern (use validate()).
  static DensityField from_function(int grid_size, double (*f)(double));
};

// Tabulated symbol m_k, k = 0..M/2, for one (beta, grid) pair.
struct FractionalMultiplier {
  double beta = 0.0;
  std::vector<double> m;  // m[k], k = 0..M/2

  int grid_size() const { return 2 * (static_cast<int>(m.size()) - 1); }
};

// m_k by series on [0, delta] plus adaptive quadrature on [delta, 1/2],
// delta = min(1/2, 1/(4k+4)); absolute accuracy target 1e-10 (relative for
// large k where the symbol itself is large).  Throws std::invalid_argument
// for beta outside (0,1) or k < 0.
double multiplier(int k, double beta);

// Tabulates m_0..m_{M/2}; results are cached per (beta, grid_size).
FractionalMultiplier make_multiplier(double beta, int grid_size);

// Normalized Fourier coefficients rho^_k, k = 0..M/2.
std::vector<std::complex<double>> spectrum(const DensityField& rho);

// (D_beta rho)(theta_j); spectral action i * m_k.  Output has mean zero.
std::vector<double> frac_deriv(const DensityField& rho,
                               const FractionalMultiplier& mult);

// Q(rho, theta_j) = -beta * (D_beta rho)(theta_j) * rho(theta_j).
std::vector<double> q_pointwise(const DensityField& rho,
                                const FractionalMultiplier& mult);

// Weak form of Q against a C^1 test function,
//
//   q_weak = (beta/2) intint (f(theta)-f(tau))/(theta-tau)
//            * |theta-tau|^(-beta) rho(theta) rho(tau) dtheta dtau,
//
// with differences through the wrapped displacement and the diagonal handled
// via the limit f'(theta).  Deliberately computed on the physical grid with
// product-integration weights for the |u|^(-beta) factor, independent of the
// Fourier-multiplier route, so the two sides of the duality
// q_weak = int f * q_pointwise check each other.  Absolute accuracy target
// 1e-6 at M = 256 for trigonometric-polynomial data.
double q_weak(const DensityField& rho, const TestFunction& f, double beta);

// Second-moment health check  intint |wrap(theta-tau)|^(-beta) rho rho,
// finite for bounded densities; reported with every solver snapshot.
double moment_functional(const DensityField& rho, double beta);

// Strong-form right-hand side 1/2 rho'' + beta d/dtheta(rho * D_beta rho),
// computed spectrally with 2/3-rule dealiasing of the quadratic term.  The
// include_nonlocal hook disables the transport term (pure heat flow) for
// eigenfunction tests.  Output has mean zero to machine precision.
std::vector<double> pde_rhs(const DensityField& rho,
                            const FractionalMultiplier& mult,
                            bool include_nonlocal = true);

// One step of integrating-factor RK4: the stiff diffusion factor
// e^{-2 pi^2 k^2 dt} is applied exactly, the nonlocal drift explicitly;
// the k = 0 mode (total mass) is preserved exactly.  Throws
// std::runtime_error with a diagnostic if any coefficient becomes
// non-finite (blow-up detection).
DensityField step(const DensityField& rho, double dt,
                  const FractionalMultiplier& mult);

// Conservative default step size for the explicit nonlocal term.
inline double default_dt(int grid_size) {
  return 0.25 / (static_cast<double>(grid_size) * grid_size);
}

struct Snapshot {
  double time = 0.0;
  DensityField rho;
  double moment = 0.0;                    // moment_functional at this time
  bool negative_density_warning = false;  // min rho < -1e-8 observed
};

// Integrates from rho0 to time T with fixed step dt and returns one
// snapshot per requested time (taken at the nearest step).  record_times
// must be sorted ascending and contained in [0, T].
std::vector<Snapshot> solve(const DensityField& rho0, double T, double dt,
                            const FractionalMultiplier& mult,
                            std::span<const double> record_times);

// Snapshot serialization: CSV with columns theta,rho (M rows) and a JSON
// sidecar header {beta, grid_size, dt, time}.
void write_snapshot_csv(const std::string& path, const DensityField& rho);
void write_snapshot_header_json(const std::string& path, double beta,
                                int grid_size, double dt, double time);

}  // namespace gld::hydro
