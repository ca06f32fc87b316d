#include "gld/hydro.hpp"

#include <fftw3.h>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "gld/io.hpp"
#include "json.hpp"

namespace gld::hydro {

namespace {

void check_grid_size(int grid_size) {
  if (grid_size < 16 || (grid_size & (grid_size - 1)) != 0) {
    throw std::invalid_argument("grid_size must be a power of two >= 16, got " +
                                std::to_string(grid_size));
  }
}

// ---------------------------------------------------------------------------
// Discrete Fourier transforms.  Plans are cached per grid size; FFTW plan
// creation is not thread safe, execution on caller arrays is.  Plans are
// created with FFTW_UNALIGNED so they can run on std::vector storage.

struct FftPlans {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

FftPlans& fft_plans(int M) {
  static std::mutex mutex;
  static std::map<int, FftPlans> cache;
  std::lock_guard<std::mutex> lock(mutex);
  FftPlans& p = cache[M];
  if (p.fwd == nullptr) {
    std::vector<double> re(static_cast<std::size_t>(M));
    std::vector<std::complex<double>> sp(static_cast<std::size_t>(M / 2 + 1));
    auto* c = reinterpret_cast<fftw_complex*>(sp.data());
    p.fwd = fftw_plan_dft_r2c_1d(M, re.data(), c,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.bwd = fftw_plan_dft_c2r_1d(M, c, re.data(),
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (p.fwd == nullptr || p.bwd == nullptr) {
      throw std::runtime_error("FFTW planning failed for grid size " +
                               std::to_string(M));
    }
  }
  return p;
}

using Spectral = std::vector<std::complex<double>>;  // k = 0..M/2, unnormalized

Spectral to_spectral(int M, std::span<const double> values) {
  std::vector<double> in(values.begin(), values.end());
  Spectral out(static_cast<std::size_t>(M / 2 + 1));
  fftw_execute_dft_r2c(fft_plans(M).fwd, in.data(),
                       reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

// Consumes its argument (FFTW's c2r destroys the input array).
std::vector<double> to_physical(int M, Spectral spec) {
  std::vector<double> out(static_cast<std::size_t>(M));
  fftw_execute_dft_c2r(fft_plans(M).bwd,
                       reinterpret_cast<fftw_complex*>(spec.data()),
                       out.data());
  const double inv = 1.0 / M;
  for (double& x : out) x *= inv;
  return out;
}

// 2/3-rule dealiasing: drop modes above M/3 so the quadratic product is
// alias-free on the retained band.
void dealias(int M, Spectral& spec) {
  const int cut = M / 3;
  for (int k = cut + 1; k <= M / 2; ++k) {
    spec[static_cast<std::size_t>(k)] = 0.0;
  }
}

// ---------------------------------------------------------------------------
// The fractional symbol m_k.

double symbol_envelope(double t, void* params) {
  const double beta = *static_cast<const double*>(params);
  return std::pow(t, -1.0 - beta);
}

void ensure_gsl_handler_off() {
  static const bool done = [] {
    gsl_set_error_handler_off();
    return true;
  }();
  (void)done;
}

}  // namespace

double multiplier(int k, double beta) {
  if (!(beta > 0.0 && beta < 1.0)) {
    throw std::invalid_argument("multiplier: beta must be in (0,1)");
  }
  if (k < 0) {
    throw std::invalid_argument("multiplier: k must be >= 0");
  }
  if (k == 0) return 0.0;
  ensure_gsl_handler_off();

  const double delta = std::min(0.5, 1.0 / (4.0 * k + 4.0));
  const double two_pi_k = 2.0 * M_PI * k;

  // Series for 2 * int_0^delta: expand sin and integrate term by term,
  //   term_j = (-1)^j x^{2j+1} delta^{-beta} / ((2j+1)! (2j+1-beta)),
  // with x = 2 pi k delta <= pi/2, so the terms decay superexponentially.
  const double x = two_pi_k * delta;
  const double delta_pow = std::pow(delta, -beta);
  double series = 0.0;
  double power_over_fact = x;  // x^{2j+1} / (2j+1)!
  double sign = 1.0;
  for (int j = 0; j < 60; ++j) {
    const double term = sign * power_over_fact * delta_pow / (2 * j + 1 - beta);
    series += term;
    if (std::fabs(term) < 1e-16) break;
    power_over_fact *= x * x / ((2.0 * j + 2.0) * (2.0 * j + 3.0));
    sign = -sign;
  }
  series *= 2.0;

  // Adaptive oscillatory quadrature on [delta, 1/2]: the sin(2 pi k t)
  // factor is handled by the weighted (QAWO) rule, leaving the smooth
  // monotone envelope t^{-1-beta}.
  double beta_param = beta;
  gsl_function f{&symbol_envelope, &beta_param};
  constexpr std::size_t kLimit = 2048;
  gsl_integration_workspace* ws = gsl_integration_workspace_alloc(kLimit);
  gsl_integration_qawo_table* table =
      gsl_integration_qawo_table_alloc(two_pi_k, 0.5 - delta, GSL_INTEG_SINE, 28);
  if (ws == nullptr || table == nullptr) {
    gsl_integration_workspace_free(ws);
    gsl_integration_qawo_table_free(table);
    throw std::runtime_error("multiplier: allocation failed");
  }
  double integral = 0.0, abserr = 0.0;
  const int status = gsl_integration_qawo(&f, delta, 1e-12, 1e-13, kLimit, ws,
                                          table, &integral, &abserr);
  gsl_integration_qawo_table_free(table);
  gsl_integration_workspace_free(ws);
  // GSL_EROUND means the requested tolerance hit the roundoff floor; the
  // returned estimate is still the best available and abserr bounds it.
  if (status != GSL_SUCCESS && status != GSL_EROUND) {
    throw std::runtime_error("multiplier: quadrature failed for k=" +
                             std::to_string(k));
  }
  const double value = series + 2.0 * integral;
  if (2.0 * abserr > 1e-9 * std::max(1.0, std::fabs(value))) {
    throw std::runtime_error("multiplier: quadrature error too large for k=" +
                             std::to_string(k));
  }
  return value;
}

FractionalMultiplier make_multiplier(double beta, int grid_size) {
  check_grid_size(grid_size);
  static std::mutex mutex;
  static std::map<std::pair<double, int>, FractionalMultiplier> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_pair(beta, grid_size);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  FractionalMultiplier mult;
  mult.beta = beta;
  mult.m.resize(static_cast<std::size_t>(grid_size / 2 + 1));
  for (int k = 0; k <= grid_size / 2; ++k) {
    mult.m[static_cast<std::size_t>(k)] = multiplier(k, beta);
  }
  cache[key] = mult;
  return mult;
}

// ---------------------------------------------------------------------------
// DensityField.

void DensityField::validate() const {
  check_grid_size(grid_size);
  if (values.size() != static_cast<std::size_t>(grid_size)) {
    throw std::invalid_argument("DensityField: values length != grid_size");
  }
  double sum = 0.0;
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("DensityField: non-finite value");
    }
    sum += v;
  }
  if (std::fabs(sum / grid_size - 1.0) > 1e-12) {
    throw std::invalid_argument("DensityField: mean must be 1 within 1e-12");
  }
}

DensityField DensityField::uniform(int grid_size) {
  check_grid_size(grid_size);
  return DensityField{grid_size,
                      std::vector<double>(static_cast<std::size_t>(grid_size),
                                          1.0)};
}

DensityField DensityField::from_function(int grid_size, double (*f)(double)) {
  check_grid_size(grid_size);
  DensityField rho{grid_size, {}};
  rho.values.resize(static_cast<std::size_t>(grid_size));
  for (int j = 0; j < grid_size; ++j) {
    rho.values[static_cast<std::size_t>(j)] =
        f(static_cast<double>(j) / grid_size);
  }
  return rho;
}

std::vector<std::complex<double>> spectrum(const DensityField& rho) {
  check_grid_size(rho.grid_size);
  auto spec = to_spectral(rho.grid_size, rho.values);
  const double inv = 1.0 / rho.grid_size;
  for (auto& c : spec) c *= inv;
  return spec;
}

namespace {

void check_compatible(const DensityField& rho, const FractionalMultiplier& mult) {
  check_grid_size(rho.grid_size);
  if (rho.values.size() != static_cast<std::size_t>(rho.grid_size)) {
    throw std::invalid_argument("DensityField: values length != grid_size");
  }
  if (mult.grid_size() != rho.grid_size) {
    throw std::invalid_argument(
        "grid mismatch: multiplier tabulated for M=" +
        std::to_string(mult.grid_size()) + ", field has M=" +
        std::to_string(rho.grid_size));
  }
}

Spectral apply_symbol(const Spectral& rho_hat, const FractionalMultiplier& mult) {
  Spectral out(rho_hat.size());
  for (std::size_t k = 0; k < rho_hat.size(); ++k) {
    // (D_beta rho)^_k = i m_k rho^_k
    out[k] = std::complex<double>(0.0, mult.m[k]) * rho_hat[k];
  }
  return out;
}

}  // namespace

std::vector<double> frac_deriv(const DensityField& rho,
                               const FractionalMultiplier& mult) {
  check_compatible(rho, mult);
  auto rho_hat = to_spectral(rho.grid_size, rho.values);
  return to_physical(rho.grid_size, apply_symbol(rho_hat, mult));
}

std::vector<double> q_pointwise(const DensityField& rho,
                                const FractionalMultiplier& mult) {
  check_compatible(rho, mult);
  auto d = frac_deriv(rho, mult);
  std::vector<double> out(d.size());
  for (std::size_t j = 0; j < d.size(); ++j) {
    out[j] = -mult.beta * d[j] * rho.values[j];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Product-integration quadrature for integrals  2 int_0^{1/2} u^{-beta} K(u) du
// with K sampled at u_j = j/M and even in u.  Per cell [j/M, (j+1)/M] the
// integrand factor K is replaced by its local degree-5 interpolant on the six
// nearest grid points; the singular factor u^{-beta} is integrated exactly
// against monomials on the first cell and by 20-point Gauss-Legendre
// elsewhere, where it is analytic.  The result is a weight vector W with
// 2 int_0^{1/2} u^{-beta} K(u) du ~= sum_j W_j K(u_j).
//
// Stencils at the ends use the structure of K beyond the stored range:
// evenness gives K(-u) = K(u) at the left for both supported kinds, while
// the continuation past u = 1/2 depends on the integrand:
//  - kEvenPeriodic (autocorrelations): K(1/2+t) =  K(1/2-t);
//  - kOddNumerator (difference-quotient kernels K(u) = N(u)/u with N odd
//    and 1-periodic): N(1/2+t) = -N(1/2-t), hence
//    K(1/2+t) = -K(1/2-t) * (1/2-t)/(1/2+t).

namespace {

enum class EdgeKind { kEvenPeriodic, kOddNumerator };

double lagrange_basis(const double* nodes, int i, double t) {
  double num = 1.0, den = 1.0;
  for (int j = 0; j < 6; ++j) {
    if (j == i) continue;
    num *= t - nodes[j];
    den *= nodes[i] - nodes[j];
  }
  return num / den;
}

// Monomial coefficients (ascending) of the i-th Lagrange basis polynomial.
void lagrange_monomials(const double* nodes, int i, double* coef) {
  double poly[6] = {1.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  int degree = 0;
  double den = 1.0;
  for (int j = 0; j < 6; ++j) {
    if (j == i) continue;
    den *= nodes[i] - nodes[j];
    // poly *= (t - nodes[j])
    for (int p = degree + 1; p >= 1; --p) {
      poly[p] = poly[p - 1] - nodes[j] * poly[p];
    }
    poly[0] = -nodes[j] * poly[0];
    ++degree;
  }
  for (int p = 0; p < 6; ++p) coef[p] = poly[p] / den;
}

std::vector<double> build_singular_weights(double beta, int M, EdgeKind kind) {
  const int half = M / 2;
  std::vector<double> w(static_cast<std::size_t>(half + 1), 0.0);
  const double h = 1.0 / M;
  const double h_pow = std::pow(h, 1.0 - beta);
  gsl_integration_glfixed_table* tab = gsl_integration_glfixed_table_alloc(20);
  if (tab == nullptr) throw std::runtime_error("quadrature table allocation");
  for (int c = 0; c < half; ++c) {
    double nodes[6];
    for (int s = 0; s < 6; ++s) nodes[s] = static_cast<double>(c - 2 + s);
    for (int i = 0; i < 6; ++i) {
      double integral = 0.0;  // int_c^{c+1} t^{-beta} L_i(t) dt
      if (c == 0) {
        double coef[6];
        lagrange_monomials(nodes, i, coef);
        for (int p = 0; p < 6; ++p) {
          integral += coef[p] / (p + 1.0 - beta);
        }
      } else {
        for (std::size_t q = 0; q < 20; ++q) {
          double tq = 0.0, wq = 0.0;
          gsl_integration_glfixed_point(c, c + 1.0, q, &tq, &wq, tab);
          integral += wq * std::pow(tq, -beta) * lagrange_basis(nodes, i, tq);
        }
      }
      int idx = c - 2 + i;
      double factor = 1.0;
      if (idx < 0) idx = -idx;  // K even
      if (idx > half) {
        // Continue past u = 1/2 according to the integrand structure.
        if (kind == EdgeKind::kOddNumerator) {
          factor = -static_cast<double>(M - idx) / idx;
        }
        idx = M - idx;
      }
      w[static_cast<std::size_t>(idx)] += factor * 2.0 * h_pow * integral;
    }
  }
  gsl_integration_glfixed_table_free(tab);
  return w;
}

const std::vector<double>& singular_weights(double beta, int M, EdgeKind kind) {
  static std::mutex mutex;
  static std::map<std::tuple<double, int, int>, std::vector<double>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_tuple(beta, M, static_cast<int>(kind));
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, build_singular_weights(beta, M, kind)).first;
  }
  return it->second;
}

void check_beta(double beta) {
  if (!(beta > 0.0 && beta < 1.0)) {
    throw std::invalid_argument("beta must be in (0,1)");
  }
}

}  // namespace

double q_weak(const DensityField& rho, const TestFunction& f, double beta) {
  check_beta(beta);
  check_grid_size(rho.grid_size);
  const int M = rho.grid_size;
  const double h = 1.0 / M;
  std::vector<double> fv(static_cast<std::size_t>(M));
  for (int j = 0; j < M; ++j) {
    fv[static_cast<std::size_t>(j)] = f.value(h * j);
  }
  // K(u_j) = h sum_l (f(theta_l) - f(theta_l - u_j)) / u_j * rho_l rho_{l-j};
  // at u = 0 the difference quotient becomes f'.
  std::vector<double> K(static_cast<std::size_t>(M / 2 + 1), 0.0);
  double k0 = 0.0;
  for (int l = 0; l < M; ++l) {
    const double r = rho.values[static_cast<std::size_t>(l)];
    k0 += f.deriv(h * l) * r * r;
  }
  K[0] = h * k0;
  for (int j = 1; j <= M / 2; ++j) {
    const double u = h * j;
    double acc = 0.0;
    for (int l = 0; l < M; ++l) {
      const int lm = l - j >= 0 ? l - j : l - j + M;
      acc += (fv[static_cast<std::size_t>(l)] -
              fv[static_cast<std::size_t>(lm)]) /
             u * rho.values[static_cast<std::size_t>(l)] *
             rho.values[static_cast<std::size_t>(lm)];
    }
    K[static_cast<std::size_t>(j)] = h * acc;
  }
  const auto& w = singular_weights(beta, M, EdgeKind::kOddNumerator);
  double total = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) total += w[j] * K[j];
  return 0.5 * beta * total;
}

double moment_functional(const DensityField& rho, double beta) {
  check_beta(beta);
  check_grid_size(rho.grid_size);
  const int M = rho.grid_size;
  const double h = 1.0 / M;
  // Autocorrelation C(u_j) = int rho(theta) rho(theta - u_j) dtheta.
  std::vector<double> C(static_cast<std::size_t>(M / 2 + 1), 0.0);
  for (int j = 0; j <= M / 2; ++j) {
    double acc = 0.0;
    for (int l = 0; l < M; ++l) {
      const int lm = l - j >= 0 ? l - j : l - j + M;
      acc += rho.values[static_cast<std::size_t>(l)] *
             rho.values[static_cast<std::size_t>(lm)];
    }
    C[static_cast<std::size_t>(j)] = h * acc;
  }
  const auto& w = singular_weights(beta, M, EdgeKind::kEvenPeriodic);
  double total = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) total += w[j] * C[j];
  return total;
}

// ---------------------------------------------------------------------------
// PDE right-hand side and time stepping.

namespace {

// Dealiased spectral form of  beta * d_theta(rho * D_beta rho); same
// (unnormalized) scaling as its input.  Mode 0 is exactly zero.
Spectral transport_term(int M, const Spectral& rho_hat,
                        const FractionalMultiplier& mult) {
  Spectral rho_cut = rho_hat;
  dealias(M, rho_cut);
  Spectral d_cut = apply_symbol(rho_cut, mult);
  auto rho_p = to_physical(M, std::move(rho_cut));
  auto d_p = to_physical(M, std::move(d_cut));
  std::vector<double> prod(static_cast<std::size_t>(M));
  for (int j = 0; j < M; ++j) {
    prod[static_cast<std::size_t>(j)] =
        rho_p[static_cast<std::size_t>(j)] * d_p[static_cast<std::size_t>(j)];
  }
  Spectral out = to_spectral(M, prod);
  dealias(M, out);
  for (int k = 0; k <= M / 2; ++k) {
    out[static_cast<std::size_t>(k)] *=
        mult.beta * std::complex<double>(0.0, 2.0 * M_PI * k);
  }
  return out;
}

}  // namespace

std::vector<double> pde_rhs(const DensityField& rho,
                            const FractionalMultiplier& mult,
                            bool include_nonlocal) {
  check_compatible(rho, mult);
  const int M = rho.grid_size;
  auto rho_hat = to_spectral(M, rho.values);
  Spectral out(rho_hat.size(), 0.0);
  for (int k = 0; k <= M / 2; ++k) {
    // 1/2 rho'' has symbol 1/2 (2 pi i k)^2 = -2 pi^2 k^2.
    const double lam = -2.0 * M_PI * M_PI * static_cast<double>(k) * k;
    out[static_cast<std::size_t>(k)] = lam * rho_hat[static_cast<std::size_t>(k)];
  }
  if (include_nonlocal) {
    auto tr = transport_term(M, rho_hat, mult);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += tr[k];
  }
  return to_physical(M, std::move(out));
}

DensityField step(const DensityField& rho, double dt,
                  const FractionalMultiplier& mult) {
  check_compatible(rho, mult);
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
  const int M = rho.grid_size;
  const std::size_t half = static_cast<std::size_t>(M / 2);

  std::vector<double> E(half + 1), E2(half + 1);
  for (std::size_t k = 0; k <= half; ++k) {
    const double lam = -2.0 * M_PI * M_PI * static_cast<double>(k) * k;
    E[k] = std::exp(0.5 * lam * dt);
    E2[k] = E[k] * E[k];
  }

  // Integrating-factor RK4: substitute w = e^{-lambda t} rho^ and apply the
  // classical scheme to w' = e^{-lambda t} N(e^{lambda t} w), which after
  // untangling the exponentials reads as below.  Diffusion is exact; only
  // the transport term N is treated explicitly.
  const Spectral u = to_spectral(M, rho.values);
  const Spectral a = transport_term(M, u, mult);

  Spectral stage(u.size());
  for (std::size_t k = 0; k <= half; ++k) {
    stage[k] = E[k] * (u[k] + 0.5 * dt * a[k]);
  }
  const Spectral b = transport_term(M, stage, mult);

  for (std::size_t k = 0; k <= half; ++k) {
    stage[k] = E[k] * u[k] + 0.5 * dt * b[k];
  }
  const Spectral c = transport_term(M, stage, mult);

  for (std::size_t k = 0; k <= half; ++k) {
    stage[k] = E2[k] * u[k] + dt * E[k] * c[k];
  }
  const Spectral d = transport_term(M, stage, mult);

  Spectral next(u.size());
  for (std::size_t k = 0; k <= half; ++k) {
    next[k] = E2[k] * u[k] +
              dt / 6.0 * (E2[k] * a[k] + 2.0 * E[k] * (b[k] + c[k]) + d[k]);
  }
  for (std::size_t k = 0; k <= half; ++k) {
    if (!std::isfinite(next[k].real()) || !std::isfinite(next[k].imag())) {
      throw std::runtime_error(
          "pseudo-spectral step diverged: non-finite coefficient at k=" +
          std::to_string(k) + " (dt=" + io::format_double(dt) +
          ", M=" + std::to_string(M) + "); reduce dt");
    }
  }
  return DensityField{M, to_physical(M, std::move(next))};
}

std::vector<Snapshot> solve(const DensityField& rho0, double T, double dt,
                            const FractionalMultiplier& mult,
                            std::span<const double> record_times) {
  rho0.validate();
  check_compatible(rho0, mult);
  if (!(dt > 0.0)) throw std::invalid_argument("solve: dt must be positive");
  if (!(T >= 0.0)) throw std::invalid_argument("solve: T must be >= 0");

  const long total_steps = std::lround(T / dt);
  std::vector<long> targets;
  targets.reserve(record_times.size());
  double prev = -1.0;
  for (double t : record_times) {
    if (t < -1e-12 || t > T + 1e-12) {
      throw std::invalid_argument("solve: record time outside [0, T]");
    }
    if (t < prev) {
      throw std::invalid_argument("solve: record_times must be sorted");
    }
    prev = t;
    targets.push_back(std::clamp(std::lround(t / dt), 0L, total_steps));
  }

  std::vector<Snapshot> out;
  out.reserve(targets.size());
  DensityField current = rho0;
  long step_index = 0;
  for (std::size_t r = 0; r < targets.size(); ++r) {
    while (step_index < targets[r]) {
      current = step(current, dt, mult);
      ++step_index;
    }
    Snapshot snap;
    snap.time = static_cast<double>(step_index) * dt;
    snap.rho = current;
    snap.rho.validate();
    snap.moment = moment_functional(current, mult.beta);
    const double min_rho =
        *std::min_element(current.values.begin(), current.values.end());
    snap.negative_density_warning = min_rho < -1e-8;
    out.push_back(std::move(snap));
  }
  return out;
}

void write_snapshot_csv(const std::string& path, const DensityField& rho) {
  check_grid_size(rho.grid_size);
  std::string body = "theta,rho\r\n";
  for (int j = 0; j < rho.grid_size; ++j) {
    body += io::format_double(static_cast<double>(j) / rho.grid_size);
    body += ',';
    body += io::format_double(rho.values[static_cast<std::size_t>(j)]);
    body += "\r\n";
  }
  io::write_text_file(path, body);
}

void write_snapshot_header_json(const std::string& path, double beta,
                                int grid_size, double dt, double time) {
  nlohmann::json j;
  j["beta"] = beta;
  j["grid_size"] = grid_size;
  j["dt"] = dt;
  j["time"] = time;
  io::write_text_file(path, j.dump(2) + "\n");
}

}  // namespace gld::hydro
