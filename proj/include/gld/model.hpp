// Pair potential and circle conventions shared by every other component.
//
// The interaction family is indexed by beta in (0,1):
//   V(z) = 1 + (beta/2)(1 - z^2)   for |z| <= 1
//   V(z) = |z|^(-beta)             for |z| >= 1
// (C^1 across the junction), with Psi(z) = -z V'(z).  A system of n particles
// uses the argument scaling scale = n^(1+alpha), alpha = (1-beta)/beta, which
// makes r * V(r^(1+alpha) z) = |z|^(-beta) exact whenever r^(1+alpha)|z| >= 1.
#pragma once

#include <cmath>
#include <stdexcept>

namespace gld {

// Interaction parameters; validate() throws std::invalid_argument on a beta
// outside (0,1) or n < 1.  All member functions are pure.
struct ModelParams {
  double beta = 0.5;
  int n = 1;

  double alpha() const { return (1.0 - beta) / beta; }
  double scale() const { return std::pow(static_cast<double>(n), 1.0 + alpha()); }
  void validate() const;
};

namespace detail {

// a^(-p) for a > 0.  Quarter-integer exponents (every acceptance-relevant
// beta) take a sqrt chain instead of the much slower std::pow; the potential
// evaluation inside the O(n^2) drift/energy loops is the hottest path in the
// whole codebase.
inline double inv_pow(double a, double p) {
  const double p4 = 4.0 * p;
  const int q = static_cast<int>(p4);
  if (static_cast<double>(q) == p4 && q >= 1 && q <= 7) {
    const double r = std::sqrt(a);
    const double s = std::sqrt(r);
    switch (q) {
      case 1: return 1.0 / s;
      case 2: return 1.0 / r;
      case 3: return 1.0 / (r * s);
      case 4: return 1.0 / a;
      case 5: return 1.0 / (a * s);
      case 6: return 1.0 / (a * r);
      case 7: return 1.0 / (a * r * s);
    }
  }
  return std::pow(a, -p);
}

}  // namespace detail

// Signed displacement wrapped to [-1/2, 1/2); ties at distance exactly 1/2
// map to -1/2.  Throws std::invalid_argument on non-finite input.  Inline
// along with the potential family: these four dominate the O(n^2) drift and
// energy loops.
inline double wrap(double d) {
  if (!std::isfinite(d)) {
    throw std::invalid_argument("wrap: non-finite displacement");
  }
  double w = d - std::floor(d + 0.5);
  // Guard against w == 1/2 from cancellation at very large |d|.
  if (w >= 0.5) w -= 1.0;
  return w;
}

// Position wrapped to the fundamental domain [0, 1).
inline double wrap01(double x) {
  if (!std::isfinite(x)) {
    throw std::invalid_argument("wrap01: non-finite position");
  }
  double w = x - std::floor(x);
  if (w >= 1.0) w -= 1.0;  // x just below an integer can round up
  return w;
}

// Pair potential.
inline double V(double z, double beta) {
  const double az = std::fabs(z);
  if (az <= 1.0) return 1.0 + 0.5 * beta * (1.0 - z * z);
  return detail::inv_pow(az, beta);
}

// Its derivative.
inline double Vprime(double z, double beta) {
  const double az = std::fabs(z);
  if (az <= 1.0) return -beta * z;
  const double mag = beta * detail::inv_pow(az, 1.0 + beta);
  return z > 0.0 ? -mag : mag;
}

// Psi(z) = -z V'(z).
inline double Psi(double z, double beta) {
  const double az = std::fabs(z);
  if (az <= 1.0) return beta * z * z;
  return beta * detail::inv_pow(az, beta);
}

// |r * V(r^(1+alpha) z) - |z|^(-beta)|; exactly zero in real arithmetic when
// r^(1+alpha)|z| >= 1.  Preconditions r > 0 and z != 0 are enforced.
double scaling_error(double r, double z, double beta);

}  // namespace gld
