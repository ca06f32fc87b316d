// Potential, wrap, and scaling-identity checks.  Closed-form values are
// asserted directly; derivatives are cross-checked against central
// differences so the analytic branches never drift from V itself.
#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "gld/model.hpp"

using namespace gld;

namespace {
const double kBetas[] = {0.25, 0.5, 0.75};
}

TEST_SUITE_BEGIN("model");

TEST_CASE("wrap maps displacements to [-1/2, 1/2)") {
  CHECK(wrap(0.75) == doctest::Approx(-0.25).epsilon(1e-14));
  CHECK(wrap(-1.2) == doctest::Approx(-0.2).epsilon(1e-12));
  CHECK(wrap(0.3) == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(wrap(0.0) == 0.0);
  // Ties at distance exactly 1/2 resolve to the left endpoint.
  CHECK(wrap(0.5) == -0.5);
  CHECK(wrap(-0.5) == -0.5);
  CHECK(wrap(1.5) == -0.5);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(-5.0, 5.0);
  for (int i = 0; i < 10000; ++i) {
    const double d = unif(rng);
    const double w = wrap(d);
    CHECK(w >= -0.5);
    CHECK(w < 0.5);
    // Periodicity: shifting by whole turns never changes the wrap.
    for (int k = -3; k <= 3; ++k) {
      CHECK(wrap(d + k) == doctest::Approx(w).epsilon(1e-12));
    }
    // Antisymmetry away from the tie at -1/2.
    if (w != -0.5 && w != 0.0) CHECK(wrap(-d) == doctest::Approx(-w).epsilon(1e-12));
  }

  CHECK_THROWS_AS(wrap(std::nan("")), std::invalid_argument);
  CHECK_THROWS_AS(wrap(INFINITY), std::invalid_argument);
}

TEST_CASE("wrap01 maps positions to [0, 1)") {
  CHECK(wrap01(1.25) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(wrap01(-0.25) == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(wrap01(3.0) == 0.0);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> unif(-10.0, 10.0);
  for (int i = 0; i < 10000; ++i) {
    const double w = wrap01(unif(rng));
    CHECK(w >= 0.0);
    CHECK(w < 1.0);
  }
  CHECK_THROWS_AS(wrap01(-INFINITY), std::invalid_argument);
}

TEST_CASE("potential closed forms and junction") {
  for (double beta : kBetas) {
    CAPTURE(beta);
    CHECK(V(0.0, beta) == doctest::Approx(1.0 + beta / 2.0).epsilon(1e-15));
    CHECK(V(1.0, beta) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(V(-1.0, beta) == doctest::Approx(1.0).epsilon(1e-15));
    // C^0 across the junction.
    CHECK(V(1.0 + 1e-9, beta) == doctest::Approx(V(1.0 - 1e-9, beta)).epsilon(1e-8));
    // C^1: one-sided slopes agree with -beta at z = 1 (+beta at z = -1).
    const double h = 1e-6;
    CHECK((V(1.0 + h, beta) - V(1.0 - h, beta)) / (2 * h) ==
          doctest::Approx(-beta).epsilon(1e-5));
    CHECK((V(-1.0 + h, beta) - V(-1.0 - h, beta)) / (2 * h) ==
          doctest::Approx(beta).epsilon(1e-5));
  }
  CHECK(V(2.0, 0.5) == doctest::Approx(std::pow(2.0, -0.5)).epsilon(1e-15));
  CHECK(V(2.0, 0.25) == doctest::Approx(std::pow(2.0, -0.25)).epsilon(1e-15));
  CHECK(V(3.0, 0.75) == doctest::Approx(std::pow(3.0, -0.75)).epsilon(1e-14));
}

TEST_CASE("potential bounds, symmetry, and tail") {
  for (double beta : kBetas) {
    CAPTURE(beta);
    for (int i = 0; i <= 10000; ++i) {
      const double z = -10.0 + 20.0 * i / 10000.0;
      const double v = V(z, beta);
      CHECK(v > 0.0);
      CHECK(v <= 1.0 + beta / 2.0 + 1e-15);
      CHECK(V(-z, beta) == v);  // even by construction
      // Psi never exceeds beta * V.
      CHECK(Psi(z, beta) <= beta * v + 1e-12);
    }
    // Tail domination on (0,1), with equality of V and z^-beta on [1, oo).
    for (int i = 1; i < 10000; ++i) {
      const double z = static_cast<double>(i) / 10000.0;
      CHECK(V(z, beta) <= std::pow(z, -beta) + 1e-12);
    }
    for (int i = 0; i <= 1000; ++i) {
      const double z = 1.0 + 9.0 * i / 1000.0;
      CHECK(V(z, beta) == doctest::Approx(std::pow(z, -beta)).epsilon(1e-14));
    }
  }
}

TEST_CASE("potential derivative closed forms") {
  CHECK(Vprime(1.0, 0.5) == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(Vprime(-2.0, 0.5) == doctest::Approx(0.5 * std::pow(2.0, -1.5)).epsilon(1e-14));
  CHECK(Vprime(0.0, 0.75) == 0.0);
  for (double beta : kBetas) {
    CAPTURE(beta);
    CHECK(Vprime(1.0, beta) == doctest::Approx(-beta).epsilon(1e-15));
    CHECK(Vprime(-1.0, beta) == doctest::Approx(beta).epsilon(1e-15));
    // Odd symmetry.
    for (double z : {0.2, 0.9, 1.3, 4.7}) {
      CHECK(Vprime(-z, beta) == doctest::Approx(-Vprime(z, beta)).epsilon(1e-15));
    }
  }
}

TEST_CASE("Vprime matches central differences of V") {
  const double h = 1e-6;
  for (double beta : kBetas) {
    CAPTURE(beta);
    for (int i = 0; i <= 400; ++i) {
      // Stay clear of the junction where the finite difference straddles
      // branches; the junction slopes are pinned by the closed-form test.
      double z = 0.05 + 0.9 * i / 400.0;               // inner branch
      double fd = (V(z + h, beta) - V(z - h, beta)) / (2 * h);
      CHECK(Vprime(z, beta) == doctest::Approx(fd).epsilon(1e-6));
      z = 1.05 + 2.0 * i / 400.0;                       // outer branch
      fd = (V(z + h, beta) - V(z - h, beta)) / (2 * h);
      CHECK(Vprime(z, beta) == doctest::Approx(fd).epsilon(1e-6));
    }
  }
}

TEST_CASE("Psi equals -z V'(z) everywhere") {
  for (double beta : kBetas) {
    CAPTURE(beta);
    for (int i = 0; i <= 2000; ++i) {
      const double z = -8.0 + 16.0 * i / 2000.0;
      CHECK(Psi(z, beta) == doctest::Approx(-z * Vprime(z, beta)).epsilon(1e-14));
    }
  }
  CHECK(Psi(2.0, 0.5) == doctest::Approx(0.5 * std::pow(2.0, -0.5)).epsilon(1e-15));
  CHECK(Psi(0.5, 0.5) == doctest::Approx(0.5 * 0.25).epsilon(1e-15));
}

TEST_CASE("exact tail-scaling identity") {
  CHECK(scaling_error(1e6, 0.25, 0.5) <= 1e-12);
  for (double beta : kBetas) {
    CAPTURE(beta);
    CHECK(scaling_error(10.0, 0.5, beta) <= 1e-13);
    CHECK(scaling_error(64.0, -0.3, beta) <= 1e-12);
    CHECK(scaling_error(1e3, 2.0, beta) <= 1e-12);
  }
  CHECK_THROWS_AS(scaling_error(1.0, 0.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(scaling_error(0.0, 0.5, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(scaling_error(-2.0, 0.5, 0.5), std::invalid_argument);
}

TEST_CASE("parameter validation and scaling exponents") {
  CHECK_THROWS_AS((ModelParams{0.0, 4}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ModelParams{1.0, 4}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ModelParams{-0.5, 4}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ModelParams{0.5, 0}.validate()), std::invalid_argument);
  CHECK_NOTHROW((ModelParams{0.5, 1}.validate()));

  CHECK(ModelParams{0.5, 2}.alpha() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(ModelParams{0.25, 2}.alpha() == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(ModelParams{0.5, 2}.scale() == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(ModelParams{0.5, 3}.scale() == doctest::Approx(9.0).epsilon(1e-14));
  // n^(1+alpha) = n^(1/beta).
  CHECK(ModelParams{0.75, 16}.scale() ==
        doctest::Approx(std::pow(16.0, 4.0 / 3.0)).epsilon(1e-13));
}

TEST_CASE("fast inverse powers agree with std::pow") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unif(1e-6, 1e6);
  for (double p : {0.25, 0.5, 0.75, 1.25, 1.5, 1.75, 0.3, 1.31}) {
    for (int i = 0; i < 2000; ++i) {
      const double a = unif(rng);
      CHECK(detail::inv_pow(a, p) ==
            doctest::Approx(std::pow(a, -p)).epsilon(1e-13));
    }
  }
}

TEST_SUITE_END();
