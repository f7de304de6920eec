#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "nslame/modulus.hpp"
#include "nslame/quadrature.hpp"
#include "nslame/specfun.hpp"
#include "nslame/theta.hpp"

using namespace nslame;

namespace {

// Independent oracle: the finite series form of the Gegenbauer polynomial,
// sum_k (-1)^k (g)_{n-k} / (k! (n-2k)!) (2z)^{n-2k}.
Complex gegenbauer_series_oracle(int n, double g, Complex z) {
  Complex acc{0, 0};
  for (int k = 0; 2 * k <= n; ++k) {
    const double num = pochhammer(g, n - k);
    const double den = std::tgamma(k + 1.0) * std::tgamma(n - 2.0 * k + 1.0);
    acc += std::pow(-1.0, k) * num / den * ipow(2.0 * z, n - 2 * k);
  }
  return acc;
}

// Independent oracle: theta1 by the Jacobi sine series in the
// (2 q^{1/4})^{-1} vartheta_1 normalization, summed directly.
Complex theta1_series_oracle(Complex x, const EllipticModulus& m) {
  Complex acc{0, 0};
  for (int n = 0; n <= 40; ++n) {
    const Complex qp = ipow(m.q, n * (n + 1));
    acc += std::pow(-1.0, n) * qp * std::sin((2.0 * n + 1.0) * x);
  }
  return acc;
}

}  // namespace

TEST_CASE("modulus constants at extreme and generic tau") {
  // q -> 0 limit: tau = 10i gives q ~ 2.7e-14
  const EllipticModulus m0 = make_modulus(Complex{0, 10});
  CHECK(std::abs(m0.G - 1.0) < 1e-13);
  CHECK(std::abs(m0.eta1_over_pi - 1.0 / 12.0) < 1e-13);

  // tau = i: eta1/pi equals the defining sum with q = e^{-pi}
  const EllipticModulus m1 = make_modulus(Complex{0, 1});
  const double q = std::exp(-kPi);
  double direct = 1.0 / 12.0;
  for (int n = 1; n <= 60; ++n) {
    const double q2n = std::pow(q, 2 * n);
    direct -= 2.0 * q2n / ((1.0 - q2n) * (1.0 - q2n));
  }
  CHECK(std::abs(m1.eta1_over_pi - direct) < 1e-15);

  // self-convergence of the truncated product at complex tau
  const Complex tau{0.3, 0.9};
  const EllipticModulus a = make_modulus(tau, 64);
  const EllipticModulus b = make_modulus(tau, 128);
  CHECK(std::abs(a.G - b.G) < 1e-14);
  CHECK(std::abs(a.eta1_over_pi - b.eta1_over_pi) < 1e-14);

  CHECK_THROWS_AS(make_modulus(Complex{0.3, -0.2}), std::domain_error);
  CHECK_THROWS_AS(make_modulus(Complex{0.3, 0.0}), std::domain_error);
}

TEST_CASE("G derivative relation by finite differences") {
  for (const Complex tau : {Complex{0, 1.0}, Complex{0.2, 0.8}}) {
    const EllipticModulus m = make_modulus(tau, 256);
    const double h = 1e-4;
    const Complex gp = make_modulus(tau + Complex{0, h}, 256).G;
    const Complex gm = make_modulus(tau - Complex{0, h}, 256).G;
    const Complex dG = -kI * (gp - gm) / (2.0 * h);
    CHECK(std::abs((kI / kPi) * dG / m.G - (1.0 / 12.0 - m.eta1_over_pi)) < 1e-7);
  }
}

TEST_CASE("theta trigonometric limits") {
  const EllipticModulus m = make_modulus(Complex{0, 12});
  for (const Complex x : {Complex{0.3, 0}, Complex{1.4, 0.1}, Complex{-2.0, 0}}) {
    CHECK(std::abs(theta(1, x, m) - std::sin(x)) < 1e-14);
    CHECK(std::abs(theta(2, x, m) - std::cos(x)) < 1e-14);
    CHECK(std::abs(theta(3, x, m) - 1.0) < 1e-14);
    CHECK(std::abs(theta(4, x, m) - 1.0) < 1e-14);
  }
}

TEST_CASE("theta product form against the Jacobi series") {
  const EllipticModulus m = make_modulus(Complex{0, 1});
  CHECK(std::abs(theta(1, Complex{0.7, 0}, m) - theta1_series_oracle(Complex{0.7, 0}, m)) <
        1e-13);
  const EllipticModulus m2 = make_modulus(Complex{0.3, 0.7});
  for (const Complex x : {Complex{0.4, 0.2}, Complex{-1.2, -0.3}, Complex{2.6, 0.0}}) {
    const Complex a = theta(1, x, m2);
    const Complex b = theta1_series_oracle(x, m2);
    CHECK(std::abs(a - b) < 1e-13 * std::max(1.0, std::abs(a)));
  }
}

TEST_CASE("theta1 derivatives") {
  const EllipticModulus m0 = make_modulus(Complex{0, 14});
  const auto d0 = theta1_derivs(Complex{0, 0}, m0);
  CHECK(std::abs(d0[0]) < 1e-15);
  CHECK(std::abs(d0[1] - 1.0) < 1e-14);
  CHECK(std::abs(d0[2]) < 1e-15);

  // theta1'(0) = G^3
  for (const Complex tau : {Complex{0, 1.0}, Complex{0.25, 0.9}}) {
    const EllipticModulus m = make_modulus(tau);
    const auto d = theta1_derivs(Complex{0, 0}, m);
    CHECK(std::abs(d[1] - m.G * m.G * m.G) < 1e-13);
  }

  // finite-difference oracle for theta1'
  const EllipticModulus m8 = make_modulus(Complex{0, 0.8});
  const double h = 1e-5;
  const Complex x{0.4, 0};
  const Complex fd =
      (theta(1, x + h, m8) - theta(1, x - h, m8)) / (2.0 * h);
  CHECK(std::abs(theta1_derivs(x, m8)[1] - fd) < 1e-9);
  const Complex fd2 = (theta(1, x + h, m8) - 2.0 * theta(1, x, m8) + theta(1, x - h, m8)) /
                      (h * h);
  CHECK(std::abs(theta1_derivs(x, m8)[2] - fd2) < 1e-5);
}

TEST_CASE("weierstrass wp") {
  // trig limit
  const EllipticModulus m0 = make_modulus(Complex{0, 12});
  for (const double x : {0.4, 1.1, 2.0}) {
    const Complex s = std::sin(x);
    CHECK(std::abs(wp(Complex{x, 0}, m0) - (1.0 / (s * s) - 1.0 / 3.0)) < 1e-12);
  }

  // cross-method agreement
  const EllipticModulus m1 = make_modulus(Complex{0, 1});
  CHECK(std::abs(wp(Complex{0.9, 0}, m1, WpMethod::theta) -
                 wp(Complex{0.9, 0}, m1, WpMethod::fourier)) < 1e-12);

  // periodicity
  const EllipticModulus m2 = make_modulus(Complex{0, 1.1});
  CHECK(std::abs(wp(Complex{0.3 + kPi, 0}, m2) - wp(Complex{0.3, 0}, m2)) < 1e-13);

  // pole guard
  CHECK_THROWS_AS(wp(Complex{1e-10, 0}, m1), PoleError);
}

TEST_CASE("wp cross-method sweep up to |q| = 0.7") {
  for (const double absq : {0.3, 0.5, 0.7}) {
    const Complex tau{0.0, std::log(1.0 / absq) / kPi};
    const EllipticModulus m = make_modulus(tau);
    for (double x = 0.35; x < kPi - 0.3; x += 0.45) {
      const Complex a = wp(Complex{x, 0}, m, WpMethod::theta);
      const Complex b = wp(Complex{x, 0}, m, WpMethod::fourier);
      CHECK(std::abs(a - b) < 1e-11 * std::max(1.0, std::abs(a)));
    }
  }
}

TEST_CASE("theta1 quasi-periodicity at random complex points") {
  const EllipticModulus m = make_modulus(Complex{0, 0.9});
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> ur(-2.0, 2.0), ui(-0.5, 0.5);
  for (int k = 0; k < 20; ++k) {
    const Complex x{ur(rng), ui(rng)};
    const Complex t = theta(1, x, m);
    CHECK(std::abs(theta(1, x + kPi, m) + t) < 1e-12 * std::max(1.0, std::abs(t)));
    const Complex rhs = -std::exp(-2.0 * kI * x) / m.q * t;
    CHECK(std::abs(theta(1, x + kPi * m.tau, m) - rhs) <
          1e-11 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("theta heat equation by tau finite differences") {
  const EllipticModulus m = make_modulus(Complex{0, 1}, 64);
  const double h = 1e-4;
  for (int nu = 1; nu <= 4; ++nu) {
    for (const Complex x : {Complex{0.5, 0}, Complex{-1.2, 0.15}}) {
      auto th = [&](double s) {
        return theta(nu, x, make_modulus(m.tau + Complex{0, s}, m.series_terms));
      };
      const Complex dtau = -kI * (th(h) - th(-h)) / (2.0 * h);
      const Complex lhs = (4.0 * kI / kPi) * dtau - theta_dxx(nu, x, m);
      const Complex rhs = nu <= 2 ? theta(nu, x, m) : Complex{0, 0};
      CHECK(std::abs(lhs - rhs) < 1e-6);
    }
  }
}

TEST_CASE("gegenbauer recurrence against the series oracle") {
  CHECK(gegenbauer(0, 0.7, Complex{3.2, 1.0}) == Complex{1.0, 0.0});
  CHECK(std::abs(gegenbauer(1, 0.7, Complex{0.3, 0}) - Complex{0.42, 0}) < 1e-15);
  CHECK(std::abs(gegenbauer(2, 1.5, Complex{0.4, 0}) -
                 gegenbauer_series_oracle(2, 1.5, Complex{0.4, 0})) < 1e-14);

  for (const double g : {0.3, 1.0, 2.5}) {
    for (int n = 0; n <= 12; ++n) {
      for (const Complex z : {Complex{0.3, 0}, Complex{-0.9, 0}, Complex{0.2, 0.4}}) {
        const Complex a = gegenbauer(n, g, z);
        const Complex b = gegenbauer_series_oracle(n, g, z);
        CHECK(std::abs(a - b) < 1e-12 * std::max(1.0, std::abs(a)));
      }
    }
  }
}

TEST_CASE("gegenbauer norm and orthogonality") {
  CHECK(gegenbauer_norm(0, 1.0) == doctest::Approx(0.5).epsilon(1e-14));

  // odd/even orthogonality via Gauss-Jacobi quadrature
  const Complex z23 = quad_jacobi(
      [](double z) { return Complex{gegenbauer(2, 1.0, z) * gegenbauer(3, 1.0, z), 0}; },
      1.0, 24);
  CHECK(std::abs(z23) < 1e-14);

  const Complex h2 = quad_jacobi(
      [](double z) {
        const double c = gegenbauer(2, 1.5, z);
        return Complex{c * c, 0};
      },
      1.5, 24);
  CHECK(std::abs(h2 - gegenbauer_norm(2, 1.5)) < 1e-12);

  CHECK_THROWS_AS(gegenbauer_norm(1, 0.0), std::domain_error);
}

TEST_CASE("pochhammer") {
  CHECK(pochhammer(Complex{2.3, 1.1}, 0) == Complex{1.0, 0.0});
  CHECK(pochhammer(3.0, 2) == doctest::Approx(12.0));
  CHECK(pochhammer(0.5, 3) == doctest::Approx(1.875));
}

TEST_CASE("energy closed form") {
  const EllipticModulus m0 = make_modulus(Complex{0, 12});
  for (int n = 0; n <= 3; ++n) {
    for (const double g : {0.0, 1.0, 2.5}) {
      const double e0 = (n + g) * (n + g) - g * (g - 1.0) / 3.0;
      CHECK(std::abs(energy(n, g, m0) - e0) < 1e-12);
    }
  }
  const EllipticModulus m1 = make_modulus(Complex{0, 0.6});
  CHECK(std::abs(energy(2, 0.0, m1) - 4.0) < 1e-15);  // g = 0: exactly n^2
  const Complex expected = 1.0 + 6.0 * (m1.eta1_over_pi - 1.0 / 12.0);
  CHECK(std::abs(energy(0, 1.0, m1) - expected) < 1e-15);
}

TEST_CASE("energy series against a q^2 fit of the closed form") {
  CHECK(energy_series(2, 1.0, 0)[0] == doctest::Approx(9.0));

  // fit E(q) - E0 = E1 q^2 + E2 q^4 + O(q^6) at two small q
  auto e_at = [](int n, double g, double q) {
    const Complex tau{0, std::log(1.0 / q) / kPi};
    return energy(n, g, make_modulus(tau)).real();
  };
  for (const double g : {1.0, 1.7}) {
    const int n = 1;
    const auto E = energy_series(n, g, 2);
    const double q1 = 1e-3, q2 = 2e-3;
    const double e1 = e_at(n, g, q1) - E[0];
    const double e2 = e_at(n, g, q2) - E[0];
    const double det = q1 * q1 * std::pow(q2, 4) - q2 * q2 * std::pow(q1, 4);
    const double E1 = (e1 * std::pow(q2, 4) - e2 * std::pow(q1, 4)) / det;
    const double E2 = (q1 * q1 * e2 - q2 * q2 * e1) / det;
    CHECK(E1 == doctest::Approx(E[1]).epsilon(1e-6));
    CHECK(E2 == doctest::Approx(E[2]).epsilon(1e-2));
  }
  // g = 1: E1 = -12 sigma(1), E2/E1 = sigma(2)/sigma(1) = 3
  const auto Eg1 = energy_series(0, 1.0, 2);
  CHECK(Eg1[1] == doctest::Approx(-12.0));
  CHECK(Eg1[2] / Eg1[1] == doctest::Approx(3.0));
}

TEST_CASE("addition-type identity for theta1 log-derivatives") {
  const EllipticModulus m = make_modulus(Complex{0, 1.05});
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ur(0.3, 1.2);
  for (int k = 0; k < 6; ++k) {
    const Complex x1{ur(rng), 0.1}, x2{-ur(rng) - 0.4, -0.05};
    const Complex x3 = -x1 - x2;
    auto ratio = [&](Complex x) {
      const auto d = theta1_derivs(x, m);
      return d[1] / d[0];
    };
    const Complex lhs = ratio(x1) + ratio(x2) + ratio(x3);
    const Complex rhs = wp(x1, m) + wp(x2, m) + wp(x3, m);
    CHECK(std::abs(lhs * lhs - rhs) < 1e-10 * std::max(1.0, std::abs(rhs)));
  }
}
