#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nslame/series.hpp"
#include "nslame/specfun.hpp"
#include "nslame/theta.hpp"

using namespace nslame;

TEST_CASE("potential coefficient polynomials") {
  for (const double g : {0.0, 1.0}) {
    for (int l = 1; l <= 4; ++l) CHECK(potential_coeff(l, g).is_zero());
  }
  // l=1, g=2: 16 (1 - T2) = 32 (1 - z^2)
  const Poly w1 = potential_coeff(1, 2.0);
  CHECK(w1.coeff(0) == doctest::Approx(32.0));
  CHECK(w1.coeff(1) == doctest::Approx(0.0));
  CHECK(w1.coeff(2) == doctest::Approx(-32.0));
  for (int l = 1; l <= 5; ++l) {
    CHECK(potential_coeff(l, 2.0).degree() == 2 * l);
    CHECK(potential_coeff(l, 1.7).degree() == 2 * l);
  }
}

TEST_CASE("potential coefficients match the numeric wp expansion") {
  // g(g-1)(wp - 1/sin^2) + g(g-1)/3 = sum_l W_l(cos x) q^{2l} + O(q^{2(l+1)})
  const double g = 2.0;
  const double q = 1e-3;
  const EllipticModulus m = make_modulus(Complex{0, std::log(1.0 / q) / kPi});
  for (const double x : {0.4, 1.0, 2.2}) {
    const Complex s = std::sin(Complex{x, 0});
    const Complex lhs =
        g * (g - 1.0) * (wp(Complex{x, 0}, m) - 1.0 / (s * s)) + g * (g - 1.0) / 3.0;
    const double w1 = potential_coeff(1, g).eval(std::cos(x));
    CHECK(std::abs(lhs - w1 * q * q) < 200.0 * std::pow(q, 4));
  }
}

TEST_CASE("resonance detector") {
  CHECK(is_resonant(1, 3, 0.0, 2.0, 1));   // (2)(4) - 8 = 0
  CHECK(!is_resonant(0, 2, 1.0, std::sqrt(2.0), 1));
  CHECK(!is_resonant(0, 2, 1.0, 1.0, 1));  // (2)(4) - 4 = 4
  CHECK(is_resonant(0, 2, 2.0, 1.0, 3));   // (2)(6) - 12 = 0
  CHECK(is_resonant(0, 2, 1.0, 1.0, 2));   // (2)(4) - 8 = 0
}

TEST_CASE("solve_series trivial truncation") {
  const SeriesSolution s = solve_series({0.7, 1.3, 2}, 0, SolveMode::nonstationary);
  CHECK(s.d.size() == 1);
  CHECK(s.coeff(0, 2) == 1.0);
  CHECK(s.E.size() == 1);
  CHECK(s.E[0] == doctest::Approx((2 + 1.3) * (2 + 1.3) - 1.3 * 0.3 / 3.0));
}

TEST_CASE("g = 0 and g = 1 reproduce the exact heat solutions") {
  // g = 0: psi = cos(nx) exactly, no corrections at all
  const SeriesSolution s0 = solve_series({1.0, 0.0, 3}, 3, SolveMode::nonstationary);
  CHECK(s0.d.size() == 1);
  for (int l = 1; l <= 3; ++l) CHECK(s0.E[l] == 0.0);

  // g = 1: only d(l, n) survives and matches the G^{-3/kappa} expansion
  for (const double kp : {1.0, 2.0, 0.7}) {
    // integer couplings hit harmless zero-right-hand-side resonances
    // (e.g. kappa=2 at l=2, m=4); the zero policy pins those entries
    const SeriesSolution s1 =
        solve_series({kp, 1.0, 2}, 2, SolveMode::nonstationary, ResonancePolicy::zero);
    for (const auto& [key, v] : s1.d) {
      if (key.first > 0) CHECK(key.second == 2);  // m = n only
    }
    CHECK(s1.coeff(1, 2) == doctest::Approx(3.0 / kp).epsilon(1e-12));
    CHECK(s1.coeff(2, 2) ==
          doctest::Approx(4.5 / (kp * kp) + 4.5 / kp).epsilon(1e-12));
  }
}

TEST_CASE("solve_series agrees with brute_oracle") {
  // (2, 1.5, 0.7, 3) to 1e-11, plus a sweep
  for (const auto& [n, g, kp] : std::vector<std::tuple<int, double, double>>{
           {2, 1.5, 0.7}, {1, 2.0, 1.0}, {3, 1.5, std::sqrt(2.0)}, {0, 2.0, 0.7}}) {
    const ModelParams p{kp, g, n};
    const int L = 3;
    const SeriesSolution a = solve_series(p, L, SolveMode::nonstationary);
    const SeriesSolution b = brute_oracle(p, L, n + 2 * L + 8, SolveMode::nonstationary);
    for (int l = 0; l <= L; ++l) {
      for (int m = n % 2; m <= n + 2 * L + 6; m += 2) {
        CHECK(std::abs(a.coeff(l, m) - b.coeff(l, m)) < 1e-11);
      }
    }
  }
}

TEST_CASE("brute_oracle is insensitive to the basis size") {
  const ModelParams p{0.7, 1.5, 2};
  const SeriesSolution a = brute_oracle(p, 3, 2 + 6 + 5, SolveMode::nonstationary);
  const SeriesSolution b = brute_oracle(p, 3, 2 + 6 + 15, SolveMode::nonstationary);
  for (const auto& [key, v] : a.d) {
    CHECK(std::abs(v - b.coeff(key.first, key.second)) < 1e-12);
  }
}

TEST_CASE("lame mode energies match the brute oracle") {
  for (const auto& [n, g] :
       std::vector<std::pair<int, double>>{{0, 2.0}, {1, 2.0}, {2, 1.5}}) {
    const ModelParams p{0.0, g, n};
    const SeriesSolution a = solve_series(p, 2, SolveMode::lame);
    const SeriesSolution b = brute_oracle(p, 2, n + 4 + 8, SolveMode::lame);
    CHECK(std::abs(a.E[1] - b.E[1]) < 1e-12 * std::max(1.0, std::abs(a.E[1])));
    CHECK(std::abs(a.E[2] - b.E[2]) < 1e-12 * std::max(1.0, std::abs(a.E[2])));
    // perturbative energies are real by construction; coefficients agree too
    for (const auto& [key, v] : b.d) {
      CHECK(std::abs(v - a.coeff(key.first, key.second)) < 1e-11);
    }
  }
}

TEST_CASE("mode validation and resonance errors") {
  CHECK_THROWS_AS(solve_series({0.0, 1.5, 1}, 1, SolveMode::nonstationary),
                  std::invalid_argument);
  CHECK_THROWS_AS(solve_series({0.7, 1.5, 1}, 1, SolveMode::lame),
                  std::invalid_argument);
  // (n, g, kappa) = (0, 1, 1) resonates at l=2, m=2
  CHECK_THROWS_AS(solve_series({1.0, 1.0, 0}, 2, SolveMode::nonstationary),
                  ResonanceError);
  // with the zero policy the flagged entry is pinned and recorded
  const SeriesSolution s =
      solve_series({1.0, 1.0, 0}, 2, SolveMode::nonstationary, ResonancePolicy::zero);
  CHECK(s.resonances.size() == 1);
  CHECK(s.resonances[0] == std::pair<int, int>{2, 2});
  CHECK(s.coeff(2, 2) == 0.0);
}

TEST_CASE("structural invariants of solve_series output") {
  const SeriesSolution s = solve_series({0.7, 1.5, 2}, 3, SolveMode::nonstationary);
  CHECK(s.coeff(0, 2) == 1.0);
  for (const auto& [key, v] : s.d) {
    const auto [l, m] = key;
    CHECK(std::abs(m - 2) <= 2 * l);  // banded
    CHECK((m - 2) % 2 == 0);          // parity
    CHECK(m >= 0);
  }
}

TEST_CASE("tilde/plain conversion") {
  const ModelParams p{0.7, 1.5, 1};
  const SeriesSolution t = solve_series(p, 2, SolveMode::nonstationary);

  // L = 0 conversion is the identity
  const SeriesSolution t0 = solve_series(p, 0, SolveMode::nonstationary);
  const SeriesSolution p0 = tilde_to_plain(t0, ConvertDirection::to_plain);
  CHECK(p0.coeff(0, 1) == doctest::Approx(1.0));

  // round trip restores the coefficients
  const SeriesSolution pl = tilde_to_plain(t, ConvertDirection::to_plain);
  const SeriesSolution back = tilde_to_plain(pl, ConvertDirection::to_tilde);
  for (const auto& [key, v] : t.d) {
    CHECK(std::abs(back.coeff(key.first, key.second) - v) < 1e-14);
  }

  // plain-basis degree bound: deg P_l <= n + 2l
  const SeriesSolution pg1 =
      tilde_to_plain(solve_series({1.0, 1.0, 1}, 1, SolveMode::nonstationary),
                     ConvertDirection::to_plain);
  CHECK(pg1.poly_at(1).degree() <= 3);
  const SeriesSolution pg2 =
      tilde_to_plain(solve_series({0.7, 2.0, 2}, 3, SolveMode::nonstationary),
                     ConvertDirection::to_plain);
  for (int l = 0; l <= 3; ++l) CHECK(pg2.poly_at(l).degree() <= 2 + 2 * l);

  CHECK_THROWS_AS(tilde_to_plain(pl, ConvertDirection::to_plain), std::invalid_argument);
}

TEST_CASE("eval_series basics") {
  // q = 0 reduces to the Poschl-Teller eigenfunction
  const ModelParams p{1.0, 2.0, 2};
  SeriesSolution s = solve_series(p, 2, SolveMode::nonstationary);
  s = tilde_to_plain(s, ConvertDirection::to_plain);
  const EllipticModulus m0 = make_modulus(Complex{0, 14});
  for (const double x : {0.5, 1.3, 2.8}) {
    const double s2 = std::sin(x) * std::sin(x);
    const double ref = s2 * gegenbauer(2, 2.0, std::cos(x));
    CHECK(std::abs(eval_series(s, Complex{x, 0}, m0) - ref) < 1e-12);
  }
  // even in x and 2pi-periodic
  const EllipticModulus m = make_modulus(Complex{0, 1.1});
  const Complex a = eval_series(s, Complex{0.83, 0}, m);
  CHECK(std::abs(eval_series(s, Complex{-0.83, 0}, m) - a) < 1e-13);
  CHECK(std::abs(eval_series(s, Complex{0.83 + 2 * kPi, 0}, m) - a) < 1e-12);
}

TEST_CASE("eval_series reproduces theta-function solutions at g = 1") {
  // psi_{n,1} = sin((n+1)x)/G^{3/kappa}; its tilde series comes from
  // G^{-3/kappa}, so eval_series must match the closed form
  const double kp = 1.0;
  const int n = 1;
  SeriesSolution s = solve_series({kp, 1.0, n}, 6, SolveMode::nonstationary,
                                  ResonancePolicy::zero);
  s = tilde_to_plain(s, ConvertDirection::to_plain);
  const EllipticModulus m = make_modulus(Complex{0, 1.0});
  for (const double x : {0.7, 1.9}) {
    const Complex ref = std::sin((n + 1.0) * x) / std::pow(m.G, 3.0 / kp);
    const Complex got = eval_series(s, Complex{x, 0}, m);
    CHECK(std::abs(got - ref) < 1e-9 * std::abs(ref));
  }
}
