#include "nslame/modulus.hpp"

#include <algorithm>
#include <cmath>

namespace nslame {

int series_terms_for(Complex tau, double target) {
  const double absq = std::exp(-kPi * tau.imag());
  if (absq <= 0.0) return 8;
  const int n = static_cast<int>(std::ceil(std::log(target) / (2.0 * std::log(absq))));
  return std::clamp(n, 8, 4096);
}

EllipticModulus make_modulus(Complex tau, int series_terms) {
  if (!(tau.imag() > 0.0)) {
    throw std::domain_error("make_modulus: Im(tau) must be positive");
  }
  if (series_terms < 1) {
    throw std::domain_error("make_modulus: series_terms must be >= 1");
  }
  EllipticModulus m;
  m.tau = tau;
  m.q = std::exp(kI * kPi * tau);
  m.q2 = m.q * m.q;
  m.series_terms = series_terms;
  if (!(std::abs(m.q) < 1.0)) {
    throw std::domain_error("make_modulus: |q| >= 1");
  }

  Complex G{1.0, 0.0};
  Complex eta_sum{0.0, 0.0};
  Complex q2k{1.0, 0.0};
  for (int k = 1; k <= series_terms; ++k) {
    q2k *= m.q2;
    G *= (1.0 - q2k);
    const Complex d = 1.0 - q2k;
    eta_sum += q2k / (d * d);
  }
  m.G = G;
  m.eta1_over_pi = 1.0 / 12.0 - 2.0 * eta_sum;
  return m;
}

EllipticModulus make_modulus(Complex tau) {
  return make_modulus(tau, series_terms_for(tau));
}

}  // namespace nslame
