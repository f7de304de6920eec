#ifndef NSLAME_MODULUS_HPP
#define NSLAME_MODULUS_HPP

#include "nslame/types.hpp"

namespace nslame {

// Modular parameter tau (upper half plane) with the derived constants used
// everywhere else:
//   q          = exp(i pi tau)
//   G          = prod_{k>=1} (1 - q^{2k})
//   eta1/pi    = 1/12 - 2 sum_{k>=1} q^{2k} / (1 - q^{2k})^2
// All infinite products/sums are truncated after series_terms factors; the
// tail of every series here is O(|q|^{2*series_terms}).
struct EllipticModulus {
  Complex tau;
  Complex q;
  Complex q2;  // q^2, the actual expansion variable
  Complex G;
  Complex eta1_over_pi;
  int series_terms = 0;

  // q^p for real p, continuous in tau (defined through tau, not via log q).
  Complex q_pow(double p) const { return std::exp(kI * kPi * tau * p); }
};

// Truncation count satisfying |q|^{2 n} < target for the given tau.
int series_terms_for(Complex tau, double target = 1e-15);

// Builds the modulus; throws std::domain_error for Im(tau) <= 0 or if the
// computed |q| >= 1.
EllipticModulus make_modulus(Complex tau, int series_terms);

// Convenience: truncation chosen from the default 1e-15 target.
EllipticModulus make_modulus(Complex tau);

}  // namespace nslame

#endif
