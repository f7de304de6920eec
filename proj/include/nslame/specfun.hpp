#ifndef NSLAME_SPECFUN_HPP
#define NSLAME_SPECFUN_HPP

#include <vector>

#include "nslame/modulus.hpp"
#include "nslame/types.hpp"

namespace nslame {

// Gegenbauer polynomial C_n^{(g)}(z) by the upward three-term recurrence
// C_0 = 1, C_1 = 2 g z, (n+1) C_{n+1} = 2 (n+g) z C_n - (n+2g-1) C_{n-1}.
Complex gegenbauer(int n, double g, Complex z);
double gegenbauer(int n, double g, double z);

// Chebyshev T_n and U_n at a complex point.
Complex chebyshev_t(int n, Complex z);
Complex chebyshev_u(int n, Complex z);

// Orthogonality norm h_n = 2^{1-2g} Gamma(n+2g) / (n! (n+g) Gamma(g)^2)
// for the weight (1-z^2)^{g-1/2} pairing divided by pi.  Requires g > 0.
double gegenbauer_norm(int n, double g);

// Rising factorial (x)_n = x (x+1) ... (x+n-1), (x)_0 = 1.
Complex pochhammer(Complex x, int n);
double pochhammer(double x, int n);

// Divisor sum sigma(l) = sum_{d | l} d.
long long divisor_sigma(int ell);

// E_{n,g} = (n+g)^2 - 4 g (g-1) eta1/pi + 6 g^2 (eta1/pi - 1/12).
Complex energy(int n, double g, const EllipticModulus& m);

// Coefficients E^{(l)} of q^{2l} in E_{n,g}:
//   E^{(0)} = (n+g)^2 - g(g-1)/3,   E^{(l)} = -4 g (g+2) sigma(l)  (l >= 1).
std::vector<double> energy_series(int n, double g, int L);

}  // namespace nslame

#endif
