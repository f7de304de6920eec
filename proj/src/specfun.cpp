#include "nslame/specfun.hpp"

#include <cmath>

namespace nslame {

namespace {

template <typename Scalar>
Scalar gegenbauer_rec(int n, double g, Scalar z) {
  if (n < 0) throw std::domain_error("gegenbauer: n must be >= 0");
  Scalar c0{1.0};
  if (n == 0) return c0;
  Scalar c1 = 2.0 * g * z;
  for (int k = 1; k < n; ++k) {
    const Scalar c2 = (2.0 * (k + g) * z * c1 - (k + 2.0 * g - 1.0) * c0) / (k + 1.0);
    c0 = c1;
    c1 = c2;
  }
  return c1;
}

template <typename Scalar>
Scalar chebyshev_rec(int n, Scalar z, Scalar t0, Scalar t1) {
  if (n == 0) return t0;
  for (int k = 1; k < n; ++k) {
    const Scalar t2 = 2.0 * z * t1 - t0;
    t0 = t1;
    t1 = t2;
  }
  return t1;
}

}  // namespace

Complex gegenbauer(int n, double g, Complex z) { return gegenbauer_rec(n, g, z); }
double gegenbauer(int n, double g, double z) { return gegenbauer_rec(n, g, z); }

Complex chebyshev_t(int n, Complex z) { return chebyshev_rec(n, z, Complex{1.0}, z); }
Complex chebyshev_u(int n, Complex z) { return chebyshev_rec(n, z, Complex{1.0}, 2.0 * z); }

double gegenbauer_norm(int n, double g) {
  if (!(g > 0.0)) throw std::domain_error("gegenbauer_norm: g must be > 0");
  const double lg = (1.0 - 2.0 * g) * std::log(2.0) + std::lgamma(n + 2.0 * g) -
                    std::lgamma(n + 1.0) - std::log(n + g) - 2.0 * std::lgamma(g);
  return std::exp(lg);
}

Complex pochhammer(Complex x, int n) {
  if (n < 0) throw std::domain_error("pochhammer: n must be >= 0");
  Complex r{1.0, 0.0};
  for (int k = 0; k < n; ++k) r *= (x + static_cast<double>(k));
  return r;
}

double pochhammer(double x, int n) {
  if (n < 0) throw std::domain_error("pochhammer: n must be >= 0");
  double r = 1.0;
  for (int k = 0; k < n; ++k) r *= (x + k);
  return r;
}

long long divisor_sigma(int ell) {
  long long s = 0;
  for (int d = 1; d <= ell; ++d) {
    if (ell % d == 0) s += d;
  }
  return s;
}

Complex energy(int n, double g, const EllipticModulus& m) {
  const double ng = n + g;
  return ng * ng - 4.0 * g * (g - 1.0) * m.eta1_over_pi +
         6.0 * g * g * (m.eta1_over_pi - 1.0 / 12.0);
}

std::vector<double> energy_series(int n, double g, int L) {
  if (L < 0) throw std::domain_error("energy_series: L must be >= 0");
  std::vector<double> E(L + 1);
  const double ng = n + g;
  E[0] = ng * ng - g * (g - 1.0) / 3.0;
  for (int ell = 1; ell <= L; ++ell) {
    E[ell] = -4.0 * g * (g + 2.0) * static_cast<double>(divisor_sigma(ell));
  }
  return E;
}

}  // namespace nslame
