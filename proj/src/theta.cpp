#include "nslame/theta.hpp"

#include <cmath>

namespace nslame {

namespace {

// Series cutoff for the Jacobi sine/cosine series: terms carry q^{n(n+1)} or
// q^{n^2}; a handful of terms reach machine precision even at |q| = 0.9.
int jacobi_series_terms(const EllipticModulus& m, double im_x) {
  const double absq = std::abs(m.q);
  if (absq < 1e-300) return 1;
  // |q|^{n(n+1)} e^{(2n+1)|Im x|} < 1e-18  (crude but monotone)
  for (int n = 1; n < 400; ++n) {
    const double lg = static_cast<double>(n) * (n + 1) * std::log(absq) +
                      (2.0 * n + 1.0) * std::abs(im_x);
    if (lg < std::log(1e-18)) return n + 2;
  }
  return 400;
}

}  // namespace

Complex theta(int nu, Complex x, const EllipticModulus& m) {
  const Complex c2x = std::cos(2.0 * x);
  Complex prod{1.0, 0.0};
  switch (nu) {
    case 1: {
      Complex q2n{1.0, 0.0};
      for (int n = 1; n <= m.series_terms; ++n) {
        q2n *= m.q2;
        prod *= (1.0 - 2.0 * q2n * c2x + q2n * q2n);
      }
      return m.G * std::sin(x) * prod;
    }
    case 2: {
      Complex q2n{1.0, 0.0};
      for (int n = 1; n <= m.series_terms; ++n) {
        q2n *= m.q2;
        prod *= (1.0 + 2.0 * q2n * c2x + q2n * q2n);
      }
      return m.G * std::cos(x) * prod;
    }
    case 3: {
      Complex qodd = m.q;
      for (int n = 1; n <= m.series_terms; ++n) {
        prod *= (1.0 + 2.0 * qodd * c2x + qodd * qodd);
        qodd *= m.q2;
      }
      return m.G * prod;
    }
    case 4: {
      Complex qodd = m.q;
      for (int n = 1; n <= m.series_terms; ++n) {
        prod *= (1.0 - 2.0 * qodd * c2x + qodd * qodd);
        qodd *= m.q2;
      }
      return m.G * prod;
    }
    default:
      throw std::domain_error("theta: nu must be in 1..4");
  }
}

std::array<Complex, 3> theta1_derivs(Complex x, const EllipticModulus& m) {
  const int N = jacobi_series_terms(m, x.imag());
  Complex f{0, 0}, f1{0, 0}, f2{0, 0};
  Complex qpow{1.0, 0.0};  // q^{n(n+1)}
  double sign = 1.0;
  for (int n = 0; n <= N; ++n) {
    if (n > 0) {
      qpow *= ipow(m.q, 2 * n);  // q^{n(n+1)} / q^{(n-1)n} = q^{2n}
      sign = -sign;
    }
    const double k = 2.0 * n + 1.0;
    const Complex s = std::sin(k * x), c = std::cos(k * x);
    f += sign * qpow * s;
    f1 += sign * qpow * k * c;
    f2 -= sign * qpow * k * k * s;
  }
  return {f, f1, f2};
}

Complex theta_dxx(int nu, Complex x, const EllipticModulus& m) {
  if (nu == 1) return theta1_derivs(x, m)[2];
  const int N = jacobi_series_terms(m, x.imag());
  Complex f2{0, 0};
  switch (nu) {
    case 2: {
      Complex qpow{1.0, 0.0};
      for (int n = 0; n <= N; ++n) {
        if (n > 0) qpow *= ipow(m.q, 2 * n);
        const double k = 2.0 * n + 1.0;
        f2 -= qpow * k * k * std::cos(k * x);
      }
      return f2;
    }
    case 3:
    case 4: {
      const double sgn = (nu == 4) ? -1.0 : 1.0;
      double sign = 1.0;
      Complex qpow{1.0, 0.0};  // q^{n^2}
      for (int n = 1; n <= N; ++n) {
        qpow *= ipow(m.q, 2 * n - 1);
        sign *= sgn;
        const double k = 2.0 * n;
        f2 -= 2.0 * sign * qpow * k * k * std::cos(k * x);
      }
      return f2;
    }
    default:
      throw std::domain_error("theta_dxx: nu must be in 1..4");
  }
}

Complex theta1_d3_zero(const EllipticModulus& m) {
  const int N = jacobi_series_terms(m, 0.0);
  Complex f3{0, 0};
  Complex qpow{1.0, 0.0};
  double sign = 1.0;
  for (int n = 0; n <= N; ++n) {
    if (n > 0) {
      qpow *= ipow(m.q, 2 * n);
      sign = -sign;
    }
    const double k = 2.0 * n + 1.0;
    f3 -= sign * qpow * k * k * k;
  }
  return f3;
}

Complex theta_big1(Complex xi, const EllipticModulus& m) {
  Complex prod = 1.0 - xi;
  const Complex xinv = 1.0 / xi;
  Complex q2l{1.0, 0.0};
  for (int l = 1; l <= m.series_terms; ++l) {
    q2l *= m.q2;
    prod *= (1.0 - q2l * xi) * (1.0 - q2l * xinv);
  }
  return prod;
}

Complex theta_big(Complex z, Complex xi, const EllipticModulus& m) {
  Complex prod = 1.0 - 2.0 * z * xi + xi * xi;
  const Complex xinv = 1.0 / xi;
  Complex q2l{1.0, 0.0};
  for (int l = 1; l <= m.series_terms; ++l) {
    q2l *= m.q2;
    prod *= (1.0 - 2.0 * q2l * z * xi + q2l * q2l * xi * xi) *
            (1.0 - 2.0 * q2l * z * xinv + q2l * q2l * xinv * xinv);
  }
  return prod;
}

Complex wp(Complex x, const EllipticModulus& m, WpMethod method) {
  if (method == WpMethod::theta) {
    const auto d = theta1_derivs(x, m);
    if (std::abs(d[0]) < 1e-8) {
      throw PoleError("wp: x within 1e-8 of a lattice point");
    }
    const Complex r = d[1] / d[0];
    return r * r - d[2] / d[0] - 4.0 * m.eta1_over_pi;
  }
  const Complex s = std::sin(x);
  if (std::abs(s) < 1e-8) {
    throw PoleError("wp: x within 1e-8 of a lattice point");
  }
  Complex sum{0, 0};
  Complex q2k{1.0, 0.0};
  for (int k = 1; k <= m.series_terms; ++k) {
    q2k *= m.q2;
    sum += static_cast<double>(k) * q2k / (1.0 - q2k) * std::cos(2.0 * k * x);
  }
  return 1.0 / (s * s) - 4.0 * m.eta1_over_pi - 8.0 * sum;
}

}  // namespace nslame
