#include "nslame/qseries.hpp"

#include <algorithm>

namespace nslame {

QSeriesPoly QSeriesPoly::truncate(int L) const {
  QSeriesPoly r(std::min(L, order()));
  for (int l = 0; l <= r.order(); ++l) r[l] = coeffs_[l];
  return r;
}

QSeriesPoly operator+(const QSeriesPoly& a, const QSeriesPoly& b) {
  const int L = std::min(a.order(), b.order());
  QSeriesPoly r(L);
  for (int l = 0; l <= L; ++l) r[l] = a[l] + b[l];
  return r;
}

QSeriesPoly operator-(const QSeriesPoly& a, const QSeriesPoly& b) {
  const int L = std::min(a.order(), b.order());
  QSeriesPoly r(L);
  for (int l = 0; l <= L; ++l) r[l] = a[l] - b[l];
  return r;
}

QSeriesPoly operator*(const QSeriesPoly& a, const QSeriesPoly& b) {
  const int L = std::min(a.order(), b.order());
  QSeriesPoly r(L);
  for (int l = 0; l <= L; ++l) {
    Poly acc;
    for (int j = 0; j <= l; ++j) acc += a[j] * b[l - j];
    r[l] = acc;
  }
  return r;
}

QSeriesPoly& QSeriesPoly::operator*=(double s) {
  for (auto& p : coeffs_) p *= s;
  return *this;
}

Complex QSeriesPoly::eval(Complex z, Complex q2) const {
  Complex r{0, 0};
  Complex q2l{1.0, 0.0};
  for (int l = 0; l <= order(); ++l) {
    r += coeffs_[l].eval(z) * q2l;
    q2l *= q2;
  }
  return r;
}

QSeriesPoly qseries_log1p(const QSeriesPoly& a) {
  const int L = a.order();
  QSeriesPoly r(L);
  QSeriesPoly apow = a;  // a^j
  double sign = 1.0;
  for (int j = 1; j <= L; ++j) {
    QSeriesPoly term = apow;
    term *= sign / static_cast<double>(j);
    r = r + term;
    if (j < L) apow = apow * a;
    sign = -sign;
  }
  return r;
}

QSeriesPoly qseries_exp(const QSeriesPoly& b) {
  const int L = b.order();
  QSeriesPoly r(L, Poly::constant(1.0));
  QSeriesPoly bpow(L, Poly::constant(1.0));
  double fact = 1.0;
  for (int j = 1; j <= L; ++j) {
    bpow = bpow * b;
    fact *= j;
    QSeriesPoly term = bpow;
    term *= 1.0 / fact;
    r = r + term;
  }
  return r;
}

QSeriesPoly conversion_factor(double g, int L) {
  // log G = sum_k log(1 - q^{2k}) = -sum_l (sigma(l)/l) q^{2l}
  QSeriesPoly logf(L);
  for (int l = 1; l <= L; ++l) {
    double c = 0.0;
    for (int d = 1; d <= l; ++d) {
      if (l % d == 0) c += static_cast<double>(d) / l;
    }
    logf[l] = Poly::constant(-c);
  }
  // + sum_k log(1 - 2 q^{2k} T2(z) + q^{4k}); only k <= L contributes
  const Poly t2 = chebyshev_t_poly(2);
  for (int k = 1; k <= L; ++k) {
    QSeriesPoly a(L);
    if (k <= L) a[k] = (-2.0) * t2;
    if (2 * k <= L) a[2 * k] += Poly::constant(1.0);
    logf = logf + qseries_log1p(a);
  }
  logf *= g;
  return qseries_exp(logf);
}

}  // namespace nslame
