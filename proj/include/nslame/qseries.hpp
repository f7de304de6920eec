#ifndef NSLAME_QSERIES_HPP
#define NSLAME_QSERIES_HPP

#include <vector>

#include "nslame/poly.hpp"

namespace nslame {

// Truncated series sum_{l=0}^{L} P_l(z) q^{2l} with polynomial coefficients.
// Products truncate at the smaller operand order.
class QSeriesPoly {
 public:
  QSeriesPoly() = default;
  explicit QSeriesPoly(int L) : coeffs_(L + 1) {}
  QSeriesPoly(int L, Poly p0) : coeffs_(L + 1) { coeffs_[0] = std::move(p0); }

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  Poly& operator[](int l) { return coeffs_[l]; }
  const Poly& operator[](int l) const { return coeffs_[l]; }

  QSeriesPoly truncate(int L) const;

  friend QSeriesPoly operator+(const QSeriesPoly& a, const QSeriesPoly& b);
  friend QSeriesPoly operator-(const QSeriesPoly& a, const QSeriesPoly& b);
  friend QSeriesPoly operator*(const QSeriesPoly& a, const QSeriesPoly& b);
  QSeriesPoly& operator*=(double s);

  // Evaluate at (z complex, q2 = q^2 numeric).
  Complex eval(Complex z, Complex q2) const;

 private:
  std::vector<Poly> coeffs_{Poly()};
};

// log(1 + A) for a series A with A^{(0)} = 0 (formal, exact to order L).
QSeriesPoly qseries_log1p(const QSeriesPoly& a);

// exp(B) for a series B with B^{(0)} = 0.
QSeriesPoly qseries_exp(const QSeriesPoly& b);

// The tilde/plain conversion factor to order L:
//   F_g(z, q) = G^g prod_k (1 - 2 q^{2k} T_2(z) + q^{4k})^g
// computed as exp(g log(...)); exponent g need not be an integer.
QSeriesPoly conversion_factor(double g, int L);

}  // namespace nslame

#endif
