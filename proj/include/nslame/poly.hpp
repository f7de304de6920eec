#ifndef NSLAME_POLY_HPP
#define NSLAME_POLY_HPP

#include <Eigen/Core>

#include "nslame/types.hpp"

namespace nslame {

// Dense real polynomial in the monomial basis; coeffs[k] multiplies z^k.
// Degrees stay small (<= degree_cap) so plain double convolution is exact
// enough for every use here.
class Poly {
 public:
  static constexpr int degree_cap = 64;

  Poly() : c_(Eigen::VectorXd::Zero(1)) {}
  explicit Poly(Eigen::VectorXd c) : c_(std::move(c)) {
    if (c_.size() == 0) c_ = Eigen::VectorXd::Zero(1);
    check_cap();
  }
  static Poly constant(double v) {
    Eigen::VectorXd c(1);
    c << v;
    return Poly(c);
  }
  static Poly monomial(int k, double v = 1.0);

  int degree() const;  // -1 for the zero polynomial
  const Eigen::VectorXd& coeffs() const { return c_; }
  double coeff(int k) const { return k < c_.size() ? c_[k] : 0.0; }

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(double s);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, double s) { return a *= s; }
  friend Poly operator*(double s, Poly a) { return a *= s; }
  friend Poly operator*(const Poly& a, const Poly& b);

  bool is_zero(double tol = 0.0) const;

  template <typename Scalar>
  Scalar eval(Scalar z) const {  // Horner
    Scalar r{0.0};
    for (Eigen::Index k = c_.size() - 1; k >= 0; --k) r = r * z + c_[k];
    return r;
  }

 private:
  void check_cap() const {
    if (c_.size() > degree_cap + 1) {
      throw std::domain_error("Poly: degree cap exceeded");
    }
  }
  Eigen::VectorXd c_;
};

// Chebyshev T_k and Gegenbauer C_k^{(g)} as monomial-basis polynomials.
Poly chebyshev_t_poly(int k);
Poly gegenbauer_poly(int k, double g);

// Expands p in the Gegenbauer basis {C_0^{(g)}, ..., C_deg^{(g)}} by
// leading-coefficient elimination (exact for polynomial input; g > 0,
// or any g with nonvanishing leading coefficients 2^m (g)_m / m!).
Eigen::VectorXd gegenbauer_expand(const Poly& p, double g);

}  // namespace nslame

#endif
