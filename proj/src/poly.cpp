#include "nslame/poly.hpp"

#include "nslame/specfun.hpp"

namespace nslame {

Poly Poly::monomial(int k, double v) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(k + 1);
  c[k] = v;
  return Poly(c);
}

int Poly::degree() const {
  for (Eigen::Index k = c_.size() - 1; k >= 0; --k) {
    if (c_[k] != 0.0) return static_cast<int>(k);
  }
  return -1;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(o.c_.size());
    c.head(c_.size()) = c_;
    c_ = std::move(c);
  }
  c_.head(o.c_.size()) += o.c_;
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) {
    Eigen::VectorXd c = Eigen::VectorXd::Zero(o.c_.size());
    c.head(c_.size()) = c_;
    c_ = std::move(c);
  }
  c_.head(o.c_.size()) -= o.c_;
  return *this;
}

Poly& Poly::operator*=(double s) {
  c_ *= s;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(a.c_.size() + b.c_.size() - 1);
  for (Eigen::Index i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0.0) continue;
    c.segment(i, b.c_.size()) += a.c_[i] * b.c_;
  }
  return Poly(c);
}

bool Poly::is_zero(double tol) const {
  return c_.cwiseAbs().maxCoeff() <= tol;
}

Poly chebyshev_t_poly(int k) {
  Poly t0 = Poly::constant(1.0);
  if (k == 0) return t0;
  Poly t1 = Poly::monomial(1);
  const Poly two_z = Poly::monomial(1, 2.0);
  for (int j = 1; j < k; ++j) {
    Poly t2 = two_z * t1 - t0;
    t0 = t1;
    t1 = t2;
  }
  return t1;
}

Poly gegenbauer_poly(int k, double g) {
  Poly c0 = Poly::constant(1.0);
  if (k == 0) return c0;
  Poly c1 = Poly::monomial(1, 2.0 * g);
  for (int j = 1; j < k; ++j) {
    Poly c2 = (Poly::monomial(1, 2.0 * (j + g)) * c1 - (j + 2.0 * g - 1.0) * c0) *
              (1.0 / (j + 1.0));
    c0 = c1;
    c1 = c2;
  }
  return c1;
}

Eigen::VectorXd gegenbauer_expand(const Poly& p, double g) {
  const int deg = std::max(p.degree(), 0);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(deg + 1);
  Poly rem = p;
  for (int m = deg; m >= 0; --m) {
    const double lead = std::pow(2.0, m) * pochhammer(g, m) / std::tgamma(m + 1.0);
    if (lead == 0.0) {
      throw std::domain_error("gegenbauer_expand: vanishing leading coefficient");
    }
    const double cm = rem.coeff(m) / lead;
    out[m] = cm;
    if (cm != 0.0) rem -= cm * gegenbauer_poly(m, g);
  }
  return out;
}

}  // namespace nslame
