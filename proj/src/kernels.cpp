#include "nslame/kernels.hpp"

#include <cmath>

#include "nslame/theta.hpp"

namespace nslame {

namespace {

Complex adjusted_log(Complex w, double ref_im, bool use_ref) {
  Complex L = std::log(w);
  if (use_ref) {
    const double k = std::round((ref_im - L.imag()) / (2.0 * kPi));
    L += Complex{0.0, 2.0 * kPi * k};
  }
  return L;
}

}  // namespace

Complex kernel_k(int mu, const KernelPoint& p, const KernelLogs* ref, KernelLogs* out) {
  const double g = p.params.g;
  const double kp = p.params.kappa;
  const EllipticModulus& m = p.modulus;

  const Complex t1x = theta(1, p.x, m);
  const Complex t1y = theta(1, p.y, m);
  const Complex du = theta(mu, 0.5 * (p.x + p.y), m);
  const Complex dv = theta(mu, 0.5 * (p.x - p.y), m);
  if (std::abs(du) < 1e-8 || std::abs(dv) < 1e-8) {
    throw PoleError("kernel_k: denominator theta factor below 1e-8");
  }

  const bool use_ref = ref && ref->valid;
  const Complex Lx = adjusted_log(t1x * t1x, use_ref ? ref->im_x2 : 0.0, use_ref);
  const Complex Ly = adjusted_log(t1y * t1y, use_ref ? ref->im_y2 : 0.0, use_ref);
  const Complex Ld = adjusted_log(du * dv, use_ref ? ref->im_den : 0.0, use_ref);
  if (out) {
    out->im_x2 = Lx.imag();
    out->im_y2 = Ly.imag();
    out->im_den = Ld.imag();
    out->valid = true;
  }
  return std::exp(0.5 * (g + kp) * Lx + 0.5 * g * Ly - (2.0 * g + kp) * Ld);
}

Complex kernel_k_normalized(const KernelPoint& p) {
  const double e = 2.0 * p.params.g + p.params.kappa;
  const Complex pref = std::exp(3.0 * e * std::log(p.modulus.G));
  return pref * kernel_k(1, p);
}

Complex kernel_constant(int mu, double g, double kappa, const EllipticModulus& m) {
  const Complex eta = m.eta1_over_pi;
  Complex c = 4.0 * kappa * (1.0 - 2.0 * g - kappa) * eta +
              6.0 * kappa * (2.0 * g + kappa) * (eta - 1.0 / 12.0);
  if (mu == 3 || mu == 4) c += kappa * (2.0 * g + kappa);
  return c;
}

Complex lame_apply(const std::function<Complex(Complex)>& f, Complex x, double g,
                   const EllipticModulus& m, double h) {
  const Complex fxx = (-f(x + 2.0 * h) + 16.0 * f(x + h) - 30.0 * f(x) +
                       16.0 * f(x - h) - f(x - 2.0 * h)) /
                      (12.0 * h * h);
  Complex pot{0.0, 0.0};
  if (g != 0.0 && g != 1.0) pot = g * (g - 1.0) * wp(x, m) * f(x);
  return -fxx + pot;
}

double kernel_identity_residual(int mu, const KernelPoint& p, double h_x, double h_tau) {
  const double g = p.params.g;
  const double kp = p.params.kappa;

  KernelLogs anchor;
  const Complex k0 = kernel_k(mu, p, nullptr, &anchor);

  auto k_at = [&](Complex x, Complex y, const EllipticModulus& m) {
    KernelPoint q{x, y, p.params, m};
    return kernel_k(mu, q, &anchor, nullptr);
  };

  // H(x; g+kappa) k  (the wp term evaluated directly, f'' by stencil)
  auto fx = [&](Complex x) { return k_at(x, p.y, p.modulus); };
  const Complex kxx = (-fx(p.x + 2.0 * h_x) + 16.0 * fx(p.x + h_x) - 30.0 * k0 +
                       16.0 * fx(p.x - h_x) - fx(p.x - 2.0 * h_x)) /
                      (12.0 * h_x * h_x);
  const double gx = g + kp;
  const double cx = gx * (gx - 1.0);
  const Complex Hx = -kxx + (cx != 0.0 ? cx * wp(p.x, p.modulus) * k0 : Complex{0, 0});

  auto fy = [&](Complex y) { return k_at(p.x, y, p.modulus); };
  const Complex kyy = (-fy(p.y + 2.0 * h_x) + 16.0 * fy(p.y + h_x) - 30.0 * k0 +
                       16.0 * fy(p.y - h_x) - fy(p.y - 2.0 * h_x)) /
                      (12.0 * h_x * h_x);
  const double cy = g * (g - 1.0);
  const Complex Hy = -kyy + (cy != 0.0 ? cy * wp(p.y, p.modulus) * k0 : Complex{0, 0});

  // d/dtau along the imaginary axis: tau(s) = tau + i s, d/dtau = -i d/ds.
  auto k_tau = [&](double s) {
    const EllipticModulus ms = make_modulus(p.modulus.tau + kI * s, p.modulus.series_terms);
    return k_at(p.x, p.y, ms);
  };
  const Complex dks = (-k_tau(2.0 * h_tau) + 8.0 * k_tau(h_tau) - 8.0 * k_tau(-h_tau) +
                       k_tau(-2.0 * h_tau)) /
                      (12.0 * h_tau);
  const Complex dktau = -kI * dks;

  const Complex C = kernel_constant(mu, g, kp, p.modulus);
  const Complex resid = (2.0 * kI / kPi) * kp * dktau + Hx - Hy - C * k0;
  return std::abs(resid) / std::abs(k0);
}

Complex kernel_k1_continued(const KernelPoint& p, int steps) {
  const Complex shift = kPi * p.modulus.tau;
  KernelLogs logs;
  Complex val = kernel_k(1, p, nullptr, &logs);
  for (int j = 1; j <= steps; ++j) {
    KernelPoint q = p;
    q.y = p.y + shift * (static_cast<double>(j) / steps);
    KernelLogs next;
    val = kernel_k(1, q, &logs, &next);
    logs = next;
  }
  return val;
}

}  // namespace nslame
