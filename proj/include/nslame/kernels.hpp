#ifndef NSLAME_KERNELS_HPP
#define NSLAME_KERNELS_HPP

#include <functional>

#include "nslame/modulus.hpp"
#include "nslame/types.hpp"

namespace nslame {

struct KernelPoint {
  Complex x;
  Complex y;
  ModelParams params;  // kappa, g (n unused here)
  EllipticModulus modulus;
};

// Branch bookkeeping for the non-integer powers in k_mu: imaginary parts of
// the factor logarithms at a reference point.  Evaluations passed the same
// anchor pick the log branch nearest the anchor, which keeps tiny stencil
// displacements on one analytic sheet.
struct KernelLogs {
  double im_x2 = 0.0;
  double im_y2 = 0.0;
  double im_den = 0.0;
  bool valid = false;
};

// k_mu(x,y) = (theta1(x)^2)^{(g+kappa)/2} (theta1(y)^2)^{g/2}
//             / (theta_mu((x+y)/2) theta_mu((x-y)/2))^{2g+kappa}.
// Throws PoleError when a denominator theta factor is below 1e-8.
Complex kernel_k(int mu, const KernelPoint& p, const KernelLogs* ref = nullptr,
                 KernelLogs* out = nullptr);

// G^{3(2g+kappa)} k_1: the variant whose q->0 limit carries unit prefactor
// (vartheta_1'(0)/(2 q^{1/4}) = G^3).
Complex kernel_k_normalized(const KernelPoint& p);

// C_mu of the generalized kernel identity:
//   mu in {1,2}: 4k(1-2g-k) eta1/pi + 6k(2g+k)(eta1/pi - 1/12)
//   mu in {3,4}: the above + k(2g+k)
Complex kernel_constant(int mu, double g, double kappa, const EllipticModulus& m);

// -f''(x) + g(g-1) wp(x) f(x), f'' by the 5-point 4th-order stencil.
Complex lame_apply(const std::function<Complex(Complex)>& f, Complex x, double g,
                   const EllipticModulus& m, double h);

// Relative residual of
//   (2i/pi) kappa d_tau k_mu + H(x;g+kappa) k_mu - H(y;g) k_mu - C_mu k_mu
// with d_tau by a 4th-order stencil along the imaginary tau direction.
double kernel_identity_residual(int mu, const KernelPoint& p, double h_x,
                                double h_tau);

// k_1(x, y + pi tau) computed by analytic continuation along the straight
// path from y (branch tracked in `steps` increments).
Complex kernel_k1_continued(const KernelPoint& p, int steps = 32);

}  // namespace nslame

#endif
