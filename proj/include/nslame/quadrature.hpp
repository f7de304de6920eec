#ifndef NSLAME_QUADRATURE_HPP
#define NSLAME_QUADRATURE_HPP

#include <Eigen/Core>
#include <functional>

#include "nslame/types.hpp"

namespace nslame {

enum class QuadScheme { trapezoid_shifted, gauss_jacobi };

struct QuadratureSpec {
  QuadScheme scheme = QuadScheme::trapezoid_shifted;
  int N = 256;
  double epsilon = 0.0;  // contour shift, trapezoid only
  bool refine = true;    // double N until stable
};

// (1/2pi) integral over y = -pi..pi (+ i epsilon) by the midpoint rule on
// uniform nodes (spectrally accurate for periodic analytic integrands; the
// half-step offset keeps nodes off the lattice points 0, +-pi).  With
// spec.refine, N doubles until successive values differ by < 1e-12, cap
// N = 2^14; NonConvergenceError if the cap is hit with drift > 1e-8.
Complex quad_periodic(const std::function<Complex(Complex)>& f,
                      const QuadratureSpec& spec);

// Gauss-Jacobi rule for weight (1-z^2)^{g-1/2} on [-1,1] (Golub-Welsch).
struct JacobiRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};
JacobiRule gauss_jacobi_rule(int N, double alpha, double beta);

// (1/pi) integral_{-1}^{1} (1-z^2)^{g-1/2} F(z) dz, exact for polynomial F
// of degree <= 2N-1.  Requires g - 1/2 > -1.
Complex quad_jacobi(const std::function<Complex(double)>& F, double g, int N);

}  // namespace nslame

#endif
