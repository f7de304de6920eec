#ifndef NSLAME_THETA_HPP
#define NSLAME_THETA_HPP

#include <array>

#include "nslame/modulus.hpp"
#include "nslame/types.hpp"

namespace nslame {

// Theta functions in the G-normalization:
//   theta1(x) = G sin x prod (1 - 2 q^{2n} cos 2x + q^{4n})
//   theta2(x) = G cos x prod (1 + 2 q^{2n} cos 2x + q^{4n})
//   theta3(x) = G prod (1 + 2 q^{2n-1} cos 2x + q^{4n-2})
//   theta4(x) = G prod (1 - 2 q^{2n-1} cos 2x + q^{4n-2})
// so theta_{1,2} = (2 q^{1/4})^{-1} vartheta_{1,2} and theta_{3,4} =
// vartheta_{3,4} in the Jacobi normalization.  Only integer powers of q
// appear, so complex tau needs no branch choices.
Complex theta(int nu, Complex x, const EllipticModulus& m);

// (theta1, theta1', theta1'') by term-wise differentiation of the sine
// series theta1 = sum (-1)^n q^{n(n+1)} sin((2n+1)x).
std::array<Complex, 3> theta1_derivs(Complex x, const EllipticModulus& m);

// Second x-derivative of theta_nu, by the differentiated Jacobi series.
Complex theta_dxx(int nu, Complex x, const EllipticModulus& m);

// theta1'''(0), for the eta1 relation check.
Complex theta1_d3_zero(const EllipticModulus& m);

// Theta1(xi) = (1 - xi) prod (1 - q^{2l} xi)(1 - q^{2l}/xi)
Complex theta_big1(Complex xi, const EllipticModulus& m);

// Theta(z, xi) = (1 - 2 z xi + xi^2) prod (1 - 2 q^{2l} z xi + q^{4l} xi^2)
//                                         (1 - 2 q^{2l} z/xi + q^{4l}/xi^2)
Complex theta_big(Complex z, Complex xi, const EllipticModulus& m);

enum class WpMethod { fourier, theta };

// Weierstrass P with periods (pi, pi tau).
//   theta:   (theta1'/theta1)^2 - theta1''/theta1 - 4 eta1/pi
//   fourier: 1/sin^2 x - 4 eta1/pi - 8 sum k q^{2k}/(1-q^{2k}) cos 2kx
// Throws PoleError when |theta1(x)| < 1e-8 (lattice points).
Complex wp(Complex x, const EllipticModulus& m, WpMethod method = WpMethod::theta);

}  // namespace nslame

#endif
