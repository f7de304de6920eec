#include "nslame/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace nslame {

namespace {

Complex midpoint_pass(const std::function<Complex(Complex)>& f, int N, double eps) {
  Complex acc{0, 0};
  const double h = 2.0 * kPi / N;
  for (int j = 0; j < N; ++j) {
    const Complex y{-kPi + (j + 0.5) * h, eps};
    acc += f(y);
  }
  return acc / static_cast<double>(N);
}

}  // namespace

Complex quad_periodic(const std::function<Complex(Complex)>& f,
                      const QuadratureSpec& spec) {
  constexpr int kCap = 1 << 14;
  int N = std::max(spec.N, 4);
  Complex val = midpoint_pass(f, N, spec.epsilon);
  if (!spec.refine) return val;
  while (N < kCap) {
    N *= 2;
    const Complex next = midpoint_pass(f, N, spec.epsilon);
    const double drift = std::abs(next - val);
    val = next;
    if (drift < 1e-12 * std::max(1.0, std::abs(val))) return val;
    if (N >= kCap && drift > 1e-8 * std::max(1.0, std::abs(val))) {
      throw NonConvergenceError("quad_periodic: refinement cap reached");
    }
  }
  return val;
}

JacobiRule gauss_jacobi_rule(int N, double alpha, double beta) {
  if (!(alpha > -1.0) || !(beta > -1.0)) {
    throw std::domain_error("gauss_jacobi_rule: weight exponents must be > -1");
  }
  if (N < 1) throw std::domain_error("gauss_jacobi_rule: N must be >= 1");

  // Symmetric tridiagonal Jacobi matrix of the monic recurrence.
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(N, N);
  const double ab = alpha + beta;
  for (int k = 0; k < N; ++k) {
    const double den = (2.0 * k + ab) * (2.0 * k + ab + 2.0);
    T(k, k) = (den == 0.0) ? 0.0 : (beta * beta - alpha * alpha) / den;
  }
  for (int k = 1; k < N; ++k) {
    double b2;
    if (k == 1) {
      b2 = 4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      b2 = 4.0 * k * (k + alpha) * (k + beta) * (k + ab) /
           ((2.0 * k + ab) * (2.0 * k + ab) * (2.0 * k + ab + 1.0) * (2.0 * k + ab - 1.0));
    }
    T(k, k - 1) = T(k - 1, k) = std::sqrt(b2);
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(T);
  const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) +
                              std::lgamma(beta + 1.0) - std::lgamma(ab + 2.0));
  JacobiRule rule;
  rule.nodes = eig.eigenvalues();
  rule.weights.resize(N);
  for (int k = 0; k < N; ++k) {
    const double v = eig.eigenvectors()(0, k);
    rule.weights[k] = mu0 * v * v;
  }
  return rule;
}

Complex quad_jacobi(const std::function<Complex(double)>& F, double g, int N) {
  if (!(g - 0.5 > -1.0)) {
    throw std::domain_error("quad_jacobi: weight exponent g - 1/2 must be > -1");
  }
  const JacobiRule rule = gauss_jacobi_rule(N, g - 0.5, g - 0.5);
  Complex acc{0, 0};
  for (int k = 0; k < N; ++k) acc += rule.weights[k] * F(rule.nodes[k]);
  return acc / kPi;
}

}  // namespace nslame
