#ifndef NSLAME_VERIFY_HPP
#define NSLAME_VERIFY_HPP

#include <Eigen/Core>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "nslame/modulus.hpp"
#include "nslame/series.hpp"
#include "nslame/transforms.hpp"
#include "nslame/types.hpp"

namespace nslame {

struct ResidualReport {
  std::string check;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  double h_x = 0.0;
  double h_tau = 0.0;
  std::string grid;
  ModelParams params;
  long long seed = 0;
};

// 17 uniform points in (-pi, pi) that avoid the lattice points 0 and +-pi
// (the equation is singular there and psi vanishes like |sin x|^g).
Eigen::VectorXd default_grid();

// Relative residual of (2i/pi) kappa d_tau psi - psi'' + g(g-1) wp psi - E psi
// over the grid; psi(x, tau) is re-evaluated at the five tau-stencil points.
ResidualReport pde_residual(
    const std::function<Complex(Complex, Complex)>& psi,
    const std::function<Complex(Complex)>& energy_of_tau, const ModelParams& params,
    const EllipticModulus& m, const Eigen::VectorXd& grid, double h_x, double h_tau,
    double tolerance);

// q = 0 projection identity on a shifted contour: max deviation over an
// x-grid from  (g)_n (2g+k)_{n-k} / (n! (g+k)_{n-k})  C_{n-k}^{(g+k)}(cos x).
// Requires integer 2g and integer kappa >= 1, n >= kappa.
double check_projection_q0(int n, double g, int kappa, int quad_points = 512);

// Max-grid distance of psi from the Poschl-Teller eigenfunction
// (sin^2 x)^{g/2} C_n^{(g)}(cos x) at nome q_small.
double check_trig_limit(const std::function<Complex(double)>& psi, int n, double g);
double check_trig_limit_series(const SeriesSolution& plain, double q_small);

// Every closed-form identity of the appendix inventory at `samples` random
// points; returns per-identity max deviations keyed by name.
std::map<std::string, double> check_appendix_identities(const EllipticModulus& m,
                                                        int samples,
                                                        unsigned long long seed);

// L^2([-pi,pi], dx/2pi) data for one degree-preserving transform step:
// lhs = ||psi_out||, rhs = C ||psi_in|| with C = |q|^{-n} |M| max |k4|.
struct L2BoundRecord {
  double lhs = 0.0;
  double rhs = 0.0;
  double C = 0.0;
  bool holds = false;
};
L2BoundRecord check_l2_bound(const FactoredSolution& in, const FactoredSolution& out,
                             const EllipticModulus& m, int grid_points = 96);

// Least-squares slope of log(err) against log(q).
double convergence_slope(const std::vector<double>& qs, const std::vector<double>& errs);

// Experimental: deviation of psi(x + 2 pi tau) from exp(2 i kappa (x + pi tau)) psi(x)
// for a factored solution (reported, never asserted).
double check_quasi_periodicity(const FactoredSolution& sol, const EllipticModulus& m,
                               double x);

}  // namespace nslame

#endif
