#ifndef NSLAME_TRANSFORMS_HPP
#define NSLAME_TRANSFORMS_HPP

#include <Eigen/Core>
#include <functional>
#include <string>
#include <vector>

#include "nslame/modulus.hpp"
#include "nslame/quadrature.hpp"
#include "nslame/types.hpp"

namespace nslame {

// A solution carried in factored form  psi(y) = (theta1(y)^2)^{g/2} * reduced(y).
// The reduced factor is analytic in the strip |Im y| < pi Im tau, so adjacent
// half-powers of theta1^2 combine exactly inside transform integrands and no
// branch tracking is ever needed in a pipeline.
struct FactoredSolution {
  ModelParams params;  // kappa, current coupling g, degree n
  std::function<Complex(Complex)> reduced;
  std::function<Complex(const EllipticModulus&)> energy;

  // psi(y) itself (principal half-power; exact for integer g or real y with
  // purely imaginary tau).
  Complex sample(Complex y, const EllipticModulus& m) const;
};

struct StepRecord {
  int index = 0;
  double g_from = 0, g_to = 0;
  int n_from = 0, n_to = 0;
  Complex norm;       // normalizer applied this step
  int quad_points = 0;
  double epsilon = 0.0;
  // L^2 bound data (filled by record_l2_bound)
  double l2_in = 0, l2_out = 0, l2_C = 0;
  bool l2_checked = false;
};

// Seed solutions of the heat-equation couplings:
//   p = 0: psi = cos(n y)                     (g = 0, E = n^2)
//   p = 1: psi = (sin((n+1)y)^2)^{1/2} / G^{3/kappa}
//          carried as (theta1^2)^{1/2} * [sin((n+1)y)/(theta1(y) G^{3/kappa})]
//          (g = 1, E = (n+1)^2 + 6(eta1/pi - 1/12))
FactoredSolution seed_solution(int n, int p, double kappa, const EllipticModulus& m);

// Degree-lowering transform over the shifted contour [-pi,pi] + i epsilon
// with the theta1-quotient kernel; integer couplings only.  Output degree
// n - kappa, coupling g + kappa; E gains the mu=1 identity constant.
FactoredSolution transform_K(const FactoredSolution& in, const EllipticModulus& m,
                             const QuadratureSpec& spec, StepRecord* rec = nullptr);

// Degree-preserving transform over the real period with the theta4-quotient
// kernel and q^{-n} M normalization; works for real couplings with
// 2g + kappa > 0.  Output coupling g + kappa, E = E_{n, g+kappa}.
FactoredSolution transform_frakK(const FactoredSolution& in, const EllipticModulus& m,
                                 const QuadratureSpec& spec, StepRecord* rec = nullptr);

// Corrected single-step normalizer for transform_K (exact leading-Gegenbauer
// coefficient 1 at q = 0); g = 0 is the seeded first step.
Complex transform_K_norm(int n, int g, int kappa);

// M_{n,g,kappa} = (g)_n (g+kappa)_n / (n! (2g+kappa)_n h_n).
double transform_frakK_norm(int n, double g, double kappa);

enum class PipelineScheme { K, frakK };

struct PipelineSpec {
  PipelineScheme scheme = PipelineScheme::frakK;
  int numb = 1;
  double kappa = 1.0;
  double g0 = 0.0;  // seed coupling; {0,1} selects the seed family p
  int n_seed = 0;
  QuadratureSpec quad;
  // Contour shifts for scheme K as fractions of pi Im(tau); defaults to
  // 0.4 - 0.05 (j-1), strictly decreasing inward.
  std::vector<double> epsilon_fractions;
};

struct SampledSolution {
  Eigen::VectorXd xs;
  Eigen::VectorXcd values;
  ModelParams params;
  Complex E;
  std::string provenance;
};

struct PipelineResult {
  FactoredSolution solution;
  EllipticModulus m;
  std::vector<StepRecord> steps;
  Complex composite_norm;   // product of applied per-step normalizers
  Complex paper_composite;  // closed-form Gamma-ratio reference (report only)
};

PipelineResult run_pipeline(const PipelineSpec& spec, Complex tau);

SampledSolution sample_solution(const FactoredSolution& sol, const EllipticModulus& m,
                                int grid_count, const std::string& provenance = "");

// Closed-contour transform of an irregular-solution polynomial: integrates
// around xi = cos x with the product kernel and returns the (2g+kappa-1)-th
// derivative value (up to overall normalization fixed by the caller at q^0).
Complex transform_irregular(const std::function<Complex(Complex)>& P_irr, int g,
                            int kappa, double x, double radius, int N,
                            const EllipticModulus& m);

}  // namespace nslame

#endif
