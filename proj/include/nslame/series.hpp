#ifndef NSLAME_SERIES_HPP
#define NSLAME_SERIES_HPP

#include <map>
#include <utility>
#include <vector>

#include "nslame/modulus.hpp"
#include "nslame/poly.hpp"
#include "nslame/qseries.hpp"
#include "nslame/types.hpp"

namespace nslame {

enum class SeriesBasis { tilde, plain };
enum class SolveMode { nonstationary, lame };
enum class ResonancePolicy { error, zero };

// Solution of the q^2 perturbation recursion in the Gegenbauer-coefficient
// representation: d(l, m) multiplies C_m^{(g)} in the order-q^{2l} term of
// the tilde-basis polynomial; E holds the energy coefficients.
struct SeriesSolution {
  ModelParams params;
  int L = 0;
  SeriesBasis basis = SeriesBasis::tilde;
  SolveMode mode = SolveMode::nonstationary;
  std::map<std::pair<int, int>, double> d;  // (ell, m) -> coefficient
  std::vector<double> E;
  std::vector<std::pair<int, int>> resonances;  // entries pinned to zero

  double coeff(int ell, int m) const {
    auto it = d.find({ell, m});
    return it == d.end() ? 0.0 : it->second;
  }
  // The order-l polynomial in the current basis, monomial coefficients.
  Poly poly_at(int ell) const;
};

// q^{2l} coefficient of g(g-1)(wp(x) - 1/sin^2 x) + g(g-1)/3 as a polynomial
// in z = cos x:  W_l(z) = 8 g (g-1) [sigma(l) - sum_{d | l} d T_{2d}(z)].
Poly potential_coeff(int ell, double g);

// True iff (m-n)(n+m+2g) - 4 kappa l = 0 (vanishing recursion denominator).
bool is_resonant(int n, int m, double g, double kappa, int ell);

// Order-by-order solve of the recursion in the tilde basis.
//   nonstationary: kappa != 0, E from energy_series, the m=n row fixes d(l,n).
//   lame:          kappa == 0, gauge d(l,n)=0, the m=n row fixes E^{(l)}.
SeriesSolution solve_series(const ModelParams& params, int L, SolveMode mode,
                            ResonancePolicy policy = ResonancePolicy::error);

// Basis conversion via the exact series factor G^g prod(1-2q^{2k}T2+q^{4k})^g.
enum class ConvertDirection { to_plain, to_tilde };
SeriesSolution tilde_to_plain(const SeriesSolution& s, ConvertDirection dir);

// psi(x) = (theta1(x)^2)^{g/2} sum_l P_l(cos x) q^{2l}; input in plain basis.
Complex eval_series(const SeriesSolution& s, Complex x, const EllipticModulus& m);

// E(tau) = sum_l E^{(l)} q^{2l}.
Complex eval_energy(const SeriesSolution& s, const EllipticModulus& m);

// Independent cross-check: assembles the order-by-order operator as dense
// matrices over the Gegenbauer basis {C_0..C_basis_size} (matrix elements by
// Gauss-Jacobi quadrature) and solves by LU.  Requires g > 0 and
// basis_size > n + 2L + 4.
SeriesSolution brute_oracle(const ModelParams& params, int L, int basis_size,
                            SolveMode mode,
                            ResonancePolicy policy = ResonancePolicy::error);

}  // namespace nslame

#endif
