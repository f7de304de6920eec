#include "nslame/series.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "nslame/quadrature.hpp"
#include "nslame/specfun.hpp"
#include "nslame/theta.hpp"

namespace nslame {

namespace {

Poly basis_poly(int m, double g) {
  // g = 0 degenerates the Gegenbauer family; the natural basis there is the
  // cosine one, T_m(z).
  return g > 0.0 ? gegenbauer_poly(m, g) : chebyshev_t_poly(m);
}

void check_mode(const ModelParams& params, SolveMode mode) {
  if (mode == SolveMode::nonstationary && params.kappa == 0.0) {
    throw std::invalid_argument("solve_series: nonstationary mode requires kappa != 0");
  }
  if (mode == SolveMode::lame && params.kappa != 0.0) {
    throw std::invalid_argument("solve_series: lame mode requires kappa == 0");
  }
}

}  // namespace

Poly SeriesSolution::poly_at(int ell) const {
  Poly p;
  for (const auto& [key, v] : d) {
    if (key.first == ell && v != 0.0) p += v * basis_poly(key.second, params.g);
  }
  return p;
}

Poly potential_coeff(int ell, double g) {
  if (ell < 1) throw std::domain_error("potential_coeff: ell must be >= 1");
  const double c = 8.0 * g * (g - 1.0);
  if (c == 0.0) return Poly();
  Poly w = Poly::constant(static_cast<double>(divisor_sigma(ell)));
  for (int dd = 1; dd <= ell; ++dd) {
    if (ell % dd == 0) w -= static_cast<double>(dd) * chebyshev_t_poly(2 * dd);
  }
  return c * w;
}

bool is_resonant(int n, int m, double g, double kappa, int ell) {
  const double den = (m - n) * (m + n + 2.0 * g) - 4.0 * kappa * ell;
  return std::abs(den) < 1e-9;
}

SeriesSolution solve_series(const ModelParams& params, int L, SolveMode mode,
                            ResonancePolicy policy) {
  check_mode(params, mode);
  if (L < 0) throw std::domain_error("solve_series: L must be >= 0");
  const int n = params.n;
  const double g = params.g;
  if (n < 0) throw std::domain_error("solve_series: n must be >= 0");

  SeriesSolution s;
  s.params = params;
  s.L = L;
  s.basis = SeriesBasis::tilde;
  s.mode = mode;
  s.d[{0, n}] = 1.0;

  if (g == 0.0) {
    // W == 0 and E^{(l>=1)} == 0: psi = cos(nx) exactly.
    s.E = energy_series(n, 0.0, L);
    return s;
  }

  s.E.assign(L + 1, 0.0);
  std::vector<double> Eknown;
  if (mode == SolveMode::nonstationary) {
    Eknown = energy_series(n, g, L);
    s.E = Eknown;
  } else {
    s.E[0] = energy_series(n, g, 0)[0];
  }

  std::vector<Poly> ptilde(L + 1);
  ptilde[0] = basis_poly(n, g);

  std::vector<Poly> W(L + 1);
  for (int l = 1; l <= L; ++l) W[l] = potential_coeff(l, g);

  for (int ell = 1; ell <= L; ++ell) {
    // Right-hand side without the lp = ell energy term: that one is
    // E^{(ell)} C_n and is handled at the m = n row (known for the
    // nonstationary mode, solved for in lame mode).
    Poly rhs;
    for (int lp = 1; lp <= ell; ++lp) {
      if (!W[lp].is_zero()) rhs -= W[lp] * ptilde[ell - lp];
      const double El = (lp < ell) ? s.E[lp] : 0.0;
      if (El != 0.0) rhs += El * ptilde[ell - lp];
    }

    Eigen::VectorXd r = gegenbauer_expand(rhs, g);
    const double scale = std::max(1.0, r.cwiseAbs().maxCoeff());

    if (mode == SolveMode::lame) {
      const double rn = (n < r.size()) ? r[n] : 0.0;
      s.E[ell] = -rn;
      // gauge d(ell, n) = 0; nothing stored for m = n
    }

    for (int m = (n % 2); m <= n + 2 * ell; m += 2) {
      const double rm = (m < r.size()) ? r[m] : 0.0;
      if (std::abs(m - n) > 2 * ell) {
        if (std::abs(rm) > 1e-8 * scale) {
          throw std::logic_error("solve_series: band structure violated");
        }
        continue;
      }
      if (m == n) {
        if (mode == SolveMode::nonstationary) {
          s.d[{ell, n}] = (rm + s.E[ell]) / (-4.0 * params.kappa * ell);
        }
        continue;
      }
      if (is_resonant(n, m, g, params.kappa, ell)) {
        if (policy == ResonancePolicy::error) {
          throw ResonanceError(ell, m, "solve_series: resonant denominator");
        }
        s.resonances.push_back({ell, m});  // entry pinned to zero, not stored
        continue;
      }
      const double den = (m - n) * (m + n + 2.0 * g) - 4.0 * params.kappa * ell;
      const double v = rm / den;
      if (v != 0.0) s.d[{ell, m}] = v;
    }

    ptilde[ell] = s.poly_at(ell);
  }
  return s;
}

SeriesSolution tilde_to_plain(const SeriesSolution& s, ConvertDirection dir) {
  const SeriesBasis want_src =
      (dir == ConvertDirection::to_plain) ? SeriesBasis::tilde : SeriesBasis::plain;
  if (s.basis != want_src) {
    throw std::invalid_argument("tilde_to_plain: solution not in the source basis");
  }
  SeriesSolution out = s;
  out.d.clear();
  out.basis = (dir == ConvertDirection::to_plain) ? SeriesBasis::plain : SeriesBasis::tilde;

  const double g = s.params.g;
  if (g == 0.0) {  // conversion factor is exactly 1
    out.d = s.d;
    return out;
  }

  // P_plain = P_tilde * F^{-g-sign}: to_plain divides by F_g, i.e. multiplies
  // by the exact series F_{-g}.
  const double fg = (dir == ConvertDirection::to_plain) ? -g : g;
  const QSeriesPoly factor = conversion_factor(fg, s.L);
  QSeriesPoly src(s.L);
  for (int l = 0; l <= s.L; ++l) src[l] = s.poly_at(l);
  const QSeriesPoly res = src * factor;

  for (int l = 0; l <= s.L; ++l) {
    Eigen::VectorXd c = gegenbauer_expand(res[l], g);
    for (int m = 0; m < c.size(); ++m) {
      if (std::abs(c[m]) > 1e-300) out.d[{l, m}] = c[m];
    }
  }
  return out;
}

Complex eval_series(const SeriesSolution& s, Complex x, const EllipticModulus& m) {
  if (s.basis != SeriesBasis::plain) {
    throw std::invalid_argument("eval_series: solution must be in the plain basis");
  }
  const Complex t1 = theta(1, x, m);
  const Complex t2 = t1 * t1;
  Complex pref;
  if (is_integer(s.params.g)) {
    const long long gi = std::llround(s.params.g);
    pref = (gi % 2 == 0) ? ipow(t2, gi / 2) : ipow(t1, gi);
  } else {
    if (std::abs(m.tau.real()) > 1e-14 || std::abs(x.imag()) > 1e-14) {
      throw BranchError("eval_series: non-integer g needs real x and imaginary tau");
    }
    pref = std::pow(t2, 0.5 * s.params.g);
  }
  const Complex z = std::cos(x);
  Complex acc{0, 0};
  Complex q2l{1.0, 0.0};
  for (int l = 0; l <= s.L; ++l) {
    acc += s.poly_at(l).eval(z) * q2l;
    q2l *= m.q2;
  }
  return pref * acc;
}

Complex eval_energy(const SeriesSolution& s, const EllipticModulus& m) {
  Complex acc{0, 0};
  Complex q2l{1.0, 0.0};
  for (int l = 0; l <= s.L; ++l) {
    acc += s.E[l] * q2l;
    q2l *= m.q2;
  }
  return acc;
}

SeriesSolution brute_oracle(const ModelParams& params, int L, int basis_size,
                            SolveMode mode, ResonancePolicy policy) {
  check_mode(params, mode);
  const int n = params.n;
  const double g = params.g;
  if (!(g > 0.0)) throw std::domain_error("brute_oracle: requires g > 0");
  if (basis_size <= n + 2 * L + 4) {
    throw std::domain_error("brute_oracle: basis_size must exceed n + 2L + 4");
  }

  // Parity-restricted Gegenbauer basis indices.
  std::vector<int> idx;
  for (int m = n % 2; m <= basis_size; m += 2) idx.push_back(m);
  const int B = static_cast<int>(idx.size());
  int row_n = -1;
  for (int i = 0; i < B; ++i) {
    if (idx[i] == n) row_n = i;
  }
  if (row_n < 0) throw std::domain_error("brute_oracle: n outside basis");

  // Matrix elements of multiplication by W_l, by Gauss-Jacobi quadrature
  // (exact: integrand degree <= 2 basis_size + 2L).
  const int nodes = basis_size + L + 2;
  const JacobiRule rule = gauss_jacobi_rule(nodes, g - 0.5, g - 0.5);
  Eigen::MatrixXd C(B, nodes);  // C(i, k) = C_{idx[i]}(z_k)
  for (int i = 0; i < B; ++i) {
    for (int k = 0; k < nodes; ++k) C(i, k) = gegenbauer(idx[i], g, rule.nodes[k]);
  }

  std::vector<Eigen::MatrixXd> Wmat(L + 1);
  for (int l = 1; l <= L; ++l) {
    const Poly w = potential_coeff(l, g);
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(B, B);
    if (!w.is_zero()) {
      Eigen::VectorXd wz(nodes);
      for (int k = 0; k < nodes; ++k) wz[k] = w.eval(rule.nodes[k]);
      for (int i = 0; i < B; ++i) {
        const double hi = gegenbauer_norm(idx[i], g);
        for (int j = 0; j < B; ++j) {
          double acc = 0.0;
          for (int k = 0; k < nodes; ++k) {
            acc += rule.weights[k] * C(i, k) * wz[k] * C(j, k);
          }
          M(i, j) = acc / (kPi * hi);
        }
      }
    }
    Wmat[l] = std::move(M);
  }

  SeriesSolution s;
  s.params = params;
  s.L = L;
  s.basis = SeriesBasis::tilde;
  s.mode = mode;

  std::vector<Eigen::VectorXd> c(L + 1, Eigen::VectorXd::Zero(B));
  c[0][row_n] = 1.0;
  s.E.assign(L + 1, 0.0);
  s.E[0] = energy_series(n, g, 0)[0];
  if (mode == SolveMode::nonstationary) s.E = energy_series(n, g, L);

  for (int ell = 1; ell <= L; ++ell) {
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(B);
    for (int lp = 1; lp <= ell; ++lp) {
      rhs -= Wmat[lp] * c[ell - lp];
      const double El = (mode == SolveMode::nonstationary)
                            ? s.E[lp]
                            : (lp < ell ? s.E[lp] : 0.0);
      if (El != 0.0) rhs += El * c[ell - lp];
    }

    Eigen::VectorXd diag(B);
    for (int i = 0; i < B; ++i) {
      diag[i] = (idx[i] - n) * (idx[i] + n + 2.0 * g) - 4.0 * params.kappa * ell;
    }

    if (mode == SolveMode::nonstationary) {
      Eigen::MatrixXd A = diag.asDiagonal();
      for (int i = 0; i < B; ++i) {
        if (i != row_n && is_resonant(n, idx[i], g, params.kappa, ell)) {
          if (policy == ResonancePolicy::error) {
            throw ResonanceError(ell, idx[i], "brute_oracle: resonant denominator");
          }
          A(i, i) = 1.0;
          rhs[i] = 0.0;
          s.resonances.push_back({ell, idx[i]});
        }
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
      if (!lu.isInvertible()) {
        throw SingularSystemError("brute_oracle: singular order-" + std::to_string(ell) +
                                  " system");
      }
      c[ell] = lu.solve(rhs);
    } else {
      // Unknowns (c_ell, E^{(ell)}): diag * c - E e_n = rhs, plus gauge
      // c[row_n] = 0.
      Eigen::MatrixXd A = Eigen::MatrixXd::Zero(B + 1, B + 1);
      A.topLeftCorner(B, B) = Eigen::MatrixXd(diag.asDiagonal());
      A(row_n, B) = -1.0;
      A(B, row_n) = 1.0;
      Eigen::VectorXd b(B + 1);
      b.head(B) = rhs;
      b[B] = 0.0;
      Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
      if (!lu.isInvertible()) {
        throw SingularSystemError("brute_oracle: singular order-" + std::to_string(ell) +
                                  " system");
      }
      const Eigen::VectorXd sol = lu.solve(b);
      c[ell] = sol.head(B);
      s.E[ell] = sol[B];
    }
  }

  for (int ell = 0; ell <= L; ++ell) {
    const double scale = std::max(1.0, c[ell].cwiseAbs().maxCoeff());
    for (int i = 0; i < B; ++i) {
      if (std::abs(c[ell][i]) > 1e-13 * scale) s.d[{ell, idx[i]}] = c[ell][i];
    }
  }
  return s;
}

}  // namespace nslame
