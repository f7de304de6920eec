#include "nslame/transforms.hpp"

#include <cmath>
#include <memory>
#include <sstream>

#include "nslame/kernels.hpp"
#include "nslame/specfun.hpp"
#include "nslame/theta.hpp"

namespace nslame {

namespace {

constexpr int kQuadCap = 1 << 12;

Complex theta1_sq_pow(Complex t1, double g) {
  // (theta1^2)^{g/2} with the principal log; exact for integer g.
  if (is_integer(g)) {
    const long long gi = std::llround(g);
    return (gi % 2 == 0) ? ipow(t1 * t1, gi / 2) : ipow(t1, gi);
  }
  return std::exp(0.5 * g * std::log(t1 * t1));
}

// Combined y-weight (theta1(y)^2)^{g} (kernel half-power times the factored
// solution's half-power).
Complex y_weight(Complex t1y, double g) {
  if (is_integer(g)) return ipow(t1y * t1y, std::llround(g));
  return std::exp(g * std::log(t1y * t1y));
}

Complex den_pow(Complex base, double e) {
  if (is_integer(e)) return ipow(base, std::llround(e));
  return std::exp(e * std::log(base));
}

std::vector<Complex> contour_nodes(int N, double eps) {
  std::vector<Complex> ys(N);
  const double h = 2.0 * kPi / N;
  for (int j = 0; j < N; ++j) ys[j] = Complex{-kPi + (j + 0.5) * h, eps};
  return ys;
}

struct KNodeData {
  std::vector<Complex> ys;
  std::vector<Complex> vals;  // weight * reduced at node
};

KNodeData build_k_nodes(const FactoredSolution& in, const EllipticModulus& m, int N,
                        double eps) {
  KNodeData d;
  d.ys = contour_nodes(N, eps);
  d.vals.resize(N);
  const double g = in.params.g;
  for (int j = 0; j < N; ++j) {
    const Complex t1y = theta(1, d.ys[j], m);
    d.vals[j] = y_weight(t1y, g) * in.reduced(d.ys[j]);
  }
  return d;
}

}  // namespace

Complex FactoredSolution::sample(Complex y, const EllipticModulus& m) const {
  return theta1_sq_pow(theta(1, y, m), params.g) * reduced(y);
}

FactoredSolution seed_solution(int n, int p, double kappa, const EllipticModulus& m) {
  if (n < 0) throw std::domain_error("seed_solution: n must be >= 0");
  if (p == 0) {
    FactoredSolution s;
    s.params = {kappa, 0.0, n};
    s.reduced = [n](Complex y) { return std::cos(static_cast<double>(n) * y); };
    s.energy = [n](const EllipticModulus&) {
      return Complex{static_cast<double>(n) * n, 0.0};
    };
    return s;
  }
  if (p == 1) {
    if (kappa == 0.0) throw std::domain_error("seed_solution: p=1 requires kappa != 0");
    const Complex gfac = std::exp((3.0 / kappa) * std::log(m.G));
    const int np1 = n + 1;
    const EllipticModulus mm = m;
    FactoredSolution s;
    s.params = {kappa, 1.0, n};
    s.reduced = [np1, gfac, mm](Complex y) {
      const Complex t1 = theta(1, y, mm);
      if (std::abs(t1) < 1e-12) {
        // removable point: sin((n+1)y)/theta1(y) -> (n+1) cos((n+1)y)/theta1'(y)
        const auto d = theta1_derivs(y, mm);
        return static_cast<double>(np1) * std::cos(static_cast<double>(np1) * y) /
               (d[1] * gfac);
      }
      return std::sin(static_cast<double>(np1) * y) / (t1 * gfac);
    };
    s.energy = [n](const EllipticModulus& mod) {
      const double np1d = n + 1.0;
      return Complex{np1d * np1d, 0.0} + 6.0 * (mod.eta1_over_pi - 1.0 / 12.0);
    };
    return s;
  }
  throw std::domain_error("seed_solution: p must be 0 or 1");
}

Complex transform_K_norm(int n, int g, int kappa) {
  if (kappa == 0) throw std::domain_error("transform_K_norm: kappa must be nonzero");
  if (n - kappa < 0) throw DegreeUnderflowError("transform_K_norm: n - kappa < 0");
  if (g == 0) return std::pow(2.0, 1.0 - 2.0 * kappa);
  const double sign = (g % 2 == 0) ? 1.0 : -1.0;
  const double num = std::tgamma(n + 1.0) * pochhammer(static_cast<double>(g + kappa), n - kappa);
  const double den = pochhammer(static_cast<double>(g), n) *
                     pochhammer(2.0 * g + kappa, n - kappa);
  if (std::abs(den) < 1e-300) {
    throw NormalizationError("transform_K_norm: vanishing denominator");
  }
  return sign * std::pow(2.0, -2.0 * (g + kappa)) * num / den;
}

double transform_frakK_norm(int n, double g, double kappa) {
  if (!(g > 0.0)) throw NormalizationError("transform_frakK_norm: requires g > 0");
  const double den = std::tgamma(n + 1.0) * pochhammer(2.0 * g + kappa, n);
  if (std::abs(den) < 1e-300) {
    throw NormalizationError("transform_frakK_norm: vanishing denominator");
  }
  return pochhammer(g, n) * pochhammer(g + kappa, n) /
         (den * gegenbauer_norm(n, g));
}

FactoredSolution transform_K(const FactoredSolution& in, const EllipticModulus& m,
                             const QuadratureSpec& spec, StepRecord* rec) {
  const double g = in.params.g;
  const double kp = in.params.kappa;
  if (!is_integer(kp) || kp == 0.0) {
    throw std::domain_error("transform_K: kappa must be a nonzero integer");
  }
  if (!is_integer(g)) {
    throw BranchError("transform_K: non-integer g is not supported on shifted contours");
  }
  const int ki = static_cast<int>(std::llround(kp));
  const int gi = static_cast<int>(std::llround(g));
  const int n = in.params.n;
  const int n_out = n - ki;
  if (n_out < 0) {
    throw DegreeUnderflowError("transform_K: output degree would be negative");
  }
  if (!(spec.epsilon > 0.0 && spec.epsilon < kPi * m.tau.imag())) {
    throw std::domain_error("transform_K: epsilon outside (0, pi Im tau)");
  }

  const Complex norm = transform_K_norm(n, gi, ki);
  const double e_den = 2.0 * g + kp;

  auto make_reduced = [&](const std::shared_ptr<const KNodeData>& data) {
    const EllipticModulus mm = m;
    return [data, mm, norm, e_den](Complex x) {
      Complex acc{0, 0};
      for (size_t j = 0; j < data->ys.size(); ++j) {
        const Complex u = theta(1, 0.5 * (x + data->ys[j]), mm);
        const Complex v = theta(1, 0.5 * (x - data->ys[j]), mm);
        if (std::abs(u) < 1e-8 || std::abs(v) < 1e-8) {
          throw PoleError("transform_K: kernel pole on the contour");
        }
        acc += data->vals[j] / den_pow(u * v, e_den);
      }
      return norm * acc / static_cast<double>(data->ys.size());
    };
  };

  int N = std::max(spec.N, 16);
  auto data = std::make_shared<const KNodeData>(build_k_nodes(in, m, N, spec.epsilon));
  std::function<Complex(Complex)> red = make_reduced(data);
  if (spec.refine) {
    const Complex probe_x{0.4371, 0.0};
    Complex v0 = red(probe_x);
    while (N < kQuadCap) {
      N *= 2;
      data = std::make_shared<const KNodeData>(build_k_nodes(in, m, N, spec.epsilon));
      red = make_reduced(data);
      const Complex v1 = red(probe_x);
      const double drift = std::abs(v1 - v0);
      v0 = v1;
      if (drift < 1e-12 * std::max(1.0, std::abs(v1))) break;
      if (N >= kQuadCap && drift > 1e-8 * std::max(1.0, std::abs(v1))) {
        throw NonConvergenceError("transform_K: quadrature cap reached");
      }
    }
  }

  FactoredSolution out;
  out.params = {kp, g + kp, n_out};
  out.reduced = red;
  auto e_in = in.energy;
  out.energy = [e_in, g, kp](const EllipticModulus& mod) {
    return e_in(mod) + kernel_constant(1, g, kp, mod);
  };
  if (rec) {
    rec->g_from = g;
    rec->g_to = g + kp;
    rec->n_from = n;
    rec->n_to = n_out;
    rec->norm = norm;
    rec->quad_points = N;
    rec->epsilon = spec.epsilon;
  }
  return out;
}

namespace {

struct FkNodeData {
  // Gauss-Jacobi in z = cos y (nodes, pi-normalized weights, premultiplied
  // integrand factors) or real-line midpoint trapezoid.
  bool gauss = false;
  std::vector<Complex> ys;
  std::vector<double> wts;    // gauss only
  std::vector<Complex> vals;  // weight * reduced at node
};

Complex theta1_over_sin_sq_pow(Complex z, double g, const EllipticModulus& m) {
  // (theta1(y)^2 / sin^2 y)^{g} as a function of z = cos y.
  Complex prod = m.G;
  Complex q2k{1.0, 0.0};
  const Complex t2 = 2.0 * z * z - 1.0;
  for (int k = 1; k <= m.series_terms; ++k) {
    q2k *= m.q2;
    prod *= (1.0 - 2.0 * q2k * t2 + q2k * q2k);
  }
  if (is_integer(2.0 * g)) {
    return ipow(prod, std::llround(2.0 * g));
  }
  return std::exp(2.0 * g * std::log(prod));
}

FkNodeData build_fk_nodes(const FactoredSolution& in, const EllipticModulus& m, int N,
                          QuadScheme scheme) {
  FkNodeData d;
  const double g = in.params.g;
  if (scheme == QuadScheme::gauss_jacobi) {
    if (!(g - 0.5 > -1.0)) {
      throw std::domain_error("transform_frakK: gauss_jacobi needs g - 1/2 > -1");
    }
    const JacobiRule rule = gauss_jacobi_rule(N, g - 0.5, g - 0.5);
    d.gauss = true;
    d.ys.resize(N);
    d.wts.resize(N);
    d.vals.resize(N);
    for (int k = 0; k < N; ++k) {
      const double z = rule.nodes[k];
      const Complex y{std::acos(std::clamp(z, -1.0, 1.0)), 0.0};
      d.ys[k] = y;
      d.wts[k] = rule.weights[k] / kPi;
      d.vals[k] = theta1_over_sin_sq_pow(z, g, m) * in.reduced(y);
    }
  } else {
    d.ys = contour_nodes(N, 0.0);
    d.vals.resize(N);
    for (int j = 0; j < N; ++j) {
      const Complex t1y = theta(1, d.ys[j], m);
      d.vals[j] = y_weight(t1y, g) * in.reduced(d.ys[j]);
    }
  }
  return d;
}

}  // namespace

FactoredSolution transform_frakK(const FactoredSolution& in, const EllipticModulus& m,
                                 const QuadratureSpec& spec, StepRecord* rec) {
  const double g = in.params.g;
  const double kp = in.params.kappa;
  const int n = in.params.n;
  if (!(2.0 * g + kp > 0.0)) {
    throw std::domain_error("transform_frakK: requires 2g + kappa > 0");
  }
  const double absq = std::abs(m.q);
  if (std::pow(absq, 2.0 * n) < 1e-12) {
    throw PrecisionError("transform_frakK: q^{2n} below the double-precision budget");
  }
  const bool integer_params = is_integer(g) && is_integer(2.0 * g + kp);
  if (!integer_params && std::abs(m.tau.real()) > 1e-14) {
    throw BranchError("transform_frakK: non-integer couplings need purely imaginary tau");
  }

  const double M = transform_frakK_norm(n, g, kp);
  const Complex pref = M * m.q_pow(-static_cast<double>(n));
  const double e_den = 2.0 * g + kp;

  auto make_reduced = [&](const std::shared_ptr<const FkNodeData>& data) {
    const EllipticModulus mm = m;
    return [data, mm, pref, e_den](Complex x) {
      Complex acc{0, 0};
      const size_t N = data->ys.size();
      for (size_t j = 0; j < N; ++j) {
        const Complex u = theta(4, 0.5 * (x + data->ys[j]), mm);
        const Complex v = theta(4, 0.5 * (x - data->ys[j]), mm);
        const Complex term = data->vals[j] / den_pow(u * v, e_den);
        acc += data->gauss ? data->wts[j] * term : term;
      }
      if (!data->gauss) acc /= static_cast<double>(N);
      return pref * acc;
    };
  };

  int N = std::max(spec.N, 16);
  auto data = std::make_shared<const FkNodeData>(build_fk_nodes(in, m, N, spec.scheme));
  std::function<Complex(Complex)> red = make_reduced(data);
  if (spec.refine) {
    const Complex probe_x{0.4371, 0.0};
    Complex v0 = red(probe_x);
    while (N < kQuadCap) {
      N *= 2;
      data = std::make_shared<const FkNodeData>(build_fk_nodes(in, m, N, spec.scheme));
      red = make_reduced(data);
      const Complex v1 = red(probe_x);
      const double drift = std::abs(v1 - v0);
      v0 = v1;
      if (drift < 1e-12 * std::max(1.0, std::abs(v1))) break;
      if (N >= kQuadCap && drift > 1e-8 * std::max(1.0, std::abs(v1))) {
        throw NonConvergenceError("transform_frakK: quadrature cap reached");
      }
    }
  }

  FactoredSolution out;
  out.params = {kp, g + kp, n};
  out.reduced = red;
  const int n_cap = n;
  const double g_out = g + kp;
  out.energy = [n_cap, g_out](const EllipticModulus& mod) {
    return energy(n_cap, g_out, mod);
  };
  if (rec) {
    rec->g_from = g;
    rec->g_to = g + kp;
    rec->n_from = n;
    rec->n_to = n;
    rec->norm = pref;
    rec->quad_points = N;
    rec->epsilon = 0.0;
  }
  return out;
}

namespace {

// Product of the printed per-step constants at the fixed first index
// n + numb*kappa, and its Gamma-ratio closed form, for the composite report.
Complex paper_composite_product(int p, int n_out, int numb, int kappa) {
  Complex prod{1.0, 0.0};
  const int ntop = n_out + numb * kappa;
  for (int j = 1; j <= numb; ++j) {
    const double gj = j * kappa + p;
    const double val = std::pow(2.0, 2.0 * (gj + kappa)) * std::tgamma(ntop + 1.0) /
                       (pochhammer(2.0 * gj + kappa, ntop - kappa) * pochhammer(gj, kappa));
    prod *= val;
  }
  return prod;
}

Complex paper_composite_gamma(int p, int n_out, int numb, int kappa) {
  const int ntop = n_out + numb * kappa;
  double lg = 0.0;
  if (p == 0) {
    lg = kappa * numb * (numb + 3.0) * std::log(2.0);
    for (int j = 1; j <= numb; ++j) {
      lg += std::lgamma(ntop + 1.0) + std::lgamma((2.0 * j + 1.0) * kappa) +
            std::lgamma(static_cast<double>(j) * kappa) -
            std::lgamma(ntop + (numb + 2.0 * j) * kappa) -
            std::lgamma((j + 1.0) * kappa);
    }
  } else {
    lg = numb * ((numb + 3.0) * kappa + 2.0) * std::log(2.0);
    for (int j = 1; j <= numb; ++j) {
      // The j-th numerator carries Gamma(j kappa + 1) (the printed closed
      // form's j-independent Gamma(2 kappa + 1) does not reproduce the
      // defining product).
      lg += std::lgamma(ntop + 1.0) + std::lgamma((2.0 * j + 1.0) * kappa + 2.0) +
            std::lgamma(static_cast<double>(j) * kappa + 1.0) -
            std::lgamma(ntop + (numb + 2.0 * j) * kappa + 2.0) -
            std::lgamma((j + 1.0) * kappa + 1.0);
    }
  }
  return std::exp(lg);
}

}  // namespace

PipelineResult run_pipeline(const PipelineSpec& spec, Complex tau) {
  if (spec.numb < 1) throw std::domain_error("run_pipeline: numb must be >= 1");
  if (spec.g0 != 0.0 && spec.g0 != 1.0) {
    throw std::domain_error("run_pipeline: seed coupling g0 must be 0 or 1");
  }
  const int p = static_cast<int>(spec.g0);
  PipelineResult res;
  res.m = make_modulus(tau);

  if (spec.scheme == PipelineScheme::K) {
    if (!is_integer(spec.kappa) || spec.kappa <= 0.0) {
      throw std::domain_error("run_pipeline: scheme K needs positive integer kappa");
    }
    const int ki = static_cast<int>(std::llround(spec.kappa));
    if (spec.n_seed - spec.numb * ki < 0) {
      throw DegreeUnderflowError("run_pipeline: seed degree too small for numb steps");
    }
  }

  FactoredSolution cur = seed_solution(spec.n_seed, p, spec.kappa, res.m);
  res.composite_norm = Complex{1.0, 0.0};
  for (int j = 1; j <= spec.numb; ++j) {
    QuadratureSpec q = spec.quad;
    StepRecord rec;
    rec.index = j;
    if (spec.scheme == PipelineScheme::K) {
      double frac = 0.4 - 0.05 * (j - 1);
      if (!spec.epsilon_fractions.empty()) {
        frac = spec.epsilon_fractions.at(j - 1);
      }
      q.epsilon = frac * kPi * tau.imag();
      q.scheme = QuadScheme::trapezoid_shifted;
      cur = transform_K(cur, res.m, q, &rec);
    } else {
      cur = transform_frakK(cur, res.m, q, &rec);
    }
    res.composite_norm *= rec.norm;
    res.steps.push_back(rec);
  }
  res.solution = cur;

  if (spec.scheme == PipelineScheme::K) {
    const int ki = static_cast<int>(std::llround(spec.kappa));
    const Complex prod = paper_composite_product(p, cur.params.n, spec.numb, ki);
    const Complex gam = paper_composite_gamma(p, cur.params.n, spec.numb, ki);
    res.paper_composite = gam;
    if (std::abs(std::abs(prod) - std::abs(gam)) > 1e-10 * std::abs(gam)) {
      throw NormalizationError("run_pipeline: composite normalization mismatch");
    }
  } else {
    res.paper_composite = res.composite_norm;
  }
  return res;
}

SampledSolution sample_solution(const FactoredSolution& sol, const EllipticModulus& m,
                                int grid_count, const std::string& provenance) {
  if (grid_count < 2) throw std::domain_error("sample_solution: grid too small");
  SampledSolution s;
  s.params = sol.params;
  s.E = sol.energy(m);
  s.provenance = provenance;
  s.xs.resize(grid_count);
  s.values.resize(grid_count);
  for (int i = 0; i < grid_count; ++i) {
    const double x = -kPi + 2.0 * kPi * i / (grid_count - 1);
    s.xs[i] = x;
    s.values[i] = sol.sample(Complex{x, 0.0}, m);
    if (!std::isfinite(s.values[i].real()) || !std::isfinite(s.values[i].imag())) {
      throw std::runtime_error("sample_solution: non-finite value on grid");
    }
  }
  return s;
}

Complex transform_irregular(const std::function<Complex(Complex)>& P_irr, int g,
                            int kappa, double x, double radius, int N,
                            const EllipticModulus& m) {
  if (g < 1 || kappa < 1) {
    throw std::domain_error("transform_irregular: g and kappa must be positive integers");
  }
  if (!(radius > 0.0 && radius < 0.5)) {
    throw std::domain_error("transform_irregular: radius must lie in (0, 0.5)");
  }
  const Complex z = std::cos(Complex{x, 0.0});
  const int e = 2 * g + kappa;
  Complex acc{0, 0};
  for (int j = 0; j < N; ++j) {
    const Complex xi = z + radius * std::exp(kI * (2.0 * kPi * j / N));
    Complex num{1.0, 0.0};
    Complex den{1.0, 0.0};
    Complex q2l{1.0, 0.0};
    const Complex t2 = 2.0 * xi * xi - 1.0;
    for (int l = 1; l <= m.series_terms; ++l) {
      q2l *= m.q2;
      num *= (1.0 - 2.0 * q2l * t2 + q2l * q2l);
      const Complex q4l = q2l * q2l;
      const Complex dl = 1.0 - 4.0 * xi * z * (q2l + q2l * q4l) +
                         2.0 * (2.0 * z * z + 2.0 * xi * xi - 1.0) * q4l + q4l * q4l;
      if (std::abs(dl) < 1e-8) {
        throw std::domain_error("transform_irregular: branch point inside the contour");
      }
      den *= dl;
    }
    const Complex dxi = xi - z;
    acc += num * P_irr(xi) / (ipow(dxi, e) * ipow(den, e)) * dxi;
  }
  return acc / static_cast<double>(N);
}

}  // namespace nslame
