#include "nslame/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "nslame/io.hpp"
#include "nslame/kernels.hpp"
#include "nslame/specfun.hpp"
#include "nslame/theta.hpp"
#include "nslame/verify.hpp"

namespace nslame {

Complex parse_tau(const std::string& text) {
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return std::isspace(c); }),
          s.end());
  if (s.empty() || s.back() != 'i') {
    throw std::invalid_argument("tau must end in 'i' (e.g. 1.2i or 0.3+0.9i)");
  }
  s.pop_back();
  double re = 0.0, im = 0.0;
  // split at the last +/- that is not an exponent sign and not leading
  size_t split = std::string::npos;
  for (size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  try {
    if (split == std::string::npos) {
      im = s.empty() ? 1.0 : std::stod(s + (s == "+" || s == "-" ? "1" : ""));
      if (s.empty()) im = 1.0;
      if (s == "-") im = -1.0;
      if (s == "+") im = 1.0;
    } else {
      re = std::stod(s.substr(0, split));
      std::string imp = s.substr(split);
      if (imp == "+") imp = "+1";
      if (imp == "-") imp = "-1";
      im = std::stod(imp);
    }
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse tau '" + text + "'");
  }
  if (!(im > 0.0)) {
    throw std::invalid_argument("Im(tau) must be positive (upper half plane)");
  }
  return {re, im};
}

namespace {

std::filesystem::path cache_dir_from(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("NSLAME_CACHE")) return env;
  return std::filesystem::path(".nslame-cache");
}

int emit_reports(const std::vector<ResidualReport>& reports) {
  bool ok = true;
  for (const auto& r : reports) {
    std::cout << report_to_json(r).dump() << "\n";
    ok = ok && r.passed;
  }
  return ok ? 0 : 2;
}

PipelineSpec make_pipeline_spec(const std::string& scheme, int numb, double kappa,
                                double g0, int n, int quad_n, double epsilon) {
  PipelineSpec ps;
  ps.scheme = (scheme == "K") ? PipelineScheme::K : PipelineScheme::frakK;
  ps.numb = numb;
  ps.kappa = kappa;
  ps.g0 = g0;
  ps.n_seed = n;
  ps.quad.N = quad_n;
  ps.quad.scheme = (ps.scheme == PipelineScheme::K) ? QuadScheme::trapezoid_shifted
                                                    : QuadScheme::gauss_jacobi;
  if (epsilon > 0.0) ps.epsilon_fractions.assign(static_cast<size_t>(numb), epsilon);
  return ps;
}

int run_transform_command(const std::string& scheme, int numb, double kappa, double g0,
                          int n, const std::string& tau_s, int quad_n, double epsilon,
                          int grid, const std::string& output) {
  const Complex tau = parse_tau(tau_s);
  const PipelineSpec ps = make_pipeline_spec(scheme, numb, kappa, g0, n, quad_n, epsilon);
  const PipelineResult pr = run_pipeline(ps, tau);
  json prov;
  prov["scheme"] = scheme;
  prov["numb"] = numb;
  prov["tau"] = {{"re", tau.real()}, {"im", tau.imag()}};
  prov["quad_N"] = ps.quad.N;
  prov["composite_norm"] = {{"re", pr.composite_norm.real()},
                            {"im", pr.composite_norm.imag()}};
  prov["paper_composite"] = {{"re", pr.paper_composite.real()},
                             {"im", pr.paper_composite.imag()}};
  prov["seed"] = {{"n", n}, {"g0", g0}};
  SampledSolution s = sample_solution(pr.solution, pr.m, grid, prov.dump());
  const std::filesystem::path csv = output.empty() ? "solution.csv" : output;
  write_sampled_csv(s, csv);
  std::ofstream side(csv.string() + ".json");
  side << sampled_provenance_json(s, prov).dump(2) << "\n";
  std::cout << "wrote " << csv.string() << " and " << csv.string() << ".json\n";
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"non-stationary Lame solutions: series, integral transforms, checks"};
  app.require_subcommand(1);

  std::string tau_s = "1.2i";
  std::string output, cache_flag, scheme = "frakK", check;
  int n = 2, L = 2, numb = 1, grid = 65, quad_n = 256, nu = 1, mu = 4;
  double g = 1.0, kappa = 1.0, g0 = 1.0, epsilon = 0.0;
  long long seed = 12345;
  std::string mode_s = "nonstationary";
  std::string format = "json";

  auto* c_const = app.add_subcommand("constants", "print q, G, eta1/pi and E_{n,g}");
  c_const->add_option("--tau", tau_s);
  c_const->add_option("--n", n);
  c_const->add_option("--g", g);

  auto* c_theta = app.add_subcommand("theta", "evaluate theta_nu on an x grid");
  c_theta->add_option("--nu", nu)->check(CLI::Range(1, 4));
  c_theta->add_option("--tau", tau_s);
  c_theta->add_option("--grid", grid);
  c_theta->add_option("--output", output);
  c_theta->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

  auto* c_series = app.add_subcommand("series-solve", "solve the q^2 recursion");
  c_series->add_option("--n", n);
  c_series->add_option("--g", g);
  c_series->add_option("--kappa", kappa);
  c_series->add_option("--L", L);
  c_series->add_option("--mode", mode_s)->check(CLI::IsMember({"nonstationary", "lame"}));
  c_series->add_option("--output", output);
  c_series->add_option("--cache-dir", cache_flag);

  auto* c_tr = app.add_subcommand("transform", "apply one integral transform");
  auto* c_it = app.add_subcommand("iterate", "apply the N-fold pipeline");
  for (auto* c : {c_tr, c_it}) {
    c->add_option("--scheme", scheme)->check(CLI::IsMember({"K", "frakK"}));
    c->add_option("--kappa", kappa);
    c->add_option("--g0", g0);
    c->add_option("--n", n);
    c->add_option("--tau", tau_s);
    c->add_option("--N", quad_n);
    c->add_option("--epsilon", epsilon);
    c->add_option("--grid", grid);
    c->add_option("--output", output);
  }
  c_it->add_option("--numb", numb);

  auto* c_ver = app.add_subcommand("verify", "run a named check suite");
  c_ver->add_option("check", check)
      ->required()
      ->check(CLI::IsMember(
          {"kernel-identity", "appendix", "projection-q0", "trig-limit", "series-oracle",
           "all"}));
  c_ver->add_option("--tau", tau_s);
  c_ver->add_option("--mu", mu)->check(CLI::Range(1, 4));
  c_ver->add_option("--n", n);
  c_ver->add_option("--g", g);
  c_ver->add_option("--kappa", kappa);
  c_ver->add_option("--L", L);
  c_ver->add_option("--seed", seed);

  auto* c_plot = app.add_subcommand("plot-data", "dense grid samples of a series solution");
  c_plot->add_option("--n", n);
  c_plot->add_option("--g", g);
  c_plot->add_option("--kappa", kappa);
  c_plot->add_option("--L", L);
  c_plot->add_option("--tau", tau_s);
  c_plot->add_option("--grid", grid);
  c_plot->add_option("--output", output);
  c_plot->add_option("--cache-dir", cache_flag);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      std::cout << app.help();
      return 0;
    }
    std::cerr << e.what() << "\n";
    return 1;
  }

  try {
    if (c_const->parsed()) {
      const Complex tau = parse_tau(tau_s);
      const EllipticModulus m = make_modulus(tau);
      json j;
      j["tau"] = {{"re", tau.real()}, {"im", tau.imag()}};
      j["q"] = {{"re", m.q.real()}, {"im", m.q.imag()}};
      j["G"] = {{"re", m.G.real()}, {"im", m.G.imag()}};
      j["eta1_over_pi"] = {{"re", m.eta1_over_pi.real()}, {"im", m.eta1_over_pi.imag()}};
      json etab = json::array();
      for (int k = 0; k <= std::max(n, 0); ++k) {
        const Complex e = energy(k, g, m);
        etab.push_back({{"n", k}, {"g", g}, {"re", e.real()}, {"im", e.imag()}});
      }
      j["E"] = etab;
      std::cout << j.dump(2) << "\n";
      return 0;
    }

    if (c_theta->parsed()) {
      const Complex tau = parse_tau(tau_s);
      const EllipticModulus m = make_modulus(tau);
      std::ostringstream body;
      json rows = json::array();
      if (format == "csv") body << "x,theta_re,theta_im\n";
      for (int i = 0; i < grid; ++i) {
        const double x = -kPi + 2.0 * kPi * i / (grid - 1);
        const Complex v = theta(nu, Complex{x, 0}, m);
        if (format == "csv") {
          body << x << "," << v.real() << "," << v.imag() << "\n";
        } else {
          rows.push_back({{"x", x}, {"re", v.real()}, {"im", v.imag()}});
        }
      }
      const std::string text = format == "csv" ? body.str() : rows.dump(2) + "\n";
      if (output.empty()) {
        std::cout << text;
      } else {
        std::ofstream f(output);
        if (!f) return 3;
        f << text;
      }
      return 0;
    }

    if (c_series->parsed()) {
      const SolveMode mode =
          mode_s == "lame" ? SolveMode::lame : SolveMode::nonstationary;
      const ModelParams p{kappa, g, n};
      const SeriesSolution s = cache_get_or_solve(p, L, mode, cache_dir_from(cache_flag));
      const std::string text = series_to_json(s).dump(2) + "\n";
      if (output.empty()) {
        std::cout << text;
      } else {
        std::ofstream f(output);
        if (!f) return 3;
        f << text;
      }
      return 0;
    }

    if (c_tr->parsed()) {
      return run_transform_command(scheme, 1, kappa, g0, n, tau_s, quad_n, epsilon, grid,
                                   output);
    }
    if (c_it->parsed()) {
      return run_transform_command(scheme, numb, kappa, g0, n, tau_s, quad_n, epsilon,
                                   grid, output);
    }

    if (c_ver->parsed()) {
      const Complex tau = parse_tau(tau_s);
      std::vector<ResidualReport> reports;
      if (check == "kernel-identity" || check == "all") {
        const EllipticModulus m = make_modulus(tau);
        std::mt19937_64 rng(static_cast<unsigned long long>(seed));
        std::uniform_real_distribution<double> ux(0.3, 1.3);
        ResidualReport rep;
        rep.check = "kernel-identity";
        rep.params = {kappa, g, 0};
        rep.tolerance = 1e-6;
        rep.h_x = rep.h_tau = 1e-3;
        rep.seed = seed;
        double worst = 0.0;
        for (int s2 = 0; s2 < 5; ++s2) {
          KernelPoint kp;
          kp.x = Complex{ux(rng), 0.0};
          kp.y = Complex{ux(rng) + 0.5, mu == 1 ? 0.3 : 0.0};
          kp.params = {kappa, g, 0};
          kp.modulus = m;
          worst = std::max(worst, kernel_identity_residual(mu, kp, 1e-3, 1e-3));
        }
        rep.max_deviation = worst;
        rep.passed = worst < rep.tolerance;
        reports.push_back(rep);
      }
      if (check == "appendix" || check == "all") {
        const EllipticModulus m = make_modulus(tau);
        const auto dev = check_appendix_identities(m, 20, static_cast<unsigned long long>(seed));
        for (const auto& [name, v] : dev) {
          ResidualReport rep;
          rep.check = "appendix/" + name;
          rep.max_deviation = v;
          rep.tolerance = (name == "heat_equation" || name == "G_derivative") ? 1e-6 : 1e-10;
          rep.passed = v < rep.tolerance;
          rep.seed = seed;
          reports.push_back(rep);
        }
      }
      if (check == "projection-q0" || check == "all") {
        ResidualReport rep;
        rep.check = "projection-q0";
        rep.params = {kappa, g, n};
        rep.tolerance = 1e-10;
        rep.max_deviation = check_projection_q0(n, g, static_cast<int>(kappa));
        rep.passed = rep.max_deviation < rep.tolerance;
        rep.seed = seed;
        reports.push_back(rep);
      }
      if (check == "trig-limit" || check == "all") {
        SeriesSolution s = solve_series({kappa, g, n}, L, SolveMode::nonstationary);
        s = tilde_to_plain(s, ConvertDirection::to_plain);
        ResidualReport rep;
        rep.check = "trig-limit";
        rep.params = {kappa, g, n};
        rep.tolerance = 1e-4;
        rep.max_deviation = check_trig_limit_series(s, 1e-3);
        rep.passed = rep.max_deviation < rep.tolerance;
        rep.seed = seed;
        reports.push_back(rep);
      }
      if (check == "series-oracle" || check == "all") {
        const ModelParams p{kappa, g, n};
        const SeriesSolution a = solve_series(p, L, SolveMode::nonstationary);
        const SeriesSolution b = brute_oracle(p, L, p.n + 2 * L + 8, SolveMode::nonstationary);
        double worst = 0.0;
        for (const auto& [key, v] : a.d) {
          worst = std::max(worst, std::abs(v - b.coeff(key.first, key.second)));
        }
        for (const auto& [key, v] : b.d) {
          worst = std::max(worst, std::abs(v - a.coeff(key.first, key.second)));
        }
        ResidualReport rep;
        rep.check = "series-oracle";
        rep.params = p;
        rep.tolerance = 1e-10;
        rep.max_deviation = worst;
        rep.passed = worst < rep.tolerance;
        rep.seed = seed;
        reports.push_back(rep);
      }
      return emit_reports(reports);
    }

    if (c_plot->parsed()) {
      const Complex tau = parse_tau(tau_s);
      const EllipticModulus m = make_modulus(tau);
      SeriesSolution s =
          cache_get_or_solve({kappa, g, n}, L, SolveMode::nonstationary,
                             cache_dir_from(cache_flag));
      s = tilde_to_plain(s, ConvertDirection::to_plain);
      std::ostringstream body;
      body << "x,psi_re,psi_im\n";
      body.precision(17);
      for (int i = 0; i < grid; ++i) {
        const double x = -kPi + 2.0 * kPi * i / (grid - 1);
        const Complex v = eval_series(s, Complex{x, 0}, m);
        body << x << "," << v.real() << "," << v.imag() << "\n";
      }
      if (output.empty()) {
        std::cout << body.str();
      } else {
        std::ofstream f(output);
        if (!f) return 3;
        f << body.str();
      }
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace nslame
