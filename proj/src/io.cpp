#include "nslame/io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

namespace nslame {

namespace {

std::string basis_name(SeriesBasis b) {
  return b == SeriesBasis::tilde ? "tilde" : "plain";
}
std::string mode_name(SolveMode m) {
  return m == SolveMode::nonstationary ? "nonstationary" : "lame";
}

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

json series_to_json(const SeriesSolution& s) {
  json j;
  j["n"] = s.params.n;
  j["g"] = s.params.g;
  j["kappa"] = s.params.kappa;
  j["L"] = s.L;
  j["basis"] = basis_name(s.basis);
  j["mode"] = mode_name(s.mode);
  json dd = json::array();
  for (const auto& [key, v] : s.d) {
    dd.push_back({{"ell", key.first}, {"m", key.second}, {"value", v}});
  }
  j["d"] = dd;
  j["E"] = s.E;
  json rr = json::array();
  for (const auto& [ell, mm] : s.resonances) {
    rr.push_back({{"ell", ell}, {"m", mm}});
  }
  j["resonances"] = rr;
  return j;
}

SeriesSolution series_from_json(const json& j) {
  SeriesSolution s;
  s.params.n = j.at("n").get<int>();
  s.params.g = j.at("g").get<double>();
  s.params.kappa = j.at("kappa").get<double>();
  s.L = j.at("L").get<int>();
  s.basis = j.at("basis").get<std::string>() == "tilde" ? SeriesBasis::tilde
                                                        : SeriesBasis::plain;
  s.mode = j.at("mode").get<std::string>() == "lame" ? SolveMode::lame
                                                     : SolveMode::nonstationary;
  for (const auto& e : j.at("d")) {
    s.d[{e.at("ell").get<int>(), e.at("m").get<int>()}] = e.at("value").get<double>();
  }
  s.E = j.at("E").get<std::vector<double>>();
  for (const auto& e : j.at("resonances")) {
    s.resonances.push_back({e.at("ell").get<int>(), e.at("m").get<int>()});
  }
  if (static_cast<int>(s.E.size()) != s.L + 1 || s.coeff(0, s.params.n) != 1.0) {
    throw std::runtime_error("series_from_json: schema invariants violated");
  }
  return s;
}

json report_to_json(const ResidualReport& r) {
  return json{{"check", r.check},
              {"params", {{"n", r.params.n}, {"g", r.params.g}, {"kappa", r.params.kappa}}},
              {"max_deviation", r.max_deviation},
              {"tolerance", r.tolerance},
              {"passed", r.passed},
              {"seed", r.seed}};
}

void write_sampled_csv(const SampledSolution& s, const std::filesystem::path& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("write_sampled_csv: cannot open " + path.string());
  f << "x,psi_re,psi_im\n";
  f.precision(17);
  for (Eigen::Index i = 0; i < s.xs.size(); ++i) {
    f << s.xs[i] << "," << s.values[i].real() << "," << s.values[i].imag() << "\n";
  }
}

json sampled_provenance_json(const SampledSolution& s, const json& extra) {
  json j = extra;
  j["params"] = {{"n", s.params.n}, {"g", s.params.g}, {"kappa", s.params.kappa}};
  j["E"] = {{"re", s.E.real()}, {"im", s.E.imag()}};
  j["provenance"] = s.provenance;
  return j;
}

std::string cache_key(const ModelParams& p, int L, SolveMode mode) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "n=%d;g=%.17g;kappa=%.17g;L=%d;mode=%s", p.n, p.g,
                p.kappa, L, mode_name(mode).c_str());
  char out[24];
  std::snprintf(out, sizeof(out), "%016llx",
                static_cast<unsigned long long>(fnv1a(buf)));
  return out;
}

SeriesSolution cache_get_or_solve(const ModelParams& p, int L, SolveMode mode,
                                  const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path file = dir / (cache_key(p, L, mode) + ".json");
  if (std::filesystem::exists(file)) {
    try {
      std::ifstream f(file);
      json j = json::parse(f);
      SeriesSolution s = series_from_json(j);
      if (s.params.n == p.n && s.params.g == p.g && s.params.kappa == p.kappa &&
          s.L == L && s.mode == mode) {
        return s;
      }
      std::cerr << "cache_get_or_solve: key collision, recomputing\n";
    } catch (const std::exception& e) {
      std::cerr << "cache_get_or_solve: corrupt cache entry (" << e.what()
                << "), recomputing\n";
    }
  }
  SeriesSolution s = solve_series(p, L, mode);
  const std::filesystem::path tmp = file.string() + ".tmp";
  {
    std::ofstream f(tmp);
    if (!f) throw std::runtime_error("cache_get_or_solve: cannot write " + tmp.string());
    f << series_to_json(s).dump(2) << "\n";
  }
  std::filesystem::rename(tmp, file);
  return s;
}

}  // namespace nslame
