#ifndef NSLAME_IO_HPP
#define NSLAME_IO_HPP

#include <filesystem>
#include <string>

#include <json.hpp>

#include "nslame/series.hpp"
#include "nslame/transforms.hpp"
#include "nslame/verify.hpp"

namespace nslame {

using json = nlohmann::json;

// SeriesSolution wire schema:
// {"n":int,"g":float,"kappa":float,"L":int,"basis":"tilde"|"plain",
//  "d":[{"ell":int,"m":int,"value":float}],"E":[float],
//  "mode":"nonstationary"|"lame","resonances":[{"ell":int,"m":int}]}
json series_to_json(const SeriesSolution& s);
SeriesSolution series_from_json(const json& j);

json report_to_json(const ResidualReport& r);

// CSV schema: header "x,psi_re,psi_im", one row per grid point.
void write_sampled_csv(const SampledSolution& s, const std::filesystem::path& path);
json sampled_provenance_json(const SampledSolution& s, const json& extra = json::object());

// Cache keyed by (n, g, kappa, L, mode); payload is the JSON schema above,
// written atomically (temp file + rename).  A corrupt entry triggers a
// recompute and overwrite with a warning on stderr.
std::string cache_key(const ModelParams& p, int L, SolveMode mode);
SeriesSolution cache_get_or_solve(const ModelParams& p, int L, SolveMode mode,
                                  const std::filesystem::path& dir);

}  // namespace nslame

#endif
