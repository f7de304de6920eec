#ifndef NSLAME_CLI_HPP
#define NSLAME_CLI_HPP

#include <string>
#include <vector>

#include "nslame/types.hpp"

namespace nslame {

// Parses "a+bi" / "bi" / "i" forms; throws std::invalid_argument on junk or
// Im <= 0 (the equation lives on the upper half plane).
Complex parse_tau(const std::string& text);

// Exit codes: 0 ok, 1 validation error, 2 numeric check failure, 3 I/O error.
int run_cli(const std::vector<std::string>& args);

}  // namespace nslame

#endif
