#ifndef NSLAME_TYPES_HPP
#define NSLAME_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace nslame {

using Complex = std::complex<double>;

constexpr double kPi = 3.141592653589793238462643383279502884;
inline const Complex kI{0.0, 1.0};

// Coupling pair (kappa, g) plus degree n.  kappa is the heat-flow coupling
// multiplying the tau derivative; g the Lame coupling.
struct ModelParams {
  double kappa = 0.0;
  double g = 0.0;
  int n = 0;
};

inline bool is_integer(double x, double tol = 1e-12) {
  return std::abs(x - std::round(x)) < tol;
}

// Integer power by squaring; exact for integer exponents of complex bases,
// negative exponents allowed.
inline Complex ipow(Complex base, long long e) {
  if (e < 0) return 1.0 / ipow(base, -e);
  Complex r{1.0, 0.0};
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

struct PoleError : std::domain_error {
  using std::domain_error::domain_error;
};

struct BranchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PrecisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegreeUnderflowError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SingularSystemError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ResonanceError : std::runtime_error {
  int ell;
  int m;
  ResonanceError(int ell_, int m_, const std::string& what_)
      : std::runtime_error(what_), ell(ell_), m(m_) {}
};

struct NormalizationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace nslame

#endif
