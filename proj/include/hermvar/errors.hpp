#ifndef HERMVAR_ERRORS_HPP
#define HERMVAR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hermvar {

// Invalid run configuration (bad flags, malformed grids, missing files map here too).
class config_error : public std::invalid_argument {
 public:
  explicit config_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// Parameter outside the mathematical domain of an operation (H out of range,
// divergent series requested, evaluation outside [0,1], ...).
class numeric_range_error : public std::domain_error {
 public:
  explicit numeric_range_error(const std::string& msg) : std::domain_error(msg) {}
};

// Circulant embedding produced a spectral value below the rejection threshold.
class embedding_spectrum_error : public numeric_range_error {
 public:
  explicit embedding_spectrum_error(const std::string& msg) : numeric_range_error(msg) {}
};

// A weight function was asked for a derivative order it does not provide.
class missing_derivative_error : public std::invalid_argument {
 public:
  explicit missing_derivative_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// A Gaussian-weighted integral came out non-finite; the integrand grows too fast.
class growth_violation_error : public std::domain_error {
 public:
  explicit growth_violation_error(const std::string& msg) : std::domain_error(msg) {}
};

// Filesystem failures while writing results or manifests.
class io_error : public std::runtime_error {
 public:
  explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace hermvar

#endif
