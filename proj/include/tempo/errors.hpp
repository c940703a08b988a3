#pragma once

#include <stdexcept>
#include <string>

namespace tempo {

// Configuration / schema problems: bad keys, bad units, out-of-range values.
// The CLI maps these to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical-resolution problems: grid too coarse/short for the requested
// physics (filter narrower than a few bins, truncated envelope, sample cap).
// The CLI maps these to exit code 3.
class ResolutionError : public std::runtime_error {
 public:
  explicit ResolutionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tempo
