#pragma once

#include <stdexcept>
#include <string>

namespace minimax {

// Bad inputs to a library call (wrong sizes, out-of-range parameters).
using InvalidArgument = std::invalid_argument;

// The combination matrix does not admit a Perron vector / spectral gap.
class SpectralError : public std::runtime_error {
 public:
  explicit SpectralError(const std::string& what) : std::runtime_error(what) {}
};

// A diagnostic quantity could not be evaluated (no inner max, ascent did not converge).
class DiagnosticError : public std::runtime_error {
 public:
  explicit DiagnosticError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed experiment / topology / planner configuration.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace minimax
