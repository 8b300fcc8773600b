#pragma once

#include <stdexcept>
#include <string>

namespace reliab {

// Malformed structure DSL, scenario file, CSV input, etc. Carries a byte
// offset when the source is a single string (offset < 0 otherwise).
class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& what, long offset = -1)
        : std::runtime_error(offset >= 0 ? what + " (at offset " + std::to_string(offset) + ")" : what),
          offset_(offset) {}
    long offset() const { return offset_; }

  private:
    long offset_;
};

// Invalid run configuration: bad flag values, missing files, unknown names.
class ConfigError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dataset violates a precondition (empty, all right-censored, ...).
class DataError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Moment system has no solution for the family, or iteration cap exceeded.
class SolveError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// No finite-density starting point found for an MCMC chain.
class SamplerInitError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numeric integration failed to reach the requested accuracy.
class QuadratureError : public std::runtime_error {
  public:
    QuadratureError(const std::string& what, double achieved)
        : std::runtime_error(what + " (achieved relative error " + std::to_string(achieved) + ")"),
          achieved_(achieved) {}
    double achieved_error() const { return achieved_; }

  private:
    double achieved_;
};

}  // namespace reliab
