// Error types shared by the field solvers and the CLI.
#pragma once

#include <stdexcept>
#include <string>

namespace nsom {

// Evaluation point coincides with a source singularity.
struct SingularPoint : std::runtime_error {
  explicit SingularPoint(const std::string& what) : std::runtime_error(what) {}
};

// Quadrature failed its doubling-based convergence check.
struct NonConverged : std::runtime_error {
  explicit NonConverged(const std::string& what) : std::runtime_error(what) {}
};

// Geometrically impossible configuration (e.g. source below the interface).
struct InvalidGeometry : std::invalid_argument {
  explicit InvalidGeometry(const std::string& what) : std::invalid_argument(what) {}
};

struct NegativeTime : std::invalid_argument {
  explicit NegativeTime(const std::string& what) : std::invalid_argument(what) {}
};

struct InvalidPopulation : std::invalid_argument {
  explicit InvalidPopulation(const std::string& what) : std::invalid_argument(what) {}
};

// Config text could not be parsed; carries a 1-based line number.
struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& what)
      : std::runtime_error("line " + std::to_string(line_) + ": " + what), line(line_) {}
};

// Config parsed but violates a physical or structural invariant.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nsom
