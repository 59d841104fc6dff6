#pragma once

#include <stdexcept>
#include <string>

namespace qgraph {

/// Base class for all qgraph errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// graph construction
struct NonPositiveLength : Error { using Error::Error; };
struct DanglingEndpoint : Error { using Error::Error; };
struct EmptyGraph : Error { using Error::Error; };
struct UnknownVertex : Error { using Error::Error; };
struct NotNeumann : Error { using Error::Error; };
struct SameVertex : Error { using Error::Error; };

// secular engine
struct FluxDimensionMismatch : Error { using Error::Error; };
struct NoNullVector : Error { using Error::Error; };

// spectral solver
struct WeylViolation : Error { using Error::Error; };
struct BeyondScanCeiling : Error { using Error::Error; };
struct InterlacingViolation : Error {
  InterlacingViolation(const std::string& msg, int index)
      : Error(msg), index(index) {}
  int index;
};

// eigenfunctions and nodal counts
struct DegenerateEigenvalue : Error { using Error::Error; };
struct ResidualTooLarge : Error { using Error::Error; };
struct VertexZero : Error { using Error::Error; };
struct CommensurateTie : Error { using Error::Error; };

// magnetic
struct SolverFailureAtGridPoint : Error { using Error::Error; };
struct NotCritical : Error { using Error::Error; };
struct DegenerateHessian : Error { using Error::Error; };
struct TheoremViolation : Error { using Error::Error; };
struct SymmetryViolation : Error { using Error::Error; };

// oracles
struct DetSMismatch : Error { using Error::Error; };

// graph files
struct SyntaxError : Error {
  SyntaxError(const std::string& msg, int line, int col)
      : Error(msg + " (line " + std::to_string(line) + ", col " +
              std::to_string(col) + ")"),
        line(line), col(col) {}
  int line;
  int col;
};
struct SemanticError : Error {
  explicit SemanticError(const std::string& msg, int line = 0)
      : Error(line > 0 ? msg + " (line " + std::to_string(line) + ")" : msg),
        line(line) {}
  int line;
};

}  // namespace qgraph
