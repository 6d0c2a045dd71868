#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qclab {

/// Base class for all qclab errors. CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Bad user input or precondition violation (CLI exit code 2).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Problem size exceeds a configured limit.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Domain mask construction failed (empty interior, degenerate crop, ...).
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// Grid too coarse for the requested spectral window. Carries the
/// smallest grid size that would satisfy the resolution rule.
class ResolutionError : public Error {
 public:
  ResolutionError(const std::string& what, int required_n_grid)
      : Error(what), required_n_grid(required_n_grid) {}
  int required_n_grid;
};

/// Numeric failure during a computation (CLI exit code 3).
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Iterative solver hit its iteration cap. Carries the best residual seen.
class IterationLimitError : public NumericError {
 public:
  IterationLimitError(const std::string& what, double best_residual)
      : NumericError(what), best_residual(best_residual) {}
  double best_residual;
};

/// Sign-change search found no crossing; carries the sampled difference curve.
class NoCrossingError : public NumericError {
 public:
  NoCrossingError(const std::string& what,
                  std::vector<std::pair<double, double>> curve)
      : NumericError(what), difference_curve(std::move(curve)) {}
  std::vector<std::pair<double, double>> difference_curve;
};

/// Training diverged; carries the per-epoch history recorded so far.
class TrainingError : public NumericError {
 public:
  TrainingError(const std::string& what, std::vector<double> loss_history)
      : NumericError(what), loss_history(std::move(loss_history)) {}
  std::vector<double> loss_history;
};

/// Invariant broken inside the library itself.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace qclab
