#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace levidisc {

// Base class for every error raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A precondition on the inputs does not hold (wrong sizes, singular Q,
// zero vectors, missing structure).
struct DomainError : Error {
  using Error::Error;
};

// Malformed fixture or disc file; `path` is the JSON pointer of the
// offending node when known.
struct ParseError : Error {
  std::string path;
  explicit ParseError(const std::string& msg, std::string where = "")
      : Error(where.empty() ? msg : msg + " at " + where), path(std::move(where)) {}
};

// An iteration failed to converge; `diagnostic` carries the final residual
// or off-diagonal norm that refused to drop.
struct NumericalFailure : Error {
  double diagnostic;
  NumericalFailure(const std::string& msg, double diag)
      : Error(msg), diagnostic(diag) {}
};

// The matrix equation converged but the solution is not a stable solvent.
struct StabilityViolation : Error {
  double spectral_radius;
  StabilityViolation(const std::string& msg, double rho)
      : Error(msg), spectral_radius(rho) {}
};

// A rank-deficient linear system is inconsistent beyond tolerance.
struct NoSolutionError : Error {
  double residual;
  NoSolutionError(const std::string& msg, double res)
      : Error(msg), residual(res) {}
};

// The randomized search exhausted its restarts; carries the best candidate
// seen so that callers can report how close it came.
struct SearchFailure : Error {
  int best_r;
  int best_rank;
  SearchFailure(const std::string& msg, int r, int rank)
      : Error(msg), best_r(r), best_rank(rank) {}
};

// No variant of the disc ansatz passed the analytic-extension oracle.
struct ConstructionFailure : Error {
  double best_defect;
  ConstructionFailure(const std::string& msg, double defect)
      : Error(msg), best_defect(defect) {}
};

// The constructed disc boundary fails to satisfy the defining equations of
// the manifold within tolerance.
struct AttachmentFailure : Error {
  double residual;
  AttachmentFailure(const std::string& msg, double res)
      : Error(msg), residual(res) {}
};

// The supplied direction vector does not certify positivity at any
// admissible scaling of the parameters.
struct InconsistentWitness : Error {
  using Error::Error;
};

// The boundary lift fails its pole-cancellation condition.
struct InconsistentLift : Error {
  double defect;
  InconsistentLift(const std::string& msg, double d)
      : Error(msg), defect(d) {}
};

}  // namespace levidisc
