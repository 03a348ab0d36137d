#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace calkin {

// Base class for all domain errors raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The symbol has modulus below the cutoff somewhere on the circle grid;
// the operator is not Fredholm and no index is defined.
struct SymbolVanishesOnCircle : Error {
  using Error::Error;
};

// A rectangular section was requested with a margin too small to capture
// every nonzero row of the selected columns.
struct CaptureConditionViolated : Error {
  using Error::Error;
};

// A singular value fell into the undecidable band [tol, 10*tol); the caller
// should grow the section size.
struct ToleranceAmbiguous : Error {
  using Error::Error;
};

// Kernel dimensions did not agree across the three stabilization sizes.
struct NotStabilized : Error {
  NotStabilized(const std::string& what, std::vector<int> dims_seen)
      : Error(what), dims(std::move(dims_seen)) {}
  std::vector<int> dims;
};

// The tuple (or operator) is not an essential (spherical) isometry.
struct NotEssentialIsometry : Error {
  using Error::Error;
};

// Single-operator case with dim ker(T) > dim ker(T*): no compact
// perturbation to an isometry exists.
struct IndexObstruction : Error {
  IndexObstruction(const std::string& what, int kernel, int adjoint_kernel)
      : Error(what), kernel_dim(kernel), adjoint_kernel_dim(adjoint_kernel) {}
  int kernel_dim = 0;
  int adjoint_kernel_dim = 0;
};

// A block expected to be positive definite has an eigenvalue below the floor.
struct NotPositive : Error {
  NotPositive(const std::string& what, double min_eig)
      : Error(what), min_eigenvalue(min_eig) {}
  double min_eigenvalue = 0.0;
};

struct NotHermitian : Error {
  using Error::Error;
};

// A section kernel vector failed the infinite-operator residual check, or a
// certified dimension fell below its rank-nullity floor.
struct CertificateFailed : Error {
  using Error::Error;
};

// Certified kernel dimensions failed to grow strictly across sizes.
struct MonotonicityFailed : Error {
  using Error::Error;
};

// The two operators are not inverse to each other modulo compacts.
struct NotEssentialInversePair : Error {
  using Error::Error;
};

// Malformed input file or schema violation.
struct ParseError : Error {
  using Error::Error;
};

}  // namespace calkin
