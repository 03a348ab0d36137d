#pragma once

#include <vector>

#include "calkin/operator.hpp"

namespace calkin {

/// An ordered tuple T = (T_1, ..., T_n) of structured operators, n >= 1.
/// The column operator acts H -> H^n, x |-> (T_1 x, ..., T_n x); the row
/// operator is its adjoint H^n -> H, (x_i) |-> sum_i T_i^* x_i.
class OperatorTuple {
 public:
  explicit OperatorTuple(std::vector<StructuredOperator> entries);
  OperatorTuple(std::initializer_list<StructuredOperator> entries)
      : OperatorTuple(std::vector<StructuredOperator>(entries)) {}

  int size() const { return static_cast<int>(entries_.size()); }
  const std::vector<StructuredOperator>& entries() const { return entries_; }
  const StructuredOperator& operator[](int i) const { return entries_.at(i); }

 private:
  std::vector<StructuredOperator> entries_;
};

OperatorTuple adjoint(const OperatorTuple& t);
OperatorTuple scale(Complex c, const OperatorTuple& t);

/// The Gram operator sum_i T_i^* T_i of the column operator, computed
/// exactly in the class and symmetrized (the raw result is self-adjoint to
/// within roundoff; deviations beyond 1e-12 are a logic error).
StructuredOperator gram(const OperatorTuple& t);

struct SphericalIsometryDiagnostics {
  bool gram_symbol_is_one = false;    // column operator essentially isometric
  bool essentially_commuting = false; // all pairwise commutators compact
  bool verdict = false;               // both of the above
  double gram_block_norm = 0.0;       // Frobenius norm of 1 - T*T compact part
  std::vector<double> commutator_block_norms;  // row-major over pairs i<j
  LaurentPoly gram_symbol;
};

/// Definitional test: essentially commuting (verified, not assumed) and the
/// Gram symbol equals 1.
SphericalIsometryDiagnostics is_essential_spherical_isometry(
    const OperatorTuple& t);

struct LeftInverseResult {
  OperatorTuple row;          // S = (T_1^*, ..., T_n^*) read as a row
  CompactBlock defect;        // compact part of 1 - S T = 1 - gram(t)
  bool defect_is_compact;     // is_compact(1 - S T), verified
};

/// Left inverse of the column operator modulo compacts (throws
/// NotEssentialIsometry when the tuple is not an essential spherical
/// isometry).
LeftInverseResult essential_left_inverse(const OperatorTuple& t);

/// Smallest margin for which tall sections capture every nonzero row of the
/// selected columns: max_i (bandwidth_i + block_size_i).
int capture_margin_floor(const OperatorTuple& t);

/// Default margin: capture floor plus 2 rows of slack.
int default_margin(const OperatorTuple& t);

/// Tall section of the column operator: truncate(T_i, N+margin, N) stacked
/// vertically, shape (n*(N+margin)) x N. Under the capture condition a
/// kernel vector of the section, zero-padded, is an exact kernel vector of
/// the infinite column operator. Throws CaptureConditionViolated otherwise.
Matrix column_truncate(const OperatorTuple& t, int N, int margin);

/// Tall section of the row operator: truncate(T_i^*, N+margin, N) stacked
/// horizontally, shape (N+margin) x (n*N). Same capture guarantee.
Matrix row_truncate(const OperatorTuple& t, int N, int margin);

/// Residual of the infinite column operator applied to the zero-padded
/// vector v in C^N, measured on a window of twice the section height.
double column_residual(const OperatorTuple& t, const Vector& v, int N,
                       int margin);

/// Same for the row operator; stacked holds n blocks of length N.
double row_residual(const OperatorTuple& t, const Vector& stacked, int N,
                    int margin);

}  // namespace calkin
