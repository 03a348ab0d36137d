#pragma once

#include <vector>

#include "calkin/tuple.hpp"

namespace calkin {

inline constexpr double kKernelTol = 1e-10;
inline constexpr double kResidualTol = 1e-8;

/// Orthonormal basis of a section null space, with certification data.
/// Vectors live in the section's column space (C^N for column sections,
/// C^{n*N} for row sections). When `exact` is set, zero-padding any basis
/// vector gives a genuine kernel vector of the infinite operator: every
/// residual in `residuals` was checked against the entry formula on a
/// window of twice the section height.
struct KernelBasis {
  int section_size = 0;  // N
  int margin = 0;
  Matrix vectors;        // ambient x d, orthonormal columns
  bool exact = false;
  std::vector<double> residuals;

  int dimension() const { return static_cast<int>(vectors.cols()); }
};

/// Null space of a dense section: right singular vectors with singular
/// value < tol (plus the implicit zeros of a wide matrix). Throws
/// ToleranceAmbiguous when a singular value lands in [tol, 10*tol) - no
/// clean spectral gap, grow the section instead of guessing.
KernelBasis kernel_basis(const Matrix& section, double tol = kKernelTol);

/// Rotate an orthonormal column span into support-echelon form: vector j
/// has the j-th lowest leading support index in the span and a positive
/// real leading entry. Deterministic representative of the span; used to
/// break SVD ordering ties.
Matrix canonicalize_columns(Matrix basis, double pivot_tol = 1e-8);

/// Joint kernel of the column operator via sections at N, 2N, 4N. The
/// three dimensions must agree (else NotStabilized) and every vector is
/// residual-certified against the infinite operator. Returns the canonical
/// basis at 4N.
KernelBasis stabilized_joint_kernel(const OperatorTuple& t, int base_size = 32,
                                    double tol = kKernelTol);

/// One row-section kernel per requested size, each vector certified as an
/// exact kernel vector of the infinite row operator.
struct RowKernelCertificate {
  struct Entry {
    int section_size = 0;
    KernelBasis basis;
  };
  std::vector<Entry> entries;
  int margin = 0;

  std::vector<std::pair<int, int>> dimensions() const;
};

/// Theorem-style growth certificate for n >= 2: certified kernel dimensions
/// of the row operator at each size, strictly increasing and at least
/// (n-1)*N - margin. Each certified vector is a genuine kernel vector, so a
/// strictly increasing certified sequence witnesses infinite dimensionality.
/// Throws CertificateFailed / MonotonicityFailed accordingly.
RowKernelCertificate row_kernel_growth_certificate(
    const OperatorTuple& t, const std::vector<int>& sizes,
    double tol = kKernelTol);

/// Smallest singular value of the column section restricted to the
/// orthogonal complement of the joint kernel, per size. A numerical
/// closed-range witness (diagnostic, not a proof).
struct ClosedRangeWitness {
  std::vector<std::pair<int, double>> values;  // (N, sigma_min)
  double minimum = 0.0;
};

ClosedRangeWitness closed_range_witness(const OperatorTuple& t,
                                        const std::vector<int>& sizes);

}  // namespace calkin
