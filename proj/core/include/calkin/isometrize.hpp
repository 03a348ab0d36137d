#pragma once

#include "calkin/spectral.hpp"

namespace calkin {

inline constexpr double kPositivityFloor = 1e-8;
inline constexpr double kInverseSqrtResidualTol = 1e-9;
inline constexpr int kDenseCheckSize = 256;

/// A rank-d isometry ker(T) -> ker(T*), x |-> sum_i <x, u_i> w_i, fixed by
/// the deterministic basis convention: support-echelon kernel bases on both
/// sides, paired in order.
struct KernelPairing {
  Matrix domain_basis;   // u_i as columns, length domain_len
  Matrix range_basis;    // w_i as stacked H^n columns, n * range_len rows
  int domain_len = 0;
  int range_len = 0;     // per component
  int components = 1;    // n
  int kernel_dim = 0;            // dim ker(T)
  int cokernel_certified_dim = 0;  // certified vectors available in ker(T*)
  bool exact = true;

  int dimension() const { return static_cast<int>(domain_basis.cols()); }

  /// The perturbation K as one compact-only operator per component.
  std::vector<StructuredOperator> perturbation() const;
};

/// Builds the pairing for Theorem-style isometrization. For n = 1 the
/// hypothesis dim ker(T) <= dim ker(T*) is enforced (IndexObstruction
/// otherwise); for n >= 2 enough certified row-kernel vectors always exist
/// and are harvested at the smallest adequate section size.
KernelPairing build_kernel_pairing(const OperatorTuple& t,
                                   double tol = kKernelTol);

struct PerturbationResult {
  OperatorTuple perturbed;                    // T~ = T + K
  std::vector<StructuredOperator> perturbation;  // K
  StructuredOperator gram_op;                 // A = T~* T~, symbol 1
  double min_eigenvalue = 1.0;                // of the finite block I + C
};

/// T~ = T + K and A = gram(T~); verifies A = 1 + C with I + C positive
/// definite (NotPositive below the 1e-8 floor - a defective pairing).
PerturbationResult perturb_and_gram(const OperatorTuple& t,
                                    const KernelPairing& pairing);

/// Inverse square root of A = 1 + C through the eigendecomposition of the
/// finite block: returns 1 + U((I+L)^{-1/2} - I)U*. Exact in the
/// representation; the defect of r A r - 1 stays below 1e-9.
StructuredOperator inverse_sqrt(const StructuredOperator& a);

struct IsometrizationReport {
  OperatorTuple input;
  std::vector<StructuredOperator> perturbation;  // K, compact-only
  OperatorTuple isometry;                        // V with V*V = 1
  double gram_block_norm = 0.0;   // Frobenius norm of gram(V) compact part
  double dense_residual = 0.0;    // ||(V*V - I)_N||_F at N = kDenseCheckSize
  int dense_check_size = kDenseCheckSize;
  int kernel_dim = 0;
  int cokernel_certified_dim = 0;
  bool symbols_preserved = false;  // symbol(V_i) == symbol(T_i), exact
  bool exact = true;

  IsometrizationReport(OperatorTuple in, OperatorTuple v)
      : input(std::move(in)), isometry(std::move(v)) {}
};

/// Full pipeline T -> K -> T~ -> A -> A^{-1/2} -> V. Throws
/// NotEssentialIsometry, IndexObstruction (n = 1), NotStabilized,
/// NotPositive as the stages demand.
IsometrizationReport isometrize(const OperatorTuple& t);

}  // namespace calkin
