#pragma once

#include <Eigen/Dense>

#include "calkin/symbol.hpp"

namespace calkin {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kBlockTrimTol = 1e-14;

/// A finite complex matrix sitting in the top-left corner of an infinite
/// matrix, zero elsewhere. Canonical form trims trailing rows/columns whose
/// entries are all below kBlockTrimTol, so the zero compact operator has
/// size 0.
class CompactBlock {
 public:
  CompactBlock() = default;
  explicit CompactBlock(const Matrix& entries);  // pads square, trims

  static CompactBlock zero() { return CompactBlock{}; }
  /// c * e_row e_col^* (a single matrix unit).
  static CompactBlock unit(int row, int col, Complex c);
  /// left * right^H as a block.
  static CompactBlock rank_one(const Vector& left, const Vector& right);

  int size() const { return static_cast<int>(entries_.rows()); }
  bool is_zero() const { return size() == 0; }
  const Matrix& matrix() const { return entries_; }
  Complex entry(int i, int j) const;

  double frobenius_norm() const { return entries_.norm(); }
  CompactBlock adjoint() const { return CompactBlock(entries_.adjoint()); }

 private:
  Matrix entries_;  // square, trimmed
};

CompactBlock add(const CompactBlock& a, const CompactBlock& b);
CompactBlock scale(Complex c, const CompactBlock& a);
bool approx_equal(const CompactBlock& a, const CompactBlock& b,
                  double tol = kCoeffEqTol);

/// Toeplitz(symbol) + compact block: the infinite matrix
/// M_{ij} = symbol_{i-j} + compact_{ij}. The class is closed under +, *,
/// adjoint and scalar multiples, and contains every operator this library
/// touches. The symbol alone determines the operator modulo compacts.
struct StructuredOperator {
  LaurentPoly symbol;
  CompactBlock compact;

  StructuredOperator() = default;
  StructuredOperator(LaurentPoly s, CompactBlock c)
      : symbol(std::move(s)), compact(std::move(c)) {}
};

StructuredOperator toeplitz(LaurentPoly symbol);
StructuredOperator from_block(CompactBlock block);
StructuredOperator identity();
StructuredOperator right_shift();  // Toeplitz(z)
StructuredOperator left_shift();   // Toeplitz(z^{-1}) = adjoint(right_shift)

/// Exact top-left rows x cols corner via the entry formula.
Matrix truncate(const StructuredOperator& op, int rows, int cols);

StructuredOperator adjoint(const StructuredOperator& op);

/// Exact product in the class. The symbol part multiplies; the compact part
/// collects the finite-rank Toeplitz product correction
/// F_{ij} = -sum_{k<0} a_{i-k} b_{k-j} together with the three block cross
/// terms, all as finite matrices.
StructuredOperator compose(const StructuredOperator& a,
                           const StructuredOperator& b);

StructuredOperator add(const StructuredOperator& a,
                       const StructuredOperator& b);
StructuredOperator subtract(const StructuredOperator& a,
                            const StructuredOperator& b);
StructuredOperator scale(Complex c, const StructuredOperator& a);
StructuredOperator commutator(const StructuredOperator& a,
                              const StructuredOperator& b);

bool approx_equal(const StructuredOperator& a, const StructuredOperator& b,
                  double tol = kCoeffEqTol);

/// True iff the operator is compact, i.e. the symbol vanishes.
bool is_compact(const StructuredOperator& op);

/// True iff 1 - op* op is compact, i.e. star(symbol) * symbol = 1.
bool is_essential_isometry(const StructuredOperator& op);

/// Symbol bandwidth plus block size; rows of column index j vanish beyond
/// j + reach(op), which is what the capture condition bounds.
int reach(const StructuredOperator& op);

}  // namespace calkin
