#include "calkin/operator.hpp"

namespace calkin {

namespace {

// Smallest n such that all entries outside the leading n x n corner are
// below the trim threshold.
int trimmed_size(const Matrix& m) {
  int n = static_cast<int>(std::max(m.rows(), m.cols()));
  auto outer_is_small = [&](int k) {
    // row k and column k restricted to the leading (k+1) x (k+1) square
    for (int j = 0; j <= k; ++j) {
      if (k < m.rows() && j < m.cols() && std::abs(m(k, j)) >= kBlockTrimTol)
        return false;
      if (j < m.rows() && k < m.cols() && std::abs(m(j, k)) >= kBlockTrimTol)
        return false;
    }
    return true;
  };
  while (n > 0 && outer_is_small(n - 1)) --n;
  return n;
}

Matrix pad_square(const Matrix& m, int n) {
  Matrix out = Matrix::Zero(n, n);
  out.topLeftCorner(std::min<Eigen::Index>(m.rows(), n),
                    std::min<Eigen::Index>(m.cols(), n)) =
      m.topLeftCorner(std::min<Eigen::Index>(m.rows(), n),
                      std::min<Eigen::Index>(m.cols(), n));
  return out;
}

}  // namespace

CompactBlock::CompactBlock(const Matrix& entries) {
  const int n = trimmed_size(entries);
  entries_ = pad_square(entries, n);
}

CompactBlock CompactBlock::unit(int row, int col, Complex c) {
  Matrix m = Matrix::Zero(row + 1, col + 1);
  m(row, col) = c;
  return CompactBlock(m);
}

CompactBlock CompactBlock::rank_one(const Vector& left, const Vector& right) {
  return CompactBlock(left * right.adjoint());
}

Complex CompactBlock::entry(int i, int j) const {
  if (i < 0 || j < 0 || i >= size() || j >= size()) return 0.0;
  return entries_(i, j);
}

CompactBlock add(const CompactBlock& a, const CompactBlock& b) {
  const int n = std::max(a.size(), b.size());
  Matrix m = Matrix::Zero(n, n);
  m.topLeftCorner(a.size(), a.size()) = a.matrix();
  m.topLeftCorner(b.size(), b.size()) += b.matrix();
  return CompactBlock(m);
}

CompactBlock scale(Complex c, const CompactBlock& a) {
  return CompactBlock(c * a.matrix());
}

bool approx_equal(const CompactBlock& a, const CompactBlock& b, double tol) {
  const int n = std::max(a.size(), b.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (std::abs(a.entry(i, j) - b.entry(i, j)) > tol) return false;
  return true;
}

StructuredOperator toeplitz(LaurentPoly symbol) {
  return {std::move(symbol), CompactBlock::zero()};
}

StructuredOperator from_block(CompactBlock block) {
  return {LaurentPoly::zero(), std::move(block)};
}

StructuredOperator identity() { return toeplitz(LaurentPoly::one()); }

StructuredOperator right_shift() { return toeplitz(LaurentPoly::monomial(1)); }

StructuredOperator left_shift() { return toeplitz(LaurentPoly::monomial(-1)); }

Matrix truncate(const StructuredOperator& op, int rows, int cols) {
  Matrix m = Matrix::Zero(rows, cols);
  for (const auto& [k, c] : op.symbol.coeffs()) {
    for (int j = std::max(0, -k); j < cols && j + k < rows; ++j) {
      m(j + k, j) += c;
    }
  }
  const int nb = op.compact.size();
  for (int i = 0; i < std::min(rows, nb); ++i)
    for (int j = 0; j < std::min(cols, nb); ++j)
      m(i, j) += op.compact.matrix()(i, j);
  return m;
}

StructuredOperator adjoint(const StructuredOperator& op) {
  return {star(op.symbol), op.compact.adjoint()};
}

StructuredOperator compose(const StructuredOperator& a,
                           const StructuredOperator& b) {
  const LaurentPoly sym = multiply(a.symbol, b.symbol);

  const int hi_a = std::max(a.symbol.max_exponent(), 0);
  const int lo_b = std::max(-b.symbol.min_exponent(), 0);
  const int na = a.compact.size();
  const int nb = b.compact.size();

  const int rows = std::max({hi_a, na, nb + hi_a});
  const int cols = std::max({lo_b, nb, na + lo_b});
  const int n = std::max(rows, cols);
  Matrix block = Matrix::Zero(n, n);

  // (i) Toeplitz product correction: -sum_{k<0} a_{i-k} b_{k-j}.
  for (int i = 0; i < hi_a; ++i) {
    for (int j = 0; j < lo_b; ++j) {
      Complex s = 0.0;
      const int kmin = std::max(i - a.symbol.max_exponent(),
                                b.symbol.min_exponent() + j);
      for (int k = kmin; k <= -1; ++k) {
        s += a.symbol.coeff(i - k) * b.symbol.coeff(k - j);
      }
      block(i, j) -= s;
    }
  }

  // (ii) Toeplitz(a) * compact(b).
  if (nb > 0) {
    for (int i = 0; i < nb + hi_a; ++i) {
      for (int j = 0; j < nb; ++j) {
        Complex s = 0.0;
        for (int k = 0; k < nb; ++k) {
          s += a.symbol.coeff(i - k) * b.compact.matrix()(k, j);
        }
        block(i, j) += s;
      }
    }
  }

  // (iii) compact(a) * Toeplitz(b).
  if (na > 0) {
    for (int i = 0; i < na; ++i) {
      for (int j = 0; j < na + lo_b; ++j) {
        Complex s = 0.0;
        for (int k = 0; k < na; ++k) {
          s += a.compact.matrix()(i, k) * b.symbol.coeff(k - j);
        }
        block(i, j) += s;
      }
    }
  }

  // (iv) compact(a) * compact(b).
  if (na > 0 && nb > 0) {
    const int inner = std::min(na, nb);
    for (int i = 0; i < na; ++i) {
      for (int j = 0; j < nb; ++j) {
        Complex s = 0.0;
        for (int k = 0; k < inner; ++k) {
          s += a.compact.matrix()(i, k) * b.compact.matrix()(k, j);
        }
        block(i, j) += s;
      }
    }
  }

  return {sym, CompactBlock(block)};
}

StructuredOperator add(const StructuredOperator& a,
                       const StructuredOperator& b) {
  return {add(a.symbol, b.symbol), add(a.compact, b.compact)};
}

StructuredOperator subtract(const StructuredOperator& a,
                            const StructuredOperator& b) {
  return add(a, scale(-1.0, b));
}

StructuredOperator scale(Complex c, const StructuredOperator& a) {
  return {scale(c, a.symbol), scale(c, a.compact)};
}

StructuredOperator commutator(const StructuredOperator& a,
                              const StructuredOperator& b) {
  return subtract(compose(a, b), compose(b, a));
}

bool approx_equal(const StructuredOperator& a, const StructuredOperator& b,
                  double tol) {
  return approx_equal(a.symbol, b.symbol, tol) &&
         approx_equal(a.compact, b.compact, tol);
}

bool is_compact(const StructuredOperator& op) { return op.symbol.is_zero(); }

bool is_essential_isometry(const StructuredOperator& op) {
  return multiply(star(op.symbol), op.symbol).is_one();
}

int reach(const StructuredOperator& op) {
  return op.symbol.bandwidth() + op.compact.size();
}

}  // namespace calkin
