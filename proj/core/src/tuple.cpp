#include "calkin/tuple.hpp"

#include <sstream>

#include "calkin/errors.hpp"

namespace calkin {

OperatorTuple::OperatorTuple(std::vector<StructuredOperator> entries)
    : entries_(std::move(entries)) {
  if (entries_.empty()) {
    throw std::invalid_argument("OperatorTuple: need at least one entry");
  }
}

OperatorTuple adjoint(const OperatorTuple& t) {
  std::vector<StructuredOperator> out;
  out.reserve(t.size());
  for (const auto& op : t.entries()) out.push_back(adjoint(op));
  return OperatorTuple(std::move(out));
}

OperatorTuple scale(Complex c, const OperatorTuple& t) {
  std::vector<StructuredOperator> out;
  out.reserve(t.size());
  for (const auto& op : t.entries()) out.push_back(scale(c, op));
  return OperatorTuple(std::move(out));
}

StructuredOperator gram(const OperatorTuple& t) {
  StructuredOperator total = toeplitz(LaurentPoly::zero());
  for (const auto& op : t.entries()) {
    total = add(total, compose(adjoint(op), op));
  }
  // Self-adjointness holds up to roundoff; symmetrize and keep it canonical.
  const LaurentPoly sym_star = star(total.symbol);
  if (!approx_equal(total.symbol, sym_star, kCoeffEqTol)) {
    throw Error("gram: symbol lost star-symmetry beyond 1e-12");
  }
  const CompactBlock block_adj = total.compact.adjoint();
  if (!approx_equal(total.compact, block_adj, kCoeffEqTol)) {
    throw Error("gram: compact part lost Hermitian symmetry beyond 1e-12");
  }
  return {scale(0.5, add(total.symbol, sym_star)),
          scale(0.5, add(total.compact, block_adj))};
}

SphericalIsometryDiagnostics is_essential_spherical_isometry(
    const OperatorTuple& t) {
  SphericalIsometryDiagnostics diag;
  const StructuredOperator g = gram(t);
  diag.gram_symbol = g.symbol;
  diag.gram_symbol_is_one = g.symbol.is_one();
  diag.gram_block_norm = subtract(identity(), g).compact.frobenius_norm();

  diag.essentially_commuting = true;
  for (int i = 0; i < t.size(); ++i) {
    for (int j = i + 1; j < t.size(); ++j) {
      const StructuredOperator c = commutator(t[i], t[j]);
      diag.commutator_block_norms.push_back(c.compact.frobenius_norm());
      if (!is_compact(c)) diag.essentially_commuting = false;
    }
  }
  diag.verdict = diag.gram_symbol_is_one && diag.essentially_commuting;
  return diag;
}

LeftInverseResult essential_left_inverse(const OperatorTuple& t) {
  const auto diag = is_essential_spherical_isometry(t);
  if (!diag.verdict) {
    throw NotEssentialIsometry(
        "essential_left_inverse: tuple is not an essential spherical "
        "isometry (gram symbol " +
        to_string(diag.gram_symbol) + ")");
  }
  const StructuredOperator defect = subtract(identity(), gram(t));
  return {adjoint(t), defect.compact, is_compact(defect)};
}

int capture_margin_floor(const OperatorTuple& t) {
  int floor = 0;
  for (const auto& op : t.entries()) floor = std::max(floor, reach(op));
  return floor;
}

int default_margin(const OperatorTuple& t) {
  return capture_margin_floor(t) + 2;
}

namespace {
void require_capture(const OperatorTuple& t, int N, int margin,
                     const char* who) {
  if (N <= 0) throw std::invalid_argument(std::string(who) + ": N must be positive");
  const int floor = capture_margin_floor(t);
  if (margin < floor) {
    std::ostringstream msg;
    msg << who << ": margin " << margin << " below capture floor " << floor;
    throw CaptureConditionViolated(msg.str());
  }
}
}  // namespace

Matrix column_truncate(const OperatorTuple& t, int N, int margin) {
  require_capture(t, N, margin, "column_truncate");
  const int h = N + margin;
  Matrix section(static_cast<Eigen::Index>(t.size()) * h, N);
  for (int i = 0; i < t.size(); ++i) {
    section.middleRows(static_cast<Eigen::Index>(i) * h, h) =
        truncate(t[i], h, N);
  }
  return section;
}

Matrix row_truncate(const OperatorTuple& t, int N, int margin) {
  require_capture(t, N, margin, "row_truncate");
  const int h = N + margin;
  Matrix section(h, static_cast<Eigen::Index>(t.size()) * N);
  for (int i = 0; i < t.size(); ++i) {
    section.middleCols(static_cast<Eigen::Index>(i) * N, N) =
        truncate(adjoint(t[i]), h, N);
  }
  return section;
}

double column_residual(const OperatorTuple& t, const Vector& v, int N,
                       int margin) {
  const int window = 2 * (N + margin);
  double sq = 0.0;
  for (const auto& op : t.entries()) {
    sq += (truncate(op, window, N) * v).squaredNorm();
  }
  return std::sqrt(sq);
}

double row_residual(const OperatorTuple& t, const Vector& stacked, int N,
                    int margin) {
  const int window = 2 * (N + margin);
  Vector image = Vector::Zero(window);
  for (int i = 0; i < t.size(); ++i) {
    image += truncate(adjoint(t[i]), window, N) *
             stacked.segment(static_cast<Eigen::Index>(i) * N, N);
  }
  return image.norm();
}

}  // namespace calkin
