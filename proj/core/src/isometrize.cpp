#include "calkin/isometrize.hpp"

#include <Eigen/Eigenvalues>

#include <sstream>

#include "calkin/errors.hpp"

namespace calkin {

namespace {

constexpr double kTailMassTol = 1e-12;

// Shortest prefix carrying all but kTailMassTol of every column's mass.
int support_length(const Matrix& vectors) {
  int len = 0;
  for (int j = 0; j < vectors.cols(); ++j) {
    int L = static_cast<int>(vectors.rows());
    while (L > len && vectors.col(j).tail(vectors.rows() - (L - 1)).norm() <=
                          kTailMassTol) {
      --L;
    }
    len = std::max(len, L);
  }
  return len;
}

// Truncate an orthonormal basis to a prefix; re-orthonormalize only when the
// cut moved mass. Returns whether the truncation was lossless.
bool truncate_basis(Matrix& basis, int len) {
  const Matrix cut = basis.topRows(len);
  const double defect =
      (cut.adjoint() * cut - Matrix::Identity(cut.cols(), cut.cols())).norm();
  basis = cut;
  if (defect > 1e-13) {
    Eigen::HouseholderQR<Matrix> qr(basis);
    basis = Matrix(qr.householderQ() * Matrix::Identity(len, basis.cols()));
    basis = canonicalize_columns(std::move(basis));
    return false;
  }
  return true;
}

}  // namespace

std::vector<StructuredOperator> KernelPairing::perturbation() const {
  std::vector<StructuredOperator> out;
  out.reserve(components);
  for (int i = 0; i < components; ++i) {
    if (dimension() == 0) {
      out.push_back(from_block(CompactBlock::zero()));
      continue;
    }
    const Matrix w_i = range_basis.middleRows(
        static_cast<Eigen::Index>(i) * range_len, range_len);
    out.push_back(from_block(CompactBlock(w_i * domain_basis.adjoint())));
  }
  return out;
}

KernelPairing build_kernel_pairing(const OperatorTuple& t, double tol) {
  KernelPairing pairing;
  pairing.components = t.size();

  KernelBasis joint = stabilized_joint_kernel(t, 32, tol);
  const int d = joint.dimension();
  pairing.kernel_dim = d;
  pairing.exact = joint.exact;

  if (t.size() == 1) {
    KernelBasis adj = stabilized_joint_kernel(OperatorTuple{adjoint(t[0])}, 32, tol);
    pairing.cokernel_certified_dim = adj.dimension();
    if (d > adj.dimension()) {
      std::ostringstream msg;
      msg << "build_kernel_pairing: dim ker(T) = " << d
          << " exceeds dim ker(T*) = " << adj.dimension()
          << "; no compact perturbation to an isometry exists";
      throw IndexObstruction(msg.str(), d, adj.dimension());
    }
    if (d == 0) return pairing;

    Matrix u = joint.vectors;
    Matrix w = adj.vectors.leftCols(d);
    const int lu = support_length(u);
    const int lw = support_length(w);
    pairing.exact = truncate_basis(u, lu) && pairing.exact;
    pairing.exact = truncate_basis(w, lw) && adj.exact && pairing.exact;
    pairing.domain_basis = std::move(u);
    pairing.range_basis = std::move(w);
    pairing.domain_len = lu;
    pairing.range_len = lw;
    return pairing;
  }

  if (d == 0) return pairing;

  // Harvest d certified row-kernel vectors at the smallest adequate size:
  // (n-1)*N - margin >= d with slack.
  const int margin = default_margin(t);
  int base = 8;
  while ((t.size() - 1) * base - margin < d + 2) base *= 2;
  const RowKernelCertificate cert =
      row_kernel_growth_certificate(t, {base, 2 * base}, tol);
  const KernelBasis& harvest = cert.entries.front().basis;
  pairing.cokernel_certified_dim = harvest.dimension();

  Matrix u = joint.vectors;
  const int lu = support_length(u);
  pairing.exact = truncate_basis(u, lu) && harvest.exact && pairing.exact;

  // Stacked w vectors: keep a common per-component prefix.
  const int n = t.size();
  const int per = harvest.section_size;
  Matrix w_full = harvest.vectors.leftCols(d);
  int lw = 0;
  for (int i = 0; i < n; ++i) {
    lw = std::max(lw, support_length(w_full.middleRows(
                          static_cast<Eigen::Index>(i) * per, per)));
  }
  Matrix w(static_cast<Eigen::Index>(n) * lw, d);
  for (int i = 0; i < n; ++i) {
    w.middleRows(static_cast<Eigen::Index>(i) * lw, lw) =
        w_full.middleRows(static_cast<Eigen::Index>(i) * per, lw);
  }
  const double defect =
      (w.adjoint() * w - Matrix::Identity(d, d)).norm();
  if (defect > 1e-13) {
    Eigen::HouseholderQR<Matrix> qr(w);
    w = Matrix(qr.householderQ() *
               Matrix::Identity(static_cast<Eigen::Index>(n) * lw, d));
    w = canonicalize_columns(std::move(w));
    pairing.exact = false;
  }

  pairing.domain_basis = std::move(u);
  pairing.range_basis = std::move(w);
  pairing.domain_len = lu;
  pairing.range_len = lw;
  return pairing;
}

PerturbationResult perturb_and_gram(const OperatorTuple& t,
                                    const KernelPairing& pairing) {
  std::vector<StructuredOperator> k = pairing.perturbation();
  std::vector<StructuredOperator> perturbed;
  perturbed.reserve(t.size());
  for (int i = 0; i < t.size(); ++i) perturbed.push_back(add(t[i], k[i]));

  PerturbationResult result{OperatorTuple(std::move(perturbed)), std::move(k),
                            identity(), 1.0};
  StructuredOperator a = gram(result.perturbed);
  if (!a.symbol.is_one()) {
    throw NotEssentialIsometry(
        "perturb_and_gram: gram symbol of the perturbed tuple is not 1: " +
        to_string(a.symbol));
  }
  a.symbol = LaurentPoly::one();  // snap roundoff; deviation was <= 1e-12

  const int n0 = a.compact.size();
  if (n0 > 0) {
    const Matrix c = a.compact.matrix();
    if ((c - c.adjoint()).norm() > 1e-10) {
      throw NotHermitian("perturb_and_gram: gram block is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> eig(
        Matrix::Identity(n0, n0) + 0.5 * (c + c.adjoint()));
    result.min_eigenvalue = eig.eigenvalues().minCoeff();
    if (result.min_eigenvalue < kPositivityFloor) {
      std::ostringstream msg;
      msg << "perturb_and_gram: I + C has eigenvalue " << result.min_eigenvalue
          << " below " << kPositivityFloor
          << " (defective pairing: some w_i is not in ker(T*))";
      throw NotPositive(msg.str(), result.min_eigenvalue);
    }
  }
  result.gram_op = std::move(a);
  return result;
}

StructuredOperator inverse_sqrt(const StructuredOperator& a) {
  if (!a.symbol.is_one()) {
    throw std::invalid_argument("inverse_sqrt: symbol must be 1, got " +
                                to_string(a.symbol));
  }
  const int n0 = a.compact.size();
  if (n0 == 0) return identity();

  const Matrix c = a.compact.matrix();
  if ((c - c.adjoint()).norm() > 1e-10) {
    throw NotHermitian("inverse_sqrt: block is not Hermitian within 1e-10");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (c + c.adjoint()));
  const Eigen::VectorXd lambda = eig.eigenvalues();
  const double min_eig = 1.0 + lambda.minCoeff();
  if (min_eig < kPositivityFloor) {
    throw NotPositive("inverse_sqrt: I + C has eigenvalue below the floor",
                      min_eig);
  }

  Eigen::VectorXd d(n0);
  for (int i = 0; i < n0; ++i) d(i) = 1.0 / std::sqrt(1.0 + lambda(i)) - 1.0;
  const Matrix block =
      eig.eigenvectors() * d.asDiagonal() * eig.eigenvectors().adjoint();
  StructuredOperator result{LaurentPoly::one(), CompactBlock(block)};

  // r A r = 1 up to block roundoff; anything worse is a logic error.
  const StructuredOperator probe =
      subtract(compose(result, compose(a, result)), identity());
  if (!probe.symbol.is_zero() ||
      probe.compact.frobenius_norm() > kInverseSqrtResidualTol) {
    throw Error("inverse_sqrt: verification r*A*r = 1 failed");
  }
  return result;
}

IsometrizationReport isometrize(const OperatorTuple& t) {
  const auto diag = is_essential_spherical_isometry(t);
  if (!diag.verdict) {
    throw NotEssentialIsometry(
        "isometrize: input is not an essential spherical isometry (gram "
        "symbol " +
        to_string(diag.gram_symbol) + ")");
  }

  const KernelPairing pairing = build_kernel_pairing(t);
  PerturbationResult p = perturb_and_gram(t, pairing);
  const StructuredOperator root = inverse_sqrt(p.gram_op);

  std::vector<StructuredOperator> v;
  v.reserve(t.size());
  for (const auto& op : p.perturbed.entries()) v.push_back(compose(op, root));

  IsometrizationReport report(t, OperatorTuple(std::move(v)));
  report.perturbation = std::move(p.perturbation);
  report.kernel_dim = pairing.kernel_dim;
  report.cokernel_certified_dim = pairing.cokernel_certified_dim;
  report.exact = pairing.exact;

  // Postconditions.
  report.symbols_preserved = true;
  for (int i = 0; i < t.size(); ++i) {
    if (report.isometry[i].symbol.coeffs() != t[i].symbol.coeffs()) {
      report.symbols_preserved = false;
    }
  }
  if (!report.symbols_preserved) {
    throw Error("isometrize: perturbation failed to stay compact");
  }

  const auto v_diag = is_essential_spherical_isometry(report.isometry);
  const StructuredOperator v_gram = gram(report.isometry);
  report.gram_block_norm = v_gram.compact.frobenius_norm();
  if (!v_diag.verdict || report.gram_block_norm > kResidualTol) {
    throw Error("isometrize: V*V = 1 postcondition failed in the block");
  }

  // Dense cross-check of V*V at a fixed truncation size.
  const int N = kDenseCheckSize;
  const int margin = default_margin(report.isometry);
  Matrix dense = Matrix::Zero(N, N);
  for (const auto& op : report.isometry.entries()) {
    const Matrix section = truncate(op, N + margin, N);
    dense += section.adjoint() * section;
  }
  report.dense_residual = (dense - Matrix::Identity(N, N)).norm();
  if (report.dense_residual > kResidualTol) {
    throw Error("isometrize: dense residual check failed at N = 256");
  }
  return report;
}

}  // namespace calkin
