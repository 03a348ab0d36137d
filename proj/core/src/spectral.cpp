#include "calkin/spectral.hpp"

#include <Eigen/SVD>

#include <sstream>

#include "calkin/errors.hpp"

namespace calkin {

KernelBasis kernel_basis(const Matrix& section, double tol) {
  if (tol <= 0.0) {
    throw std::invalid_argument("kernel_basis: tol must be positive");
  }
  const int cols = static_cast<int>(section.cols());

  Eigen::BDCSVD<Matrix> svd(section, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const int computed = static_cast<int>(sv.size());

  int small = 0;
  for (int i = 0; i < computed; ++i) {
    if (sv(i) < tol) {
      ++small;
    } else if (sv(i) < 10.0 * tol) {
      std::ostringstream msg;
      msg << "kernel_basis: singular value " << sv(i)
          << " inside the ambiguous band [" << tol << ", " << 10.0 * tol
          << "); grow the section";
      throw ToleranceAmbiguous(msg.str());
    }
  }

  // Wide sections carry cols - computed implicit zero singular values.
  const int dim = small + (cols - computed);
  KernelBasis basis;
  basis.vectors = svd.matrixV().rightCols(dim);
  return basis;
}

Matrix canonicalize_columns(Matrix basis, double pivot_tol) {
  const int rows = static_cast<int>(basis.rows());
  const int d = static_cast<int>(basis.cols());
  int col = 0;
  for (int r = 0; r < rows && col < d; ++r) {
    const int rem = d - col;
    Eigen::RowVectorXcd row = basis.row(r).segment(col, rem);
    const double rn = row.norm();
    if (rn <= pivot_tol) continue;
    // Unitary on the remaining columns sending e_0 to row^H / rn: column
    // `col` absorbs all of row r, later columns become zero there.
    Vector v = row.adjoint() / rn;
    Eigen::HouseholderQR<Matrix> qr(v);
    Matrix g = qr.householderQ();
    const Complex r00 = qr.matrixQR()(0, 0);
    g.col(0) *= r00;  // make g.col(0) == v exactly up to roundoff
    basis.middleCols(col, rem) = basis.middleCols(col, rem) * g;
    // Phase convention: leading entry positive real (already rn > 0, but
    // scrub roundoff in the imaginary part of later pivots).
    const Complex lead = basis(r, col);
    if (std::abs(lead) > 0) basis.col(col) *= std::abs(lead) / lead;
    ++col;
  }
  return basis;
}

namespace {

KernelBasis certified_column_kernel(const OperatorTuple& t, int N, int margin,
                                    double tol) {
  KernelBasis kb = kernel_basis(column_truncate(t, N, margin), tol);
  kb.section_size = N;
  kb.margin = margin;
  kb.vectors = canonicalize_columns(std::move(kb.vectors));
  kb.exact = true;
  for (int j = 0; j < kb.dimension(); ++j) {
    const double r = column_residual(t, kb.vectors.col(j), N, margin);
    kb.residuals.push_back(r);
    if (r > tol) kb.exact = false;
  }
  return kb;
}

KernelBasis certified_row_kernel(const OperatorTuple& t, int N, int margin,
                                 double tol) {
  KernelBasis kb = kernel_basis(row_truncate(t, N, margin), tol);
  kb.section_size = N;
  kb.margin = margin;
  kb.vectors = canonicalize_columns(std::move(kb.vectors));
  kb.exact = true;
  for (int j = 0; j < kb.dimension(); ++j) {
    const double r = row_residual(t, kb.vectors.col(j), N, margin);
    kb.residuals.push_back(r);
    if (r > tol) kb.exact = false;
  }
  return kb;
}

}  // namespace

KernelBasis stabilized_joint_kernel(const OperatorTuple& t, int base_size,
                                    double tol) {
  if (base_size <= 0) {
    throw std::invalid_argument("stabilized_joint_kernel: base_size > 0");
  }
  const int margin = default_margin(t);
  std::vector<int> dims;
  KernelBasis last;
  for (const int N : {base_size, 2 * base_size, 4 * base_size}) {
    last = certified_column_kernel(t, N, margin, tol);
    if (!last.exact) {
      throw CertificateFailed(
          "stabilized_joint_kernel: a section kernel vector failed the "
          "infinite-operator residual check");
    }
    dims.push_back(last.dimension());
  }
  if (dims[0] != dims[1] || dims[1] != dims[2]) {
    std::ostringstream msg;
    msg << "stabilized_joint_kernel: dimensions " << dims[0] << ", " << dims[1]
        << ", " << dims[2] << " did not stabilize";
    throw NotStabilized(msg.str(), dims);
  }
  return last;
}

std::vector<std::pair<int, int>> RowKernelCertificate::dimensions() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.emplace_back(e.section_size, e.basis.dimension());
  return out;
}

RowKernelCertificate row_kernel_growth_certificate(const OperatorTuple& t,
                                                   const std::vector<int>& sizes,
                                                   double tol) {
  if (t.size() < 2) {
    throw std::invalid_argument(
        "row_kernel_growth_certificate: requires a tuple with n >= 2");
  }
  if (sizes.empty()) {
    throw std::invalid_argument("row_kernel_growth_certificate: empty sizes");
  }
  for (size_t i = 1; i < sizes.size(); ++i) {
    if (sizes[i] <= sizes[i - 1]) {
      throw std::invalid_argument(
          "row_kernel_growth_certificate: sizes must be strictly increasing");
    }
  }

  RowKernelCertificate cert;
  cert.margin = default_margin(t);
  for (const int N : sizes) {
    KernelBasis kb = certified_row_kernel(t, N, cert.margin, tol);
    if (!kb.exact) {
      throw CertificateFailed(
          "row_kernel_growth_certificate: vector failed the residual check "
          "at N = " + std::to_string(N));
    }
    const int floor = (t.size() - 1) * N - cert.margin;
    if (kb.dimension() < floor) {
      std::ostringstream msg;
      msg << "row_kernel_growth_certificate: dimension " << kb.dimension()
          << " at N = " << N << " below rank-nullity floor " << floor;
      throw CertificateFailed(msg.str());
    }
    cert.entries.push_back({N, std::move(kb)});
  }

  for (size_t i = 1; i < cert.entries.size(); ++i) {
    if (cert.entries[i].basis.dimension() <=
        cert.entries[i - 1].basis.dimension()) {
      std::ostringstream msg;
      msg << "row_kernel_growth_certificate: certified dimensions not "
             "strictly increasing ("
          << cert.entries[i - 1].basis.dimension() << " at N = "
          << cert.entries[i - 1].section_size << ", "
          << cert.entries[i].basis.dimension() << " at N = "
          << cert.entries[i].section_size << ")";
      throw MonotonicityFailed(msg.str());
    }
  }
  return cert;
}

ClosedRangeWitness closed_range_witness(const OperatorTuple& t,
                                        const std::vector<int>& sizes) {
  // Precondition: the joint kernel stabilizes (errors propagate).
  stabilized_joint_kernel(t);

  const int margin = default_margin(t);
  ClosedRangeWitness witness;
  witness.minimum = std::numeric_limits<double>::infinity();
  for (const int N : sizes) {
    const Matrix section = column_truncate(t, N, margin);
    const KernelBasis kb = kernel_basis(section);
    double sigma_min;
    if (kb.dimension() == 0) {
      Eigen::BDCSVD<Matrix> svd(section);
      sigma_min = svd.singularValues().minCoeff();
    } else {
      // Restrict to the orthogonal complement of the section kernel.
      Eigen::HouseholderQR<Matrix> qr(kb.vectors);
      Matrix q = qr.householderQ() * Matrix::Identity(N, N);
      const Matrix complement = q.rightCols(N - kb.dimension());
      Eigen::BDCSVD<Matrix> svd(section * complement);
      sigma_min = svd.singularValues().minCoeff();
    }
    witness.values.emplace_back(N, sigma_min);
    witness.minimum = std::min(witness.minimum, sigma_min);
  }
  return witness;
}

}  // namespace calkin
