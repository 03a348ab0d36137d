#include <doctest.h>

#include "calkin/errors.hpp"
#include "calkin/isometrize.hpp"
#include "calkin/presets.hpp"
#include "support/oracle.hpp"

using namespace calkin;

TEST_CASE("kernel pairing of injective tuples is trivial") {
  const KernelPairing pairing = build_kernel_pairing(OperatorTuple{right_shift()});
  CHECK(pairing.dimension() == 0);
  CHECK(pairing.kernel_dim == 0);
  for (const auto& k : pairing.perturbation()) {
    CHECK(is_compact(k));
    CHECK(k.compact.is_zero());
  }
}

TEST_CASE("left shift hits the index obstruction") {
  try {
    build_kernel_pairing(OperatorTuple{left_shift()});
    FAIL("expected IndexObstruction");
  } catch (const IndexObstruction& e) {
    CHECK(e.kernel_dim == 1);
    CHECK(e.adjoint_kernel_dim == 0);
  }
}

TEST_CASE("rank-one spherical pair pairs e0 with (e0, 0)") {
  const OperatorTuple t = make_preset("rank-one-spherical");
  const KernelPairing pairing = build_kernel_pairing(t);
  REQUIRE(pairing.dimension() == 1);
  CHECK(std::abs(pairing.domain_basis(0, 0) - 1.0) < 1e-12);
  CHECK(pairing.domain_basis.col(0).norm() == doctest::Approx(1.0));
  // w1 = (e0, 0) stacked
  CHECK(std::abs(pairing.range_basis(0, 0) - 1.0) < 1e-12);
  CHECK(pairing.range_basis.col(0).tail(pairing.range_basis.rows() - 1).norm() <
        1e-12);

  // K1 = P0, K2 = 0
  const auto k = pairing.perturbation();
  REQUIRE(k.size() == 2);
  CHECK(approx_equal(k[0].compact, CompactBlock::unit(0, 0, 1.0)));
  CHECK(k[1].compact.is_zero());
}

TEST_CASE("perturb_and_gram on the worked examples") {
  // (R): T~ = T, A = 1
  const OperatorTuple r{right_shift()};
  const PerturbationResult pr = perturb_and_gram(r, build_kernel_pairing(r));
  CHECK(pr.gram_op.symbol.is_one());
  CHECK(pr.gram_op.compact.is_zero());

  // (R(1-P0)) with pairing e0 -> e0: T~ = R(1-P0) + P0, A = 1 exactly
  const OperatorTuple fsw = make_preset("fsw-rank-one");
  const PerturbationResult pf = perturb_and_gram(fsw, build_kernel_pairing(fsw));
  CHECK(pf.gram_op.symbol.is_one());
  CHECK(pf.gram_op.compact.frobenius_norm() < 1e-12);
  const StructuredOperator expected_perturbed =
      add(fsw[0], from_block(CompactBlock::unit(0, 0, 1.0)));
  CHECK(approx_equal(pf.perturbed[0], expected_perturbed));

  // rank-one spherical pair: cross terms vanish, A = 1 exactly
  const OperatorTuple pair = make_preset("rank-one-spherical");
  const PerturbationResult pp = perturb_and_gram(pair, build_kernel_pairing(pair));
  CHECK(pp.gram_op.symbol.is_one());
  CHECK(pp.gram_op.compact.frobenius_norm() < 1e-12);
}

TEST_CASE("perturb_and_gram rejects defective pairings") {
  // For T = R(1-P0), ker(T*) = span{e0, e1}. Pairing e0 with e2 leaves
  // T~ = T + e2<., e0> with the kernel vector e0 - e1, so A is singular.
  KernelPairing fake;
  fake.components = 1;
  fake.kernel_dim = 1;
  fake.domain_len = 1;
  fake.range_len = 3;
  fake.domain_basis = Matrix::Zero(1, 1);
  fake.domain_basis(0, 0) = 1.0;
  fake.range_basis = Matrix::Zero(3, 1);
  fake.range_basis(2, 0) = 1.0;
  CHECK_THROWS_AS(
      perturb_and_gram(OperatorTuple{make_preset("fsw-rank-one")[0]}, fake),
      NotPositive);
}

TEST_CASE("inverse_sqrt on diagonal blocks") {
  CHECK(approx_equal(inverse_sqrt(identity()), identity()));

  // A = 1 + 3 P0: (1+3)^{-1/2} = 1/2
  const StructuredOperator a =
      add(identity(), from_block(CompactBlock::unit(0, 0, 3.0)));
  CHECK(approx_equal(inverse_sqrt(a),
                     add(identity(), from_block(CompactBlock::unit(0, 0, -0.5)))));

  // A = 1 - P0/2: (1/2)^{-1/2} = sqrt(2)
  const StructuredOperator b =
      add(identity(), from_block(CompactBlock::unit(0, 0, -0.5)));
  const double root2m1 = std::sqrt(2.0) - 1.0;
  CHECK(approx_equal(
      inverse_sqrt(b),
      add(identity(), from_block(CompactBlock::unit(0, 0, root2m1)))));
}

TEST_CASE("inverse_sqrt validates its block") {
  CHECK_THROWS_AS(
      inverse_sqrt(add(identity(), from_block(CompactBlock::unit(0, 1, 1.0)))),
      NotHermitian);
  CHECK_THROWS_AS(
      inverse_sqrt(add(identity(), from_block(CompactBlock::unit(0, 0, -1.0)))),
      NotPositive);
  CHECK_THROWS_AS(inverse_sqrt(right_shift()), std::invalid_argument);
}

TEST_CASE("inverse_sqrt defect stays below 1e-9 on random positive blocks") {
  testing::Rng rng(61);
  for (int trial = 0; trial < 15; ++trial) {
    const CompactBlock raw = testing::random_block(rng, 6, 0.4);
    if (raw.is_zero()) continue;
    const Matrix h = 0.5 * (raw.matrix() + raw.matrix().adjoint());
    const StructuredOperator a = add(identity(), from_block(CompactBlock(h)));
    Eigen::SelfAdjointEigenSolver<Matrix> eig(
        Matrix::Identity(h.rows(), h.cols()) + h);
    if (eig.eigenvalues().minCoeff() < 1e-6) continue;
    const StructuredOperator r = inverse_sqrt(a);
    const StructuredOperator probe =
        subtract(compose(r, compose(a, r)), identity());
    CHECK(probe.symbol.is_zero());
    CHECK(probe.compact.frobenius_norm() <= 1e-9);
  }
}

TEST_CASE("isometrize fixes genuine isometries") {
  const IsometrizationReport report = isometrize(OperatorTuple{right_shift()});
  CHECK(report.isometry[0].symbol.coeffs() ==
        LaurentPoly::monomial(1).coeffs());
  CHECK(report.isometry[0].compact.is_zero());
  CHECK(report.perturbation[0].compact.is_zero());
  CHECK(report.gram_block_norm == 0.0);
}

TEST_CASE("isometrize the counterexample pair") {
  const OperatorTuple t = make_preset("chavan-counterexample");
  const IsometrizationReport report = isometrize(t);
  CHECK(report.kernel_dim == 0);
  CHECK(report.gram_block_norm <= 1e-8);
  CHECK(report.dense_residual <= 1e-8);
  CHECK(report.symbols_preserved);

  // V1 = (1/sqrt(2)) R (1 + (sqrt(2)-1) P0), so V1 e0 = e1
  const Matrix v1 = truncate(report.isometry[0], 3, 1);
  CHECK(std::abs(v1(1, 0) - 1.0) < 1e-12);
  CHECK(std::abs(v1(0, 0)) < 1e-12);
  CHECK(std::abs(v1(2, 0)) < 1e-12);

  // oracle check of V*V = I at N = 64
  CHECK(testing::max_abs_diff(testing::dense_gram(report.isometry, 64),
                              Matrix::Identity(64, 64)) < 1e-12);
}

TEST_CASE("isometrize rejects the left shift but accepts the right") {
  CHECK_THROWS_AS(isometrize(OperatorTuple{left_shift()}), IndexObstruction);
  CHECK_NOTHROW(isometrize(OperatorTuple{right_shift()}));
  CHECK_THROWS_AS(isometrize(OperatorTuple{right_shift(), right_shift()}),
                  NotEssentialIsometry);
}

TEST_CASE("isometrize the banded pair") {
  const IsometrizationReport report = isometrize(make_preset("banded-spherical"));
  CHECK(report.kernel_dim == 0);
  CHECK(report.gram_block_norm <= 1e-8);
  CHECK(report.dense_residual <= 1e-8);
}

TEST_CASE("negative winding forces the obstruction for n = 1") {
  // essential isometries with dim ker > dim ker of the adjoint
  CHECK_THROWS_AS(isometrize(OperatorTuple{toeplitz(LaurentPoly::monomial(-2))}),
                  IndexObstruction);
  testing::Rng rng(67);
  for (int trial = 0; trial < 5; ++trial) {
    const StructuredOperator op =
        add(left_shift(), from_block(testing::random_block(rng, 2, 0.2)));
    CHECK_THROWS_AS(isometrize(OperatorTuple{op}), IndexObstruction);
  }
}

TEST_CASE("n >= 2 never needs a kernel-dimension precondition") {
  testing::Rng rng(71);
  for (int trial = 0; trial < 6; ++trial) {
    const OperatorTuple t = testing::random_spherical_pair(rng);
    const IsometrizationReport report = isometrize(t);
    CHECK(report.gram_block_norm <= 1e-8);
    CHECK(report.dense_residual <= 1e-8);
    CHECK(report.symbols_preserved);
  }
}

TEST_CASE("isometrization is idempotent up to tolerance") {
  for (const char* name :
       {"chavan-counterexample", "banded-spherical", "rank-one-spherical"}) {
    const IsometrizationReport first = isometrize(make_preset(name));
    const IsometrizationReport second = isometrize(first.isometry);
    for (int i = 0; i < first.isometry.size(); ++i) {
      CHECK(second.perturbation[i].compact.frobenius_norm() <= 1e-8);
      CHECK(approx_equal(subtract(second.isometry[i], first.isometry[i]).compact,
                         CompactBlock::zero(), 1e-8));
      CHECK(subtract(second.isometry[i], first.isometry[i]).symbol.is_zero());
    }
  }
}
