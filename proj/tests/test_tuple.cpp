#include <doctest.h>

#include "calkin/errors.hpp"
#include "calkin/presets.hpp"
#include "calkin/spectral.hpp"
#include "calkin/tuple.hpp"
#include "support/oracle.hpp"

using namespace calkin;

TEST_CASE("gram of the counterexample pair is 1 - P0/2") {
  const OperatorTuple t = make_preset("chavan-counterexample");
  const StructuredOperator g = gram(t);
  CHECK(g.symbol.is_one());
  CHECK(approx_equal(g.compact, CompactBlock::unit(0, 0, -0.5)));
  CHECK(testing::max_abs_diff(truncate(g, 16, 16), testing::dense_gram(t, 16)) <
        1e-14);
}

TEST_CASE("gram of the single right shift is exactly 1") {
  const StructuredOperator g = gram(OperatorTuple{right_shift()});
  CHECK(g.symbol.is_one());
  CHECK(g.compact.is_zero());
}

TEST_CASE("gram of the banded pair against the dense oracle") {
  const OperatorTuple t = make_preset("banded-spherical");
  const StructuredOperator g = gram(t);
  CHECK(g.symbol.is_one());
  CHECK(testing::max_abs_diff(truncate(g, 24, 24), testing::dense_gram(t, 24)) <
        1e-13);
  // here the correction vanishes identically: the gram is 1 on the nose
  CHECK(g.compact.is_zero());
}

TEST_CASE("gram symbol equals sum_of_squares of the entry symbols") {
  testing::Rng rng(43);
  for (int trial = 0; trial < 15; ++trial) {
    const OperatorTuple t = testing::random_spherical_pair(rng);
    std::vector<LaurentPoly> symbols;
    for (const auto& op : t.entries()) symbols.push_back(op.symbol);
    CHECK(approx_equal(gram(t).symbol, sum_of_squares(symbols)));
  }
}

TEST_CASE("spherical isometry test accepts the paper pairs") {
  CHECK(is_essential_spherical_isometry(make_preset("chavan-counterexample"))
            .verdict);
  CHECK(is_essential_spherical_isometry(make_preset("banded-spherical")).verdict);
  CHECK(is_essential_spherical_isometry(make_preset("rank-one-spherical"))
            .verdict);

  // (R, R)/sqrt(2) still works: |z|^2 (1/2 + 1/2) = 1 ...
  const double inv_root2 = 1.0 / std::sqrt(2.0);
  CHECK(is_essential_spherical_isometry(
            OperatorTuple{scale(inv_root2, right_shift()),
                          scale(inv_root2, right_shift())})
            .verdict);

  // ... while unscaled (R, R) has gram symbol 2
  const auto diag =
      is_essential_spherical_isometry(OperatorTuple{right_shift(), right_shift()});
  CHECK_FALSE(diag.verdict);
  CHECK_FALSE(diag.gram_symbol_is_one);
  CHECK(diag.essentially_commuting);
}

TEST_CASE("all pairwise commutators in the class are compact") {
  testing::Rng rng(47);
  for (int trial = 0; trial < 10; ++trial) {
    const OperatorTuple t = testing::random_spherical_pair(rng);
    const auto diag = is_essential_spherical_isometry(t);
    CHECK(diag.essentially_commuting);
    CHECK(diag.verdict);
  }
}

TEST_CASE("essential_left_inverse produces the adjoint row") {
  const LeftInverseResult single = essential_left_inverse(OperatorTuple{right_shift()});
  CHECK(single.defect_is_compact);
  CHECK(single.defect.is_zero());
  CHECK(approx_equal(single.row[0], left_shift()));

  const LeftInverseResult pair =
      essential_left_inverse(make_preset("chavan-counterexample"));
  CHECK(pair.defect_is_compact);
  CHECK(approx_equal(pair.defect, CompactBlock::unit(0, 0, 0.5)));

  CHECK_THROWS_AS(
      essential_left_inverse(OperatorTuple{right_shift(), right_shift()}),
      NotEssentialIsometry);
}

TEST_CASE("column and row sections have the documented shapes") {
  const OperatorTuple r{right_shift()};
  const Matrix col = column_truncate(r, 2, 1);
  Matrix expect_col(3, 2);
  expect_col << 0, 0, 1, 0, 0, 1;
  CHECK(testing::max_abs_diff(col, expect_col) == 0.0);

  const Matrix row = row_truncate(r, 2, 1);
  Matrix expect_row(3, 2);
  expect_row << 0, 1, 0, 0, 0, 0;
  CHECK(testing::max_abs_diff(row, expect_row) == 0.0);

  // rank-nullity at N = 4, margin 1: 8 columns, at most 5 independent rows
  const OperatorTuple pair = make_preset("chavan-counterexample");
  const KernelBasis kb = kernel_basis(row_truncate(pair, 4, 1));
  CHECK(kb.dimension() >= 3);
}

TEST_CASE("sections reject margins below the capture floor") {
  const OperatorTuple banded = make_preset("banded-spherical");
  CHECK(capture_margin_floor(banded) == 2);
  CHECK(default_margin(banded) == 4);
  CHECK_THROWS_AS(column_truncate(banded, 8, 1), CaptureConditionViolated);
  CHECK_THROWS_AS(row_truncate(banded, 8, 1), CaptureConditionViolated);
}

TEST_CASE("section kernel vectors are exact kernel vectors when captured") {
  testing::Rng rng(53);
  for (int trial = 0; trial < 8; ++trial) {
    const OperatorTuple t = testing::random_spherical_pair(rng);
    const int margin = default_margin(t);
    const int N = 24;

    const KernelBasis row_kb = kernel_basis(row_truncate(t, N, margin));
    for (int j = 0; j < row_kb.dimension(); ++j) {
      CHECK(row_residual(t, row_kb.vectors.col(j), N, margin) < 1e-10);
    }

    const KernelBasis col_kb = kernel_basis(column_truncate(t, N, margin));
    for (int j = 0; j < col_kb.dimension(); ++j) {
      CHECK(column_residual(t, col_kb.vectors.col(j), N, margin) < 1e-10);
    }
  }
}

TEST_CASE("tuples need at least one entry") {
  CHECK_THROWS_AS(OperatorTuple(std::vector<StructuredOperator>{}),
                  std::invalid_argument);
}
