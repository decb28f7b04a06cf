#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "polyconv/dense.hpp"

using polyconv::ContractViolation;
using polyconv::InvalidParameter;
using polyconv::dense::dense_row;
using polyconv::dense::DenseConversionSpec;
using polyconv::dense::direct_apply;
using polyconv::dense::Leg;

namespace {

Eigen::MatrixXd densify(const DenseConversionSpec& spec) {
  const auto n = static_cast<Eigen::Index>(spec.n);
  Eigen::MatrixXd m(n, n);
  std::vector<double> row(spec.n);
  for (std::size_t j = 0; j < spec.n; ++j) {
    dense_row(spec, j, row);
    for (std::size_t k = 0; k < spec.n; ++k) {
      m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = row[k];
    }
  }
  return m;
}

void check_matrix(const DenseConversionSpec& spec,
                  const std::vector<std::vector<double>>& expect, double tol) {
  const Eigen::MatrixXd m = densify(spec);
  for (std::size_t j = 0; j < expect.size(); ++j) {
    for (std::size_t k = 0; k < expect[j].size(); ++k) {
      CHECK(m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) ==
            doctest::Approx(expect[j][k]).epsilon(tol).scale(1.0));
    }
  }
}

}  // namespace

TEST_CASE("legendre to chebyshev matches the hand-expanded 6x6 matrix") {
  // P_4 = 9/64 + 5/16 T_2 + 35/64 T_4, P_5 = 15/64 T_1 + 35/128 T_3 + ...
  check_matrix({.leg = Leg::leg2cheb, .n = 6},
               {{1, 0, 1.0 / 4, 0, 9.0 / 64, 0},
                {0, 1, 0, 3.0 / 8, 0, 15.0 / 64},
                {0, 0, 3.0 / 4, 0, 5.0 / 16, 0},
                {0, 0, 0, 5.0 / 8, 0, 35.0 / 128},
                {0, 0, 0, 0, 35.0 / 64, 0},
                {0, 0, 0, 0, 0, 63.0 / 128}},
               1e-14);
}

TEST_CASE("chebyshev to legendre matches the hand-expanded 6x6 matrix") {
  // T_4 = -1/15 P_0 - 16/21 P_2 + 64/35 P_4, T_5 = -1/7 P_1 - 8/9 P_3 + ...
  check_matrix({.leg = Leg::cheb2leg, .n = 6},
               {{1, 0, -1.0 / 3, 0, -1.0 / 15, 0},
                {0, 1, 0, -3.0 / 5, 0, -1.0 / 7},
                {0, 0, 4.0 / 3, 0, -16.0 / 21, 0},
                {0, 0, 0, 8.0 / 5, 0, -8.0 / 9},
                {0, 0, 0, 0, 64.0 / 35, 0},
                {0, 0, 0, 0, 0, 128.0 / 63}},
               1e-14);
}

TEST_CASE("ultraspherical quarter to three-quarters head entries") {
  const DenseConversionSpec spec{.leg = Leg::ultra, .n = 6, .p1 = 0.25,
                                 .p2 = 0.75};
  const auto row0 = dense_row(spec, 0);
  CHECK(row0[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(row0[2] == doctest::Approx(-1.0 / 14.0).epsilon(1e-14));
  CHECK(row0[4] == doctest::Approx(-5.0 / 616.0).epsilon(1e-14));
  // A_11 = lambda1/lambda2 exactly.
  const auto row1 = dense_row(spec, 1);
  CHECK(row1[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("jacobi head entries at an irrational beta") {
  // (alpha, beta) = (0, sqrt(2)/2) -> gamma = -1/4; references from an exact
  // symbolic expansion, truncated to doubles.
  const DenseConversionSpec spec{.leg = Leg::jacobi, .n = 4,
                                 .p1 = 0.0, .p2 = 0.70710678118654752440,
                                 .p3 = -0.25};
  const auto row0 = dense_row(spec, 0);
  CHECK(row0[0] == 1.0);
  CHECK(row0[1] == doctest::Approx(0.1736907400868205505659154).epsilon(1e-13));
  CHECK(row0[2] == doctest::Approx(0.08500594031350694168468774).epsilon(1e-13));
}

TEST_CASE("laguerre rows are pochhammer diagonals") {
  const auto row0 =
      dense_row({.leg = Leg::laguerre, .n = 6, .p1 = 0.7, .p2 = 0.2}, 0);
  const std::vector<double> want{1, 0.5, 3.0 / 8, 5.0 / 16, 35.0 / 128,
                                 63.0 / 256};
  for (std::size_t k = 0; k < 6; ++k) {
    CHECK(row0[k] == doctest::Approx(want[k]).epsilon(1e-14));
  }
  // Rows depend only on the diagonal offset.
  const auto row2 =
      dense_row({.leg = Leg::laguerre, .n = 6, .p1 = 0.7, .p2 = 0.2}, 2);
  CHECK(row2[3] == doctest::Approx(0.5).epsilon(1e-14));

  // Gap below -1 is fine: the Pochhammer product just changes sign pattern.
  const auto wide =
      dense_row({.leg = Leg::laguerre, .n = 5, .p1 = 0.3, .p2 = 2.0}, 0);
  CHECK(wide[1] == doctest::Approx(-1.7).epsilon(1e-14));
  CHECK(wide[2] == doctest::Approx(0.595).epsilon(1e-14));
  CHECK(wide[3] == doctest::Approx(0.0595).epsilon(1e-14));
  CHECK(wide[4] == doctest::Approx(0.0193375).epsilon(1e-14));
}

TEST_CASE("far-field entries agree with high-precision references") {
  // 30-digit mpmath evaluations of the closed-form entries, reached here
  // through hundreds of ratio-recurrence steps.
  std::vector<double> row(1002);
  dense_row({.leg = Leg::ultra, .n = 1002, .p1 = 0.25, .p2 = 0.75}, 37, row);
  CHECK(row[1001] ==
        doctest::Approx(-2.87477661543289560931986408544e-8).epsilon(1e-12));

  row.resize(901);
  dense_row({.leg = Leg::jacobi, .n = 901, .p1 = 0.1, .p2 = 0.3, .p3 = -0.4},
            40, row);
  CHECK(row[900] ==
        doctest::Approx(0.00583918792224409594532318206313).epsilon(1e-12));

  row.resize(501);
  dense_row({.leg = Leg::laguerre, .n = 501, .p1 = 0.7, .p2 = 0.2}, 3, row);
  CHECK(row[500] ==
        doctest::Approx(0.0253009973017286415226947469468).epsilon(1e-12));

  row.resize(260);
  dense_row({.leg = Leg::cheb2leg, .n = 260}, 113, row);
  CHECK(row[247] ==
        doctest::Approx(-0.00531069876130272446586057241125).epsilon(1e-12));
  dense_row({.leg = Leg::leg2cheb, .n = 260}, 113, row);
  CHECK(row[247] ==
        doctest::Approx(0.00578222028151643762973837193735).epsilon(1e-12));
}

TEST_CASE("rows are upper-triangular with parity structure") {
  const DenseConversionSpec specs[] = {
      {.leg = Leg::leg2cheb, .n = 40},
      {.leg = Leg::cheb2leg, .n = 40},
      {.leg = Leg::ultra, .n = 40, .p1 = 1.3, .p2 = 0.85},
      {.leg = Leg::jacobi, .n = 40, .p1 = 0.4, .p2 = -0.2, .p3 = -0.1},
      {.leg = Leg::laguerre, .n = 40, .p1 = -0.5, .p2 = 1.25},
  };
  for (const auto& spec : specs) {
    for (std::size_t j : {0UL, 7UL, 20UL, 39UL}) {
      const auto row = dense_row(spec, j);
      for (std::size_t k = 0; k < j; ++k) CHECK(row[k] == 0.0);
    }
  }
  // Odd diagonals vanish for the symmetric-weight families.
  for (const auto& spec : {specs[0], specs[1], specs[2]}) {
    const auto row = dense_row(spec, 5);
    for (std::size_t k = 6; k < spec.n; k += 2) CHECK(row[k] == 0.0);
  }
}

TEST_CASE("forward and backward dense matrices invert each other") {
  const std::size_t n = 257;
  const Eigen::MatrixXd m = densify({.leg = Leg::leg2cheb, .n = n});
  const Eigen::MatrixXd l = densify({.leg = Leg::cheb2leg, .n = n});
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(
      static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  CHECK((m * l - eye).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK((l * m - eye).cwiseAbs().maxCoeff() <= 1e-10);

  const Eigen::MatrixXd u1 =
      densify({.leg = Leg::ultra, .n = 64, .p1 = 0.25, .p2 = 0.75});
  const Eigen::MatrixXd u2 =
      densify({.leg = Leg::ultra, .n = 64, .p1 = 0.75, .p2 = 0.25});
  CHECK((u2 * u1 - Eigen::MatrixXd::Identity(64, 64)).cwiseAbs().maxCoeff() <=
        1e-11);

  const Eigen::MatrixXd j1 = densify(
      {.leg = Leg::jacobi, .n = 64, .p1 = 0.2, .p2 = -0.3, .p3 = -0.45});
  const Eigen::MatrixXd j2 = densify(
      {.leg = Leg::jacobi, .n = 64, .p1 = -0.45, .p2 = -0.3, .p3 = 0.2});
  CHECK((j2 * j1 - Eigen::MatrixXd::Identity(64, 64)).cwiseAbs().maxCoeff() <=
        1e-11);

  const Eigen::MatrixXd g1 =
      densify({.leg = Leg::laguerre, .n = 64, .p1 = 0.7, .p2 = 0.2});
  const Eigen::MatrixXd g2 =
      densify({.leg = Leg::laguerre, .n = 64, .p1 = 0.2, .p2 = 0.7});
  CHECK((g2 * g1 - Eigen::MatrixXd::Identity(64, 64)).cwiseAbs().maxCoeff() <=
        1e-11);
}

TEST_CASE("direct_apply streams rows with compensated dots") {
  // Spec example: e_2 through leg2cheb at N = 2.
  const auto y = direct_apply({.leg = Leg::leg2cheb, .n = 3},
                              std::vector<double>{0.0, 0.0, 1.0});
  CHECK(y[0] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(y[1] == 0.0);
  CHECK(y[2] == doctest::Approx(0.75).epsilon(1e-15));

  const auto zero = direct_apply({.leg = Leg::cheb2leg, .n = 32},
                                 std::vector<double>(32, 0.0));
  for (double v : zero) CHECK(v == 0.0);
}

TEST_CASE("dense layer validates parameters and indices") {
  CHECK_THROWS_AS(dense_row({.leg = Leg::ultra, .n = 4, .p1 = 0.5, .p2 = 1.8}, 0),
                  InvalidParameter);
  CHECK_THROWS_AS(
      dense_row({.leg = Leg::ultra, .n = 4, .p1 = -0.5, .p2 = 0.25}, 0),
      InvalidParameter);
  CHECK_THROWS_AS(
      dense_row({.leg = Leg::jacobi, .n = 4, .p1 = 0.5, .p2 = -1.5, .p3 = 0.2}, 0),
      InvalidParameter);
  CHECK_THROWS_AS(
      dense_row({.leg = Leg::jacobi, .n = 4, .p1 = 0.5, .p2 = 0.0, .p3 = 0.5}, 0),
      InvalidParameter);
  CHECK_THROWS_AS(
      dense_row({.leg = Leg::laguerre, .n = 4, .p1 = 1.5, .p2 = 0.5}, 0),
      InvalidParameter);
  CHECK_THROWS_AS(dense_row({.leg = Leg::leg2cheb, .n = 4}, 4),
                  ContractViolation);
  CHECK_THROWS_AS(direct_apply({.leg = Leg::leg2cheb, .n = 4},
                               std::vector<double>(3, 1.0)),
                  ContractViolation);
}
