// tests/test_stats.cc

// Copyright 2026  The rwt Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <vector>

#include "doctest.h"
#include "oracles.h"
#include "rwt/error.h"
#include "rwt/rng.h"
#include "rwt/stats.h"

namespace rwt {

TEST_SUITE("stats") {

TEST_CASE("default shrinkage switches at n = 2d") {
  CHECK(DefaultShrinkage(100, 50) == 0.1);
  CHECK(DefaultShrinkage(101, 50) == 0.0);
  CHECK(DefaultShrinkage(100, 200) == 0.1);
}

TEST_CASE("moments match explicit sums") {
  Rng rng(7);
  const int d = 6;
  const auto xs = oracle::Gaussian(40, Eigen::VectorXd::Ones(d),
                                   oracle::RandomSpd(d, 1.0, rng), rng);
  const Moments m = EstimateMoments(xs, "c", 0.0);
  CHECK(m.n == 40);
  CHECK(oracle::MaxAbs(m.mean - oracle::Mean(xs)) < 1e-12);
  const Eigen::MatrixXd s = oracle::Covariance(xs);
  CHECK(oracle::MaxAbs(m.cov - s - 1e-8 * Eigen::MatrixXd::Identity(d, d)) <
        1e-12);

  const Moments shrunk = EstimateMoments(xs, "c", 0.25);
  const double lambda = 0.25 * s.trace() / d + 1e-8;
  CHECK(oracle::MaxAbs(shrunk.cov - s -
                       lambda * Eigen::MatrixXd::Identity(d, d)) < 1e-12);
}

TEST_CASE("moments reject bad input") {
  std::vector<Eigen::VectorXd> one{Eigen::VectorXd::Zero(3)};
  CHECK_THROWS_AS(EstimateMoments(one, "c", 0.0), DataError);
  std::vector<Eigen::VectorXd> two(2, Eigen::VectorXd::Zero(3));
  CHECK_THROWS_AS(EstimateMoments(two, "c", 1.0), ConfigError);
  CHECK_THROWS_AS(EstimateMoments(two, "c", -0.1), ConfigError);
  // Duplicated samples still give an SPD covariance thanks to the floor.
  CHECK_NOTHROW(CholeskyLower(EstimateMoments(two, "c", 0.0).cov));
}

TEST_CASE("small-n shrinkage keeps the covariance factorizable") {
  Rng rng(3);
  const int d = 200;
  std::vector<Eigen::VectorXd> xs;
  for (int i = 0; i < 100; ++i) xs.push_back(rng.normal_vector(d));
  const Moments m = EstimateMoments(xs, "u", DefaultShrinkage(100, d));
  CHECK_NOTHROW(WhiteningMatrix(m));
}

TEST_CASE("Cholesky factor and inverse") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 1 + trial % 9;
    const Eigen::MatrixXd a = oracle::RandomSpd(d, 3.0, rng);
    const Eigen::MatrixXd l = CholeskyLower(a);
    CHECK(oracle::MaxAbs(l.triangularView<Eigen::StrictlyUpper>()
                             .toDenseMatrix()) == 0.0);
    CHECK(oracle::MaxAbs(l * l.transpose() - a) < 1e-10 * oracle::MaxAbs(a));
    const Eigen::MatrixXd w = WhiteningMatrix(a);
    CHECK(oracle::MaxAbs(w * a * w.transpose() -
                         Eigen::MatrixXd::Identity(d, d)) < 1e-8);
    CHECK(oracle::MaxAbs(InvertLowerTriangular(l) * l -
                         Eigen::MatrixXd::Identity(d, d)) < 1e-8);
  }
}

TEST_CASE("Cholesky of a 2x2 by hand") {
  Eigen::Matrix2d a;
  a << 4, 2, 2, 3;
  Eigen::Matrix2d expect;
  expect << 2, 0, 1, std::sqrt(2.0);
  CHECK(oracle::MaxAbs(CholeskyLower(a) - expect) < 1e-15);
}

TEST_CASE("Cholesky rejects indefinite input") {
  Eigen::Matrix2d a;
  a << 1, 2, 2, 1;
  CHECK_THROWS_AS(CholeskyLower(a), NumericalError);
  CHECK_THROWS_AS(CholeskyLower(Eigen::Matrix2d::Zero()), NumericalError);
}

TEST_CASE("Gaussian log-likelihood agrees with LLT oracle") {
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const int d = 1 + trial;
    Moments m;
    m.mean = rng.normal_vector(d);
    m.cov = oracle::RandomSpd(d, 2.0, rng);
    const Eigen::VectorXd x = rng.normal_vector(d);
    const double expect = oracle::LogDensity(x, m.mean, m.cov);
    CHECK(GaussianLogLik(m, x) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(GaussianDensity(m).LogLik(x) ==
          doctest::Approx(expect).epsilon(1e-12));
  }
  // Standard normal at the origin in one dimension.
  Moments unit{Eigen::VectorXd::Zero(1), Eigen::MatrixXd::Identity(1, 1), 2,
               "u"};
  CHECK(GaussianLogLik(unit, Eigen::VectorXd::Zero(1)) ==
        doctest::Approx(-0.9189385332046727).epsilon(1e-15));
}

}  // TEST_SUITE

}  // namespace rwt
