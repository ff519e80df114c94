// tests/test_plda.cc

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

#include <cmath>

#include "doctest.h"
#include "oracles.h"
#include "rwt/error.h"
#include "rwt/plda.h"
#include "rwt/rng.h"

namespace rwt {

TEST_SUITE("plda") {

TEST_CASE("scalar LLR worked by hand") {
  // d = 1, ac = wc = 1, mean 0, e = t = 1: same-speaker covariance
  // [[2,1],[1,2]], different-speaker [[2,0],[0,2]].
  const PldaModel m(Eigen::VectorXd::Zero(1), Eigen::MatrixXd::Ones(1, 1),
                    Eigen::MatrixXd::Ones(1, 1));
  const double expect =
      -0.5 * (std::log(3.0) - std::log(4.0) + 2.0 / 3.0 - 1.0);
  CHECK(m.ScorePair(Eigen::VectorXd::Ones(1), Eigen::VectorXd::Ones(1)) ==
        doctest::Approx(expect).epsilon(1e-14));
  CHECK(expect == doctest::Approx(0.3105077028925571).epsilon(1e-14));
}

TEST_CASE("agrees with the joint Gaussian oracle and is symmetric") {
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 1 + trial % 5;
    const Eigen::VectorXd mu = rng.normal_vector(d);
    const Eigen::MatrixXd ac = oracle::RandomSpd(d, 1.0, rng);
    const Eigen::MatrixXd wc = oracle::RandomSpd(d, 1.0, rng);
    const PldaModel m(mu, ac, wc);
    const Eigen::VectorXd e = rng.normal_vector(d), t = rng.normal_vector(d);
    CHECK(std::abs(m.ScorePair(e, t) - oracle::JointPldaLlr(mu, ac, wc, e, t)) <
          1e-8);
    CHECK(m.ScorePair(e, t) == m.ScorePair(t, e));
  }
}

TEST_CASE("no speaker variability gives a zero LLR") {
  Rng rng(1);
  const PldaModel m(Eigen::VectorXd::Zero(3), Eigen::MatrixXd::Zero(3, 3),
                    oracle::RandomSpd(3, 1.0, rng));
  for (int i = 0; i < 10; ++i)
    CHECK(m.ScorePair(rng.normal_vector(3), rng.normal_vector(3)) == 0.0);
}

TEST_CASE("rank truncation") {
  Eigen::Matrix3d a = Eigen::Vector3d(3, 2, 1).asDiagonal();
  const Eigen::MatrixXd t = TruncateRank(a, 2);
  CHECK(t(0, 0) == doctest::Approx(3));
  CHECK(t(1, 1) == doctest::Approx(2));
  CHECK(std::abs(t(2, 2)) < 1e-12);
  Eigen::Matrix2d neg;
  neg << 1, 0, 0, -1;
  CHECK(std::abs(TruncateRank(neg, 2)(1, 1)) < 1e-12);
  CHECK_THROWS_AS(PldaModel(Eigen::VectorXd::Zero(3), a, a, 4), ConfigError);
  CHECK_THROWS_AS(PldaModel(Eigen::VectorXd::Zero(3), a, a, 0), ConfigError);
  CHECK(PldaModel(Eigen::VectorXd::Zero(3), a, a, 3).ac() == a);
}

TEST_CASE("serialization round trip") {
  Rng rng(9);
  const PldaModel m(rng.normal_vector(4), oracle::RandomSpd(4, 1.0, rng),
                    oracle::RandomSpd(4, 1.0, rng), 2);
  const PldaModel back = PldaModel::Parse(m.Serialize({"x"}), "mem");
  CHECK(back.ac() == m.ac());
  CHECK(back.wc() == m.wc());
  CHECK(back.mean() == m.mean());
  CHECK(back.rank() == 2);
  const Eigen::VectorXd e = rng.normal_vector(4), t = rng.normal_vector(4);
  CHECK(back.ScorePair(e, t) == m.ScorePair(e, t));
}

TEST_CASE("training recovers generating covariances") {
  Rng rng(12);
  const int d = 3;
  Eigen::Matrix3d ac = Eigen::Vector3d(4, 2, 1).asDiagonal();
  Eigen::Matrix3d wc = Eigen::Vector3d(0.5, 0.3, 0.2).asDiagonal();
  VectorSet data(d);
  for (int s = 0; s < 2000; ++s) {
    const Eigen::VectorXd y = oracle::Gaussian(1, Eigen::VectorXd::Zero(d),
                                               ac, rng)[0];
    for (int k = 0; k < 10; ++k) {
      const Eigen::VectorXd x = oracle::Gaussian(1, y, wc, rng)[0];
      data.Add("s" + std::to_string(s) + "_" + std::to_string(k), "c",
               "s" + std::to_string(s), x);
    }
  }
  const PldaModel m = TrainPlda(data, std::nullopt);
  CHECK((m.wc() - wc).norm() / wc.norm() < 0.05);
  CHECK((m.ac() - ac).norm() / ac.norm() < 0.1);
}

TEST_CASE("training input validation") {
  VectorSet data(2);
  data.Add("a", "c", std::nullopt, Eigen::Vector2d(1, 2));
  data.Add("b", "c", "s", Eigen::Vector2d(1, 3));
  CHECK_THROWS_AS(TrainPlda(data, std::nullopt), DataError);
  VectorSet one(2);
  one.Add("a", "c", "s", Eigen::Vector2d(1, 2));
  one.Add("b", "c", "s", Eigen::Vector2d(2, 2));
  CHECK_THROWS_AS(TrainPlda(one, std::nullopt), DataError);
}

TEST_CASE("enrollment models average then normalize") {
  VectorSet enroll(2);
  enroll.Add("e1", "enroll", "spk", Eigen::Vector2d(1, 0));
  enroll.Add("e2", "enroll", "spk", Eigen::Vector2d(0, 1));
  enroll.Add("e3", "enroll", std::nullopt, Eigen::Vector2d(3, 4));
  const auto models = BuildEnrollmentModels(enroll);
  CHECK(models.at("spk")(0) == doctest::Approx(std::sqrt(0.5)));
  CHECK(ResolveEnrollmentModel(models, enroll, "e3")(1) ==
        doctest::Approx(0.8));
  CHECK_THROWS_AS(ResolveEnrollmentModel(models, enroll, "nobody"), DataError);
  VectorSet opposite(2);
  opposite.Add("x1", "enroll", "z", Eigen::Vector2d(1, 0));
  opposite.Add("x2", "enroll", "z", Eigen::Vector2d(-1, 0));
  CHECK_THROWS_AS(BuildEnrollmentModels(opposite), NumericalError);
}

TEST_CASE("trial scoring reports unresolved ids") {
  const PldaModel m(Eigen::VectorXd::Zero(2), Eigen::MatrixXd::Identity(2, 2),
                    Eigen::MatrixXd::Identity(2, 2));
  VectorSet enroll(2), test(2);
  enroll.Add("e", "enroll", "spk", Eigen::Vector2d(1, 0));
  test.Add("t", "test", "spk", Eigen::Vector2d(0.6, 0.8));
  TrialList trials;
  trials.Add({"spk", "t", TrialLabel::kTarget});
  const ScoreSet s = ScoreTrials(m, enroll, test, trials);
  CHECK(s.size() == 1);
  CHECK(s.scores()[0].score ==
        m.ScorePair(Eigen::Vector2d(1, 0), Eigen::Vector2d(0.6, 0.8)));
  trials.Add({"spk", "missing", TrialLabel::kNontarget});
  CHECK_THROWS_AS(ScoreTrials(m, enroll, test, trials), DataError);
}

}  // TEST_SUITE

}  // namespace rwt
