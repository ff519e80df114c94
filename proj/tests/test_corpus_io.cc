// tests/test_corpus_io.cc

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

#include <sstream>

#include "doctest.h"
#include "rwt/corpus_io.h"
#include "rwt/error.h"

namespace rwt {
namespace {

VectorSet SmallSet() {
  VectorSet set(3);
  set.Add("a1", "sre", "spk1", Eigen::Vector3d(1.0, -2.5, 0.1));
  set.Add("a2", "sre", std::nullopt, Eigen::Vector3d(1e-300, 3.0, -7.0));
  set.Add("b1", "swb", "spk2", Eigen::Vector3d(0.3, 1.0 / 3.0, 2e10));
  return set;
}

}  // namespace

TEST_SUITE("corpus_io") {

TEST_CASE("vector table round trip is exact") {
  const VectorSet set = SmallSet();
  std::ostringstream os;
  WriteVectorTable(set, os, {"config_hash=abc"});
  std::istringstream is(os.str());
  const VectorSet back = ReadVectorTable(is, "mem");
  CHECK(back == set);
  CHECK(back[1].speaker == std::nullopt);
  CHECK(back.CorpusIds() == std::vector<std::string>{"sre", "swb"});
}

TEST_CASE("FormatReal and ParseReal round trip") {
  for (double v : {0.0, -0.0, 1.0 / 3.0, 1e-308, 6.02214076e23, -2.5})
    CHECK(ParseReal(FormatReal(v)) == v);
  CHECK(ParseReal("+1.5") == 1.5);
  CHECK_THROWS_AS(ParseReal("1.5x"), DataError);
  CHECK_THROWS_AS(ParseReal("nan"), DataError);
  CHECK_THROWS_AS(ParseReal("inf"), DataError);
  CHECK_THROWS_AS(ParseReal(""), DataError);
}

TEST_CASE("dimension mismatch names the line") {
  std::istringstream is("#dim=3\nx\tc\t-\t1 2 3\ny\tc\t-\t1 2\n");
  try {
    ReadVectorTable(is, "bad.tsv");
    FAIL("expected DataError");
  } catch (const DataError &e) {
    const std::string what = e.what();
    CHECK(what.find("dimension mismatch at line 3") != std::string::npos);
    CHECK(what.find("bad.tsv") != std::string::npos);
  }
}

TEST_CASE("malformed vector tables are rejected") {
  auto parse = [](const std::string &text) {
    std::istringstream is(text);
    return ReadVectorTable(is, "t");
  };
  CHECK_THROWS_AS(parse("x\tc\t-\t1 2\n"), DataError);  // no header
  CHECK_THROWS_AS(parse("#dim=2\nx\tc\t1 2\n"), DataError);
  CHECK_THROWS_AS(parse("#dim=2\nx\tc\t-\t1 nan\n"), DataError);
  CHECK_THROWS_AS(parse("#dim=2\nx\tc\t-\t1 2\nx\tc\t-\t3 4\n"), DataError);
  CHECK_THROWS_AS(parse("#dim=0\n"), DataError);
  CHECK(parse("#dim=2\n# comment\nx\tc\t-\t1 2\n").size() == 1);
}

TEST_CASE("VectorSet validation") {
  VectorSet set(2);
  CHECK_THROWS_AS(set.Add("a", "c", std::nullopt, Eigen::Vector3d::Zero()),
                  DataError);
  CHECK_THROWS_AS(set.Add("has space", "c", std::nullopt,
                          Eigen::Vector2d::Zero()), DataError);
  CHECK_THROWS_AS(set.Add("a", "c", std::nullopt,
                          Eigen::Vector2d(1.0, std::nan(""))), DataError);
  set.Add("a", "c", std::nullopt, Eigen::Vector2d::Zero());
  CHECK(set.Find("a") != nullptr);
  CHECK(set.Find("b") == nullptr);
}

TEST_CASE("SelectCorpora and Concat") {
  const VectorSet set = SmallSet();
  const VectorSet sre = set.SelectCorpora({"sre"});
  CHECK(sre.size() == 2);
  const VectorSet swb = set.SelectCorpora({"swb"});
  const VectorSet both = VectorSet::Concat({&sre, &swb});
  CHECK(both == set);
  CHECK_THROWS_AS(VectorSet::Concat({&sre, &sre}), DataError);
}

TEST_CASE("trials and scores round trip") {
  TrialList trials;
  trials.Add({"m1", "t1", TrialLabel::kTarget});
  trials.Add({"m1", "t2", TrialLabel::kNontarget});
  trials.Add({"m2", "t1", TrialLabel::kUnknown});
  CHECK_THROWS_AS(trials.Add({"m1", "t1", TrialLabel::kTarget}), DataError);
  std::ostringstream os;
  WriteTrials(trials, os, {"hello"});
  std::istringstream is(os.str());
  CHECK(ReadTrials(is, "mem") == trials);

  ScoreSet scores;
  scores.Add({"m1", "t1", 1.0 / 7.0, TrialLabel::kTarget});
  scores.Add({"m1", "t2", -3e-9, TrialLabel::kNontarget});
  CHECK_THROWS_AS(scores.Add({"m1", "t3", INFINITY, TrialLabel::kTarget}),
                  DataError);
  std::ostringstream so;
  WriteScores(scores, so);
  std::istringstream si(so.str());
  CHECK(ReadScores(si, "mem") == scores);
  CHECK(scores.Find("m1", "t2")->score == -3e-9);
}

TEST_CASE("unknown label is reported") {
  std::istringstream is("m\tt\tmaybe\n");
  try {
    ReadTrials(is, "trials.txt");
    FAIL("expected DataError");
  } catch (const DataError &e) {
    CHECK(std::string(e.what()).find("unknown label 'maybe'") !=
          std::string::npos);
  }
}

}  // TEST_SUITE

}  // namespace rwt
