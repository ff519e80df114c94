// tests/test_config.cc

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

#include "doctest.h"
#include "rwt/config.h"
#include "rwt/error.h"

namespace rwt {

TEST_SUITE("config") {

TEST_CASE("sections, comments and typed getters") {
  const Config c = Config::Parse(
      "# comment\n[synth]\nseed = 7\ndim=20 \n; other comment\n"
      "[experiment]\nsnorm = on\nlevels = 0,1\n[eval]\nx = 0.5\n",
      "mem");
  CHECK(c.GetUint64("synth", "seed", 0) == 7);
  CHECK(c.GetInt("synth", "dim", 0) == 20);
  CHECK(c.GetBool("experiment", "snorm", false));
  CHECK(c.GetDouble("eval", "x", 0) == 0.5);
  CHECK(c.GetInt("synth", "missing", 42) == 42);
  CHECK(c.Keys("synth") == std::vector<std::string>{"seed", "dim"});
  CHECK(SplitList(*c.Get("experiment", "levels")) ==
        std::vector<std::string>{"0", "1"});
  CHECK_THROWS_AS(c.GetInt("eval", "x", 0), ConfigError);
  CHECK_THROWS_AS(c.GetBool("synth", "dim", false), ConfigError);
}

TEST_CASE("unknown keys are rejected") {
  const Config c = Config::Parse("[a]\nx = 1\n[b]\ny = 2\n", "mem");
  CHECK_NOTHROW(c.RequireKnownKeys({"a.x", "b.*"}));
  CHECK_THROWS_AS(c.RequireKnownKeys({"a.x"}), ConfigError);
}

TEST_CASE("malformed text names the source") {
  try {
    Config::Parse("[a\nx = 1\n", "cfg.ini");
    FAIL("expected ConfigError");
  } catch (const ConfigError &e) {
    CHECK(std::string(e.what()).find("cfg.ini") != std::string::npos);
  }
  CHECK_THROWS_AS(Config::Load("/nonexistent/path.ini"), ConfigError);
}

TEST_CASE("canonical form and hash ignore order and spacing") {
  const Config a = Config::Parse("[b]\ny=2\n[a]\nx = 1\n", "a");
  const Config b = Config::Parse("[a]\nx=1\n\n[b]\n y = 2\n", "b");
  CHECK(a.Canonical() == b.Canonical());
  CHECK(a.Hash() == b.Hash());
  CHECK(a.Canonical() == "[a]\nx = 1\n[b]\ny = 2\n");
  Config c = a;
  c.Set("a", "x", "3");
  CHECK(c.Hash() != a.Hash());
  CHECK(c.Hash().size() == 16);
  // FNV-1a-64 offset basis for the empty string.
  CHECK(Config::Parse("", "e").Hash() == "cbf29ce484222325");
}

}  // TEST_SUITE

}  // namespace rwt
