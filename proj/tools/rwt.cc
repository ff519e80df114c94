// tools/rwt.cc

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

// Command-line front end.  Exit codes: 0 success, 2 configuration error,
// 3 data error, 4 numerical failure.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rwt/commands.h"
#include "rwt/config.h"
#include "rwt/corpus_io.h"
#include "rwt/error.h"

namespace {

struct Common {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
};

void AddCommon(CLI::App *cmd, Common *c, bool need_config) {
  auto *opt = cmd->add_option("--config", c->config, "experiment configuration");
  if (need_config) opt->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", c->out, "output directory")->required();
  cmd->add_option("--seed", c->seed, "overrides synth.seed");
}

rwt::Config LoadConfig(const Common &c) {
  rwt::Config cfg = rwt::Config::Load(c.config);
  if (c.seed) cfg.Set("synth", "seed", std::to_string(*c.seed));
  return cfg;
}

rwt::OperatingPoint ParseOp(const std::string &text) {
  auto parts = rwt::SplitList(text, ":");
  if (parts.size() != 4)
    throw rwt::ConfigError("--op expects name:p_target:c_miss:c_fa, got '" +
                           text + "'");
  rwt::OperatingPoint op;
  op.name = parts[0];
  try {
    op.p_target = rwt::ParseReal(parts[1]);
    op.c_miss = rwt::ParseReal(parts[2]);
    op.c_fa = rwt::ParseReal(parts[3]);
  } catch (const rwt::DataError &e) {
    throw rwt::ConfigError(std::string("--op: ") + e.what());
  }
  op.Validate();
  return op;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"rwt: recursive whitening backend for embedding-based "
               "speaker verification"};
  app.require_subcommand(1);

  Common synth_c, fit_c, run_c;
  auto *synth = app.add_subcommand("synth", "generate a synthetic world");
  AddCommon(synth, &synth_c, false);
  auto *fit = app.add_subcommand("fit-whitener",
                                 "fit the recursive whitener and print the "
                                 "selection table");
  AddCommon(fit, &fit_c, true);
  auto *run = app.add_subcommand("run-experiment",
                                 "level-by-level comparison experiment");
  AddCommon(run, &run_c, true);

  rwt::ScoreOptions score_o;
  std::optional<int> score_rank;
  auto *score = app.add_subcommand("score", "PLDA scoring of a trial list");
  score->add_option("--enroll", score_o.enroll, "enrollment vectors")->required();
  score->add_option("--test", score_o.test, "test vectors")->required();
  score->add_option("--trials", score_o.trials, "trial list")->required();
  score->add_option("--plda", score_o.plda, "PLDA model to load");
  score->add_option("--train", score_o.train, "speaker-labeled training vectors");
  score->add_option("--rank", score_rank, "PLDA rank when training");
  score->add_option("--whitener", score_o.whitener, "whitener applied to all sets");
  score->add_option("--cohort", score_o.cohort, "cohort vectors; enables S-norm");
  score->add_option("--save-plda", score_o.save_plda, "write the PLDA model");
  score->add_option("--out", score_o.out, "score file")->required();

  rwt::EvaluateOptions eval_o;
  std::vector<std::string> eval_ops;
  auto *evaluate = app.add_subcommand("evaluate", "EER, minDCF, actDCF, Cprimary");
  evaluate->add_option("--scores", eval_o.scores, "score file")->required();
  evaluate->add_option("--op", eval_ops,
                       "operating point name:p_target:c_miss:c_fa (twice)");
  evaluate->add_option("--out", eval_o.out, "report file");

  rwt::ProjectOptions proj_o;
  auto *project = app.add_subcommand("project", "PCA projection dump");
  project->add_option("--set", proj_o.sets, "vector table (repeatable)")->required();
  project->add_option("--whitener", proj_o.whitener, "whitener applied first");
  project->add_option("--components", proj_o.n_components, "number of components");
  project->add_option("--out", proj_o.out, "coordinate file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return static_cast<int>(rwt::ErrorKind::kConfig);
  }

  try {
    if (*synth) {
      rwt::Config cfg = synth_c.config.empty() ? rwt::Config() : LoadConfig(synth_c);
      if (synth_c.config.empty() && synth_c.seed)
        cfg.Set("synth", "seed", std::to_string(*synth_c.seed));
      rwt::CmdSynth(cfg, synth_c.out);
    } else if (*fit) {
      std::cout << rwt::CmdFitWhitener(LoadConfig(fit_c), fit_c.out);
    } else if (*run) {
      std::cout << rwt::CmdRunExperiment(LoadConfig(run_c), run_c.out);
    } else if (*score) {
      score_o.rank = score_rank;
      rwt::CmdScore(score_o);
    } else if (*evaluate) {
      if (!eval_ops.empty()) {
        eval_o.ops.clear();
        for (const auto &t : eval_ops) eval_o.ops.push_back(ParseOp(t));
      }
      const std::string report = rwt::CmdEvaluate(eval_o);
      if (eval_o.out.empty()) std::cout << report;
    } else if (*project) {
      rwt::CmdProject(proj_o);
    }
  } catch (const rwt::Error &e) {
    std::cerr << "rwt: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception &e) {
    std::cerr << "rwt: " << e.what() << '\n';
    return static_cast<int>(rwt::ErrorKind::kData);
  }
  return 0;
}
