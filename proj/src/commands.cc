// src/commands.cc

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

#include "rwt/commands.h"

#include <algorithm>
#include <filesystem>
#include <sstream>

#include "rwt/corpus_io.h"
#include "rwt/error.h"
#include "rwt/experiment.h"
#include "rwt/plda.h"
#include "rwt/projection.h"
#include "rwt/whitening.h"

namespace rwt {

namespace {

namespace fs = std::filesystem;

// Writes one file atomically next to its final location.
void WriteOne(const std::string &path, const std::string &text) {
  const fs::path p(path);
  if (p.filename().empty()) throw ConfigError("output path '" + path + "' names no file");
  const std::string dir = p.has_parent_path() ? p.parent_path().string() : ".";
  WriteOutputsAtomically(dir, {{p.filename().string(), text}});
}

std::string Flag(const std::string &name, const std::string &value) {
  return "--" + name + "=" + (value.empty() ? "-" : value);
}

VectorSet MaybeWhiten(const std::optional<RecursiveWhitener> &w,
                      const VectorSet &set) {
  return w ? w->TransformSet(set) : set;
}

}  // namespace

void CmdSynth(const Config &cfg, const std::string &out_dir) {
  const ExperimentConfig ec = ExperimentConfig::FromConfig(cfg);
  if (!ec.use_synth) throw ConfigError("synth needs data.source = synth");
  WriteOutputsAtomically(out_dir,
                         WorldOutputs(GenerateWorld(ec.synth), ec.synth, cfg));
}

std::string CmdFitWhitener(const Config &cfg, const std::string &out_dir) {
  const ExperimentConfig ec = ExperimentConfig::FromConfig(cfg);
  const ExperimentData data = LoadExperimentData(ec);
  const int depth = *std::max_element(ec.levels.begin(), ec.levels.end());
  const RecursiveWhitener w = FitWhitenerForDepth(ec, data, depth);
  const std::vector<std::string> comments = {"config_hash=" + ec.config_hash};
  const std::string table = RenderSelectionTable(w, comments);
  WriteOutputsAtomically(out_dir, {{"whitener.txt", w.Serialize(comments)},
                                   {"selection.tsv", table}});
  return table;
}

std::string CmdRunExperiment(const Config &cfg, const std::string &out_dir) {
  const ExperimentConfig ec = ExperimentConfig::FromConfig(cfg);
  const ExperimentData data = LoadExperimentData(ec);
  const auto results = RunExperiment(ec, data);
  const auto files = ExperimentOutputs(ec, results);
  WriteOutputsAtomically(out_dir, files);
  return files.back().second;
}

void CmdScore(const ScoreOptions &opt) {
  if (opt.plda.empty() == opt.train.empty())
    throw ConfigError("score needs exactly one of --plda and --train");
  if (opt.out.empty()) throw ConfigError("score needs --out");
  std::optional<RecursiveWhitener> w;
  if (!opt.whitener.empty()) w = RecursiveWhitener::Load(opt.whitener);

  const VectorSet enroll = MaybeWhiten(w, LoadVectorTable(opt.enroll));
  const VectorSet test = MaybeWhiten(w, LoadVectorTable(opt.test));
  const TrialList trials = LoadTrials(opt.trials);
  const PldaModel plda =
      opt.plda.empty()
          ? TrainPlda(MaybeWhiten(w, LoadVectorTable(opt.train)), opt.rank)
          : PldaModel::Load(opt.plda);

  const std::vector<std::string> comments = {
      Flag("enroll", opt.enroll), Flag("test", opt.test),
      Flag("trials", opt.trials), Flag("plda", opt.plda),
      Flag("train", opt.train),
      Flag("rank", opt.rank ? std::to_string(*opt.rank) : "full"),
      Flag("whitener", opt.whitener), Flag("cohort", opt.cohort)};

  ScoreSet scores = ScoreTrials(plda, enroll, test, trials);
  if (!opt.cohort.empty()) {
    const VectorSet cohort = MaybeWhiten(w, LoadVectorTable(opt.cohort));
    auto [ec, tc] = CohortStatistics(plda, enroll, test, cohort, trials);
    scores = SNorm(scores, ec, tc);
  }
  std::ostringstream os;
  WriteScores(scores, os, comments);
  if (!opt.save_plda.empty()) WriteOne(opt.save_plda, plda.Serialize(comments));
  WriteOne(opt.out, os.str());
}

std::string CmdEvaluate(const EvaluateOptions &opt) {
  const ScoreSet scores = LoadScores(opt.scores);
  std::vector<std::string> comments = {Flag("scores", opt.scores)};
  for (const auto &op : opt.ops)
    comments.push_back("--op=" + op.name + ":" + FormatReal(op.p_target) + ":" +
                       FormatReal(op.c_miss) + ":" + FormatReal(op.c_fa));
  const std::string report = RenderReport(Evaluate(scores, opt.ops), comments);
  if (!opt.out.empty()) WriteOne(opt.out, report);
  return report;
}

void CmdProject(const ProjectOptions &opt) {
  if (opt.sets.empty()) throw ConfigError("project needs at least one --set");
  if (opt.out.empty()) throw ConfigError("project needs --out");
  std::vector<VectorSet> loaded;
  for (const auto &path : opt.sets) loaded.push_back(LoadVectorTable(path));
  std::vector<const VectorSet *> ptrs;
  for (const auto &s : loaded) ptrs.push_back(&s);
  VectorSet all = VectorSet::Concat(ptrs);
  if (!opt.whitener.empty()) all = RecursiveWhitener::Load(opt.whitener).TransformSet(all);

  const Projection p = PcaProject(all, opt.n_components);
  std::vector<std::string> comments;
  for (const auto &s : opt.sets) comments.push_back(Flag("set", s));
  comments.push_back(Flag("whitener", opt.whitener));
  comments.push_back(Flag("components", std::to_string(opt.n_components)));
  const fs::path out(opt.out);
  const std::string dir = out.has_parent_path() ? out.parent_path().string() : ".";
  const std::string name = out.filename().string();
  WriteOutputsAtomically(dir, {{name, RenderCoordinates(p, comments)},
                               {name + ".contours.tsv", RenderContours(p, comments)}});
}

}  // namespace rwt
