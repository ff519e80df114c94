// src/experiment.cc

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

#include "rwt/experiment.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <set>
#include <sstream>

#include "rwt/error.h"

namespace rwt {

namespace fs = std::filesystem;

namespace {

const std::vector<std::string> kKnownKeys = {
    "data.source", "data.ood", "data.unlabeled", "data.enroll", "data.test",
    "data.trials",
    "synth.seed", "synth.dim", "synth.across_var", "synth.within_var",
    "synth.ood_speakers", "synth.ood_sessions", "synth.subcorpora",
    "synth.indomain_speakers", "synth.enroll_sessions", "synth.test_sessions",
    "synth.unlabeled", "synth.unlabeled_speakers", "synth.indomain_shift",
    "synth.indomain_scale", "synth.indomain_kappa", "synth.shared_basis",
    "whitening.*",
    "plda.rank", "plda.train_corpora",
    "experiment.levels", "experiment.snorm",
    "eval.*",
};

std::string Fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::vector<SubcorpusSpec> ParseSubcorpora(const std::string &text) {
  std::vector<SubcorpusSpec> out;
  for (const auto &item : SplitList(text)) {
    auto parts = SplitList(item, ":");
    if (parts.size() != 3)
      throw ConfigError("synth.subcorpora: expected name:shift:kappa, got '" +
                        item + "'");
    try {
      out.push_back({parts[0], ParseReal(parts[1]), ParseReal(parts[2])});
    } catch (const DataError &e) {
      throw ConfigError(std::string("synth.subcorpora: ") + e.what());
    }
  }
  return out;
}

std::vector<CandidateSpec> ParseLevel(const std::string &key,
                                      const std::string &text) {
  std::vector<CandidateSpec> out;
  for (const auto &tok : SplitList(text)) {
    CandidateSpec spec;
    const auto eq = tok.find('=');
    if (eq == std::string::npos) {
      spec.name = tok;
      spec.corpora = {tok};
    } else {
      spec.name = tok.substr(0, eq);
      spec.corpora = SplitList(tok.substr(eq + 1), "+");
    }
    if (spec.name.empty() || spec.corpora.empty())
      throw ConfigError("whitening." + key + ": malformed candidate '" + tok + "'");
    out.push_back(std::move(spec));
  }
  if (out.empty()) throw ConfigError("whitening." + key + ": no candidates");
  return out;
}

std::string VectorTableText(const VectorSet &set,
                            const std::vector<std::string> &comments) {
  std::ostringstream os;
  WriteVectorTable(set, os, comments);
  return os.str();
}

}  // namespace

SynthConfig SynthConfigFromConfig(const Config &cfg) {
  SynthConfig s = SynthConfig::Default();
  const std::string sec = "synth";
  s.seed = cfg.GetUint64(sec, "seed", s.seed);
  s.dim = cfg.GetInt(sec, "dim", s.dim);
  s.across_var = cfg.GetDouble(sec, "across_var", s.across_var);
  s.within_var = cfg.GetDouble(sec, "within_var", s.within_var);
  s.ood_speakers = cfg.GetInt(sec, "ood_speakers", s.ood_speakers);
  s.ood_sessions = cfg.GetInt(sec, "ood_sessions", s.ood_sessions);
  if (auto v = cfg.Get(sec, "subcorpora")) s.subcorpora = ParseSubcorpora(*v);
  s.indomain_speakers = cfg.GetInt(sec, "indomain_speakers", s.indomain_speakers);
  s.enroll_sessions = cfg.GetInt(sec, "enroll_sessions", s.enroll_sessions);
  s.test_sessions = cfg.GetInt(sec, "test_sessions", s.test_sessions);
  s.unlabeled = cfg.GetInt(sec, "unlabeled", s.unlabeled);
  s.unlabeled_speakers =
      cfg.GetInt(sec, "unlabeled_speakers", s.unlabeled_speakers);
  s.indomain_shift = cfg.GetDouble(sec, "indomain_shift", s.indomain_shift);
  s.indomain_scale = cfg.GetDouble(sec, "indomain_scale", s.indomain_scale);
  s.indomain_kappa = cfg.GetDouble(sec, "indomain_kappa", s.indomain_kappa);
  s.shared_basis = cfg.GetBool(sec, "shared_basis", s.shared_basis);
  s.Validate();
  return s;
}

ExperimentConfig ExperimentConfig::FromConfig(const Config &cfg) {
  cfg.RequireKnownKeys(kKnownKeys);
  ExperimentConfig ec;
  ec.config_hash = cfg.Hash();

  const std::string source = cfg.GetString("data", "source", "synth");
  if (source == "synth") {
    ec.use_synth = true;
    ec.synth = SynthConfigFromConfig(cfg);
  } else if (source == "files") {
    ec.use_synth = false;
    auto need = [&](const std::string &key) {
      auto v = cfg.Get("data", key);
      if (!v || v->empty()) throw ConfigError("data." + key + " is required");
      return *v;
    };
    ec.ood_path = need("ood");
    ec.unlabeled_path = need("unlabeled");
    ec.enroll_path = need("enroll");
    ec.test_path = need("test");
    ec.trials_path = need("trials");
  } else {
    throw ConfigError("data.source must be 'synth' or 'files'");
  }

  for (const auto &key : cfg.Keys("whitening")) {
    if (key == "shrinkage" || key == "targets") continue;
    if (key.rfind("level", 0) != 0)
      throw ConfigError("unknown configuration key 'whitening." + key + "'");
  }
  for (int level = 1;; ++level) {
    auto v = cfg.Get("whitening", "level" + std::to_string(level));
    if (!v) break;
    ec.hierarchy.push_back(ParseLevel("level" + std::to_string(level), *v));
  }
  for (const auto &key : cfg.Keys("whitening"))
    if (key.rfind("level", 0) == 0) {
      const std::string num = key.substr(5);
      int n = 0;
      try {
        n = std::stoi(num);
      } catch (const std::exception &) {
        throw ConfigError("unknown configuration key 'whitening." + key + "'");
      }
      if (n < 1 || n > static_cast<int>(ec.hierarchy.size()) ||
          std::to_string(n) != num)
        throw ConfigError("whitening hierarchy levels must be level1, level2, "
                          "... without gaps");
    }
  if (ec.hierarchy.empty() && ec.use_synth) {
    std::vector<CandidateSpec> level1;
    for (const auto &s : ec.synth.subcorpora) level1.push_back({s.name, {s.name}});
    ec.hierarchy.push_back(std::move(level1));
  }

  const std::string shrink = cfg.GetString("whitening", "shrinkage", "auto");
  if (shrink != "auto") {
    ec.shrinkage = cfg.GetDouble("whitening", "shrinkage", 0.0);
    if (!(*ec.shrinkage >= 0.0 && *ec.shrinkage < 1.0))
      throw ConfigError("whitening.shrinkage must be 'auto' or in [0, 1)");
  }
  const std::string targets = cfg.GetString("whitening", "targets", "enroll+test");
  if (targets == "enroll+test")
    ec.targets = SelectionTargets::kEnrollTest;
  else if (targets == "unlabeled")
    ec.targets = SelectionTargets::kUnlabeled;
  else
    throw ConfigError("whitening.targets must be 'enroll+test' or 'unlabeled'");

  const std::string rank = cfg.GetString("plda", "rank", "full");
  if (rank != "full") {
    ec.plda_rank = cfg.GetInt("plda", "rank", 0);
    if (*ec.plda_rank < 1) throw ConfigError("plda.rank must be >= 1 or 'full'");
  }
  const std::string train = cfg.GetString("plda", "train_corpora", "all");
  if (train != "all") ec.plda_corpora = SplitList(train);

  if (auto v = cfg.Get("experiment", "levels")) {
    ec.levels.clear();
    for (const auto &tok : SplitList(*v)) {
      try {
        std::size_t pos = 0;
        ec.levels.push_back(std::stoi(tok, &pos));
        if (pos != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception &) {
        throw ConfigError("experiment.levels: malformed level '" + tok + "'");
      }
    }
  } else if (ec.hierarchy.empty()) {
    ec.levels = {0};
  }
  if (ec.levels.empty()) throw ConfigError("experiment.levels is empty");
  for (std::size_t i = 0; i < ec.levels.size(); ++i)
    if (ec.levels[i] != static_cast<int>(i))
      throw ConfigError("experiment.levels must be contiguous from 0");
  if (ec.levels.back() > static_cast<int>(ec.hierarchy.size()))
    throw ConfigError("experiment.levels asks for level " +
                      std::to_string(ec.levels.back()) + " but the hierarchy has " +
                      std::to_string(ec.hierarchy.size()) + " level(s)");
  ec.snorm = cfg.GetBool("experiment", "snorm", false);

  const auto op_names = cfg.Keys("eval");
  if (!op_names.empty()) {
    ec.ops.clear();
    for (const auto &name : op_names) {
      auto parts = SplitList(*cfg.Get("eval", name));
      if (parts.size() != 3)
        throw ConfigError("eval." + name + ": expected 'p_target c_miss c_fa'");
      OperatingPoint op;
      op.name = name;
      try {
        op.p_target = ParseReal(parts[0]);
        op.c_miss = ParseReal(parts[1]);
        op.c_fa = ParseReal(parts[2]);
      } catch (const DataError &e) {
        throw ConfigError("eval." + name + ": " + e.what());
      }
      op.Validate();
      ec.ops.push_back(std::move(op));
    }
    if (ec.ops.size() != 2)
      throw ConfigError("[eval] must define exactly two operating points");
  }
  return ec;
}

ExperimentData LoadExperimentData(const ExperimentConfig &cfg) {
  ExperimentData data;
  if (cfg.use_synth) {
    SynthWorld world = GenerateWorld(cfg.synth);
    data.ood = std::move(world.ood_labeled);
    data.unlabeled = std::move(world.indomain_unlabeled);
    data.enroll = std::move(world.enroll);
    data.test = std::move(world.test);
    data.trials = std::move(world.trials);
  } else {
    data.ood = LoadVectorTable(cfg.ood_path);
    data.unlabeled = LoadVectorTable(cfg.unlabeled_path);
    data.enroll = LoadVectorTable(cfg.enroll_path);
    data.test = LoadVectorTable(cfg.test_path);
    data.trials = LoadTrials(cfg.trials_path);
  }
  const int d = data.ood.dim();
  if (data.unlabeled.dim() != d || data.enroll.dim() != d || data.test.dim() != d)
    throw DataError("all vector tables must share one dimension");
  return data;
}

std::vector<CorpusLevel> BuildHierarchy(const ExperimentConfig &cfg,
                                        const VectorSet &ood, int depth) {
  if (depth > static_cast<int>(cfg.hierarchy.size()))
    throw ConfigError("hierarchy has only " +
                      std::to_string(cfg.hierarchy.size()) + " level(s)");
  const auto present = ood.CorpusIds();
  const std::set<std::string> known(present.begin(), present.end());
  std::vector<CorpusLevel> levels;
  for (int i = 0; i < depth; ++i) {
    CorpusLevel level;
    level.level = i + 1;
    for (const auto &spec : cfg.hierarchy[i]) {
      for (const auto &c : spec.corpora)
        if (!known.count(c))
          throw ConfigError("hierarchy level " + std::to_string(i + 1) +
                            " references unknown corpus '" + c + "'");
      level.candidates.push_back({spec.name, ood.SelectCorpora(spec.corpora)});
    }
    levels.push_back(std::move(level));
  }
  return levels;
}

VectorSet SelectionTargetSet(const ExperimentConfig &cfg,
                             const ExperimentData &data) {
  if (cfg.targets == SelectionTargets::kUnlabeled) return data.unlabeled;
  return VectorSet::Concat({&data.enroll, &data.test});
}

RecursiveWhitener FitWhitenerForDepth(const ExperimentConfig &cfg,
                                      const ExperimentData &data, int depth) {
  return FitRecursive(data.unlabeled, BuildHierarchy(cfg, data.ood, depth),
                      SelectionTargetSet(cfg, data), cfg.shrinkage);
}

std::pair<CohortScores, CohortScores> CohortStatistics(
    const PldaModel &plda, const VectorSet &enroll, const VectorSet &test,
    const VectorSet &cohort, const TrialList &trials) {
  const auto models = BuildEnrollmentModels(enroll);
  CohortScores enroll_cohort, test_cohort;
  for (const auto &trial : trials) {
    if (!enroll_cohort.count(trial.enroll)) {
      const Eigen::VectorXd m = ResolveEnrollmentModel(models, enroll, trial.enroll);
      auto &list = enroll_cohort[trial.enroll];
      for (const auto &c : cohort) list.push_back(plda.ScorePair(m, c.values));
    }
    if (!test_cohort.count(trial.test)) {
      const VectorEntry *t = test.Find(trial.test);
      if (!t) throw DataError("unresolved test id '" + trial.test + "'");
      auto &list = test_cohort[trial.test];
      for (const auto &c : cohort) list.push_back(plda.ScorePair(c.values, t->values));
    }
  }
  return {std::move(enroll_cohort), std::move(test_cohort)};
}

LevelResult RunLevel(const ExperimentConfig &cfg, const ExperimentData &data,
                     int level) {
  RecursiveWhitener whitener = FitWhitenerForDepth(cfg, data, level);
  const VectorSet train_raw =
      cfg.plda_corpora.empty() ? data.ood : data.ood.SelectCorpora(cfg.plda_corpora);
  if (train_raw.empty()) throw ConfigError("plda.train_corpora selects no data");
  const VectorSet train = whitener.TransformSet(train_raw);
  const VectorSet enroll = whitener.TransformSet(data.enroll);
  const VectorSet test = whitener.TransformSet(data.test);
  const PldaModel plda = TrainPlda(train, cfg.plda_rank);
  ScoreSet scores = ScoreTrials(plda, enroll, test, data.trials);
  if (cfg.snorm) {
    const VectorSet cohort = whitener.TransformSet(data.unlabeled);
    auto [ec, tc] = CohortStatistics(plda, enroll, test, cohort, data.trials);
    scores = SNorm(scores, ec, tc);
  }
  EvalReport report = Evaluate(scores, cfg.ops);
  return LevelResult{level, std::move(whitener), std::move(scores),
                     std::move(report)};
}

std::vector<LevelResult> RunExperiment(const ExperimentConfig &cfg,
                                       const ExperimentData &data) {
  std::vector<LevelResult> results;
  for (int level : cfg.levels) results.push_back(RunLevel(cfg, data, level));
  return results;
}

std::string WhiteningChain(const RecursiveWhitener &w) {
  std::string chain;
  for (const auto &s : w.stages()) {
    if (!chain.empty()) chain += '>';
    chain += s.corpus_id;
  }
  return chain;
}

std::string RenderSelectionTable(const RecursiveWhitener &w,
                                 const std::vector<std::string> &comments) {
  std::ostringstream os;
  for (const auto &c : comments) os << "# " << c << '\n';
  os << "#level\tcandidate\tloglik\tchosen\n";
  for (const auto &sel : w.selection_log())
    for (std::size_t j = 0; j < sel.candidates.size(); ++j)
      os << sel.level << '\t' << sel.candidates[j] << '\t'
         << FormatReal(sel.logliks[j]) << '\t' << (j == sel.chosen ? "*" : "-")
         << '\n';
  return os.str();
}

std::string RenderComparisonTable(const std::vector<LevelResult> &results,
                                  const std::vector<OperatingPoint> &ops,
                                  const std::vector<std::string> &comments) {
  std::ostringstream os;
  for (const auto &c : comments) os << "# " << c << '\n';
  os << "#level\twhitening\teer";
  for (const auto &op : ops) os << '\t' << MetricKey("min", op.name);
  os << "\tc_primary\n";
  for (const auto &r : results) {
    os << r.level << '\t' << WhiteningChain(r.whitener) << '\t'
       << Fixed6(r.report.eer);
    for (const auto &op : ops) os << '\t' << Fixed6(r.report.min_dcf.at(op.name));
    os << '\t' << Fixed6(r.report.c_primary) << '\n';
  }
  return os.str();
}

void WriteOutputsAtomically(
    const std::string &out_dir,
    const std::vector<std::pair<std::string, std::string>> &files) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw DataError("cannot create output directory " + out_dir);
  const fs::path staging = fs::path(out_dir) / ".staging";
  fs::remove_all(staging, ec);
  fs::create_directories(staging, ec);
  if (ec) throw DataError("cannot create staging directory in " + out_dir);
  try {
    for (const auto &[name, text] : files)
      WriteFileText((staging / name).string(), text);
    for (const auto &[name, text] : files)
      fs::rename(staging / name, fs::path(out_dir) / name);
  } catch (...) {
    fs::remove_all(staging, ec);
    throw;
  }
  fs::remove_all(staging, ec);
}

std::vector<std::pair<std::string, std::string>> ExperimentOutputs(
    const ExperimentConfig &cfg, const std::vector<LevelResult> &results) {
  const std::string hash_line = "config_hash=" + cfg.config_hash;
  std::vector<std::pair<std::string, std::string>> files;
  for (const auto &r : results) {
    const std::string lvl = std::to_string(r.level);
    const std::vector<std::string> comments = {
        hash_line,
        "level=" + lvl,
        "whitening=" + WhiteningChain(r.whitener),
        std::string("snorm=") + (cfg.snorm ? "on" : "off"),
        "plda_rank=" + (cfg.plda_rank ? std::to_string(*cfg.plda_rank) : "full"),
        "shrinkage=" + (cfg.shrinkage ? FormatReal(*cfg.shrinkage) : "auto"),
    };
    files.emplace_back("report_level" + lvl + ".tsv",
                       RenderReport(r.report, comments));
    std::ostringstream scores;
    WriteScores(r.scores, scores, comments);
    files.emplace_back("scores_level" + lvl + ".tsv", scores.str());
    files.emplace_back("whitener_level" + lvl + ".txt",
                       r.whitener.Serialize({hash_line}));
    files.emplace_back("selection_level" + lvl + ".tsv",
                       RenderSelectionTable(r.whitener, {hash_line}));
  }
  files.emplace_back("comparison.tsv",
                     RenderComparisonTable(results, cfg.ops, {hash_line}));
  return files;
}

std::vector<std::pair<std::string, std::string>> WorldOutputs(
    const SynthWorld &world, const SynthConfig &synth, const Config &cfg) {
  const std::vector<std::string> comments = {"config_hash=" + cfg.Hash()};
  std::vector<std::pair<std::string, std::string>> files = {
      {"ood.tsv", VectorTableText(world.ood_labeled, comments)},
      {"unlabeled.tsv", VectorTableText(world.indomain_unlabeled, comments)},
      {"enroll.tsv", VectorTableText(world.enroll, comments)},
      {"test.tsv", VectorTableText(world.test, comments)},
  };
  std::ostringstream trials;
  WriteTrials(world.trials, trials, comments);
  files.emplace_back("trials.tsv", trials.str());

  std::ostringstream manifest;
  manifest << "# world-manifest\n# config_hash=" << cfg.Hash() << '\n';
  manifest << "#role\tpath\tentries\n";
  manifest << "ood\tood.tsv\t" << world.ood_labeled.size() << '\n';
  manifest << "unlabeled\tunlabeled.tsv\t" << world.indomain_unlabeled.size() << '\n';
  manifest << "enroll\tenroll.tsv\t" << world.enroll.size() << '\n';
  manifest << "test\ttest.tsv\t" << world.test.size() << '\n';
  manifest << "trials\ttrials.tsv\t" << world.trials.size() << '\n';
  manifest << "# config\n";
  std::istringstream canon(cfg.Canonical());
  std::string line;
  while (std::getline(canon, line)) manifest << "#  " << line << '\n';
  manifest << "# resolved\n";
  manifest << "#  dim=" << synth.dim << " seed=" << synth.seed
           << " across_var=" << FormatReal(synth.across_var)
           << " within_var=" << FormatReal(synth.within_var) << '\n';
  manifest << "#  ood_speakers=" << synth.ood_speakers
           << " ood_sessions=" << synth.ood_sessions << '\n';
  for (const SubcorpusSpec &sc : synth.subcorpora)
    manifest << "#  subcorpus " << sc.name << " shift=" << FormatReal(sc.shift)
             << " kappa=" << FormatReal(sc.kappa) << '\n';
  manifest << "#  indomain_speakers=" << synth.indomain_speakers
           << " enroll_sessions=" << synth.enroll_sessions
           << " test_sessions=" << synth.test_sessions
           << " unlabeled=" << synth.unlabeled
           << " unlabeled_speakers=" << synth.unlabeled_speakers << '\n';
  manifest << "#  indomain_shift=" << FormatReal(synth.indomain_shift)
           << " indomain_scale=" << FormatReal(synth.indomain_scale)
           << " indomain_kappa=" << FormatReal(synth.indomain_kappa)
           << " shared_basis=" << (synth.shared_basis ? 1 : 0) << '\n';
  files.emplace_back("world-manifest.txt", manifest.str());
  return files;
}

}  // namespace rwt
