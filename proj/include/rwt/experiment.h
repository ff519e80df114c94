// include/rwt/experiment.h

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

#ifndef RWT_EXPERIMENT_H_
#define RWT_EXPERIMENT_H_

#include <optional>
#include <string>
#include <vector>

#include "rwt/config.h"
#include "rwt/corpus_io.h"
#include "rwt/eval.h"
#include "rwt/plda.h"
#include "rwt/synth.h"
#include "rwt/whitening.h"

namespace rwt {

/// One candidate of a hierarchy level: a name plus the corpus ids it pools.
struct CandidateSpec {
  std::string name;
  std::vector<std::string> corpora;
};

enum class SelectionTargets { kEnrollTest, kUnlabeled };

struct ExperimentConfig {
  bool use_synth = true;
  SynthConfig synth = SynthConfig::Default();
  std::string ood_path, unlabeled_path, enroll_path, test_path, trials_path;

  /// hierarchy[i] holds the candidates of level i+1.
  std::vector<std::vector<CandidateSpec>> hierarchy;
  std::optional<double> shrinkage;  // unset: DefaultShrinkage per corpus
  SelectionTargets targets = SelectionTargets::kEnrollTest;

  std::optional<int> plda_rank;            // unset: full rank
  std::vector<std::string> plda_corpora;   // empty: every OOD corpus

  std::vector<int> levels{0, 1};
  bool snorm = false;
  std::vector<OperatingPoint> ops = DefaultOperatingPoints();

  std::string config_hash;

  /**
     Reads the sections [data], [synth], [whitening], [plda], [experiment]
     and [eval].  Unknown keys are rejected.  Hierarchy levels are given as
     `level1 = a b`, `level2 = sre=a+b swb=c`, ...; a bare token is a
     candidate made of the single corpus of that name.  When the data come
     from the synthetic generator and no hierarchy is given, level 1 offers
     every sub-corpus.
  */
  static ExperimentConfig FromConfig(const Config &cfg);
};

SynthConfig SynthConfigFromConfig(const Config &cfg);

struct ExperimentData {
  VectorSet ood{1};
  VectorSet unlabeled{1};
  VectorSet enroll{1};
  VectorSet test{1};
  TrialList trials;
};

ExperimentData LoadExperimentData(const ExperimentConfig &cfg);

/// Resolves the first `depth` hierarchy levels against the OOD corpora.
std::vector<CorpusLevel> BuildHierarchy(const ExperimentConfig &cfg,
                                        const VectorSet &ood, int depth);

VectorSet SelectionTargetSet(const ExperimentConfig &cfg,
                             const ExperimentData &data);

/// Recursive whitener through level `depth` (0 = conventional whitening).
RecursiveWhitener FitWhitenerForDepth(const ExperimentConfig &cfg,
                                      const ExperimentData &data, int depth);

/// Cohort score lists for S-norm: every enroll model and every test vector
/// scored against each cohort vector.
std::pair<CohortScores, CohortScores> CohortStatistics(
    const PldaModel &plda, const VectorSet &enroll, const VectorSet &test,
    const VectorSet &cohort, const TrialList &trials);

struct LevelResult {
  int level = 0;
  RecursiveWhitener whitener;
  ScoreSet scores;
  EvalReport report;
};

/// Whitening through `level`, PLDA on the transformed OOD data, scoring,
/// optional S-norm with the unlabeled set as cohort, evaluation.
LevelResult RunLevel(const ExperimentConfig &cfg, const ExperimentData &data,
                     int level);

std::vector<LevelResult> RunExperiment(const ExperimentConfig &cfg,
                                       const ExperimentData &data);

/// "stage0>stage1>..." corpus chain of a whitener.
std::string WhiteningChain(const RecursiveWhitener &w);

std::string RenderSelectionTable(const RecursiveWhitener &w,
                                 const std::vector<std::string> &comments = {});
std::string RenderComparisonTable(const std::vector<LevelResult> &results,
                                  const std::vector<OperatingPoint> &ops,
                                  const std::vector<std::string> &comments = {});

/// Writes every file of `files` (name -> content) into `out_dir` through a
/// staging directory so that a failure leaves no partial output behind.
void WriteOutputsAtomically(
    const std::string &out_dir,
    const std::vector<std::pair<std::string, std::string>> &files);

/// All report files of an experiment run, keyed by file name.
std::vector<std::pair<std::string, std::string>> ExperimentOutputs(
    const ExperimentConfig &cfg, const std::vector<LevelResult> &results);

/// Vector tables, trials and world-manifest.txt for a synthetic world.
std::vector<std::pair<std::string, std::string>> WorldOutputs(
    const SynthWorld &world, const SynthConfig &synth, const Config &cfg);

}  // namespace rwt

#endif  // RWT_EXPERIMENT_H_
