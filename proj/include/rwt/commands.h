// include/rwt/commands.h

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

#ifndef RWT_COMMANDS_H_
#define RWT_COMMANDS_H_

#include <optional>
#include <string>
#include <vector>

#include "rwt/config.h"
#include "rwt/eval.h"

namespace rwt {

// Library side of the command-line tool.  Each command throws rwt::Error
// subclasses; the tool maps them onto exit codes.  Outputs are written
// through WriteOutputsAtomically, so a failing command leaves nothing
// behind.

/// Generates the synthetic world described by [synth] into `out_dir`.
void CmdSynth(const Config &cfg, const std::string &out_dir);

/// Fits the recursive whitener through the deepest requested level and
/// writes whitener.txt and selection.tsv.  Returns the selection table.
std::string CmdFitWhitener(const Config &cfg, const std::string &out_dir);

/// Runs every requested level and writes the per-level reports and
/// comparison.tsv.  Returns the comparison table.
std::string CmdRunExperiment(const Config &cfg, const std::string &out_dir);

struct ScoreOptions {
  std::string enroll, test, trials;
  std::string plda;            // load this model ...
  std::string train;           // ... or train on this speaker-labeled table
  std::optional<int> rank;
  std::string whitener;        // optional, applied to every set
  std::string cohort;          // optional, enables S-norm
  std::string save_plda;       // optional
  std::string out;             // score file path
};
void CmdScore(const ScoreOptions &opt);

struct EvaluateOptions {
  std::string scores;
  std::vector<OperatingPoint> ops = DefaultOperatingPoints();
  std::string out;  // report path
};
/// Returns the rendered report.
std::string CmdEvaluate(const EvaluateOptions &opt);

struct ProjectOptions {
  std::vector<std::string> sets;
  std::string whitener;  // optional
  int n_components = 2;
  std::string out;       // coordinates; contours go to <out>.contours.tsv
};
void CmdProject(const ProjectOptions &opt);

}  // namespace rwt

#endif  // RWT_COMMANDS_H_
