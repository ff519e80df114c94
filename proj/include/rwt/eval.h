// include/rwt/eval.h

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

#ifndef RWT_EVAL_H_
#define RWT_EVAL_H_

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "rwt/corpus_io.h"

namespace rwt {

struct OperatingPoint {
  std::string name;
  double p_target = 0.01;
  double c_miss = 1.0;
  double c_fa = 1.0;

  /// min(c_miss * p_target, c_fa * (1 - p_target)), the cost of the best
  /// decision that ignores the score.
  double NormalizationConstant() const;
  /// log(c_fa (1 - p_target) / (c_miss p_target)): Bayes threshold for LLRs.
  double BayesThreshold() const;
  void Validate() const;
};

/// dcf16-1 (p_target 0.01) and dcf16-2 (p_target 0.005), unit costs.
std::vector<OperatingPoint> DefaultOperatingPoints();

struct EvalReport {
  double eer = 0.0;
  std::vector<std::string> op_names;
  std::unordered_map<std::string, double> min_dcf;
  std::unordered_map<std::string, double> act_dcf;
  double c_primary = 0.0;
  std::size_t n_target = 0;
  std::size_t n_nontarget = 0;
};

/// Cohort score lists keyed by enroll model id or test id.
using CohortScores = std::unordered_map<std::string, std::vector<double>>;

/// Symmetric normalization:
///   s' = ((s - mu_e) / sigma_e + (s - mu_t) / sigma_t) / 2
/// with population (divide-by-n) standard deviations of the cohort lists.
ScoreSet SNorm(const ScoreSet &raw, const CohortScores &enroll_cohort,
               const CohortScores &test_cohort);

/// Per-trial weighted sum of score sets over the same trial keys.  Output
/// follows the order of the first set.
ScoreSet Fuse(const std::vector<ScoreSet> &sets,
              const std::vector<double> &weights);

/**
   Error rates at a threshold theta:
     P_miss(theta) = #{targets < theta} / #targets
     P_fa(theta)   = #{nontargets >= theta} / #nontargets
   Thresholds swept: every distinct score plus +infinity.  Unknown labels
   are ignored; at least one target and one nontarget are required.
*/
double ComputeEer(const ScoreSet &scores);
double ComputeMinDcf(const ScoreSet &scores, const OperatingPoint &op);
/// Normalized cost at a fixed threshold (default: op.BayesThreshold()).
double ComputeActDcf(const ScoreSet &scores, const OperatingPoint &op,
                     std::optional<double> threshold = std::nullopt);

/// Needs exactly two operating points; c_primary is the mean of their
/// minimum costs.
EvalReport Evaluate(const ScoreSet &scores,
                    const std::vector<OperatingPoint> &ops);

/// "min_dcf16_1" style key for an operating point name.
std::string MetricKey(const std::string &prefix, const std::string &op_name);

/// key<TAB>value lines, floats at 6 decimals, preceded by "# " comments.
std::string RenderReport(const EvalReport &report,
                         const std::vector<std::string> &comments = {});

}  // namespace rwt

#endif  // RWT_EVAL_H_
