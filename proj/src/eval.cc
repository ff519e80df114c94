// src/eval.cc

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

#include "rwt/eval.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "rwt/error.h"

namespace rwt {

namespace {

struct ErrorCounts {
  std::size_t misses;
  std::size_t false_alarms;
};

// Sorted target and nontarget scores with the counting queries the metrics
// need.
class DetectionSweep {
 public:
  explicit DetectionSweep(const ScoreSet &scores) {
    for (const auto &s : scores) {
      if (s.label == TrialLabel::kTarget)
        targets_.push_back(s.score);
      else if (s.label == TrialLabel::kNontarget)
        nontargets_.push_back(s.score);
    }
    if (targets_.empty() || nontargets_.empty())
      throw DataError("metrics need at least one target and one nontarget trial");
    std::sort(targets_.begin(), targets_.end());
    std::sort(nontargets_.begin(), nontargets_.end());
    thresholds_.reserve(targets_.size() + nontargets_.size() + 1);
    std::merge(targets_.begin(), targets_.end(), nontargets_.begin(),
               nontargets_.end(), std::back_inserter(thresholds_));
    thresholds_.erase(std::unique(thresholds_.begin(), thresholds_.end()),
                      thresholds_.end());
    thresholds_.push_back(std::numeric_limits<double>::infinity());
  }

  const std::vector<double> &thresholds() const { return thresholds_; }
  double n_target() const { return static_cast<double>(targets_.size()); }
  double n_nontarget() const { return static_cast<double>(nontargets_.size()); }

  ErrorCounts CountsAt(double theta) const {
    const auto miss = std::lower_bound(targets_.begin(), targets_.end(), theta) -
                      targets_.begin();
    const auto below =
        std::lower_bound(nontargets_.begin(), nontargets_.end(), theta) -
        nontargets_.begin();
    return {static_cast<std::size_t>(miss), nontargets_.size() - below};
  }

  double PMiss(const ErrorCounts &c) const { return c.misses / n_target(); }
  double PFa(const ErrorCounts &c) const { return c.false_alarms / n_nontarget(); }

 private:
  std::vector<double> targets_;
  std::vector<double> nontargets_;
  std::vector<double> thresholds_;
};

double NormalizedCost(const OperatingPoint &op, double p_miss, double p_fa) {
  return (op.c_miss * op.p_target * p_miss +
          op.c_fa * (1.0 - op.p_target) * p_fa) /
         op.NormalizationConstant();
}

std::pair<double, double> CohortStats(const CohortScores &cohort,
                                      const std::string &key,
                                      const char *side) {
  auto it = cohort.find(key);
  if (it == cohort.end())
    throw DataError(std::string("missing ") + side + " cohort for '" + key + "'");
  const auto &v = it->second;
  if (v.size() < 2)
    throw DataError(std::string(side) + " cohort for '" + key +
                    "' needs at least 2 scores");
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  var /= static_cast<double>(v.size());
  const double sd = std::sqrt(var);
  if (!(sd > 0.0))
    throw NumericalError(std::string(side) + " cohort for '" + key +
                         "' has zero standard deviation");
  return {mean, sd};
}

}  // namespace

double OperatingPoint::NormalizationConstant() const {
  return std::min(c_miss * p_target, c_fa * (1.0 - p_target));
}

double OperatingPoint::BayesThreshold() const {
  return std::log(c_fa * (1.0 - p_target) / (c_miss * p_target));
}

void OperatingPoint::Validate() const {
  if (!(p_target > 0.0 && p_target < 1.0))
    throw ConfigError("operating point '" + name + "': p_target must be in (0,1)");
  if (!(c_miss > 0.0) || !(c_fa > 0.0))
    throw ConfigError("operating point '" + name + "': costs must be positive");
}

std::vector<OperatingPoint> DefaultOperatingPoints() {
  return {{"dcf16-1", 0.01, 1.0, 1.0}, {"dcf16-2", 0.005, 1.0, 1.0}};
}

ScoreSet SNorm(const ScoreSet &raw, const CohortScores &enroll_cohort,
               const CohortScores &test_cohort) {
  ScoreSet out;
  for (const auto &s : raw) {
    const auto [mu_e, sd_e] = CohortStats(enroll_cohort, s.enroll, "enroll");
    const auto [mu_t, sd_t] = CohortStats(test_cohort, s.test, "test");
    Score n = s;
    n.score = 0.5 * ((s.score - mu_e) / sd_e + (s.score - mu_t) / sd_t);
    out.Add(std::move(n));
  }
  return out;
}

ScoreSet Fuse(const std::vector<ScoreSet> &sets,
              const std::vector<double> &weights) {
  if (sets.empty()) throw DataError("nothing to fuse");
  if (sets.size() != weights.size())
    throw ConfigError("fusion needs one weight per score set");
  for (const auto &s : sets)
    if (s.size() != sets.front().size())
      throw DataError("fusion inputs cover different trials");
  ScoreSet out;
  for (const auto &s : sets.front()) {
    double total = 0.0;
    for (std::size_t k = 0; k < sets.size(); ++k) {
      const Score *match = sets[k].Find(s.enroll, s.test);
      if (!match)
        throw DataError("fusion key mismatch: " + s.enroll + " " + s.test +
                        " missing from input " + std::to_string(k));
      total += weights[k] * match->score;
    }
    out.Add(Score{s.enroll, s.test, total, s.label});
  }
  return out;
}

double ComputeEer(const ScoreSet &scores) {
  DetectionSweep sweep(scores);
  double prev_miss = 0.0, prev_fa = 0.0, prev_diff = 0.0;
  bool have_prev = false;
  for (double theta : sweep.thresholds()) {
    const ErrorCounts c = sweep.CountsAt(theta);
    const double p_miss = sweep.PMiss(c);
    const double p_fa = sweep.PFa(c);
    const double diff = p_miss - p_fa;
    if (diff >= 0.0) {
      if (diff == 0.0 || !have_prev) return p_miss;
      // Crossing between the previous vertex and this one.
      const double t = -prev_diff / (diff - prev_diff);
      return prev_miss + t * (p_miss - prev_miss);
    }
    prev_miss = p_miss;
    prev_fa = p_fa;
    prev_diff = diff;
    have_prev = true;
  }
  // Unreachable: at +infinity P_miss = 1 and P_fa = 0.
  return prev_fa;
}

double ComputeMinDcf(const ScoreSet &scores, const OperatingPoint &op) {
  op.Validate();
  DetectionSweep sweep(scores);
  double best = std::numeric_limits<double>::infinity();
  for (double theta : sweep.thresholds()) {
    const ErrorCounts c = sweep.CountsAt(theta);
    best = std::min(best, NormalizedCost(op, sweep.PMiss(c), sweep.PFa(c)));
  }
  return best;
}

double ComputeActDcf(const ScoreSet &scores, const OperatingPoint &op,
                     std::optional<double> threshold) {
  op.Validate();
  DetectionSweep sweep(scores);
  const ErrorCounts c = sweep.CountsAt(threshold.value_or(op.BayesThreshold()));
  return NormalizedCost(op, sweep.PMiss(c), sweep.PFa(c));
}

EvalReport Evaluate(const ScoreSet &scores,
                    const std::vector<OperatingPoint> &ops) {
  if (ops.size() != 2)
    throw ConfigError("evaluation needs exactly two operating points");
  EvalReport report;
  report.eer = ComputeEer(scores);
  for (const auto &op : ops) {
    report.op_names.push_back(op.name);
    report.min_dcf[op.name] = ComputeMinDcf(scores, op);
    report.act_dcf[op.name] = ComputeActDcf(scores, op);
  }
  report.c_primary =
      0.5 * (report.min_dcf[ops[0].name] + report.min_dcf[ops[1].name]);
  for (const auto &s : scores) {
    if (s.label == TrialLabel::kTarget) ++report.n_target;
    if (s.label == TrialLabel::kNontarget) ++report.n_nontarget;
  }
  return report;
}

std::string MetricKey(const std::string &prefix, const std::string &op_name) {
  std::string key = prefix + "_" + op_name;
  std::replace(key.begin(), key.end(), '-', '_');
  return key;
}

std::string RenderReport(const EvalReport &report,
                         const std::vector<std::string> &comments) {
  std::ostringstream os;
  auto put = [&](const std::string &key, double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", value);
    os << key << '\t' << buf << '\n';
  };
  for (const auto &c : comments) os << "# " << c << '\n';
  put("eer", report.eer);
  for (const auto &name : report.op_names)
    put(MetricKey("min", name), report.min_dcf.at(name));
  for (const auto &name : report.op_names)
    put(MetricKey("act", name), report.act_dcf.at(name));
  put("c_primary", report.c_primary);
  os << "n_target\t" << report.n_target << '\n';
  os << "n_nontarget\t" << report.n_nontarget << '\n';
  return os.str();
}

}  // namespace rwt
