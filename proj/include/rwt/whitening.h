// include/rwt/whitening.h

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

#ifndef RWT_WHITENING_H_
#define RWT_WHITENING_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rwt/corpus_io.h"
#include "rwt/stats.h"

namespace rwt {

/// One affine whitening step: v -> transform * (v - mean).
struct WhiteningStage {
  int level = 0;
  std::string corpus_id;
  Eigen::VectorXd mean;
  Eigen::MatrixXd transform;

  int dim() const { return static_cast<int>(mean.size()); }
  bool operator==(const WhiteningStage &other) const;
};

struct CorpusCandidate {
  std::string id;
  VectorSet data;
};

/// The sub-corpora offered at one level of the hierarchy.
struct CorpusLevel {
  int level = 1;
  std::vector<CorpusCandidate> candidates;
};

struct SelectionResult {
  std::size_t chosen = 0;
  std::vector<double> logliks;
};

/// What happened at one recursion level, kept for the selection log.
struct LevelSelection {
  int level = 1;
  std::vector<std::string> candidates;
  std::vector<double> logliks;
  std::size_t chosen = 0;

  bool operator==(const LevelSelection &) const = default;
};

/// Chain of whitening stages, each followed by length normalization.
class RecursiveWhitener {
 public:
  RecursiveWhitener(std::vector<WhiteningStage> stages,
                    std::vector<LevelSelection> selection_log);

  int dim() const { return stages_.front().dim(); }
  std::size_t num_stages() const { return stages_.size(); }
  const std::vector<WhiteningStage> &stages() const { return stages_; }
  const std::vector<LevelSelection> &selection_log() const {
    return selection_log_;
  }

  /// Folds v through every stage; the result has unit norm.
  Eigen::VectorXd Transform(const Eigen::VectorXd &v) const;
  /// Folds v through the first `num_stages` stages only (0 returns v).
  Eigen::VectorXd TransformPartial(const Eigen::VectorXd &v,
                                   std::size_t num_stages) const;
  /// Element-wise Transform; ids, corpora and speakers are kept.
  VectorSet TransformSet(const VectorSet &set) const;

  /// Text form with exact round trip.  `comments` become
  /// "# " lines after the header and are ignored when parsing.
  std::string Serialize(const std::vector<std::string> &comments = {}) const;
  static RecursiveWhitener Parse(const std::string &text,
                                 const std::string &source);
  void Save(const std::string &path,
            const std::vector<std::string> &comments = {}) const;
  static RecursiveWhitener Load(const std::string &path);

  bool operator==(const RecursiveWhitener &other) const;

 private:
  std::vector<WhiteningStage> stages_;
  std::vector<LevelSelection> selection_log_;
};

/// Builds a stage from already estimated moments.
WhiteningStage StageFromMoments(const Moments &m, int level);

/// Fits mean and Cholesky whitening matrix on `data`.  When `shrinkage` is
/// unset, DefaultShrinkage(n, d) is used.  An empty `corpus_id` names the
/// stage after the corpora present in `data`.
WhiteningStage FitStage(const VectorSet &data, int level,
                        std::optional<double> shrinkage,
                        std::string corpus_id = "");

/// transform * (v - mean); no normalization.
Eigen::VectorXd ApplyStage(const WhiteningStage &stage,
                           const Eigen::VectorXd &v);

/// v / ||v||; throws NumericalError("zero-norm vector") if ||v|| <= 1e-12.
Eigen::VectorXd LengthNormalize(const Eigen::VectorXd &v);

/// Aggregate log-likelihood of all targets under each candidate Gaussian;
/// argmax with ties going to the lowest index.
SelectionResult SelectSubcorpus(std::span<const Moments> candidates,
                                std::span<const Eigen::VectorXd> targets);

/**
   Fits the recursive whitener.

   Stage 0 is fitted on `in_domain`.  For each level i (in order), every
   candidate corpus and every target vector is pushed through stages
   0..i-1 (center, whiten, length-normalize each time), candidate moments
   are estimated in that space, the candidate maximizing the aggregate
   target log-likelihood is chosen, and stage i is fitted on its
   transformed vectors.
*/
RecursiveWhitener FitRecursive(const VectorSet &in_domain,
                               const std::vector<CorpusLevel> &levels,
                               const VectorSet &targets,
                               std::optional<double> shrinkage);

}  // namespace rwt

#endif  // RWT_WHITENING_H_
