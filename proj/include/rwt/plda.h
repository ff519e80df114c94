// include/rwt/plda.h

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

#ifndef RWT_PLDA_H_
#define RWT_PLDA_H_

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "rwt/corpus_io.h"

namespace rwt {

/**
   Two-covariance PLDA.  A speaker's latent identity y ~ N(mean, ac) and a
   session is x = y + e with e ~ N(0, wc).  A trial (e, t) is scored by the
   log-likelihood ratio between "same speaker", under which
     [e; t] ~ N(0, [[ac+wc, ac], [ac, ac+wc]]),
   and "different speakers", under which e and t are independent with
   covariance ac+wc (both after subtracting the mean).

   With u = (e+t)/sqrt(2) and w = (e-t)/sqrt(2) the same-speaker density
   factors into N(u; 0, 2ac+wc) N(w; 0, wc).  The scorer uses that
   factorization, which makes the ac = 0 case return exactly zero.
*/
class PldaModel {
 public:
  /// `rank`, if set, truncates ac to its top eigenpairs (1 <= rank <= d;
  /// rank == d leaves ac untouched).
  PldaModel(Eigen::VectorXd mean, Eigen::MatrixXd ac, Eigen::MatrixXd wc,
            std::optional<int> rank = std::nullopt);

  int dim() const { return static_cast<int>(mean_.size()); }
  const Eigen::VectorXd &mean() const { return mean_; }
  const Eigen::MatrixXd &ac() const { return ac_; }
  const Eigen::MatrixXd &wc() const { return wc_; }
  std::optional<int> rank() const { return rank_; }

  /// Symmetric in (enroll, test) bit for bit.
  double ScorePair(const Eigen::VectorXd &enroll,
                   const Eigen::VectorXd &test) const;

  std::string Serialize(const std::vector<std::string> &comments = {}) const;
  static PldaModel Parse(const std::string &text, const std::string &source);
  void Save(const std::string &path,
            const std::vector<std::string> &comments = {}) const;
  static PldaModel Load(const std::string &path);

 private:
  void ComputeDerivedVars();

  Eigen::VectorXd mean_;
  Eigen::MatrixXd ac_;
  Eigen::MatrixXd wc_;
  std::optional<int> rank_;

  // LLR = -0.5 * (e'Qe + t'Qt + 2 e'Pt) + offset_, e and t mean-removed.
  Eigen::MatrixXd quad_;
  Eigen::MatrixXd cross_;
  double offset_ = 0.0;
};

/**
   Method-of-moments estimate from speaker-labeled vectors:
     mean = global mean,
     wc   = pooled within-speaker scatter / (N - S) + 1e-8 I,
     ac   = scatter of speaker means about the global mean / (S - 1),
   then ac is truncated to `rank` eigenpairs if requested.
*/
PldaModel TrainPlda(const VectorSet &data, std::optional<int> rank);

/// Projects a symmetric matrix onto its top-`rank` eigenpairs (negative
/// eigenvalues are clipped to zero).
Eigen::MatrixXd TruncateRank(const Eigen::MatrixXd &m, int rank);

/// Multi-session enrollment: sessions grouped by speaker id (falling back
/// to the entry id), averaged, and length-normalized again.
std::unordered_map<std::string, Eigen::VectorXd> BuildEnrollmentModels(
    const VectorSet &enroll);

/// Resolves an enroll model id against BuildEnrollmentModels output, then
/// against single entry ids.  Throws DataError when unresolved.
Eigen::VectorXd ResolveEnrollmentModel(
    const std::unordered_map<std::string, Eigen::VectorXd> &models,
    const VectorSet &enroll, const std::string &model_id);

ScoreSet ScoreTrials(const PldaModel &model, const VectorSet &enroll,
                     const VectorSet &test, const TrialList &trials);

}  // namespace rwt

#endif  // RWT_PLDA_H_
