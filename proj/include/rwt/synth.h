// include/rwt/synth.h

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

#ifndef RWT_SYNTH_H_
#define RWT_SYNTH_H_

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rwt/corpus_io.h"
#include "rwt/rng.h"

namespace rwt {

/// One out-of-domain sub-corpus: its mean sits `shift` away from the origin
/// along a seeded direction and its covariance has condition number `kappa`.
struct SubcorpusSpec {
  std::string name;
  double shift = 0.0;
  double kappa = 1.0;
};

struct SynthConfig {
  int dim = 50;
  std::uint64_t seed = 1;
  double across_var = 1.0;  // tau^2, speaker-mean variance
  double within_var = 1.0;  // sigma^2, session variance

  int ood_speakers = 250;  // per sub-corpus
  int ood_sessions = 8;
  std::vector<SubcorpusSpec> subcorpora;

  int indomain_speakers = 40;  // enroll/test speakers
  int enroll_sessions = 3;
  int test_sessions = 3;
  int unlabeled = 100;
  int unlabeled_speakers = 20;
  double indomain_shift = 2.0;  // delta
  double indomain_scale = 1.5;  // rho
  double indomain_kappa = 10.0;

  /// When true every domain covariance shares one seeded eigenbasis and
  /// the domains differ only in spectrum; otherwise each draws its own.
  bool shared_basis = true;

  /// Desk-scale default profile.
  static SynthConfig Default();
  void Validate() const;
};

/// Generating parameters of one domain.
struct DomainTruth {
  std::string name;
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;  // Sigma_dom; speakers use tau^2 Sigma, sessions sigma^2 Sigma
};

struct SynthWorld {
  VectorSet ood_labeled{1};
  VectorSet indomain_unlabeled{1};
  VectorSet enroll{1};
  VectorSet test{1};
  TrialList trials;
  std::vector<DomainTruth> domains;  // sub-corpora first, in-domain last
};

/// Haar-distributed orthogonal matrix (QR of a Gaussian matrix with the
/// sign of R's diagonal folded into Q).
Eigen::MatrixXd RandomOrthogonal(int dim, Rng &rng);

/// Eigenvalues log-spaced in [1/sqrt(kappa), sqrt(kappa)], increasing.
Eigen::VectorXd LogSpacedSpectrum(int dim, double kappa);

/// Q diag(spectrum) Q^T with a seeded random rotation; exactly the identity
/// when kappa == 1.
Eigen::MatrixXd RandomSpd(int dim, double kappa, std::uint64_t seed);

SynthWorld GenerateWorld(const SynthConfig &cfg);

}  // namespace rwt

#endif  // RWT_SYNTH_H_
