// include/rwt/stats.h

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

#ifndef RWT_STATS_H_
#define RWT_STATS_H_

#include <cstddef>
#include <span>
#include <string>

#include <Eigen/Dense>

namespace rwt {

/// Additive floor on every estimated covariance; keeps it positive definite
/// even for degenerate (e.g. duplicated) samples.
inline constexpr double kCovarianceFloor = 1e-8;

/// Per-corpus first and second moments.  `cov` is already regularized.
struct Moments {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
  std::size_t n = 0;
  std::string corpus_id;

  int dim() const { return static_cast<int>(mean.size()); }
};

/// Shrinkage used when the caller does not fix one: 0.1 if n <= 2d, else 0.
double DefaultShrinkage(std::size_t n, int dim);

/**
   Sample mean and regularized unbiased covariance

     cov = S + lambda * I,   lambda = shrinkage * trace(S) / d + 1e-8,

   where S is the (n-1)-normalized sample covariance.  Requires n >= 2 and
   shrinkage in [0, 1).
*/
Moments EstimateMoments(std::span<const Eigen::VectorXd> vectors,
                        std::string corpus_id, double shrinkage);

/// Lower-triangular L with L * L^T = m.  Throws NumericalError if a pivot
/// is not strictly positive (input not SPD).
Eigen::MatrixXd CholeskyLower(const Eigen::MatrixXd &m);

/// Inverse of a lower-triangular matrix with nonzero diagonal.
Eigen::MatrixXd InvertLowerTriangular(const Eigen::MatrixXd &l);

/// W = L^{-1} with L = CholeskyLower(cov), so that W * cov * W^T = I.
Eigen::MatrixXd WhiteningMatrix(const Eigen::MatrixXd &cov);
inline Eigen::MatrixXd WhiteningMatrix(const Moments &m) {
  return WhiteningMatrix(m.cov);
}

/// Full-covariance Gaussian with the factorization done once; use this when
/// scoring many vectors against the same model.
class GaussianDensity {
 public:
  explicit GaussianDensity(const Moments &m);
  GaussianDensity(Eigen::VectorXd mean, const Eigen::MatrixXd &cov);

  int dim() const { return static_cast<int>(mean_.size()); }
  double LogDet() const { return logdet_; }
  double LogLik(const Eigen::VectorXd &v) const;

 private:
  Eigen::VectorXd mean_;
  Eigen::MatrixXd chol_;
  double logdet_ = 0.0;
};

/// log N(v; m.mean, m.cov); logdet from the Cholesky diagonal.
double GaussianLogLik(const Moments &m, const Eigen::VectorXd &v);

}  // namespace rwt

#endif  // RWT_STATS_H_
