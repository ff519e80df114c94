// src/stats.cc

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

#include "rwt/stats.h"

#include <cmath>
#include <numbers>

#include "rwt/error.h"

namespace rwt {

double DefaultShrinkage(std::size_t n, int dim) {
  return n <= 2 * static_cast<std::size_t>(dim) ? 0.1 : 0.0;
}

Moments EstimateMoments(std::span<const Eigen::VectorXd> vectors,
                        std::string corpus_id, double shrinkage) {
  if (vectors.size() < 2)
    throw DataError("estimating moments of '" + corpus_id +
                    "' needs at least 2 vectors, got " +
                    std::to_string(vectors.size()));
  if (!(shrinkage >= 0.0 && shrinkage < 1.0))
    throw ConfigError("shrinkage must lie in [0, 1)");
  const Eigen::Index dim = vectors.front().size();
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(dim);
  for (const auto &v : vectors) {
    if (v.size() != dim)
      throw DataError("dimension mismatch in corpus '" + corpus_id + "'");
    mean += v;
  }
  const double n = static_cast<double>(vectors.size());
  mean /= n;

  Eigen::MatrixXd centered(dim, vectors.size());
  for (std::size_t i = 0; i < vectors.size(); ++i)
    centered.col(i) = vectors[i] - mean;
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(dim, dim);
  cov.selfadjointView<Eigen::Lower>().rankUpdate(centered, 1.0 / (n - 1.0));
  cov = cov.selfadjointView<Eigen::Lower>();

  const double lambda = shrinkage * cov.trace() / static_cast<double>(dim) +
                        kCovarianceFloor;
  cov.diagonal().array() += lambda;

  Moments m;
  m.mean = std::move(mean);
  m.cov = std::move(cov);
  m.n = vectors.size();
  m.corpus_id = std::move(corpus_id);
  return m;
}

Eigen::MatrixXd CholeskyLower(const Eigen::MatrixXd &m) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw DataError("Cholesky factorization needs a non-empty square matrix");
  const Eigen::Index n = m.rows();
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double pivot = m(j, j);
    for (Eigen::Index k = 0; k < j; ++k) pivot -= l(j, k) * l(j, k);
    if (!(pivot > 0.0) || !std::isfinite(pivot))
      throw NumericalError("matrix is not positive definite (pivot " +
                           std::to_string(j) + " is " + std::to_string(pivot) +
                           ")");
    const double ljj = std::sqrt(pivot);
    l(j, j) = ljj;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      double s = m(i, j);
      for (Eigen::Index k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / ljj;
    }
  }
  return l;
}

Eigen::MatrixXd InvertLowerTriangular(const Eigen::MatrixXd &l) {
  const Eigen::Index n = l.rows();
  return l.triangularView<Eigen::Lower>().solve(
      Eigen::MatrixXd::Identity(n, n));
}

Eigen::MatrixXd WhiteningMatrix(const Eigen::MatrixXd &cov) {
  return InvertLowerTriangular(CholeskyLower(cov));
}

GaussianDensity::GaussianDensity(const Moments &m)
    : GaussianDensity(m.mean, m.cov) {}

GaussianDensity::GaussianDensity(Eigen::VectorXd mean,
                                 const Eigen::MatrixXd &cov)
    : mean_(std::move(mean)), chol_(CholeskyLower(cov)) {
  if (cov.rows() != mean_.size())
    throw DataError("Gaussian mean/covariance dimension mismatch");
  logdet_ = 2.0 * chol_.diagonal().array().log().sum();
}

double GaussianDensity::LogLik(const Eigen::VectorXd &v) const {
  if (v.size() != mean_.size())
    throw DataError("dimension mismatch: vector has " +
                    std::to_string(v.size()) + " entries, model has " +
                    std::to_string(mean_.size()));
  Eigen::VectorXd z =
      chol_.triangularView<Eigen::Lower>().solve(v - mean_);
  const double d = static_cast<double>(mean_.size());
  return -0.5 * (d * std::log(2.0 * std::numbers::pi) + logdet_ +
                 z.squaredNorm());
}

double GaussianLogLik(const Moments &m, const Eigen::VectorXd &v) {
  return GaussianDensity(m).LogLik(v);
}

}  // namespace rwt
