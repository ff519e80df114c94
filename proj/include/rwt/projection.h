// include/rwt/projection.h

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

#ifndef RWT_PROJECTION_H_
#define RWT_PROJECTION_H_

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rwt/corpus_io.h"

namespace rwt {

/// Mean and covariance of one corpus in the projected coordinates, enough
/// to draw its equal-probability ellipses.
struct CorpusContour {
  std::string corpus;
  std::size_t n = 0;
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
};

struct Projection {
  std::vector<std::string> ids;
  std::vector<std::string> corpora;
  Eigen::MatrixXd coords;      // n x k
  Eigen::VectorXd center;      // d
  Eigen::MatrixXd components;  // d x k, orthonormal columns
  Eigen::VectorXd variances;   // k, decreasing
  std::vector<CorpusContour> contours;
};

/// PCA over all vectors of `data`.  Components are ordered by decreasing
/// variance and signed so that their largest-magnitude entry is positive.
/// Throws NumericalError when the k-th component carries no variance.
Projection PcaProject(const VectorSet &data, int n_components);

/// "#id\tcorpus\tc1 ... ck" table.
std::string RenderCoordinates(const Projection &p,
                              const std::vector<std::string> &comments = {});
/// "#corpus\tn\tmean\tcov" table; cov flattened row-major.
std::string RenderContours(const Projection &p,
                           const std::vector<std::string> &comments = {});

}  // namespace rwt

#endif  // RWT_PROJECTION_H_
