// src/projection.cc

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

#include "rwt/projection.h"

#include <map>
#include <sstream>

#include "rwt/error.h"

namespace rwt {

namespace {

void AppendValues(std::ostringstream &os, const Eigen::Ref<const Eigen::VectorXd> &v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) os << ' ';
    os << FormatReal(v[i]);
  }
}

}  // namespace

Projection PcaProject(const VectorSet &data, int n_components) {
  const int d = data.dim();
  const auto n = static_cast<Eigen::Index>(data.size());
  if (n < 2) throw DataError("projection needs at least 2 vectors");
  if (n_components < 1 || n_components > d)
    throw ConfigError("number of components must lie in [1, " +
                      std::to_string(d) + "]");

  Eigen::MatrixXd x(n, d);
  for (Eigen::Index i = 0; i < n; ++i) x.row(i) = data[i].values.transpose();
  Projection p;
  p.center = x.colwise().mean().transpose();
  Eigen::MatrixXd centered = x.rowwise() - p.center.transpose();
  Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(n - 1);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  if (eig.info() != Eigen::Success)
    throw NumericalError("eigendecomposition failed in projection");
  const double largest = eig.eigenvalues()[d - 1];
  p.components.resize(d, n_components);
  p.variances.resize(n_components);
  for (int k = 0; k < n_components; ++k) {
    const double var = eig.eigenvalues()[d - 1 - k];
    if (!(var > 1e-12 * std::max(largest, 1e-300)))
      throw NumericalError("input is rank-deficient: component " +
                           std::to_string(k + 1) + " has no variance");
    Eigen::VectorXd v = eig.eigenvectors().col(d - 1 - k);
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    if (v[arg] < 0) v = -v;
    p.components.col(k) = v;
    p.variances[k] = var;
  }
  p.coords = centered * p.components;

  std::map<std::string, std::vector<Eigen::Index>> rows;
  std::vector<std::string> order;
  for (Eigen::Index i = 0; i < n; ++i) {
    p.ids.push_back(data[i].id);
    p.corpora.push_back(data[i].corpus);
    auto [it, inserted] = rows.try_emplace(data[i].corpus);
    if (inserted) order.push_back(data[i].corpus);
    it->second.push_back(i);
  }
  for (const auto &name : order) {
    const auto &idx = rows[name];
    CorpusContour c;
    c.corpus = name;
    c.n = idx.size();
    c.mean = Eigen::VectorXd::Zero(n_components);
    for (auto i : idx) c.mean += p.coords.row(i).transpose();
    c.mean /= static_cast<double>(idx.size());
    c.cov = Eigen::MatrixXd::Zero(n_components, n_components);
    if (idx.size() > 1) {
      for (auto i : idx) {
        Eigen::VectorXd dv = p.coords.row(i).transpose() - c.mean;
        c.cov += dv * dv.transpose();
      }
      c.cov /= static_cast<double>(idx.size() - 1);
    }
    p.contours.push_back(std::move(c));
  }
  return p;
}

std::string RenderCoordinates(const Projection &p,
                              const std::vector<std::string> &comments) {
  std::ostringstream os;
  for (const auto &c : comments) os << "# " << c << '\n';
  os << "#id\tcorpus\t";
  for (Eigen::Index k = 0; k < p.coords.cols(); ++k)
    os << (k ? " c" : "c") << k + 1;
  os << '\n';
  for (std::size_t i = 0; i < p.ids.size(); ++i) {
    os << p.ids[i] << '\t' << p.corpora[i] << '\t';
    AppendValues(os, p.coords.row(static_cast<Eigen::Index>(i)).transpose());
    os << '\n';
  }
  return os.str();
}

std::string RenderContours(const Projection &p,
                           const std::vector<std::string> &comments) {
  std::ostringstream os;
  for (const auto &c : comments) os << "# " << c << '\n';
  os << "#corpus\tn\tmean\tcov\n";
  for (const auto &c : p.contours) {
    os << c.corpus << '\t' << c.n << '\t';
    AppendValues(os, c.mean);
    os << '\t';
    Eigen::MatrixXd rowmajor_t = c.cov.transpose();
    AppendValues(os, Eigen::Map<const Eigen::VectorXd>(rowmajor_t.data(),
                                                       rowmajor_t.size()));
    os << '\n';
  }
  return os.str();
}

}  // namespace rwt
