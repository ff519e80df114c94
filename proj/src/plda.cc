// src/plda.cc

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

#include "rwt/plda.h"

#include <sstream>
#include <vector>

#include "rwt/error.h"
#include "rwt/stats.h"
#include "rwt/whitening.h"

namespace rwt {

namespace {

struct SpdInverse {
  Eigen::MatrixXd inverse;
  double logdet;
};

SpdInverse InvertSpd(const Eigen::MatrixXd &m) {
  Eigen::MatrixXd l = CholeskyLower(m);
  Eigen::MatrixXd w = InvertLowerTriangular(l);
  return {w.transpose() * w, 2.0 * l.diagonal().array().log().sum()};
}

Eigen::MatrixXd Symmetrize(const Eigen::MatrixXd &m) {
  return 0.5 * (m + m.transpose());
}

void AppendMatrix(std::ostringstream &os, const Eigen::MatrixXd &m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) os << ' ';
      os << FormatReal(m(r, c));
    }
    os << '\n';
  }
}

}  // namespace

PldaModel::PldaModel(Eigen::VectorXd mean, Eigen::MatrixXd ac,
                     Eigen::MatrixXd wc, std::optional<int> rank)
    : mean_(std::move(mean)), ac_(std::move(ac)), wc_(std::move(wc)),
      rank_(rank) {
  const Eigen::Index d = mean_.size();
  if (d < 1 || ac_.rows() != d || ac_.cols() != d || wc_.rows() != d ||
      wc_.cols() != d)
    throw DataError("PLDA parameters have inconsistent dimensions");
  if (!mean_.allFinite() || !ac_.allFinite() || !wc_.allFinite())
    throw NumericalError("non-finite PLDA parameters");
  if (rank_) {
    if (*rank_ < 1 || *rank_ > d)
      throw ConfigError("PLDA rank must lie in [1, " + std::to_string(d) + "]");
    if (*rank_ < d) ac_ = TruncateRank(ac_, *rank_);
  }
  ComputeDerivedVars();
}

void PldaModel::ComputeDerivedVars() {
  const Eigen::MatrixXd total = ac_ + wc_;
  const Eigen::MatrixXd sum_cov = total + ac_;
  const SpdInverse inv_sum = InvertSpd(sum_cov);
  const SpdInverse inv_wc = InvertSpd(wc_);
  const SpdInverse inv_total = InvertSpd(total);
  quad_ = Symmetrize(0.5 * (inv_sum.inverse + inv_wc.inverse) -
                     inv_total.inverse);
  cross_ = Symmetrize(0.5 * (inv_sum.inverse - inv_wc.inverse));
  offset_ =
      -0.5 * (inv_sum.logdet + inv_wc.logdet - 2.0 * inv_total.logdet);
}

double PldaModel::ScorePair(const Eigen::VectorXd &enroll,
                            const Eigen::VectorXd &test) const {
  if (enroll.size() != dim() || test.size() != dim())
    throw DataError("dimension mismatch in PLDA scoring: model has dim " +
                    std::to_string(dim()));
  const Eigen::VectorXd e = enroll - mean_;
  const Eigen::VectorXd t = test - mean_;
  const double qe = e.dot(quad_ * e);
  const double qt = t.dot(quad_ * t);
  const double cross = 0.5 * (e.dot(cross_ * t) + t.dot(cross_ * e));
  return -0.5 * (qe + qt + 2.0 * cross) + offset_;
}

std::string PldaModel::Serialize(
    const std::vector<std::string> &comments) const {
  std::ostringstream os;
  os << "#plda dim=" << dim() << '\n';
  for (const auto &c : comments) os << "# " << c << '\n';
  os << "[mean]\n";
  AppendMatrix(os, mean_.transpose());
  os << "[ac]\n";
  AppendMatrix(os, ac_);
  os << "[wc]\n";
  AppendMatrix(os, wc_);
  os << "[rank]\n";
  if (rank_)
    os << *rank_ << '\n';
  else
    os << "none\n";
  return os.str();
}

PldaModel PldaModel::Parse(const std::string &text, const std::string &source) {
  std::istringstream is(text);
  std::string line;
  int line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(is, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty() && line.rfind("# ", 0) != 0) return true;
    }
    return false;
  };
  auto fail = [&](const std::string &what) {
    return DataError(source + ": line " + std::to_string(line_no) + ": " + what);
  };
  auto expect = [&](const std::string &tag) {
    if (!next_line() || line != tag) throw fail("expected " + tag);
  };
  auto read_matrix = [&](int rows, int cols) {
    Eigen::MatrixXd m(rows, cols);
    for (int r = 0; r < rows; ++r) {
      if (!next_line()) throw fail("unexpected end of PLDA file");
      std::istringstream ls(line);
      std::string tok;
      int c = 0;
      while (ls >> tok) {
        if (c >= cols) throw fail("too many values");
        try {
          m(r, c++) = ParseReal(tok);
        } catch (const DataError &e) {
          throw fail(e.what());
        }
      }
      if (c != cols) throw fail("too few values");
    }
    return m;
  };

  if (!next_line() || line.rfind("#plda dim=", 0) != 0)
    throw fail("missing #plda header");
  int dim = 0;
  try {
    dim = std::stoi(line.substr(10));
  } catch (const std::exception &) {
    throw fail("malformed #plda header");
  }
  if (dim < 1) throw fail("malformed #plda header");
  expect("[mean]");
  Eigen::VectorXd mean = read_matrix(1, dim).row(0).transpose();
  expect("[ac]");
  Eigen::MatrixXd ac = read_matrix(dim, dim);
  expect("[wc]");
  Eigen::MatrixXd wc = read_matrix(dim, dim);
  expect("[rank]");
  if (!next_line()) throw fail("missing rank value");
  std::optional<int> rank;
  if (line != "none") {
    try {
      rank = std::stoi(line);
    } catch (const std::exception &) {
      throw fail("malformed rank");
    }
  }
  // The stored ac is already truncated, so truncating again is a no-op up
  // to rounding; rebuild without it to keep the round trip exact.
  PldaModel model(std::move(mean), std::move(ac), std::move(wc));
  model.rank_ = rank;
  return model;
}

void PldaModel::Save(const std::string &path,
                     const std::vector<std::string> &comments) const {
  WriteFileText(path, Serialize(comments));
}

PldaModel PldaModel::Load(const std::string &path) {
  return Parse(ReadFileText(path), path);
}

Eigen::MatrixXd TruncateRank(const Eigen::MatrixXd &m, int rank) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(Symmetrize(m));
  if (eig.info() != Eigen::Success)
    throw NumericalError("eigendecomposition failed during rank truncation");
  const Eigen::Index d = m.rows();
  // Eigenvalues come back in increasing order.
  Eigen::VectorXd kept = Eigen::VectorXd::Zero(d);
  for (Eigen::Index i = d - rank; i < d; ++i)
    kept[i] = std::max(eig.eigenvalues()[i], 0.0);
  return Symmetrize(eig.eigenvectors() * kept.asDiagonal() *
                    eig.eigenvectors().transpose());
}

PldaModel TrainPlda(const VectorSet &data, std::optional<int> rank) {
  const int d = data.dim();
  std::unordered_map<std::string, std::size_t> speaker_index;
  std::vector<Eigen::VectorXd> sums;
  std::vector<std::size_t> counts;
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(d);
  for (const auto &e : data) {
    if (!e.speaker)
      throw DataError("PLDA training entry '" + e.id + "' has no speaker label");
    auto [it, inserted] = speaker_index.emplace(*e.speaker, sums.size());
    if (inserted) {
      sums.push_back(Eigen::VectorXd::Zero(d));
      counts.push_back(0);
    }
    sums[it->second] += e.values;
    ++counts[it->second];
    mean += e.values;
  }
  const std::size_t num_sessions = data.size();
  const std::size_t num_speakers = sums.size();
  if (num_speakers < 2)
    throw DataError("PLDA training needs at least 2 speakers");
  if (num_sessions < num_speakers + 1)
    throw DataError("PLDA training needs more sessions than speakers");
  mean /= static_cast<double>(num_sessions);

  std::vector<Eigen::VectorXd> speaker_means(num_speakers);
  for (std::size_t s = 0; s < num_speakers; ++s)
    speaker_means[s] = sums[s] / static_cast<double>(counts[s]);

  Eigen::MatrixXd within(d, num_sessions);
  std::size_t col = 0;
  for (const auto &e : data)
    within.col(col++) = e.values - speaker_means[speaker_index.at(*e.speaker)];
  Eigen::MatrixXd between(d, num_speakers);
  for (std::size_t s = 0; s < num_speakers; ++s)
    between.col(s) = speaker_means[s] - mean;

  Eigen::MatrixXd wc = within * within.transpose() /
                       static_cast<double>(num_sessions - num_speakers);
  Eigen::MatrixXd ac = between * between.transpose() /
                       static_cast<double>(num_speakers - 1);
  wc = Symmetrize(wc);
  ac = Symmetrize(ac);
  wc.diagonal().array() += kCovarianceFloor;
  return PldaModel(std::move(mean), std::move(ac), std::move(wc), rank);
}

std::unordered_map<std::string, Eigen::VectorXd> BuildEnrollmentModels(
    const VectorSet &enroll) {
  std::unordered_map<std::string, Eigen::VectorXd> sums;
  std::unordered_map<std::string, int> counts;
  for (const auto &e : enroll) {
    const std::string &key = e.speaker ? *e.speaker : e.id;
    auto it = sums.find(key);
    if (it == sums.end())
      sums.emplace(key, e.values);
    else
      it->second += e.values;
    ++counts[key];
  }
  std::unordered_map<std::string, Eigen::VectorXd> models;
  for (auto &[key, sum] : sums) {
    try {
      models.emplace(key, LengthNormalize(sum / counts[key]));
    } catch (const NumericalError &) {
      throw NumericalError("zero-norm enrollment model '" + key + "'");
    }
  }
  return models;
}

Eigen::VectorXd ResolveEnrollmentModel(
    const std::unordered_map<std::string, Eigen::VectorXd> &models,
    const VectorSet &enroll, const std::string &model_id) {
  if (auto it = models.find(model_id); it != models.end()) return it->second;
  if (const VectorEntry *e = enroll.Find(model_id)) {
    try {
      return LengthNormalize(e->values);
    } catch (const NumericalError &) {
      throw NumericalError("zero-norm enrollment model '" + model_id + "'");
    }
  }
  throw DataError("unresolved enrollment model '" + model_id + "'");
}

ScoreSet ScoreTrials(const PldaModel &model, const VectorSet &enroll,
                     const VectorSet &test, const TrialList &trials) {
  const auto models = BuildEnrollmentModels(enroll);
  ScoreSet out;
  for (const auto &trial : trials) {
    const Eigen::VectorXd model_vec =
        ResolveEnrollmentModel(models, enroll, trial.enroll);
    const VectorEntry *t = test.Find(trial.test);
    if (!t) throw DataError("unresolved test id '" + trial.test + "'");
    out.Add(Score{trial.enroll, trial.test, model.ScorePair(model_vec, t->values),
                  trial.label});
  }
  return out;
}

}  // namespace rwt
