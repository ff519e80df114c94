// src/whitening.cc

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

#include "rwt/whitening.h"

#include <sstream>

#include "rwt/error.h"

namespace rwt {

namespace {

void AppendRow(std::ostringstream &os, const Eigen::Ref<const Eigen::VectorXd> &row) {
  for (Eigen::Index i = 0; i < row.size(); ++i) {
    if (i) os << ' ';
    os << FormatReal(row[i]);
  }
  os << '\n';
}

std::vector<std::string> Tokens(const std::string &line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

std::string JoinIds(const std::vector<std::string> &ids) {
  std::string out;
  for (const auto &id : ids) {
    if (!out.empty()) out += '+';
    out += id;
  }
  return out;
}

}  // namespace

bool WhiteningStage::operator==(const WhiteningStage &other) const {
  return level == other.level && corpus_id == other.corpus_id &&
         mean.size() == other.mean.size() && mean == other.mean &&
         transform.rows() == other.transform.rows() &&
         transform.cols() == other.transform.cols() &&
         transform == other.transform;
}

RecursiveWhitener::RecursiveWhitener(std::vector<WhiteningStage> stages,
                                     std::vector<LevelSelection> selection_log)
    : stages_(std::move(stages)), selection_log_(std::move(selection_log)) {
  if (stages_.empty()) throw DataError("a whitener needs at least one stage");
  const int d = stages_.front().dim();
  for (std::size_t i = 0; i < stages_.size(); ++i) {
    const auto &s = stages_[i];
    if (s.dim() != d || s.transform.rows() != d || s.transform.cols() != d)
      throw DataError("whitening stage " + std::to_string(i) +
                      " has inconsistent dimensions");
    if (i > 0 && s.level <= stages_[i - 1].level)
      throw DataError("whitening stage levels must be strictly increasing");
  }
  for (const auto &sel : selection_log_) {
    if (sel.candidates.size() != sel.logliks.size() ||
        sel.chosen >= sel.candidates.size())
      throw DataError("malformed selection log at level " +
                      std::to_string(sel.level));
  }
}

Eigen::VectorXd RecursiveWhitener::TransformPartial(
    const Eigen::VectorXd &v, std::size_t num_stages) const {
  if (v.size() != dim())
    throw DataError("dimension mismatch: vector has " +
                    std::to_string(v.size()) + " entries, whitener expects " +
                    std::to_string(dim()));
  Eigen::VectorXd f = v;
  for (std::size_t i = 0; i < num_stages && i < stages_.size(); ++i)
    f = LengthNormalize(ApplyStage(stages_[i], f));
  return f;
}

Eigen::VectorXd RecursiveWhitener::Transform(const Eigen::VectorXd &v) const {
  return TransformPartial(v, stages_.size());
}

VectorSet RecursiveWhitener::TransformSet(const VectorSet &set) const {
  if (set.dim() != dim())
    throw DataError("dimension mismatch: set has dim " +
                    std::to_string(set.dim()) + ", whitener expects " +
                    std::to_string(dim()));
  VectorSet out(set.dim());
  for (const auto &e : set)
    out.Add(VectorEntry{e.id, e.corpus, e.speaker, Transform(e.values)});
  return out;
}

std::string RecursiveWhitener::Serialize(
    const std::vector<std::string> &comments) const {
  std::ostringstream os;
  os << "#whitener dim=" << dim() << " stages=" << stages_.size() << '\n';
  for (const auto &c : comments) os << "# " << c << '\n';
  for (const auto &s : stages_) {
    os << "[stage " << s.level << ' ' << s.corpus_id << "]\n";
    AppendRow(os, s.mean);
    for (Eigen::Index r = 0; r < s.transform.rows(); ++r)
      AppendRow(os, s.transform.row(r).transpose());
  }
  os << "[selection]\n";
  for (const auto &sel : selection_log_)
    for (std::size_t j = 0; j < sel.candidates.size(); ++j)
      os << sel.level << '\t' << sel.candidates[j] << '\t'
         << FormatReal(sel.logliks[j]) << '\t' << (j == sel.chosen ? 1 : 0)
         << '\n';
  return os.str();
}

RecursiveWhitener RecursiveWhitener::Parse(const std::string &text,
                                           const std::string &source) {
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
  auto fail = [&](const std::string &what) -> DataError {
    return DataError(source + ": line " + std::to_string(line_no) + ": " + what);
  };
  auto read_row = [&](int d) {
    if (!next_line()) throw fail("unexpected end of whitener file");
    auto toks = Tokens(line);
    if (static_cast<int>(toks.size()) != d) throw fail("expected " + std::to_string(d) + " values");
    Eigen::VectorXd row(d);
    try {
      for (int i = 0; i < d; ++i) row[i] = ParseReal(toks[i]);
    } catch (const DataError &e) {
      throw fail(e.what());
    }
    return row;
  };

  if (!next_line() || line.rfind("#whitener dim=", 0) != 0)
    throw fail("missing #whitener header");
  int dim = 0;
  std::size_t num_stages = 0;
  {
    std::istringstream hs(line.substr(std::string("#whitener dim=").size()));
    std::string stages_tok;
    if (!(hs >> dim >> stages_tok) || dim < 1 ||
        stages_tok.rfind("stages=", 0) != 0)
      throw fail("malformed #whitener header");
    try {
      num_stages = std::stoul(stages_tok.substr(7));
    } catch (const std::exception &) {
      throw fail("malformed #whitener header");
    }
  }

  std::vector<WhiteningStage> stages;
  for (std::size_t s = 0; s < num_stages; ++s) {
    if (!next_line()) throw fail("unexpected end of whitener file");
    auto toks = Tokens(line);
    if (toks.size() != 3 || toks[0] != "[stage" || toks[2].size() < 2 ||
        toks[2].back() != ']')
      throw fail("expected [stage <level> <corpus_id>]");
    WhiteningStage stage;
    try {
      stage.level = std::stoi(toks[1]);
    } catch (const std::exception &) {
      throw fail("malformed stage level");
    }
    stage.corpus_id = toks[2].substr(0, toks[2].size() - 1);
    stage.mean = read_row(dim);
    stage.transform.resize(dim, dim);
    for (int r = 0; r < dim; ++r) stage.transform.row(r) = read_row(dim).transpose();
    stages.push_back(std::move(stage));
  }

  std::vector<LevelSelection> log;
  if (next_line()) {
    if (line != "[selection]") throw fail("expected [selection]");
    while (next_line()) {
      std::vector<std::string> f;
      std::size_t start = 0;
      while (true) {
        auto pos = line.find('\t', start);
        f.push_back(line.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
      }
      if (f.size() != 4 || (f[3] != "0" && f[3] != "1"))
        throw fail("malformed selection row");
      int level = 0;
      double ll = 0.0;
      try {
        level = std::stoi(f[0]);
        ll = ParseReal(f[2]);
      } catch (const std::exception &e) {
        throw fail(std::string("malformed selection row: ") + e.what());
      }
      if (log.empty() || log.back().level != level) {
        LevelSelection sel;
        sel.level = level;
        sel.chosen = static_cast<std::size_t>(-1);
        log.push_back(std::move(sel));
      }
      auto &sel = log.back();
      if (f[3] == "1") {
        if (sel.chosen != static_cast<std::size_t>(-1))
          throw fail("two chosen candidates at one level");
        sel.chosen = sel.candidates.size();
      }
      sel.candidates.push_back(f[1]);
      sel.logliks.push_back(ll);
    }
  }
  for (const auto &sel : log)
    if (sel.chosen == static_cast<std::size_t>(-1))
      throw DataError(source + ": no chosen candidate at level " +
                      std::to_string(sel.level));
  return RecursiveWhitener(std::move(stages), std::move(log));
}

void RecursiveWhitener::Save(const std::string &path,
                             const std::vector<std::string> &comments) const {
  WriteFileText(path, Serialize(comments));
}

RecursiveWhitener RecursiveWhitener::Load(const std::string &path) {
  return Parse(ReadFileText(path), path);
}

bool RecursiveWhitener::operator==(const RecursiveWhitener &other) const {
  return stages_ == other.stages_ && selection_log_ == other.selection_log_;
}

WhiteningStage StageFromMoments(const Moments &m, int level) {
  WhiteningStage stage;
  stage.level = level;
  stage.corpus_id = m.corpus_id;
  stage.mean = m.mean;
  stage.transform = WhiteningMatrix(m);
  return stage;
}

WhiteningStage FitStage(const VectorSet &data, int level,
                        std::optional<double> shrinkage,
                        std::string corpus_id) {
  if (data.empty()) throw DataError("cannot fit a whitening stage on no data");
  if (corpus_id.empty()) corpus_id = JoinIds(data.CorpusIds());
  const auto vectors = data.Vectors();
  const double gamma =
      shrinkage.value_or(DefaultShrinkage(vectors.size(), data.dim()));
  return StageFromMoments(EstimateMoments(vectors, std::move(corpus_id), gamma),
                          level);
}

Eigen::VectorXd ApplyStage(const WhiteningStage &stage,
                           const Eigen::VectorXd &v) {
  if (v.size() != stage.dim())
    throw DataError("dimension mismatch: vector has " +
                    std::to_string(v.size()) + " entries, stage expects " +
                    std::to_string(stage.dim()));
  return stage.transform * (v - stage.mean);
}

Eigen::VectorXd LengthNormalize(const Eigen::VectorXd &v) {
  const double norm = v.norm();
  if (!(norm > 1e-12)) throw NumericalError("zero-norm vector");
  return v / norm;
}

SelectionResult SelectSubcorpus(std::span<const Moments> candidates,
                                std::span<const Eigen::VectorXd> targets) {
  if (candidates.empty()) throw DataError("no candidate sub-corpora");
  if (targets.empty()) throw DataError("no target vectors for selection");
  SelectionResult result;
  result.logliks.reserve(candidates.size());
  for (std::size_t j = 0; j < candidates.size(); ++j) {
    GaussianDensity density(candidates[j]);
    double total = 0.0;
    for (const auto &t : targets) total += density.LogLik(t);
    result.logliks.push_back(total);
    if (total > result.logliks[result.chosen]) result.chosen = j;
  }
  return result;
}

RecursiveWhitener FitRecursive(const VectorSet &in_domain,
                               const std::vector<CorpusLevel> &levels,
                               const VectorSet &targets,
                               std::optional<double> shrinkage) {
  if (targets.dim() != in_domain.dim())
    throw DataError("target and in-domain dimensions differ");
  std::vector<WhiteningStage> stages;
  stages.push_back(FitStage(in_domain, 0, shrinkage));
  std::vector<LevelSelection> log;

  for (const auto &level : levels) {
    if (level.candidates.empty())
      throw DataError("level " + std::to_string(level.level) +
                      " has no candidate corpora");
    if (level.level <= stages.back().level)
      throw DataError("hierarchy levels must be strictly increasing");
    // Everything at this level is compared in the space of the stages so far.
    RecursiveWhitener partial(stages, {});
    std::vector<Eigen::VectorXd> pushed_targets;
    pushed_targets.reserve(targets.size());
    for (const auto &e : targets) pushed_targets.push_back(partial.Transform(e.values));

    std::vector<Moments> moments;
    moments.reserve(level.candidates.size());
    for (const auto &cand : level.candidates) {
      if (cand.data.dim() != in_domain.dim())
        throw DataError("candidate '" + cand.id + "' has the wrong dimension");
      std::vector<Eigen::VectorXd> pushed;
      pushed.reserve(cand.data.size());
      for (const auto &e : cand.data) pushed.push_back(partial.Transform(e.values));
      const double gamma = shrinkage.value_or(
          DefaultShrinkage(pushed.size(), in_domain.dim()));
      moments.push_back(EstimateMoments(pushed, cand.id, gamma));
    }

    SelectionResult sel = SelectSubcorpus(moments, pushed_targets);
    LevelSelection entry;
    entry.level = level.level;
    for (const auto &cand : level.candidates) entry.candidates.push_back(cand.id);
    entry.logliks = sel.logliks;
    entry.chosen = sel.chosen;
    log.push_back(std::move(entry));
    stages.push_back(StageFromMoments(moments[sel.chosen], level.level));
  }
  return RecursiveWhitener(std::move(stages), std::move(log));
}

}  // namespace rwt
