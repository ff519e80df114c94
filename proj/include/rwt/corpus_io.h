// include/rwt/corpus_io.h

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

#ifndef RWT_CORPUS_IO_H_
#define RWT_CORPUS_IO_H_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

namespace rwt {

enum class TrialLabel { kTarget, kNontarget, kUnknown };

std::string_view LabelName(TrialLabel label);
/// Accepts exactly "target", "nontarget" and "unknown".
TrialLabel ParseLabel(std::string_view token);

/// One embedding together with its bookkeeping.  `speaker` is empty for
/// unlabeled data (written as "-" on disk).
struct VectorEntry {
  std::string id;
  std::string corpus;
  std::optional<std::string> speaker;
  Eigen::VectorXd values;

  bool operator==(const VectorEntry &other) const;
};

/// Fixed-dimension collection of embeddings with unique ids.
class VectorSet {
 public:
  explicit VectorSet(int dim);

  int dim() const { return dim_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  /// Validates dimension, finiteness, id token and id uniqueness.
  void Add(VectorEntry entry);
  void Add(std::string id, std::string corpus,
           std::optional<std::string> speaker, Eigen::VectorXd values);

  const std::vector<VectorEntry> &entries() const { return entries_; }
  const VectorEntry &operator[](std::size_t i) const { return entries_[i]; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  /// nullptr when absent.
  const VectorEntry *Find(std::string_view id) const;

  /// Distinct corpus ids in order of first appearance.
  std::vector<std::string> CorpusIds() const;
  /// Entries whose corpus id is in `corpora`, original order kept.
  VectorSet SelectCorpora(const std::vector<std::string> &corpora) const;
  /// Concatenation; ids must stay unique.
  static VectorSet Concat(const std::vector<const VectorSet *> &sets);

  std::vector<Eigen::VectorXd> Vectors() const;

  bool operator==(const VectorSet &other) const;

 private:
  int dim_;
  std::vector<VectorEntry> entries_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct Trial {
  std::string enroll;
  std::string test;
  TrialLabel label = TrialLabel::kUnknown;

  bool operator==(const Trial &) const = default;
};

class TrialList {
 public:
  /// Rejects duplicate (enroll, test) pairs.
  void Add(Trial trial);
  const std::vector<Trial> &trials() const { return trials_; }
  std::size_t size() const { return trials_.size(); }
  auto begin() const { return trials_.begin(); }
  auto end() const { return trials_.end(); }
  bool operator==(const TrialList &other) const {
    return trials_ == other.trials_;
  }

 private:
  std::vector<Trial> trials_;
  std::unordered_map<std::string, std::size_t> keys_;
};

struct Score {
  std::string enroll;
  std::string test;
  double score = 0.0;
  TrialLabel label = TrialLabel::kUnknown;

  bool operator==(const Score &) const = default;
};

class ScoreSet {
 public:
  /// Rejects non-finite scores and duplicate trial keys.
  void Add(Score score);
  const std::vector<Score> &scores() const { return scores_; }
  std::size_t size() const { return scores_.size(); }
  bool empty() const { return scores_.empty(); }
  auto begin() const { return scores_.begin(); }
  auto end() const { return scores_.end(); }
  /// nullptr when the key is absent.
  const Score *Find(std::string_view enroll, std::string_view test) const;
  bool operator==(const ScoreSet &other) const {
    return scores_ == other.scores_;
  }

 private:
  std::vector<Score> scores_;
  std::unordered_map<std::string, std::size_t> keys_;
};

/// Shortest rendering that parses back to the same double.
std::string FormatReal(double value);
/// Strict parse of a complete token; throws DataError on junk or non-finite.
double ParseReal(std::string_view token);

// Text formats.  Vector table:
//   #dim=<d>
//   id<TAB>corpus<TAB>speaker-or-dash<TAB>v1 v2 ... vd
// Trial list: enroll<TAB>test<TAB>{target|nontarget|unknown}
// Score file: enroll<TAB>test<TAB>score<TAB>label
// Lines starting with '#' (other than the #dim header) are comments.
// Parse errors name the source and the 1-based line number.

VectorSet ReadVectorTable(std::istream &is, const std::string &source);
void WriteVectorTable(const VectorSet &set, std::ostream &os,
                      const std::vector<std::string> &comments = {});
VectorSet LoadVectorTable(const std::string &path);
void SaveVectorTable(const VectorSet &set, const std::string &path,
                     const std::vector<std::string> &comments = {});

TrialList ReadTrials(std::istream &is, const std::string &source);
void WriteTrials(const TrialList &trials, std::ostream &os,
                 const std::vector<std::string> &comments = {});
TrialList LoadTrials(const std::string &path);
void SaveTrials(const TrialList &trials, const std::string &path,
                const std::vector<std::string> &comments = {});

ScoreSet ReadScores(std::istream &is, const std::string &source);
void WriteScores(const ScoreSet &scores, std::ostream &os,
                 const std::vector<std::string> &comments = {});
ScoreSet LoadScores(const std::string &path);
void SaveScores(const ScoreSet &scores, const std::string &path,
                const std::vector<std::string> &comments = {});

/// Whole-file helpers shared by the other serializers.
std::string ReadFileText(const std::string &path);
void WriteFileText(const std::string &path, const std::string &text);

}  // namespace rwt

#endif  // RWT_CORPUS_IO_H_
