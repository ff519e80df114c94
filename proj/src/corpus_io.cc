// src/corpus_io.cc

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

#include "rwt/corpus_io.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "rwt/error.h"

namespace rwt {

namespace {

bool IsToken(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') return false;
  return true;
}

std::string TrialKey(std::string_view enroll, std::string_view test) {
  std::string key(enroll);
  key += '\t';
  key += test;
  return key;
}

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find('\t', start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<std::string_view> SplitSpaces(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && s[i] == ' ') ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string Where(const std::string &source, int line) {
  return source + ": line " + std::to_string(line);
}

void StripCr(std::string *line) {
  if (!line->empty() && line->back() == '\r') line->pop_back();
}

std::ifstream OpenForRead(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw DataError("cannot open " + path + " for reading");
  return is;
}

template <typename WriteFn>
void WriteToPath(const std::string &path, WriteFn &&fn) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw DataError("cannot open " + path + " for writing");
  fn(os);
  os.flush();
  if (!os) throw DataError("write failed: " + path);
}

}  // namespace

std::string_view LabelName(TrialLabel label) {
  switch (label) {
    case TrialLabel::kTarget: return "target";
    case TrialLabel::kNontarget: return "nontarget";
    case TrialLabel::kUnknown: return "unknown";
  }
  return "unknown";
}

TrialLabel ParseLabel(std::string_view token) {
  if (token == "target") return TrialLabel::kTarget;
  if (token == "nontarget") return TrialLabel::kNontarget;
  if (token == "unknown") return TrialLabel::kUnknown;
  throw DataError("unknown label '" + std::string(token) + "'");
}

bool VectorEntry::operator==(const VectorEntry &other) const {
  return id == other.id && corpus == other.corpus &&
         speaker == other.speaker && values.size() == other.values.size() &&
         values == other.values;
}

VectorSet::VectorSet(int dim) : dim_(dim) {
  if (dim < 1) throw DataError("vector dimension must be positive");
}

void VectorSet::Add(VectorEntry entry) {
  if (!IsToken(entry.id))
    throw DataError("invalid id '" + entry.id + "'");
  if (!IsToken(entry.corpus))
    throw DataError("invalid corpus id for '" + entry.id + "'");
  if (entry.speaker && (!IsToken(*entry.speaker) || *entry.speaker == "-"))
    throw DataError("invalid speaker id for '" + entry.id + "'");
  if (entry.values.size() != dim_)
    throw DataError("dimension mismatch for '" + entry.id + "': expected " +
                    std::to_string(dim_) + ", got " +
                    std::to_string(entry.values.size()));
  if (!entry.values.allFinite())
    throw DataError("non-finite value in '" + entry.id + "'");
  if (index_.count(entry.id)) throw DataError("duplicate id '" + entry.id + "'");
  index_.emplace(entry.id, entries_.size());
  entries_.push_back(std::move(entry));
}

void VectorSet::Add(std::string id, std::string corpus,
                    std::optional<std::string> speaker,
                    Eigen::VectorXd values) {
  Add(VectorEntry{std::move(id), std::move(corpus), std::move(speaker),
                  std::move(values)});
}

const VectorEntry *VectorSet::Find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &entries_[it->second];
}

std::vector<std::string> VectorSet::CorpusIds() const {
  std::vector<std::string> ids;
  std::unordered_set<std::string> seen;
  for (const auto &e : entries_)
    if (seen.insert(e.corpus).second) ids.push_back(e.corpus);
  return ids;
}

VectorSet VectorSet::SelectCorpora(
    const std::vector<std::string> &corpora) const {
  std::unordered_set<std::string> wanted(corpora.begin(), corpora.end());
  VectorSet out(dim_);
  for (const auto &e : entries_)
    if (wanted.count(e.corpus)) out.Add(e);
  return out;
}

VectorSet VectorSet::Concat(const std::vector<const VectorSet *> &sets) {
  if (sets.empty()) throw DataError("nothing to concatenate");
  VectorSet out(sets.front()->dim());
  for (const VectorSet *s : sets) {
    if (s->dim() != out.dim())
      throw DataError("cannot concatenate sets of different dimension");
    for (const auto &e : *s) out.Add(e);
  }
  return out;
}

std::vector<Eigen::VectorXd> VectorSet::Vectors() const {
  std::vector<Eigen::VectorXd> out;
  out.reserve(entries_.size());
  for (const auto &e : entries_) out.push_back(e.values);
  return out;
}

bool VectorSet::operator==(const VectorSet &other) const {
  return dim_ == other.dim_ && entries_ == other.entries_;
}

void TrialList::Add(Trial trial) {
  if (!IsToken(trial.enroll) || !IsToken(trial.test))
    throw DataError("invalid trial ids");
  std::string key = TrialKey(trial.enroll, trial.test);
  if (keys_.count(key))
    throw DataError("duplicate trial " + trial.enroll + " " + trial.test);
  keys_.emplace(std::move(key), trials_.size());
  trials_.push_back(std::move(trial));
}

void ScoreSet::Add(Score score) {
  if (!IsToken(score.enroll) || !IsToken(score.test))
    throw DataError("invalid trial ids");
  if (!std::isfinite(score.score))
    throw DataError("non-finite score for " + score.enroll + " " + score.test);
  std::string key = TrialKey(score.enroll, score.test);
  if (keys_.count(key))
    throw DataError("duplicate trial " + score.enroll + " " + score.test);
  keys_.emplace(std::move(key), scores_.size());
  scores_.push_back(std::move(score));
}

const Score *ScoreSet::Find(std::string_view enroll,
                            std::string_view test) const {
  auto it = keys_.find(TrialKey(enroll, test));
  return it == keys_.end() ? nullptr : &scores_[it->second];
}

std::string FormatReal(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

double ParseReal(std::string_view token) {
  double value = 0.0;
  const char *first = token.data();
  const char *last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc() || res.ptr != last || token.empty())
    throw DataError("malformed number '" + std::string(token) + "'");
  if (!std::isfinite(value))
    throw DataError("non-finite value '" + std::string(token) + "'");
  return value;
}

VectorSet ReadVectorTable(std::istream &is, const std::string &source) {
  std::optional<VectorSet> set;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    StripCr(&line);
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.rfind("#dim=", 0) != 0) continue;
      if (set) throw DataError(Where(source, line_no) + ": duplicate #dim header");
      int dim = 0;
      std::string_view rest(line);
      rest.remove_prefix(5);
      auto res = std::from_chars(rest.data(), rest.data() + rest.size(), dim);
      if (res.ec != std::errc() || res.ptr != rest.data() + rest.size() ||
          dim < 1)
        throw DataError(Where(source, line_no) + ": malformed header");
      set.emplace(dim);
      continue;
    }
    if (!set)
      throw DataError(Where(source, line_no) +
                      ": malformed header (data before #dim=)");
    auto fields = SplitTabs(line);
    if (fields.size() != 4)
      throw DataError(Where(source, line_no) + ": expected 4 tab-separated fields");
    auto tokens = SplitSpaces(fields[3]);
    if (static_cast<int>(tokens.size()) != set->dim())
      throw DataError("dimension mismatch at line " + std::to_string(line_no) +
                      " of " + source + ": expected " +
                      std::to_string(set->dim()) + " values, got " +
                      std::to_string(tokens.size()));
    Eigen::VectorXd values(set->dim());
    try {
      for (int i = 0; i < set->dim(); ++i) values[i] = ParseReal(tokens[i]);
    } catch (const DataError &e) {
      throw DataError(Where(source, line_no) + ": " + e.what());
    }
    std::optional<std::string> speaker;
    if (fields[2] != "-") speaker = std::string(fields[2]);
    try {
      set->Add(std::string(fields[0]), std::string(fields[1]),
               std::move(speaker), std::move(values));
    } catch (const DataError &e) {
      throw DataError(Where(source, line_no) + ": " + e.what());
    }
  }
  if (!set) throw DataError(source + ": malformed header (missing #dim=)");
  return std::move(*set);
}

void WriteVectorTable(const VectorSet &set, std::ostream &os,
                      const std::vector<std::string> &comments) {
  os << "#dim=" << set.dim() << '\n';
  for (const auto &c : comments) os << "# " << c << '\n';
  os << "#id\tcorpus\tspeaker\tvalues\n";
  for (const auto &e : set) {
    os << e.id << '\t' << e.corpus << '\t' << (e.speaker ? *e.speaker : "-")
       << '\t';
    for (int i = 0; i < e.values.size(); ++i) {
      if (i) os << ' ';
      os << FormatReal(e.values[i]);
    }
    os << '\n';
  }
}

VectorSet LoadVectorTable(const std::string &path) {
  auto is = OpenForRead(path);
  return ReadVectorTable(is, path);
}

void SaveVectorTable(const VectorSet &set, const std::string &path,
                     const std::vector<std::string> &comments) {
  WriteToPath(path, [&](std::ostream &os) { WriteVectorTable(set, os, comments); });
}

TrialList ReadTrials(std::istream &is, const std::string &source) {
  TrialList trials;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    StripCr(&line);
    if (line.empty() || line[0] == '#') continue;
    auto fields = SplitTabs(line);
    try {
      if (fields.size() != 3)
        throw DataError("expected 3 tab-separated fields");
      trials.Add(Trial{std::string(fields[0]), std::string(fields[1]),
                       ParseLabel(fields[2])});
    } catch (const DataError &e) {
      throw DataError(Where(source, line_no) + ": " + e.what());
    }
  }
  return trials;
}

void WriteTrials(const TrialList &trials, std::ostream &os,
                 const std::vector<std::string> &comments) {
  for (const auto &c : comments) os << "# " << c << '\n';
  os << "#enroll\ttest\tlabel\n";
  for (const auto &t : trials)
    os << t.enroll << '\t' << t.test << '\t' << LabelName(t.label) << '\n';
}

TrialList LoadTrials(const std::string &path) {
  auto is = OpenForRead(path);
  return ReadTrials(is, path);
}

void SaveTrials(const TrialList &trials, const std::string &path,
                const std::vector<std::string> &comments) {
  WriteToPath(path,
              [&](std::ostream &os) { WriteTrials(trials, os, comments); });
}

ScoreSet ReadScores(std::istream &is, const std::string &source) {
  ScoreSet scores;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    StripCr(&line);
    if (line.empty() || line[0] == '#') continue;
    auto fields = SplitTabs(line);
    try {
      if (fields.size() != 4)
        throw DataError("expected 4 tab-separated fields");
      scores.Add(Score{std::string(fields[0]), std::string(fields[1]),
                       ParseReal(fields[2]), ParseLabel(fields[3])});
    } catch (const DataError &e) {
      throw DataError(Where(source, line_no) + ": " + e.what());
    }
  }
  return scores;
}

void WriteScores(const ScoreSet &scores, std::ostream &os,
                 const std::vector<std::string> &comments) {
  for (const auto &c : comments) os << "# " << c << '\n';
  os << "#enroll\ttest\tscore\tlabel\n";
  for (const auto &s : scores)
    os << s.enroll << '\t' << s.test << '\t' << FormatReal(s.score) << '\t'
       << LabelName(s.label) << '\n';
}

ScoreSet LoadScores(const std::string &path) {
  auto is = OpenForRead(path);
  return ReadScores(is, path);
}

void SaveScores(const ScoreSet &scores, const std::string &path,
                const std::vector<std::string> &comments) {
  WriteToPath(path,
              [&](std::ostream &os) { WriteScores(scores, os, comments); });
}

std::string ReadFileText(const std::string &path) {
  auto is = OpenForRead(path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void WriteFileText(const std::string &path, const std::string &text) {
  WriteToPath(path, [&](std::ostream &os) { os << text; });
}

}  // namespace rwt
