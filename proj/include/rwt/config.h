// include/rwt/config.h

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

#ifndef RWT_CONFIG_H_
#define RWT_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rwt {

/**
   Flat `key = value` configuration with one level of `[section]` headers.
   Comments start with '#' or ';'.  Keys before the first header live in
   the "" section.  Lookups are by "section.key".
*/
class Config {
 public:
  static Config Parse(const std::string &text, const std::string &source);
  static Config Load(const std::string &path);

  bool Has(const std::string &section, const std::string &key) const;
  std::optional<std::string> Get(const std::string &section,
                                 const std::string &key) const;
  std::string GetString(const std::string &section, const std::string &key,
                        const std::string &fallback) const;
  double GetDouble(const std::string &section, const std::string &key,
                   double fallback) const;
  int GetInt(const std::string &section, const std::string &key,
             int fallback) const;
  std::uint64_t GetUint64(const std::string &section, const std::string &key,
                          std::uint64_t fallback) const;
  bool GetBool(const std::string &section, const std::string &key,
               bool fallback) const;

  /// Inserts or replaces; used for command-line overrides such as --seed.
  void Set(const std::string &section, const std::string &key,
           const std::string &value);

  /// Keys of a section in file order.
  std::vector<std::string> Keys(const std::string &section) const;

  /// Throws ConfigError for any key not listed in `allowed`
  /// ("section.key" strings; "section.*" admits a whole section).
  void RequireKnownKeys(const std::vector<std::string> &allowed) const;

  /// Sorted, whitespace-normalized rendering; two configs with the same
  /// canonical text are equivalent.
  std::string Canonical() const;
  /// 16 hex digits of FNV-1a-64 over Canonical().
  std::string Hash() const;

 private:
  struct Section {
    std::string name;
    std::vector<std::pair<std::string, std::string>> entries;
  };
  const std::string *Find(const std::string &section,
                          const std::string &key) const;

  std::vector<Section> sections_;
};

/// Splits on any of the characters in `seps`, dropping empty pieces.
std::vector<std::string> SplitList(const std::string &text,
                                   const std::string &seps = ", \t");

}  // namespace rwt

#endif  // RWT_CONFIG_H_
