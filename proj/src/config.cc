// src/config.cc

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

#include "rwt/config.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <map>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "rwt/corpus_io.h"
#include "rwt/error.h"

namespace rwt {

namespace {

std::string Qualified(const std::string &section, const std::string &key) {
  return section.empty() ? key : section + "." + key;
}

template <typename T>
T ParseInteger(const std::string &text, const std::string &what) {
  T value{};
  auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw ConfigError(what + ": expected an integer, got '" + text + "'");
  return value;
}

}  // namespace

Config Config::Parse(const std::string &text, const std::string &source) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream is(text);
  try {
    pt::ini_parser::read_ini(is, tree);
  } catch (const pt::ini_parser_error &e) {
    throw ConfigError(source + ": line " + std::to_string(e.line()) + ": " +
                      e.message());
  }
  Config cfg;
  Section top{"", {}};
  for (const auto &[name, node] : tree) {
    if (node.empty()) {
      top.entries.emplace_back(name, node.data());
      continue;
    }
    Section sec{name, {}};
    for (const auto &[key, leaf] : node) {
      if (!leaf.empty())
        throw ConfigError(source + ": nested sections are not supported");
      sec.entries.emplace_back(key, leaf.data());
    }
    cfg.sections_.push_back(std::move(sec));
  }
  if (!top.entries.empty()) cfg.sections_.insert(cfg.sections_.begin(), top);
  return cfg;
}

Config Config::Load(const std::string &path) {
  std::string text;
  try {
    text = ReadFileText(path);
  } catch (const DataError &e) {
    throw ConfigError(e.what());
  }
  return Parse(text, path);
}

const std::string *Config::Find(const std::string &section,
                                const std::string &key) const {
  for (const auto &sec : sections_) {
    if (sec.name != section) continue;
    for (const auto &[k, v] : sec.entries)
      if (k == key) return &v;
  }
  return nullptr;
}

bool Config::Has(const std::string &section, const std::string &key) const {
  return Find(section, key) != nullptr;
}

std::optional<std::string> Config::Get(const std::string &section,
                                       const std::string &key) const {
  if (const std::string *v = Find(section, key)) return *v;
  return std::nullopt;
}

std::string Config::GetString(const std::string &section,
                              const std::string &key,
                              const std::string &fallback) const {
  const std::string *v = Find(section, key);
  return v ? *v : fallback;
}

double Config::GetDouble(const std::string &section, const std::string &key,
                         double fallback) const {
  const std::string *v = Find(section, key);
  if (!v) return fallback;
  try {
    return ParseReal(*v);
  } catch (const DataError &) {
    throw ConfigError(Qualified(section, key) + ": expected a number, got '" +
                      *v + "'");
  }
}

int Config::GetInt(const std::string &section, const std::string &key,
                   int fallback) const {
  const std::string *v = Find(section, key);
  return v ? ParseInteger<int>(*v, Qualified(section, key)) : fallback;
}

std::uint64_t Config::GetUint64(const std::string &section,
                                const std::string &key,
                                std::uint64_t fallback) const {
  const std::string *v = Find(section, key);
  return v ? ParseInteger<std::uint64_t>(*v, Qualified(section, key))
           : fallback;
}

bool Config::GetBool(const std::string &section, const std::string &key,
                     bool fallback) const {
  const std::string *v = Find(section, key);
  if (!v) return fallback;
  if (*v == "true" || *v == "on" || *v == "yes" || *v == "1") return true;
  if (*v == "false" || *v == "off" || *v == "no" || *v == "0") return false;
  throw ConfigError(Qualified(section, key) + ": expected a boolean, got '" +
                    *v + "'");
}

void Config::Set(const std::string &section, const std::string &key,
                 const std::string &value) {
  for (auto &sec : sections_) {
    if (sec.name != section) continue;
    for (auto &[k, v] : sec.entries)
      if (k == key) {
        v = value;
        return;
      }
    sec.entries.emplace_back(key, value);
    return;
  }
  sections_.push_back(Section{section, {{key, value}}});
}

std::vector<std::string> Config::Keys(const std::string &section) const {
  std::vector<std::string> keys;
  for (const auto &sec : sections_)
    if (sec.name == section)
      for (const auto &[k, v] : sec.entries) keys.push_back(k);
  return keys;
}

void Config::RequireKnownKeys(const std::vector<std::string> &allowed) const {
  for (const auto &sec : sections_) {
    for (const auto &[k, v] : sec.entries) {
      const std::string q = Qualified(sec.name, k);
      const bool ok = std::any_of(allowed.begin(), allowed.end(),
                                  [&](const std::string &a) {
                                    return a == q || a == sec.name + ".*";
                                  });
      if (!ok) throw ConfigError("unknown configuration key '" + q + "'");
    }
  }
}

std::string Config::Canonical() const {
  std::map<std::string, std::map<std::string, std::string>> sorted;
  for (const auto &sec : sections_)
    for (const auto &[k, v] : sec.entries) sorted[sec.name][k] = v;
  std::ostringstream os;
  for (const auto &[name, entries] : sorted) {
    os << '[' << name << "]\n";
    for (const auto &[k, v] : entries) os << k << " = " << v << '\n';
  }
  return os.str();
}

std::string Config::Hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : Canonical()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<std::string> SplitList(const std::string &text,
                                   const std::string &seps) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (seps.find(c) != std::string::npos) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

}  // namespace rwt
