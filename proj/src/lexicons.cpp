// Copyright 2026 The riskscreen Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "riskscreen/lexicons.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "riskscreen/stemmer.hpp"

namespace riskscreen {
namespace {

std::ifstream open_or_throw(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in)
    throw ValidationError(std::string("cannot open ") + what + ": " + path);
  return in;
}

bool blank_or_comment(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string f;
  while (ss >> f) out.push_back(f);
  return out;
}

}  // namespace

ScoredLexicon load_scored_lexicon(const std::string& path) {
  auto in = open_or_throw(path, "scored lexicon");
  // Surface term -> accumulated sense scores.
  std::map<std::string, std::pair<double, double>> sums;
  std::map<std::string, int> n_senses;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (blank_or_comment(line)) continue;
    auto f = split_ws(line);
    if (f.size() != 3)
      throw ValidationError(path + ", line " + std::to_string(line_no) +
                            ": expected term<TAB>pos<TAB>neg");
    double pos, neg;
    try {
      pos = std::stod(f[1]);
      neg = std::stod(f[2]);
    } catch (const std::exception&) {
      throw ValidationError(path + ", line " + std::to_string(line_no) +
                            ": scores must be numbers");
    }
    if (pos < 0 || pos > 1 || neg < 0 || neg > 1)
      throw ValidationError(path + ", line " + std::to_string(line_no) +
                            ": scores outside [0,1]");
    sums[f[0]].first += pos;
    sums[f[0]].second += neg;
    n_senses[f[0]]++;
  }
  // Senses first, then stem collisions; each stage an unweighted mean.
  std::map<std::string, std::pair<double, double>> stem_sums;
  std::map<std::string, int> stem_terms;
  for (const auto& [term, s] : sums) {
    int n = n_senses[term];
    std::string stem = porter_stem(term);
    stem_sums[stem].first += s.first / n;
    stem_sums[stem].second += s.second / n;
    stem_terms[stem]++;
  }
  ScoredLexicon lex;
  for (const auto& [stem, s] : stem_sums) {
    int n = stem_terms[stem];
    lex.scores[stem] = {s.first / n, s.second / n};
  }
  return lex;
}

PolarityLists load_polarity_lists(const std::string& positive_path,
                                  const std::string& negative_path) {
  auto read_stems = [](const std::string& path) {
    auto in = open_or_throw(path, "polarity list");
    std::map<std::string, int> votes;
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (blank_or_comment(line)) continue;
      auto f = split_ws(line);
      for (const auto& w : f) votes[porter_stem(w)]++;
    }
    return votes;
  };
  auto pos = read_stems(positive_path);
  auto neg = read_stems(negative_path);
  PolarityLists lists;
  for (const auto& [stem, np] : pos) {
    auto it = neg.find(stem);
    int nn = it == neg.end() ? 0 : it->second;
    if (np > nn) lists.positive.insert(stem);
  }
  for (const auto& [stem, nn] : neg) {
    auto it = pos.find(stem);
    int np = it == pos.end() ? 0 : it->second;
    if (nn > np) lists.negative.insert(stem);
  }
  return lists;
}

std::vector<int> CategoryDictionary::match(const std::string& token) const {
  std::vector<int> ids;
  auto lit = literals.find(token);
  if (lit != literals.end()) {
    ids = lit->second;
  } else {
    for (const auto& [prefix, cats] : prefixes) {
      if (token.size() >= prefix.size() &&
          token.compare(0, prefix.size(), prefix) == 0) {
        ids.insert(ids.end(), cats.begin(), cats.end());
      }
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  }
  // Map category ids to their positions.
  std::vector<int> out;
  for (int id : ids) {
    auto pos = std::lower_bound(category_ids.begin(), category_ids.end(), id);
    out.push_back(static_cast<int>(pos - category_ids.begin()));
  }
  return out;
}

CategoryDictionary load_category_dictionary(const std::string& path) {
  auto in = open_or_throw(path, "category dictionary");
  CategoryDictionary dict;
  std::string line;
  int line_no = 0;
  int delimiters = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string where = path + ", line " + std::to_string(line_no);
    if (blank_or_comment(line)) continue;
    auto f = split_ws(line);
    if (f.size() == 1 && f[0] == "%") {
      ++delimiters;
      continue;
    }
    if (delimiters == 0)
      throw ValidationError(where + ": expected leading % header delimiter");
    if (delimiters == 1) {
      if (f.size() != 2)
        throw ValidationError(where + ": header needs id<TAB>name");
      int id;
      try {
        id = std::stoi(f[0]);
      } catch (const std::exception&) {
        throw ValidationError(where + ": category id must be an integer");
      }
      if (dict.category_names.count(id))
        throw ValidationError(where + ": duplicate category id");
      dict.category_names[id] = f[1];
      dict.category_ids.push_back(id);
    } else {
      if (f.size() < 2)
        throw ValidationError(where + ": pattern needs at least one id");
      std::vector<int> ids;
      for (std::size_t i = 1; i < f.size(); ++i) {
        int id;
        try {
          id = std::stoi(f[i]);
        } catch (const std::exception&) {
          throw ValidationError(where + ": category id must be an integer");
        }
        if (!dict.category_names.count(id))
          throw ValidationError(where + ": undeclared category id " +
                                std::to_string(id));
        ids.push_back(id);
      }
      std::sort(ids.begin(), ids.end());
      ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
      std::string pattern = f[0];
      if (pattern.size() > 1 && pattern.back() == '*') {
        pattern.pop_back();
        dict.prefixes.emplace_back(pattern, ids);
      } else {
        auto& slot = dict.literals[pattern];
        slot.insert(slot.end(), ids.begin(), ids.end());
        std::sort(slot.begin(), slot.end());
        slot.erase(std::unique(slot.begin(), slot.end()), slot.end());
      }
    }
  }
  if (delimiters < 2)
    throw ValidationError(path + ": header not closed with %");
  if (dict.category_ids.empty())
    throw ValidationError(path + ": no categories declared");
  std::sort(dict.category_ids.begin(), dict.category_ids.end());
  return dict;
}

std::pair<double, double> swn_features(const Document& doc,
                                       const ScoredLexicon& lex) {
  double pos = 0, neg = 0;
  int matched = 0;
  for (const auto& t : doc.tokens) {
    auto it = lex.scores.find(t);
    if (it == lex.scores.end()) continue;
    pos += it->second.first;
    neg += it->second.second;
    ++matched;
  }
  if (matched == 0) return {0.0, 0.0};
  return {pos / matched, neg / matched};
}

std::pair<double, double> ol_features(const Document& doc,
                                      const PolarityLists& lists) {
  if (doc.tokens.empty()) return {0.0, 0.0};
  int pos = 0, neg = 0;
  for (const auto& t : doc.tokens) {
    if (lists.positive.count(t)) ++pos;
    if (lists.negative.count(t)) ++neg;
  }
  double n = static_cast<double>(doc.tokens.size());
  return {pos / n, neg / n};
}

Vec category_features(const Document& doc, const CategoryDictionary& dict) {
  Vec counts = Vec::Zero(dict.n_categories());
  if (doc.tokens.empty()) return counts;
  for (const auto& t : doc.tokens)
    for (int idx : dict.match(t)) counts[idx] += 1.0;
  return counts / static_cast<double>(doc.tokens.size());
}

}  // namespace riskscreen
