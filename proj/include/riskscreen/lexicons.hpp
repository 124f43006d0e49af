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

#ifndef RISKSCREEN_LEXICONS_HPP_
#define RISKSCREEN_LEXICONS_HPP_

#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "riskscreen/common.hpp"
#include "riskscreen/corpus.hpp"

namespace riskscreen {

// Fractional positive/negative scores per stem. File lines are
// term<TAB>pos<TAB>neg; repeated terms are senses and are averaged first,
// then terms whose stems collide are averaged again.
struct ScoredLexicon {
  std::unordered_map<std::string, std::pair<double, double>> scores;
};

ScoredLexicon load_scored_lexicon(const std::string& path);

// Positive/negative word lists, stemmed at load. A stem claimed by both
// sides goes to the majority of its surface words; exact ties are dropped.
struct PolarityLists {
  std::unordered_set<std::string> positive;
  std::unordered_set<std::string> negative;
};

PolarityLists load_polarity_lists(const std::string& positive_path,
                                  const std::string& negative_path);

// Category dictionary in the LIWC .dic layout: a %-delimited header of
// id<TAB>name lines, then pattern<TAB>id... lines where a trailing *
// is a prefix wildcard. Patterns are kept verbatim (wildcards already
// absorb stemming); a literal entry overrides any wildcard hits.
struct CategoryDictionary {
  std::vector<int> category_ids;  // ascending
  std::unordered_map<int, std::string> category_names;
  std::unordered_map<std::string, std::vector<int>> literals;
  std::vector<std::pair<std::string, std::vector<int>>> prefixes;

  int n_categories() const { return static_cast<int>(category_ids.size()); }
  // Category indices (positions in category_ids) the token belongs to.
  std::vector<int> match(const std::string& token) const;
};

CategoryDictionary load_category_dictionary(const std::string& path);

// Mean positive and negative score over tokens present in the lexicon;
// (0,0) when nothing matches.
std::pair<double, double> swn_features(const Document& doc,
                                       const ScoredLexicon& lex);

// Fraction of tokens (with multiplicity) on each polarity list; (0,0) for
// an empty document.
std::pair<double, double> ol_features(const Document& doc,
                                      const PolarityLists& lists);

// Per-category proportion of tokens matching the category, in
// category_ids order. Zero vector for an empty document.
Vec category_features(const Document& doc, const CategoryDictionary& dict);

}  // namespace riskscreen

#endif  // RISKSCREEN_LEXICONS_HPP_
