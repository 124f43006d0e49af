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

#ifndef RISKSCREEN_FEATURES_HPP_
#define RISKSCREEN_FEATURES_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "riskscreen/common.hpp"
#include "riskscreen/corpus.hpp"
#include "riskscreen/lexicons.hpp"

namespace riskscreen {

struct FeatureMatrix {
  std::vector<std::string> names;
  Mat values;  // rows follow corpus order
  // Populated by zscore from training rows; empty before scaling.
  Vec mean;
  Vec sd;

  int n_rows() const { return static_cast<int>(values.rows()); }
  int n_cols() const { return static_cast<int>(values.cols()); }
};

enum class FeatureSet {
  sentiment,
  liwc,
  lda,
  lsi,
  all_nlp,
  multiple_choice,
  all_features,
};

const std::vector<FeatureSet>& all_feature_sets();
std::string feature_set_name(FeatureSet set);
FeatureSet parse_feature_set(const std::string& name);

enum class Outcome { epds, web };
std::string outcome_name(Outcome outcome);
Outcome parse_outcome(const std::string& name);

// Fragment builders; rows follow the given document/record order.
FeatureMatrix sentiment_fragment(const std::vector<Document>& docs,
                                 const ScoredLexicon& swn,
                                 const PolarityLists& ol);
FeatureMatrix liwc_fragment(const std::vector<Document>& docs,
                            const CategoryDictionary& dict);
FeatureMatrix topic_fragment(const Mat& gamma);      // lda_topic_*
FeatureMatrix concept_fragment(const Mat& features); // lsi_concept_*
FeatureMatrix mc_fragment(const std::vector<SurveyRecord>& records);

// Column-concatenates the fragments a set uses: sentiment, liwc, lda, lsi,
// then multiple-choice, internal order preserved.
FeatureMatrix assemble(const FeatureMatrix& sentiment,
                       const FeatureMatrix& liwc, const FeatureMatrix& lda,
                       const FeatureMatrix& lsi, const FeatureMatrix& mc,
                       FeatureSet set);

struct RiskLabels {
  Outcome outcome = Outcome::epds;
  Vec continuous;
  std::vector<int> binary;
};

// epds: score with cutoff >= 13. web: summed score, positive when any item
// reaches "agree" (index 2 of the 0-3 Likert coding).
RiskLabels label(const std::vector<SurveyRecord>& records, Outcome outcome);

struct Split {
  std::vector<int> train;
  std::vector<int> test;
  std::uint64_t seed = 0;
};

// Simple random sample; floor(test_fraction * n) test rows (309 -> 61).
Split make_split(int n, double test_fraction, std::uint64_t seed);

// (x - mean)/sd per column with statistics from training rows only
// (n-1 sd). Constant training columns become all zero.
FeatureMatrix zscore(const FeatureMatrix& matrix, const Split& split);

}  // namespace riskscreen

#endif  // RISKSCREEN_FEATURES_HPP_
