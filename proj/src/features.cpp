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

#include "riskscreen/features.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "riskscreen/rng.hpp"

namespace riskscreen {
namespace {

const char* kMcNames[5] = {"mood", "conflict", "energy", "sleep_hours",
                           "sleep_quality"};

FeatureMatrix with_names(std::vector<std::string> names, Mat values) {
  FeatureMatrix m;
  m.names = std::move(names);
  m.values = std::move(values);
  return m;
}

}  // namespace

const std::vector<FeatureSet>& all_feature_sets() {
  static const std::vector<FeatureSet> sets = {
      FeatureSet::sentiment,      FeatureSet::liwc,
      FeatureSet::lda,            FeatureSet::lsi,
      FeatureSet::all_nlp,        FeatureSet::multiple_choice,
      FeatureSet::all_features,
  };
  return sets;
}

std::string feature_set_name(FeatureSet set) {
  switch (set) {
    case FeatureSet::sentiment: return "sentiment";
    case FeatureSet::liwc: return "liwc";
    case FeatureSet::lda: return "lda";
    case FeatureSet::lsi: return "lsi";
    case FeatureSet::all_nlp: return "all_nlp";
    case FeatureSet::multiple_choice: return "multiple_choice";
    case FeatureSet::all_features: return "all_features";
  }
  throw ValidationError("unknown feature set");
}

FeatureSet parse_feature_set(const std::string& name) {
  for (FeatureSet s : all_feature_sets())
    if (feature_set_name(s) == name) return s;
  throw ValidationError("unknown feature set: " + name);
}

std::string outcome_name(Outcome outcome) {
  return outcome == Outcome::epds ? "epds" : "web";
}

Outcome parse_outcome(const std::string& name) {
  if (name == "epds") return Outcome::epds;
  if (name == "web") return Outcome::web;
  throw ValidationError("unknown outcome: " + name);
}

FeatureMatrix sentiment_fragment(const std::vector<Document>& docs,
                                 const ScoredLexicon& swn,
                                 const PolarityLists& ol) {
  Mat values(docs.size(), 4);
  for (std::size_t d = 0; d < docs.size(); ++d) {
    auto [sp, sn] = swn_features(docs[d], swn);
    auto [op, on] = ol_features(docs[d], ol);
    values(d, 0) = sp;
    values(d, 1) = sn;
    values(d, 2) = op;
    values(d, 3) = on;
  }
  return with_names({"swn_pos", "swn_neg", "ol_pos", "ol_neg"},
                    std::move(values));
}

FeatureMatrix liwc_fragment(const std::vector<Document>& docs,
                            const CategoryDictionary& dict) {
  Mat values(docs.size(), dict.n_categories());
  for (std::size_t d = 0; d < docs.size(); ++d)
    values.row(d) = category_features(docs[d], dict).transpose();
  std::vector<std::string> names;
  names.reserve(dict.category_ids.size());
  for (int id : dict.category_ids)
    names.push_back("liwc_" + dict.category_names.at(id));
  return with_names(std::move(names), std::move(values));
}

FeatureMatrix topic_fragment(const Mat& gamma) {
  std::vector<std::string> names;
  for (int i = 1; i <= gamma.cols(); ++i)
    names.push_back("lda_topic_" + std::to_string(i));
  return with_names(std::move(names), gamma);
}

FeatureMatrix concept_fragment(const Mat& features) {
  std::vector<std::string> names;
  for (int i = 1; i <= features.cols(); ++i)
    names.push_back("lsi_concept_" + std::to_string(i));
  return with_names(std::move(names), features);
}

FeatureMatrix mc_fragment(const std::vector<SurveyRecord>& records) {
  Mat values(records.size(), 5);
  for (std::size_t r = 0; r < records.size(); ++r)
    for (int i = 0; i < 5; ++i)
      values(r, i) = static_cast<double>(records[r].mc_answers[i]);
  return with_names({kMcNames[0], kMcNames[1], kMcNames[2], kMcNames[3],
                     kMcNames[4]},
                    std::move(values));
}

FeatureMatrix assemble(const FeatureMatrix& sentiment,
                       const FeatureMatrix& liwc, const FeatureMatrix& lda,
                       const FeatureMatrix& lsi, const FeatureMatrix& mc,
                       FeatureSet set) {
  std::vector<std::pair<const FeatureMatrix*, const char*>> parts;
  switch (set) {
    case FeatureSet::sentiment:
      parts = {{&sentiment, "sentiment"}};
      break;
    case FeatureSet::liwc:
      parts = {{&liwc, "liwc"}};
      break;
    case FeatureSet::lda:
      parts = {{&lda, "lda"}};
      break;
    case FeatureSet::lsi:
      parts = {{&lsi, "lsi"}};
      break;
    case FeatureSet::all_nlp:
      parts = {{&sentiment, "sentiment"}, {&liwc, "liwc"}, {&lda, "lda"},
               {&lsi, "lsi"}};
      break;
    case FeatureSet::multiple_choice:
      parts = {{&mc, "multiple_choice"}};
      break;
    case FeatureSet::all_features:
      parts = {{&sentiment, "sentiment"}, {&liwc, "liwc"}, {&lda, "lda"},
               {&lsi, "lsi"}, {&mc, "multiple_choice"}};
      break;
  }

  const int n = parts.front().first->n_rows();
  int p = 0;
  for (const auto& [frag, name] : parts) {
    if (frag->n_rows() != n)
      throw ValidationError(std::string("assemble: fragment ") + name +
                            " has " + std::to_string(frag->n_rows()) +
                            " rows, expected " + std::to_string(n));
    p += frag->n_cols();
  }

  FeatureMatrix out;
  out.values.resize(n, p);
  std::unordered_set<std::string> seen;
  int col = 0;
  for (const auto& [frag, name] : parts) {
    for (int j = 0; j < frag->n_cols(); ++j) {
      if (!seen.insert(frag->names[j]).second)
        throw ValidationError("assemble: duplicate column name " +
                              frag->names[j]);
      out.names.push_back(frag->names[j]);
      out.values.col(col++) = frag->values.col(j);
    }
  }
  return out;
}

RiskLabels label(const std::vector<SurveyRecord>& records, Outcome outcome) {
  RiskLabels labels;
  labels.outcome = outcome;
  labels.continuous.resize(records.size());
  labels.binary.resize(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    if (outcome == Outcome::epds) {
      labels.continuous[i] = r.epds_score;
      labels.binary[i] = r.epds_score >= 13 ? 1 : 0;
    } else {
      labels.continuous[i] = r.web_score;
      labels.binary[i] = (r.web_items[0] >= 2 || r.web_items[1] >= 2 ||
                          r.web_items[2] >= 2)
                             ? 1
                             : 0;
    }
  }
  return labels;
}

Split make_split(int n, double test_fraction, std::uint64_t seed) {
  if (n < 5) throw ValidationError("make_split: need n >= 5");
  if (!(test_fraction > 0.0 && test_fraction < 1.0))
    throw ValidationError("make_split: test_fraction must be in (0,1)");
  int n_test = static_cast<int>(std::floor(test_fraction * n));
  if (n_test < 1 || n_test >= n)
    throw ValidationError("make_split: test fraction leaves an empty side");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  rng.shuffle(order);

  Split split;
  split.seed = seed;
  split.test.assign(order.begin(), order.begin() + n_test);
  split.train.assign(order.begin() + n_test, order.end());
  std::sort(split.test.begin(), split.test.end());
  std::sort(split.train.begin(), split.train.end());
  return split;
}

FeatureMatrix zscore(const FeatureMatrix& matrix, const Split& split) {
  const int n = matrix.n_rows();
  const int p = matrix.n_cols();
  for (int idx : split.train)
    if (idx < 0 || idx >= n)
      throw ValidationError("zscore: split index out of range");
  if (split.train.size() < 2)
    throw ValidationError("zscore: need at least 2 training rows");

  FeatureMatrix out;
  out.names = matrix.names;
  out.values.resize(n, p);
  out.mean.resize(p);
  out.sd.resize(p);
  const double n_train = static_cast<double>(split.train.size());
  for (int j = 0; j < p; ++j) {
    double mean = 0.0;
    for (int idx : split.train) mean += matrix.values(idx, j);
    mean /= n_train;
    double ss = 0.0;
    for (int idx : split.train) {
      double d = matrix.values(idx, j) - mean;
      ss += d * d;
    }
    double sd = std::sqrt(ss / (n_train - 1.0));
    out.mean[j] = mean;
    out.sd[j] = sd;
    if (sd < 1e-12) {
      // Constant in training: dead column, never selectable downstream.
      out.values.col(j).setZero();
      out.sd[j] = 0.0;
    } else {
      out.values.col(j) = (matrix.values.col(j).array() - mean) / sd;
    }
  }
  return out;
}

}  // namespace riskscreen
