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
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "riskscreen/rng.hpp"
#include "riskscreen/synth.hpp"

using namespace riskscreen;

namespace {

FeatureMatrix fragment(std::vector<std::string> names, const Mat& values) {
  FeatureMatrix fm;
  fm.names = std::move(names);
  fm.values = values;
  return fm;
}

// Minimal consistent fragments over n rows.
struct Fragments {
  FeatureMatrix sentiment, liwc, lda, lsi, mc;
};

Fragments make_fragments(int n, std::uint64_t seed) {
  Rng rng(seed);
  auto fill = [&](int cols) {
    Mat m(n, cols);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < cols; ++c) m(r, c) = rng.normal();
    return m;
  };
  Fragments f;
  f.sentiment = fragment({"swn_pos", "swn_neg", "ol_pos", "ol_neg"}, fill(4));
  f.liwc = fragment({"liwc_affect", "liwc_sad"}, fill(2));
  f.lda = fragment({"lda_topic_1", "lda_topic_2", "lda_topic_3"}, fill(3));
  f.lsi = fragment({"lsi_concept_1", "lsi_concept_2"}, fill(2));
  f.mc = fragment({"mood", "conflict", "energy", "sleep_hours",
                   "sleep_quality"},
                  fill(5));
  return f;
}

std::vector<SurveyRecord> sample_records(int n, std::uint64_t seed) {
  SynthSpec spec;
  spec.n_respondents = n;
  spec.seed = seed;
  return generate(spec);
}

}  // namespace

TEST_SUITE("features") {

TEST_CASE("the seven set names round trip") {
  const auto& sets = all_feature_sets();
  REQUIRE(sets.size() == 7);
  for (FeatureSet s : sets) CHECK(parse_feature_set(feature_set_name(s)) == s);
  CHECK(feature_set_name(FeatureSet::all_nlp) == "all_nlp");
  CHECK_THROWS_AS(parse_feature_set("bogus"), ValidationError);
  CHECK(parse_outcome("epds") == Outcome::epds);
  CHECK_THROWS_AS(parse_outcome("none"), ValidationError);
}

TEST_CASE("assembled sets have the documented column counts") {
  Fragments f = make_fragments(10, 1);
  auto cols = [&](FeatureSet s) {
    return assemble(f.sentiment, f.liwc, f.lda, f.lsi, f.mc, s).n_cols();
  };
  CHECK(cols(FeatureSet::sentiment) == 4);
  CHECK(cols(FeatureSet::liwc) == 2);
  CHECK(cols(FeatureSet::lda) == 3);
  CHECK(cols(FeatureSet::lsi) == 2);
  CHECK(cols(FeatureSet::all_nlp) == 11);
  CHECK(cols(FeatureSet::multiple_choice) == 5);
  CHECK(cols(FeatureSet::all_features) == 16);
}

TEST_CASE("all_features preserves fragment order and uniqueness") {
  Fragments f = make_fragments(6, 2);
  FeatureMatrix all =
      assemble(f.sentiment, f.liwc, f.lda, f.lsi, f.mc, FeatureSet::all_features);
  CHECK(all.names.front() == "swn_pos");
  CHECK(all.names.back() == "sleep_quality");
  std::set<std::string> unique(all.names.begin(), all.names.end());
  CHECK(unique.size() == all.names.size());
  // values pass through untouched
  CHECK(all.values.block(0, 0, 6, 4) == f.sentiment.values);
  CHECK(all.values.rightCols(5) == f.mc.values);
}

TEST_CASE("mismatched fragments are rejected by name") {
  Fragments f = make_fragments(5, 3);
  Fragments g = make_fragments(4, 3);
  f.lsi = g.lsi;  // wrong row count
  CHECK_THROWS_WITH_AS(
      assemble(f.sentiment, f.liwc, f.lda, f.lsi, f.mc, FeatureSet::all_nlp),
      doctest::Contains("lsi"), ValidationError);

  Fragments h = make_fragments(5, 4);
  h.liwc.names[1] = "swn_pos";  // duplicate across fragments
  CHECK_THROWS_AS(
      assemble(h.sentiment, h.liwc, h.lda, h.lsi, h.mc, FeatureSet::all_nlp),
      ValidationError);
}

TEST_CASE("mc fragment encodes the five answers in order") {
  auto records = sample_records(8, 4);
  FeatureMatrix mc = mc_fragment(records);
  REQUIRE(mc.n_cols() == 5);
  CHECK(mc.names == std::vector<std::string>{"mood", "conflict", "energy",
                                             "sleep_hours", "sleep_quality"});
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 5; ++j)
      CHECK(mc.values(i, j) == records[i].mc_answers[j]);
}

TEST_CASE("labels apply the screening cutoffs") {
  auto records = sample_records(60, 5);
  RiskLabels epds = label(records, Outcome::epds);
  RiskLabels web = label(records, Outcome::web);
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(epds.continuous[i] == records[i].epds_score);
    CHECK(epds.binary[i] == (records[i].epds_score >= 13 ? 1 : 0));
    CHECK(web.continuous[i] == records[i].web_score);
    int any_agree = 0;
    for (int item : records[i].web_items)
      if (item >= 2) any_agree = 1;
    CHECK(web.binary[i] == any_agree);
  }
}

TEST_CASE("split sizes follow the floor rule") {
  Split split = make_split(309, 0.2, 7);
  CHECK(split.test.size() == 61);
  CHECK(split.train.size() == 248);
  std::vector<int> all;
  all.insert(all.end(), split.train.begin(), split.train.end());
  all.insert(all.end(), split.test.begin(), split.test.end());
  std::sort(all.begin(), all.end());
  for (int i = 0; i < 309; ++i) CHECK(all[i] == i);
  CHECK(std::is_sorted(split.test.begin(), split.test.end()));

  Split again = make_split(309, 0.2, 7);
  CHECK(again.test == split.test);
  Split other = make_split(309, 0.2, 8);
  CHECK(other.test != split.test);

  CHECK_THROWS_AS(make_split(4, 0.2, 1), ValidationError);
  CHECK_THROWS_AS(make_split(100, 0.0, 1), ValidationError);
}

TEST_CASE("zscore standardizes on training rows only") {
  Fragments f = make_fragments(40, 6);
  FeatureMatrix fm =
      assemble(f.sentiment, f.liwc, f.lda, f.lsi, f.mc, FeatureSet::all_nlp);
  fm.values.col(2).setConstant(3.25);  // constant column stays zero
  Split split = make_split(40, 0.25, 9);
  FeatureMatrix scaled = zscore(fm, split);

  for (int c = 0; c < scaled.n_cols(); ++c) {
    double mean = 0.0, ss = 0.0;
    for (int r : split.train) mean += scaled.values(r, c);
    mean /= split.train.size();
    for (int r : split.train) {
      double d = scaled.values(r, c) - mean;
      ss += d * d;
    }
    double sd = std::sqrt(ss / (split.train.size() - 1));
    CHECK(mean == doctest::Approx(0.0).epsilon(1e-9));
    if (c == 2) {
      CHECK(scaled.values.col(2).isZero());
      CHECK(scaled.sd[2] == 0.0);
    } else {
      CHECK(sd == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
  // test rows use the training statistics, not their own
  int r0 = split.test[0];
  CHECK(scaled.values(r0, 0) ==
        doctest::Approx((fm.values(r0, 0) - scaled.mean[0]) / scaled.sd[0]));
}

}  // TEST_SUITE
