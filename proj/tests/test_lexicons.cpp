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
#include <string>
#include <vector>

#include "doctest.h"
#include "riskscreen/corpus.hpp"
#include "riskscreen/rng.hpp"
#include "testutil.hpp"

using namespace riskscreen;

namespace {

Document doc(std::vector<std::string> tokens) {
  Document d;
  d.respondent_id = "t";
  d.tokens = std::move(tokens);
  return d;
}

}  // namespace

TEST_SUITE("lexicons") {

TEST_CASE("scored lexicon means over matched tokens") {
  testutil::TempDir tmp("swn");
  // wax/wane are already stems, so file terms equal tokens.
  auto lex = load_scored_lexicon(
      tmp.file("lex.tsv", "wax\t0.5\t0.125\nwane\t0.25\t0.75\n"));
  auto [pos, neg] = swn_features(doc({"wax", "wane"}), lex);
  CHECK(pos == doctest::Approx(0.375).epsilon(1e-15));
  CHECK(neg == doctest::Approx(0.4375).epsilon(1e-15));

  auto none = swn_features(doc({"unknown"}), lex);
  CHECK(none == std::pair{0.0, 0.0});

  auto rep = swn_features(doc({"wax", "wax"}), lex);
  CHECK(rep.first == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("scored lexicon averages senses then stem collisions") {
  testutil::TempDir tmp("swn2");
  // two senses of "worry" then a colliding surface form "worried"
  auto lex = load_scored_lexicon(tmp.file(
      "lex.tsv", "worry\t0.0\t0.5\nworry\t0.0\t0.7\nworried\t0.0\t0.8\n"));
  REQUIRE(lex.scores.count("worri") == 1);
  // mean(mean(0.5, 0.7), 0.8) = mean(0.6, 0.8) = 0.7
  CHECK(lex.scores.at("worri").second == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("scored lexicon rejects out-of-range scores") {
  testutil::TempDir tmp("swn3");
  CHECK_THROWS_AS(load_scored_lexicon(tmp.file("a.tsv", "w\t1.5\t0\n")),
                  ValidationError);
  CHECK_THROWS_AS(load_scored_lexicon(tmp.file("b.tsv", "w\t0.5\n")),
                  ValidationError);
}

TEST_CASE("polarity ratios count with multiplicity") {
  testutil::TempDir tmp("ol");
  auto lists = load_polarity_lists(tmp.file("pos.txt", "glad\nwax\n"),
                                   tmp.file("neg.txt", "dour\n"));
  auto [pos, neg] = ol_features(
      doc({"glad", "wax", "x1", "x2", "x3", "x4", "x5", "x6"}), lists);
  CHECK(pos == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(neg == 0.0);

  CHECK(ol_features(doc({}), lists) == std::pair{0.0, 0.0});
  auto all = ol_features(doc({"dour", "dour"}), lists);
  CHECK(all.second == 1.0);
}

TEST_CASE("polarity conflicts resolve by majority, ties drop the stem") {
  testutil::TempDir tmp("ol2");
  // worry-family: two negative votes vs one positive -> negative wins;
  // calm: one each -> dropped from both lists.
  auto lists =
      load_polarity_lists(tmp.file("pos.txt", "worried\ncalm\n"),
                          tmp.file("neg.txt", "worry\nworrying\ncalm\n"));
  CHECK(lists.negative.count("worri") == 1);
  CHECK(lists.positive.count("worri") == 0);
  CHECK(lists.positive.count("calm") == 0);
  CHECK(lists.negative.count("calm") == 0);
}

TEST_CASE("category proportions with wildcard patterns") {
  testutil::TempDir tmp("dic");
  auto dict = load_category_dictionary(
      tmp.file("d.dic", "%\n1\tanger\n%\nhate\t1\nangr*\t1\n"));
  Vec f = category_features(doc({"hate", "angri", "calm", "calm"}), dict);
  REQUIRE(f.size() == 1);
  CHECK(f[0] == doctest::Approx(0.5).epsilon(1e-15));

  CHECK(category_features(doc({}), dict).isZero());
}

TEST_CASE("literal beats wildcard; membership is boolean per category") {
  testutil::TempDir tmp("dic2");
  auto dict = load_category_dictionary(tmp.file(
      "d.dic", "%\n1\tup\n2\tdown\n%\nrest*\t1\nrestless\t2\nre*\t1\n"));
  // "restless": wildcard rest* and re* say category 1, the literal says 2
  // and wins outright.
  Vec f = category_features(doc({"restless"}), dict);
  CHECK(f[0] == 0.0);
  CHECK(f[1] == 1.0);
  // "rested": two wildcards of category 1 still count it once.
  Vec g = category_features(doc({"rested"}), dict);
  CHECK(g[0] == 1.0);
  CHECK(g[1] == 0.0);
}

TEST_CASE("malformed dictionaries fail at load time") {
  testutil::TempDir tmp("dic3");
  CHECK_THROWS_AS(
      load_category_dictionary(tmp.file("a.dic", "%\n1\tanger\n%\nword\t2\n")),
      ValidationError);  // undeclared id
  CHECK_THROWS_AS(
      load_category_dictionary(tmp.file("b.dic", "1\tanger\nword\t1\n")),
      ValidationError);  // missing % delimiters
  CHECK_THROWS_AS(
      load_category_dictionary(tmp.file("c.dic", "%\nx\tanger\n%\nw\t1\n")),
      ValidationError);  // non-numeric id
}

TEST_CASE("features ignore token order and document doubling") {
  testutil::TempDir tmp("prop");
  auto lex = load_scored_lexicon(
      tmp.file("lex.tsv", "wax\t0.5\t0.125\nwane\t0.25\t0.75\ndour\t0\t1\n"));
  auto lists = load_polarity_lists(tmp.file("pos.txt", "wax\n"),
                                   tmp.file("neg.txt", "dour\nwane\n"));
  auto dict = load_category_dictionary(
      tmp.file("d.dic", "%\n1\troll\n%\nwa*\t1\ndour\t1\n"));

  Rng rng(123);
  const std::vector<std::string> pool = {"wax", "wane", "dour", "other",
                                         "more", "noise"};
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::string> tokens;
    int len = 1 + static_cast<int>(rng.below(12));
    for (int i = 0; i < len; ++i)
      tokens.push_back(pool[rng.below(pool.size())]);

    Document original = doc(tokens);
    std::vector<std::string> shuffled = tokens;
    rng.shuffle(shuffled);
    Document permuted = doc(shuffled);
    std::vector<std::string> twice = tokens;
    twice.insert(twice.end(), tokens.begin(), tokens.end());
    Document doubled = doc(twice);

    for (const Document* variant : {&permuted, &doubled}) {
      // means may pick up last-ulp reassociation noise; ratios are exact
      auto [p0, n0] = swn_features(original, lex);
      auto [p1, n1] = swn_features(*variant, lex);
      CHECK(p1 == doctest::Approx(p0).epsilon(1e-12));
      CHECK(n1 == doctest::Approx(n0).epsilon(1e-12));
      CHECK(ol_features(original, lists) == ol_features(*variant, lists));
      Vec c0 = category_features(original, dict);
      Vec c1 = category_features(*variant, dict);
      CHECK((c0 - c1).cwiseAbs().maxCoeff() == 0.0);
    }
  }
}

TEST_CASE("shipped demonstration files load and stay in range") {
  auto lex =
      load_scored_lexicon(std::string(RISKSCREEN_DATA) + "/swn_demo.tsv");
  for (const auto& [stem, scores] : lex.scores) {
    CHECK(scores.first >= 0.0);
    CHECK(scores.first <= 1.0);
    CHECK(scores.second >= 0.0);
    CHECK(scores.second <= 1.0);
  }
  auto lists = load_polarity_lists(
      std::string(RISKSCREEN_DATA) + "/ol_positive_demo.txt",
      std::string(RISKSCREEN_DATA) + "/ol_negative_demo.txt");
  for (const auto& s : lists.positive) CHECK(lists.negative.count(s) == 0);
  auto dict = load_category_dictionary(std::string(RISKSCREEN_DATA) +
                                       "/liwc_demo.dic");
  CHECK(dict.n_categories() == 20);
}

}  // TEST_SUITE
