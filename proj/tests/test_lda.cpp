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

#include "riskscreen/lda.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "riskscreen/corpus.hpp"
#include "riskscreen/rng.hpp"

using namespace riskscreen;

namespace {

// Two vocabularies that never co-occur: documents use {aa,bb} or {cc,dd}.
std::pair<Vocabulary, DocTermMatrix> split_corpus(int n_docs,
                                                  std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Document> docs(n_docs);
  for (int d = 0; d < n_docs; ++d) {
    bool first = d % 2 == 0;
    for (int i = 0; i < 12; ++i)
      docs[d].tokens.push_back(first ? (rng.below(2) ? "aa" : "bb")
                                     : (rng.below(2) ? "cc" : "dd"));
  }
  return build_dtm(docs, 1);
}

std::pair<Vocabulary, DocTermMatrix> noisy_corpus(int n_docs, int vocab,
                                                  std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Document> docs(n_docs);
  for (int d = 0; d < n_docs; ++d) {
    int len = 5 + static_cast<int>(rng.below(10));
    for (int i = 0; i < len; ++i)
      docs[d].tokens.push_back("w" + std::to_string(rng.below(vocab)));
  }
  return build_dtm(docs, 1);
}

LdaConfig quick_config(int k, std::uint64_t seed) {
  LdaConfig config;
  config.k = k;
  config.n_iterations = 150;
  config.burn_in = 75;
  config.seed = seed;
  return config;
}

}  // namespace

TEST_SUITE("lda") {

TEST_CASE("invalid configurations are rejected") {
  auto [vocab, dtm] = noisy_corpus(10, 6, 1);
  CHECK_THROWS_AS(fit_lda(dtm, quick_config(1, 0)), ValidationError);
  CHECK_THROWS_AS(fit_lda(dtm, quick_config(7, 0)), ValidationError);  // k > V
  LdaConfig bad = quick_config(2, 0);
  bad.beta = 0.0;
  CHECK_THROWS_AS(fit_lda(dtm, bad), ValidationError);
  bad = quick_config(2, 0);
  bad.burn_in = bad.n_iterations;
  CHECK_THROWS_AS(fit_lda(dtm, bad), ValidationError);
}

TEST_CASE("alpha defaults to 50 over k") {
  LdaConfig config;
  config.k = 20;
  CHECK(config.resolved_alpha() == doctest::Approx(2.5));
  config.alpha = 0.3;
  CHECK(config.resolved_alpha() == 0.3);
}

TEST_CASE("phi and gamma are row-stochastic") {
  auto [vocab, dtm] = noisy_corpus(24, 8, 5);
  for (bool average : {false, true}) {
    LdaConfig config = quick_config(3, 9);
    config.average_samples = average;
    TopicModel model = fit_lda(dtm, config);
    REQUIRE(model.phi.rows() == 3);
    REQUIRE(model.phi.cols() == 8);
    REQUIRE(model.gamma.rows() == 24);
    CHECK(model.phi.minCoeff() > 0.0);
    CHECK(model.gamma.minCoeff() > 0.0);
    for (int z = 0; z < 3; ++z)
      CHECK(model.phi.row(z).sum() == doctest::Approx(1.0).epsilon(1e-9));
    for (int d = 0; d < 24; ++d)
      CHECK(model.gamma.row(d).sum() == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("fits are deterministic in the seed") {
  auto [vocab, dtm] = noisy_corpus(15, 6, 2);
  TopicModel a = fit_lda(dtm, quick_config(2, 33));
  TopicModel b = fit_lda(dtm, quick_config(2, 33));
  CHECK(a.phi == b.phi);
  CHECK(a.gamma == b.gamma);
  TopicModel c = fit_lda(dtm, quick_config(2, 34));
  CHECK(a.phi != c.phi);
}

TEST_CASE("disjoint vocabularies separate into topics") {
  auto [vocab, dtm] = split_corpus(60, 4);
  LdaConfig config = quick_config(2, 11);
  TopicModel model = fit_lda(dtm, config);
  int a = vocab.id("aa"), b = vocab.id("bb");
  int c = vocab.id("cc"), d = vocab.id("dd");
  // each topic should concentrate on one of the two word groups
  double g0 = model.phi(0, a) + model.phi(0, b);
  double g1 = model.phi(1, a) + model.phi(1, b);
  double hi = std::max(g0, g1), lo = std::min(g0, g1);
  CHECK(hi > 0.9);
  CHECK(lo < 0.1);
  CHECK(model.phi(0, c) + model.phi(0, d) ==
        doctest::Approx(1.0 - g0).epsilon(1e-9));
}

TEST_CASE("top terms are ranked by descending phi") {
  auto [vocab, dtm] = noisy_corpus(20, 7, 8);
  TopicModel model = fit_lda(dtm, quick_config(2, 3));
  auto top = top_terms(model, 0, 5);
  REQUIRE(top.size() == 5);
  for (std::size_t i = 1; i < top.size(); ++i)
    CHECK(model.phi(0, top[i - 1]) >= model.phi(0, top[i]));
}

TEST_CASE("coherence matches an independent recount") {
  auto [vocab, dtm] = noisy_corpus(30, 6, 13);
  TopicModel model = fit_lda(dtm, quick_config(2, 21));
  const int top_m = 3;
  auto scores = topic_coherence(model, dtm, top_m);
  REQUIRE(scores.size() == 2);

  auto df = [&](int t) {
    int n = 0;
    for (int d = 0; d < dtm.n_docs; ++d)
      for (auto& [term, count] : dtm.rows[d])
        if (term == t) ++n;
    return n;
  };
  auto co_df = [&](int t, int u) {
    int n = 0;
    for (int d = 0; d < dtm.n_docs; ++d) {
      bool has_t = false, has_u = false;
      for (auto& [term, count] : dtm.rows[d]) {
        has_t = has_t || term == t;
        has_u = has_u || term == u;
      }
      if (has_t && has_u) ++n;
    }
    return n;
  };
  for (int z = 0; z < 2; ++z) {
    auto top = top_terms(model, z, top_m);
    double sum = 0.0;
    int pairs = 0;
    for (int i = 0; i < top_m; ++i)
      for (int j = i + 1; j < top_m; ++j) {
        sum += static_cast<double>(co_df(top[i], top[j])) / df(top[i]) -
               static_cast<double>(df(top[j])) / dtm.n_docs;
        ++pairs;
      }
    CHECK(scores[z] == doctest::Approx(sum / pairs).epsilon(1e-12));
  }
}

TEST_CASE("select_k reports every k and the coherence argmax") {
  auto [vocab, dtm] = split_corpus(40, 17);
  LdaConfig base = quick_config(2, 55);
  CoherenceReport report = select_k(dtm, 2, 4, base, 1, 2);
  REQUIRE(report.entries.size() == 3);
  double best = -1e300;
  int argmax = 0;
  for (const auto& e : report.entries)
    if (e.mean_coherence > best) {
      best = e.mean_coherence;
      argmax = e.k;
    }
  CHECK(report.best_k == argmax);  // first max wins ties toward smaller k
}

TEST_CASE("select_k is thread-count invariant") {
  auto [vocab, dtm] = noisy_corpus(18, 6, 3);
  LdaConfig base = quick_config(2, 8);
  CoherenceReport serial = select_k(dtm, 2, 5, base, 1, 3);
  CoherenceReport threaded = select_k(dtm, 2, 5, base, 3, 3);
  REQUIRE(serial.entries.size() == threaded.entries.size());
  CHECK(serial.best_k == threaded.best_k);
  for (std::size_t i = 0; i < serial.entries.size(); ++i)
    CHECK(serial.entries[i].mean_coherence ==
          threaded.entries[i].mean_coherence);
}

TEST_CASE("a uniform model's perplexity equals the vocabulary size") {
  auto [vocab, dtm] = noisy_corpus(25, 9, 6);
  TopicModel uniform;
  uniform.config = quick_config(3, 0);
  uniform.phi = Mat::Constant(3, 9, 1.0 / 9);
  uniform.gamma = Mat::Constant(25, 3, 1.0 / 3);
  CHECK(perplexity(uniform, dtm) == doctest::Approx(9.0).epsilon(1e-9));

  // a real fit on structured text must beat the uniform baseline
  auto [v2, split] = split_corpus(40, 2);
  TopicModel fitted = fit_lda(split, quick_config(2, 10));
  CHECK(perplexity(fitted, split) < 4.0);
}

TEST_CASE("lda features are the gamma columns with stable names") {
  auto [vocab, dtm] = noisy_corpus(12, 5, 4);
  TopicModel model = fit_lda(dtm, quick_config(2, 1));
  CHECK(lda_features(model) == model.gamma);
  CHECK(lda_feature_names(2) ==
        std::vector<std::string>{"lda_topic_1", "lda_topic_2"});
}

}  // TEST_SUITE
