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

#include "riskscreen/lsi.hpp"

#include "doctest.h"
#include "riskscreen/corpus.hpp"
#include "riskscreen/rng.hpp"

using namespace riskscreen;

namespace {

Mat random_counts(Rng& rng, int rows, int cols) {
  Mat m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      m(r, c) = static_cast<double>(rng.below(6));
  // every column nonzero, as a document-term matrix guarantees
  for (int c = 0; c < cols; ++c)
    if (m.col(c).isZero()) m(static_cast<int>(rng.below(rows)), c) = 1.0;
  return m;
}

}  // namespace

TEST_SUITE("lsi") {

TEST_CASE("full-rank factors reconstruct the counts") {
  Rng rng(42);
  Mat counts = random_counts(rng, 12, 7);
  LsiModel model = fit_lsi(counts);
  REQUIRE(model.rank == 7);
  Mat rebuilt = model.doc_concept *
                model.singular_values.asDiagonal() *
                model.term_concept.transpose();
  CHECK((rebuilt - counts).norm() / counts.norm() < 1e-12);
}

TEST_CASE("factors are orthonormal and singular values sorted") {
  Rng rng(7);
  Mat counts = random_counts(rng, 9, 9);
  LsiModel model = fit_lsi(counts, 5);
  Mat eye5 = Mat::Identity(5, 5);
  CHECK((model.term_concept.transpose() * model.term_concept - eye5).norm() <
        1e-10);
  CHECK((model.doc_concept.transpose() * model.doc_concept - eye5).norm() <
        1e-10);
  for (int i = 1; i < 5; ++i)
    CHECK(model.singular_values[i] <= model.singular_values[i - 1]);
  CHECK(model.singular_values.minCoeff() >= 0.0);
}

TEST_CASE("sign convention pins each concept direction") {
  Rng rng(3);
  Mat counts = random_counts(rng, 8, 5);
  LsiModel model = fit_lsi(counts, 3);
  for (int c = 0; c < 3; ++c) {
    int argmax = 0;
    model.term_concept.col(c).cwiseAbs().maxCoeff(&argmax);
    CHECK(model.term_concept(argmax, c) > 0.0);
  }
  // the convention makes refits bit-for-bit identical
  LsiModel again = fit_lsi(counts, 3);
  CHECK(model.term_concept == again.term_concept);
  CHECK(model.doc_concept == again.doc_concept);
}

TEST_CASE("features scale document coordinates by singular values") {
  Rng rng(11);
  Mat counts = random_counts(rng, 6, 4);
  LsiModel model = fit_lsi(counts, 2);
  Mat f = lsi_features(model);
  REQUIRE(f.rows() == 6);
  REQUIRE(f.cols() == 2);
  CHECK((f - model.doc_concept * model.singular_values.asDiagonal()).norm() ==
        0.0);
  CHECK(lsi_feature_names(2) ==
        std::vector<std::string>{"lsi_concept_1", "lsi_concept_2"});
}

TEST_CASE("rank requests outside 1..min(D,V) are rejected") {
  Mat counts = Mat::Ones(4, 3);
  CHECK_THROWS_AS(fit_lsi(counts, 0), ValidationError);
  CHECK_THROWS_AS(fit_lsi(counts, 4), ValidationError);
  CHECK_NOTHROW(fit_lsi(counts, 3));
}

TEST_CASE("dtm overload matches the dense path") {
  std::vector<Document> docs(3);
  docs[0].tokens = {"ab", "ab", "cd"};
  docs[1].tokens = {"cd", "ef"};
  docs[2].tokens = {"ab", "ef", "ef"};
  auto [vocab, dtm] = build_dtm(docs, 1);
  LsiModel from_dtm = fit_lsi(dtm, 2);
  LsiModel from_dense = fit_lsi(dtm.dense(), 2);
  CHECK(from_dtm.term_concept == from_dense.term_concept);
  CHECK(from_dtm.singular_values == from_dense.singular_values);
}

}  // TEST_SUITE
