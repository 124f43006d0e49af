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

#include "riskscreen/lasso.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "riskscreen/rng.hpp"

using namespace riskscreen;

namespace {

// Random regression problem with standardized columns.
struct Problem {
  Mat X;
  Vec y;
  std::vector<std::string> names;
};

Problem random_problem(Rng& rng, int n, int p, double noise = 0.5) {
  Problem prob;
  prob.X.resize(n, p);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < p; ++j) prob.X(i, j) = rng.normal();
  for (int j = 0; j < p; ++j) {
    double mean = prob.X.col(j).mean();
    prob.X.col(j).array() -= mean;
    double sd = std::sqrt(prob.X.col(j).squaredNorm() / (n - 1));
    prob.X.col(j) /= sd;
    prob.names.push_back("x" + std::to_string(j));
  }
  Vec beta = Vec::Zero(p);
  for (int j = 0; j < std::min(p, 3); ++j) beta[j] = rng.normal();
  prob.y = prob.X * beta;
  for (int i = 0; i < n; ++i) prob.y[i] += 1.5 + noise * rng.normal();
  return prob;
}

double objective(const Mat& X, const Vec& y, double b0, const Vec& beta,
                 double lambda) {
  Vec r = y - Vec::Constant(y.size(), b0) - X * beta;
  return r.squaredNorm() / (2.0 * y.size()) + lambda * beta.cwiseAbs().sum();
}

}  // namespace

TEST_SUITE("lasso") {

TEST_CASE("soft threshold clips toward zero") {
  CHECK(soft_threshold(3.0, 1.0) == 2.0);
  CHECK(soft_threshold(-3.0, 1.0) == -2.0);
  CHECK(soft_threshold(0.5, 1.0) == 0.0);
  CHECK(soft_threshold(-0.5, 1.0) == 0.0);
  CHECK(soft_threshold(2.0, 0.0) == 2.0);
}

TEST_CASE("the path starts where every coefficient is zero") {
  Rng rng(1);
  Problem prob = random_problem(rng, 60, 5);
  LambdaPath path = make_lambda_path(prob.X, prob.y, 40, 1e-3);
  REQUIRE(path.lambdas.size() == 40);
  for (std::size_t i = 1; i < path.lambdas.size(); ++i)
    CHECK(path.lambdas[i] < path.lambdas[i - 1]);
  CHECK(path.lambdas.back() ==
        doctest::Approx(path.lambdas.front() * 1e-3).epsilon(1e-12));

  auto fits = fit_path(prob.X, prob.y, path);
  REQUIRE(fits.size() == 40);
  CHECK(fits.front().coefficients.isZero());
  CHECK(fits.front().intercept == doctest::Approx(prob.y.mean()));
  // support grows as the penalty relaxes; the end is essentially OLS-sized
  int first_nnz = (fits.front().coefficients.array() != 0.0).count();
  int last_nnz = (fits.back().coefficients.array() != 0.0).count();
  CHECK(first_nnz == 0);
  CHECK(last_nnz >= 3);
}

TEST_CASE("solutions satisfy the subgradient conditions") {
  Rng rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    Problem prob = random_problem(rng, 40, 8);
    LambdaPath path = make_lambda_path(prob.X, prob.y, 25, 1e-2);
    SolveOptions opts;
    auto fits = fit_path(prob.X, prob.y, path, opts);
    for (std::size_t f = 0; f < fits.size(); ++f) {
      const Vec& beta = fits[f].coefficients;
      Vec r = prob.y - Vec::Constant(40, fits[f].intercept) - prob.X * beta;
      Vec grad = prob.X.transpose() * r / 40.0;
      double lambda = path.lambdas[f];
      for (int j = 0; j < 8; ++j) {
        if (beta[j] > 0.0)
          CHECK(grad[j] == doctest::Approx(lambda).epsilon(1e-4));
        else if (beta[j] < 0.0)
          CHECK(grad[j] == doctest::Approx(-lambda).epsilon(1e-4));
        else
          CHECK(std::abs(grad[j]) <= lambda + 10 * opts.tol);
      }
      CHECK(std::abs(r.mean()) < 1e-10);  // intercept optimal
    }
  }
}

TEST_CASE("relaxing the penalty never worsens the penalized objective") {
  Rng rng(3);
  Problem prob = random_problem(rng, 50, 6);
  LambdaPath path = make_lambda_path(prob.X, prob.y, 30, 1e-3);
  auto fits = fit_path(prob.X, prob.y, path);
  for (std::size_t f = 0; f < fits.size(); ++f) {
    double at_fit = objective(prob.X, prob.y, fits[f].intercept,
                              fits[f].coefficients, path.lambdas[f]);
    // no other path solution does better at this lambda
    for (std::size_t g = 0; g < fits.size(); ++g) {
      double other = objective(prob.X, prob.y, fits[g].intercept,
                               fits[g].coefficients, path.lambdas[f]);
      CHECK(at_fit <= other + 1e-8);
    }
  }
}

TEST_CASE("replicated cross-validation averages models over replicates") {
  Rng rng(4);
  Problem prob = random_problem(rng, 45, 4);
  std::vector<int> binary(45);
  for (int i = 0; i < 45; ++i) binary[i] = prob.y[i] > prob.y.mean() ? 1 : 0;

  CvOptions opts;
  opts.n_replicates = 6;
  opts.n_folds = 5;
  opts.seed = 17;
  opts.lambda_count = 30;
  CvResult cv = cv_replicates(prob.X, prob.y, binary, prob.names, opts);

  REQUIRE(cv.replicates.size() == 6);
  REQUIRE(cv.averaged.names == prob.names);

  Vec mean_coef = Vec::Zero(4);
  double mean_int = 0.0;
  for (const auto& rep : cv.replicates) {
    mean_coef += rep.model.coefficients;
    mean_int += rep.model.intercept;
    // chosen lambda comes from the shared path
    CHECK(std::count(cv.path.lambdas.begin(), cv.path.lambdas.end(),
                     rep.model.lambda_chosen) == 1);
    // every training row got a held-out prediction
    CHECK(rep.heldout_pred.size() == 45);
    CHECK(rep.heldout_pred.allFinite());
    CHECK(rep.r2 <= 1.0);
    CHECK(rep.auc >= 0.0);
    CHECK(rep.auc <= 1.0);
    // folds partition the rows roughly evenly
    std::vector<int> fold_sizes(5, 0);
    for (int f : rep.fold_of_row) ++fold_sizes[f];
    CHECK(*std::max_element(fold_sizes.begin(), fold_sizes.end()) -
              *std::min_element(fold_sizes.begin(), fold_sizes.end()) <=
          1);
  }
  CHECK((cv.averaged.coefficients - mean_coef / 6).cwiseAbs().maxCoeff() <
        1e-12);
  CHECK(cv.averaged.intercept == doctest::Approx(mean_int / 6));
  for (int j = 0; j < 4; ++j) {
    CHECK(cv.averaged.selection_frequency[j] >= 0.0);
    CHECK(cv.averaged.selection_frequency[j] <= 1.0);
  }
  // informative features should be picked essentially always
  CHECK(cv.averaged.selection_frequency.maxCoeff() > 0.9);
}

TEST_CASE("cross-validation results are seed-deterministic and threadable") {
  Rng rng(5);
  Problem prob = random_problem(rng, 40, 3);
  std::vector<int> binary(40);
  for (int i = 0; i < 40; ++i) binary[i] = i % 3 == 0 ? 1 : 0;
  CvOptions opts;
  opts.n_replicates = 4;
  opts.seed = 9;
  CvResult a = cv_replicates(prob.X, prob.y, binary, prob.names, opts);
  CvResult b = cv_replicates(prob.X, prob.y, binary, prob.names, opts);
  opts.n_threads = 3;
  CvResult c = cv_replicates(prob.X, prob.y, binary, prob.names, opts);
  CHECK(a.averaged.coefficients == b.averaged.coefficients);
  CHECK(a.averaged.coefficients == c.averaged.coefficients);
  for (int r = 0; r < 4; ++r) {
    CHECK(a.replicates[r].model.lambda_chosen ==
          c.replicates[r].model.lambda_chosen);
    CHECK(a.replicates[r].fold_of_row == c.replicates[r].fold_of_row);
  }
}

TEST_CASE("the shared-lambda protocol scores one fold per replicate") {
  Rng rng(6);
  Problem prob = random_problem(rng, 40, 3);
  std::vector<int> binary(40);
  for (int i = 0; i < 40; ++i) binary[i] = prob.y[i] > prob.y.mean() ? 1 : 0;
  CvOptions opts;
  opts.n_replicates = 3;
  opts.seed = 21;
  opts.shared_lambda = true;
  CvResult cv = cv_replicates(prob.X, prob.y, binary, prob.names, opts);
  double lambda0 = cv.replicates[0].model.lambda_chosen;
  for (const auto& rep : cv.replicates) {
    CHECK(rep.model.lambda_chosen == lambda0);
    int held = 0;
    for (int i = 0; i < 40; ++i)
      if (std::isfinite(rep.heldout_pred[i])) {
        ++held;
        CHECK(rep.fold_of_row[i] == 0);
      }
    CHECK(held > 0);
    CHECK(held < 40);
  }
}

TEST_CASE("degenerate inputs raise typed errors") {
  Rng rng(7);
  Problem prob = random_problem(rng, 20, 3);
  std::vector<int> ones(20, 1);
  CvOptions opts;
  opts.n_replicates = 2;
  CHECK_THROWS_AS(cv_replicates(prob.X, prob.y, ones, prob.names, opts),
                  NumericalError);

  std::vector<int> binary(20);
  for (int i = 0; i < 20; ++i) binary[i] = i % 2;
  Vec flat = Vec::Constant(20, 2.0);
  CHECK_THROWS_AS(cv_replicates(prob.X, flat, binary, prob.names, opts),
                  NumericalError);

  CvOptions bad = opts;
  bad.n_folds = 25;  // more folds than rows
  CHECK_THROWS_AS(cv_replicates(prob.X, prob.y, binary, prob.names, bad),
                  ValidationError);
}

TEST_CASE("prediction requires the training column names") {
  Rng rng(8);
  Problem prob = random_problem(rng, 30, 3);
  std::vector<int> binary(30);
  for (int i = 0; i < 30; ++i) binary[i] = i % 2;
  CvOptions opts;
  opts.n_replicates = 2;
  opts.seed = 2;
  CvResult cv = cv_replicates(prob.X, prob.y, binary, prob.names, opts);

  Vec pred = predict(cv.averaged, prob.X, prob.names);
  CHECK(pred.size() == 30);
  Vec manual = Vec::Constant(30, cv.averaged.intercept) +
               prob.X * cv.averaged.coefficients;
  CHECK((pred - manual).cwiseAbs().maxCoeff() == 0.0);

  auto wrong = prob.names;
  std::swap(wrong[0], wrong[1]);
  CHECK_THROWS_AS(predict(cv.averaged, prob.X, wrong), ValidationError);
}

}  // TEST_SUITE
