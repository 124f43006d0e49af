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

#ifndef RISKSCREEN_LASSO_HPP_
#define RISKSCREEN_LASSO_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "riskscreen/common.hpp"

namespace riskscreen {

// sign(z) * max(|z| - g, 0)
double soft_threshold(double z, double g);

// Penalties geometrically spaced from lambda_max (all coefficients zero)
// down to ratio * lambda_max.
struct LambdaPath {
  std::vector<double> lambdas;  // strictly decreasing
};

LambdaPath make_lambda_path(const Mat& X, const Vec& y, int count = 100,
                            double ratio = 1e-3);

struct SolveOptions {
  double tol = 1e-7;    // max coefficient change per sweep
  int max_iter = 100000;  // sweep budget per lambda
};

struct FittedModel {
  double intercept = 0.0;
  Vec coefficients;
  double lambda_chosen = 0.0;
};

// Cyclic coordinate descent on
//   (1/2n) sum_i (y_i - b0 - x_i b)^2 + lambda sum_j |b_j|
// warm-started along the path. Every returned solution is certified
// against the KKT conditions; failure to converge or certify raises
// NumericalError naming the lambda.
std::vector<FittedModel> fit_path(const Mat& X, const Vec& y,
                                  const LambdaPath& path,
                                  const SolveOptions& opts = {});

struct CvOptions {
  int n_replicates = 100;
  int n_folds = 5;
  std::uint64_t seed = 0;
  int n_threads = 1;
  int lambda_count = 100;
  double lambda_ratio = 1e-3;
  // Alternative protocol: replicate 0's cross-validation picks one lambda,
  // then every replicate refits on a 4/5 subsample at that fixed lambda.
  bool shared_lambda = false;
  SolveOptions solve;
};

struct ReplicateRun {
  int replicate = 0;
  std::vector<int> fold_of_row;
  FittedModel model;
  // One held-out prediction per row; NaN where a protocol holds no
  // prediction (shared_lambda covers one fold only).
  Vec heldout_pred;
  double r2 = 0.0;
  double auc = 0.0;
};

struct AveragedModel {
  double intercept = 0.0;
  Vec coefficients;  // mean over replicates, zeros included
  std::vector<std::string> names;
  Vec selection_frequency;
};

struct CvResult {
  std::vector<ReplicateRun> replicates;
  AveragedModel averaged;
  LambdaPath path;
};

// Replicated k-fold cross-validation. Each replicate draws its own fold
// assignment from a replicate-derived seed, scores the shared lambda path
// on pooled held-out error, picks the minimizing lambda (ties to the
// larger), and takes the cached full-data path solution at that lambda as
// its fitted model. binary drives the per-replicate AUC.
CvResult cv_replicates(const Mat& X, const Vec& y,
                       const std::vector<int>& binary,
                       const std::vector<std::string>& names,
                       const CvOptions& opts);

// intercept + X * coefficients, after checking the column names line up.
Vec predict(const AveragedModel& model, const Mat& X,
            const std::vector<std::string>& names);

}  // namespace riskscreen

#endif  // RISKSCREEN_LASSO_HPP_
