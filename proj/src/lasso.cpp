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
#include <limits>
#include <numeric>

#include "riskscreen/eval.hpp"
#include "riskscreen/rng.hpp"

namespace riskscreen {
namespace {

// One coordinate-descent problem; keeps the residual incremental and
// certifies KKT before a solution is accepted.
class Solver {
 public:
  Solver(const Mat& X, const Vec& y, const SolveOptions& opts)
      : X_(X), y_(y), opts_(opts), n_(static_cast<double>(X.rows())) {
    w_ = X_.colwise().squaredNorm() / n_;
    beta_ = Vec::Zero(X_.cols());
    beta0_ = y_.mean();
    r_ = y_.array() - beta0_;
  }

  // Solves at one lambda from the current warm state.
  void solve(double lambda) {
    const int p = static_cast<int>(X_.cols());
    std::vector<int> active;
    int sweeps = 0;
    double prev_obj = objective(lambda);
    for (;;) {
      double change = sweep_all(lambda);
      bump(lambda, &sweeps, &prev_obj);
      if (change < opts_.tol) {
        refresh_residual();
        if (kkt_satisfied(lambda, 5.0 * opts_.tol)) return;
        continue;
      }
      active.clear();
      for (int j = 0; j < p; ++j)
        if (beta_[j] != 0.0) active.push_back(j);
      for (;;) {
        double ca = sweep(active, lambda);
        bump(lambda, &sweeps, &prev_obj);
        if (ca < opts_.tol) break;
      }
    }
  }

  double beta0() const { return beta0_; }
  const Vec& beta() const { return beta_; }

 private:
  double objective(double lambda) const {
    return r_.squaredNorm() / (2.0 * n_) + lambda * beta_.lpNorm<1>();
  }

  void bump(double lambda, int* sweeps, double* prev_obj) {
    if (++*sweeps > opts_.max_iter)
      throw NumericalError("lasso did not converge at lambda=" +
                           format_double(lambda));
    double obj = objective(lambda);
    if (obj > *prev_obj + 1e-10 * (1.0 + *prev_obj))
      throw NumericalError("lasso objective increased at lambda=" +
                           format_double(lambda));
    *prev_obj = obj;
  }

  double update(int j, double lambda) {
    if (w_[j] == 0.0) return 0.0;
    double rho = X_.col(j).dot(r_) / n_ + w_[j] * beta_[j];
    double next = soft_threshold(rho, lambda) / w_[j];
    double d = next - beta_[j];
    if (d != 0.0) {
      r_ -= d * X_.col(j);
      beta_[j] = next;
    }
    return std::abs(d);
  }

  double update_intercept() {
    double m = r_.mean();
    beta0_ += m;
    r_.array() -= m;
    return std::abs(m);
  }

  double sweep_all(double lambda) {
    double change = update_intercept();
    for (int j = 0; j < X_.cols(); ++j)
      change = std::max(change, update(j, lambda));
    return change;
  }

  double sweep(const std::vector<int>& subset, double lambda) {
    double change = update_intercept();
    for (int j : subset) change = std::max(change, update(j, lambda));
    return change;
  }

  void refresh_residual() {
    r_ = y_ - X_ * beta_;
    r_.array() -= beta0_;
    double m = r_.mean();
    beta0_ += m;
    r_.array() -= m;
  }

  bool kkt_satisfied(double lambda, double margin) const {
    Vec g = X_.transpose() * r_ / n_;
    for (int j = 0; j < X_.cols(); ++j) {
      if (w_[j] == 0.0) continue;
      if (beta_[j] != 0.0) {
        if (std::abs(g[j] - lambda * (beta_[j] > 0 ? 1.0 : -1.0)) > margin)
          return false;
      } else if (std::abs(g[j]) > lambda + margin) {
        return false;
      }
    }
    return true;
  }

  const Mat& X_;
  const Vec& y_;
  SolveOptions opts_;
  double n_;
  Vec w_;   // per-column mean square, the update denominators
  Vec beta_;
  double beta0_;
  Vec r_;
};

Mat take_rows(const Mat& X, const std::vector<int>& rows) {
  Mat out(rows.size(), X.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(i) = X.row(rows[i]);
  return out;
}

Vec take(const Vec& v, const std::vector<int>& rows) {
  Vec out(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) out[i] = v[rows[i]];
  return out;
}

}  // namespace

double soft_threshold(double z, double g) {
  if (g < 0.0) throw ValidationError("soft_threshold: negative penalty");
  if (z > g) return z - g;
  if (z < -g) return z + g;
  return 0.0;
}

LambdaPath make_lambda_path(const Mat& X, const Vec& y, int count,
                            double ratio) {
  if (X.rows() != y.size())
    throw ValidationError("make_lambda_path: row count mismatch");
  if (count < 1) throw ValidationError("make_lambda_path: count must be >= 1");
  if (!(ratio > 0.0 && ratio < 1.0))
    throw ValidationError("make_lambda_path: ratio must be in (0,1)");
  const double n = static_cast<double>(X.rows());
  Vec centered = y.array() - y.mean();
  double lambda_max = (X.transpose() * centered).cwiseAbs().maxCoeff() / n;
  // Degenerate designs (constant y, all-zero X) still get a valid path;
  // every solution on it is the zero vector.
  if (!(lambda_max > 0.0)) lambda_max = 1e-12;
  LambdaPath path;
  path.lambdas.resize(count);
  for (int i = 0; i < count; ++i)
    path.lambdas[i] =
        count == 1 ? lambda_max
                   : lambda_max * std::pow(ratio, static_cast<double>(i) /
                                                      (count - 1));
  return path;
}

std::vector<FittedModel> fit_path(const Mat& X, const Vec& y,
                                  const LambdaPath& path,
                                  const SolveOptions& opts) {
  if (X.rows() != y.size())
    throw ValidationError("fit_path: row count mismatch");
  if (X.rows() == 0) throw ValidationError("fit_path: empty design");
  Solver solver(X, y, opts);
  std::vector<FittedModel> models;
  models.reserve(path.lambdas.size());
  for (double lambda : path.lambdas) {
    if (lambda < 0.0) throw ValidationError("fit_path: negative lambda");
    solver.solve(lambda);
    FittedModel m;
    m.intercept = solver.beta0();
    m.coefficients = solver.beta();
    m.lambda_chosen = lambda;
    models.push_back(std::move(m));
  }
  return models;
}

CvResult cv_replicates(const Mat& X, const Vec& y,
                       const std::vector<int>& binary,
                       const std::vector<std::string>& names,
                       const CvOptions& opts) {
  const int n = static_cast<int>(X.rows());
  const int p = static_cast<int>(X.cols());
  if (static_cast<int>(binary.size()) != n || y.size() != n)
    throw ValidationError("cv_replicates: row count mismatch");
  if (static_cast<int>(names.size()) != p)
    throw ValidationError("cv_replicates: name count mismatch");
  if (opts.n_folds < 2 || n < opts.n_folds)
    throw ValidationError("cv_replicates: need n >= n_folds >= 2");
  if (opts.n_replicates < 1)
    throw ValidationError("cv_replicates: need at least one replicate");
  bool any_pos = false, any_neg = false;
  for (int b : binary) (b ? any_pos : any_neg) = true;
  if (!any_pos || !any_neg)
    throw NumericalError("cv_replicates: binary labels are single-class");

  const LambdaPath path =
      make_lambda_path(X, y, opts.lambda_count, opts.lambda_ratio);
  const int L = static_cast<int>(path.lambdas.size());
  // Full-data solutions are shared: a replicate's final model is the
  // full fit at its chosen lambda.
  const std::vector<FittedModel> full_models = fit_path(X, y, path, opts.solve);

  const double nan = std::numeric_limits<double>::quiet_NaN();

  auto assign_folds = [&](Rng& rng) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    std::vector<int> fold_of_row(n);
    for (int i = 0; i < n; ++i) fold_of_row[order[i]] = i % opts.n_folds;
    return fold_of_row;
  };

  // Runs one replicate's fold loop; fills preds (row x lambda) for rows in
  // the scored folds.
  auto fold_predictions = [&](const std::vector<int>& fold_of_row,
                              const std::vector<int>& folds, Mat* preds) {
    for (int f : folds) {
      std::vector<int> trn, tst;
      for (int i = 0; i < n; ++i)
        (fold_of_row[i] == f ? tst : trn).push_back(i);
      Mat x_trn = take_rows(X, trn);
      Vec y_trn = take(y, trn);
      auto models = fit_path(x_trn, y_trn, path, opts.solve);
      Mat x_tst = take_rows(X, tst);
      for (int l = 0; l < L; ++l) {
        Vec pred = (x_tst * models[l].coefficients).array() +
                   models[l].intercept;
        for (std::size_t i = 0; i < tst.size(); ++i)
          (*preds)(tst[i], l) = pred[i];
      }
    }
  };

  auto chosen_index = [&](const Mat& preds, const std::vector<int>& rows) {
    int best = 0;
    double best_mse = std::numeric_limits<double>::infinity();
    for (int l = 0; l < L; ++l) {
      double sse = 0.0;
      for (int i : rows) {
        double d = preds(i, l) - y[i];
        sse += d * d;
      }
      // Strict < keeps the earliest (largest) lambda on ties.
      if (sse < best_mse) {
        best_mse = sse;
        best = l;
      }
    }
    return best;
  };

  std::vector<int> all_rows(n);
  std::iota(all_rows.begin(), all_rows.end(), 0);
  std::vector<int> all_folds(opts.n_folds);
  std::iota(all_folds.begin(), all_folds.end(), 0);

  CvResult result;
  result.path = path;
  result.replicates.resize(opts.n_replicates);

  int shared_index = -1;
  if (opts.shared_lambda) {
    // Replicate 0's cross-validation fixes the lambda for everyone.
    Rng rng(derive_seed(opts.seed, 0));
    auto fold_of_row = assign_folds(rng);
    Mat preds(n, L);
    fold_predictions(fold_of_row, all_folds, &preds);
    shared_index = chosen_index(preds, all_rows);
  }

  parallel_for(static_cast<std::size_t>(opts.n_replicates), opts.n_threads,
               [&](std::size_t rep) {
    Rng rng(derive_seed(opts.seed, rep));
    ReplicateRun run;
    run.replicate = static_cast<int>(rep);
    run.fold_of_row = assign_folds(rng);
    run.heldout_pred = Vec::Constant(n, nan);
    std::vector<int> scored_rows;

    if (!opts.shared_lambda) {
      Mat preds(n, L);
      fold_predictions(run.fold_of_row, all_folds, &preds);
      int best = chosen_index(preds, all_rows);
      run.model = full_models[best];
      run.heldout_pred = preds.col(best);
      scored_rows = all_rows;
    } else {
      // Refit on everything outside fold 0 at the shared lambda; fold 0
      // provides this replicate's held-out predictions.
      std::vector<int> trn, tst;
      for (int i = 0; i < n; ++i)
        (run.fold_of_row[i] == 0 ? tst : trn).push_back(i);
      Mat x_trn = take_rows(X, trn);
      Vec y_trn = take(y, trn);
      LambdaPath to_lambda;
      to_lambda.lambdas.assign(path.lambdas.begin(),
                               path.lambdas.begin() + shared_index + 1);
      auto models = fit_path(x_trn, y_trn, to_lambda, opts.solve);
      run.model = models.back();
      Mat x_tst = take_rows(X, tst);
      Vec pred = (x_tst * run.model.coefficients).array() +
                 run.model.intercept;
      for (std::size_t i = 0; i < tst.size(); ++i)
        run.heldout_pred[tst[i]] = pred[i];
      scored_rows = tst;
    }

    Vec sub_pred = take(run.heldout_pred, scored_rows);
    Vec sub_y = take(y, scored_rows);
    std::vector<int> sub_bin;
    for (int i : scored_rows) sub_bin.push_back(binary[i]);
    run.r2 = r_squared(sub_pred, sub_y);
    run.auc = auc(sub_pred, sub_bin);
    result.replicates[rep] = std::move(run);
  });

  AveragedModel avg;
  avg.names = names;
  avg.coefficients = Vec::Zero(p);
  avg.selection_frequency = Vec::Zero(p);
  for (const auto& run : result.replicates) {
    avg.intercept += run.model.intercept;
    avg.coefficients += run.model.coefficients;
    for (int j = 0; j < p; ++j)
      if (run.model.coefficients[j] != 0.0) avg.selection_frequency[j] += 1.0;
  }
  avg.intercept /= opts.n_replicates;
  avg.coefficients /= opts.n_replicates;
  avg.selection_frequency /= opts.n_replicates;
  result.averaged = std::move(avg);
  return result;
}

Vec predict(const AveragedModel& model, const Mat& X,
            const std::vector<std::string>& names) {
  if (names != model.names) {
    std::string missing, extra;
    for (const auto& n : model.names)
      if (std::find(names.begin(), names.end(), n) == names.end())
        missing += " " + n;
    for (const auto& n : names)
      if (std::find(model.names.begin(), model.names.end(), n) ==
          model.names.end())
        extra += " " + n;
    throw ValidationError("predict: column mismatch; missing:[" + missing +
                          " ] extra:[" + extra + " ]");
  }
  if (X.cols() != model.coefficients.size())
    throw ValidationError("predict: column count mismatch");
  return (X * model.coefficients).array() + model.intercept;
}

}  // namespace riskscreen
