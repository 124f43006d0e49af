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

#include "riskscreen/eval.hpp"

#include <algorithm>
#include <numeric>

namespace riskscreen {
namespace {

std::pair<long, long> class_counts(const Vec& scores,
                                   const std::vector<int>& labels) {
  if (static_cast<std::size_t>(scores.size()) != labels.size())
    throw ValidationError("auc: scores and labels differ in length");
  long n_pos = std::count_if(labels.begin(), labels.end(),
                             [](int l) { return l != 0; });
  long n_neg = static_cast<long>(labels.size()) - n_pos;
  if (n_pos == 0 || n_neg == 0)
    throw NumericalError("auc undefined: labels are single-class");
  return {n_pos, n_neg};
}

}  // namespace

double auc(const Vec& scores, const std::vector<int>& labels) {
  auto [n_pos, n_neg] = class_counts(scores, labels);
  const std::size_t n = labels.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] < scores[b];
  });
  // Mann-Whitney via average ranks; a tie group shares its mean rank, which
  // is exactly the half-credit convention.
  double pos_rank_sum = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    double mean_rank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j));
    for (std::size_t k = i; k < j; ++k)
      if (labels[order[k]]) pos_rank_sum += mean_rank;
    i = j;
  }
  double u = pos_rank_sum - 0.5 * static_cast<double>(n_pos) *
                                static_cast<double>(n_pos + 1);
  return u / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

RocCurve roc_curve(const Vec& scores, const std::vector<int>& labels) {
  auto [n_pos, n_neg] = class_counts(scores, labels);
  const std::size_t n = labels.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] > scores[b];
  });
  RocCurve curve;
  curve.points.emplace_back(0.0, 0.0);
  long tp = 0, fp = 0;
  double area = 0.0;
  std::size_t i = 0;
  while (i < n) {
    // One step per distinct score so tied positives and negatives move
    // diagonally (trapezoid = tie half-credit).
    std::size_t j = i;
    long d_tp = 0, d_fp = 0;
    while (j < n && scores[order[j]] == scores[order[i]]) {
      if (labels[order[j]])
        ++d_tp;
      else
        ++d_fp;
      ++j;
    }
    double fpr0 = static_cast<double>(fp) / n_neg;
    double tpr0 = static_cast<double>(tp) / n_pos;
    tp += d_tp;
    fp += d_fp;
    double fpr1 = static_cast<double>(fp) / n_neg;
    double tpr1 = static_cast<double>(tp) / n_pos;
    area += (fpr1 - fpr0) * 0.5 * (tpr0 + tpr1);
    curve.points.emplace_back(fpr1, tpr1);
    i = j;
  }
  curve.auc = area;
  return curve;
}

double r_squared(const Vec& predictions, const Vec& y) {
  if (predictions.size() != y.size())
    throw ValidationError("r_squared: length mismatch");
  if (y.size() < 2) throw NumericalError("r_squared undefined: need >= 2 rows");
  double mean = y.mean();
  double ss_tot = (y.array() - mean).square().sum();
  if (ss_tot == 0.0)
    throw NumericalError("r_squared undefined: constant outcome");
  double ss_res = (y - predictions).squaredNorm();
  return 1.0 - ss_res / ss_tot;
}

}  // namespace riskscreen
