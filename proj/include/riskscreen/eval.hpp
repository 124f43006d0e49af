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

#ifndef RISKSCREEN_EVAL_HPP_
#define RISKSCREEN_EVAL_HPP_

#include <utility>
#include <vector>

#include "riskscreen/common.hpp"

namespace riskscreen {

// Threshold sweep over distinct scores; points run from (0,0) to (1,1)
// with both coordinates nondecreasing.
struct RocCurve {
  std::vector<std::pair<double, double>> points;  // (fpr, tpr)
  double auc = 0.0;
};

// Probability that a random positive outscores a random negative, ties
// counted half. Throws NumericalError when labels are single-class.
double auc(const Vec& scores, const std::vector<int>& labels);

RocCurve roc_curve(const Vec& scores, const std::vector<int>& labels);

// 1 - SS_res/SS_tot; negative when predictions do worse than the mean.
// Throws NumericalError for constant y or length < 2.
double r_squared(const Vec& predictions, const Vec& y);

}  // namespace riskscreen

#endif  // RISKSCREEN_EVAL_HPP_
