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

#ifndef RISKSCREEN_LSI_HPP_
#define RISKSCREEN_LSI_HPP_

#include <string>
#include <vector>

#include "riskscreen/common.hpp"
#include "riskscreen/corpus.hpp"

namespace riskscreen {

// Truncated SVD of the raw docs x terms count matrix. Both stored factors
// have orthonormal columns; term_concept * diag(s) * doc_concept^T gives
// back the terms x docs counts at full rank. Signs are fixed by making the
// largest-magnitude entry of each term_concept column positive.
struct LsiModel {
  Mat term_concept;     // V x r
  Vec singular_values;  // r, nonincreasing
  Mat doc_concept;      // D x r
  int rank = 0;
};

inline constexpr int kFullRank = -1;

LsiModel fit_lsi(const Mat& counts, int rank = kFullRank);
LsiModel fit_lsi(const DocTermMatrix& dtm, int rank = kFullRank);

// Document coordinates in concept space: doc_concept scaled by the
// singular values. Downstream z-scoring makes the scaling immaterial.
Mat lsi_features(const LsiModel& model);

std::vector<std::string> lsi_feature_names(int rank);

}  // namespace riskscreen

#endif  // RISKSCREEN_LSI_HPP_
