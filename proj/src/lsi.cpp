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

#include <Eigen/SVD>

#include <cmath>

namespace riskscreen {

LsiModel fit_lsi(const Mat& counts, int rank) {
  if (counts.rows() == 0 || counts.cols() == 0)
    throw ValidationError("fit_lsi: empty count matrix");
  const int full = static_cast<int>(std::min(counts.rows(), counts.cols()));
  int r = rank == kFullRank ? full : rank;
  if (r < 1) throw ValidationError("fit_lsi: rank must be >= 1");
  if (r > full)
    throw ValidationError("fit_lsi: rank " + std::to_string(r) +
                          " exceeds min(docs, terms) = " + std::to_string(full));

  Eigen::BDCSVD<Mat> svd(counts, Eigen::ComputeThinU | Eigen::ComputeThinV);

  LsiModel model;
  model.rank = r;
  model.singular_values = svd.singularValues().head(r);
  model.doc_concept = svd.matrixU().leftCols(r);
  model.term_concept = svd.matrixV().leftCols(r);

  // Fix the sign indeterminacy per concept; ties on magnitude fall to the
  // lowest index so the choice is reproducible.
  for (int c = 0; c < r; ++c) {
    int argmax = 0;
    double best = -1.0;
    for (int t = 0; t < model.term_concept.rows(); ++t) {
      double a = std::abs(model.term_concept(t, c));
      if (a > best) {
        best = a;
        argmax = t;
      }
    }
    if (model.term_concept(argmax, c) < 0.0) {
      model.term_concept.col(c) = -model.term_concept.col(c);
      model.doc_concept.col(c) = -model.doc_concept.col(c);
    }
  }
  return model;
}

LsiModel fit_lsi(const DocTermMatrix& dtm, int rank) {
  return fit_lsi(dtm.dense(), rank);
}

Mat lsi_features(const LsiModel& model) {
  return model.doc_concept * model.singular_values.asDiagonal();
}

std::vector<std::string> lsi_feature_names(int rank) {
  std::vector<std::string> names;
  names.reserve(rank);
  for (int i = 1; i <= rank; ++i)
    names.push_back("lsi_concept_" + std::to_string(i));
  return names;
}

}  // namespace riskscreen
