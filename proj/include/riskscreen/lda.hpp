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

#ifndef RISKSCREEN_LDA_HPP_
#define RISKSCREEN_LDA_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "riskscreen/common.hpp"
#include "riskscreen/corpus.hpp"

namespace riskscreen {

struct LdaConfig {
  int k = 2;
  double alpha = 0.0;  // <= 0 means the 50/k default
  double beta = 0.1;
  int n_iterations = 2000;
  int burn_in = 1000;
  std::uint64_t seed = 0;
  // Default estimator reads the final sample's smoothed counts; with this
  // set, estimates are averaged over every post-burn-in sweep instead.
  bool average_samples = false;

  double resolved_alpha() const { return alpha > 0.0 ? alpha : 50.0 / k; }
};

struct TopicModel {
  Mat phi;    // k x V, rows sum to 1
  Mat gamma;  // D x k, rows sum to 1
  LdaConfig config;
};

// Collapsed Gibbs sampling; deterministic for a fixed config.
TopicModel fit_lda(const DocTermMatrix& dtm, const LdaConfig& config);

// Per-topic probabilistic coherence over the top_m terms by phi: the mean
// over ordered pairs (i above j) of P(w_j|w_i) - P(w_j), with probabilities
// taken as document frequencies in dtm.
std::vector<double> topic_coherence(const TopicModel& model,
                                    const DocTermMatrix& dtm, int top_m = 5);

struct CoherenceEntry {
  int k = 0;
  double mean_coherence = 0.0;
  std::vector<double> per_topic;
};

struct CoherenceReport {
  std::vector<CoherenceEntry> entries;
  int best_k = 0;  // max mean coherence, ties to the smaller k
};

// One fit per k with a seed derived from base.seed and k; fits may run on
// several threads without affecting results.
CoherenceReport select_k(const DocTermMatrix& dtm, int k_min, int k_max,
                         const LdaConfig& base, int n_threads = 1,
                         int top_m = 5);

// Gamma rows as a feature fragment, columns lda_topic_1..k.
Mat lda_features(const TopicModel& model);
std::vector<std::string> lda_feature_names(int k);

// Held-in perplexity, a diagnostic only; selection goes by coherence.
double perplexity(const TopicModel& model, const DocTermMatrix& dtm);

// Term indices of the top_m highest-phi terms for one topic, ranked.
std::vector<int> top_terms(const TopicModel& model, int topic, int top_m);

}  // namespace riskscreen

#endif  // RISKSCREEN_LDA_HPP_
