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
#include <numeric>

#include "riskscreen/rng.hpp"

namespace riskscreen {
namespace {

void check_config(const LdaConfig& c, int n_terms) {
  if (c.k < 2) throw ValidationError("lda: k must be >= 2");
  if (c.k > n_terms)
    throw ValidationError("lda: k=" + std::to_string(c.k) +
                          " exceeds vocabulary size " +
                          std::to_string(n_terms));
  if (c.beta <= 0.0) throw ValidationError("lda: beta must be positive");
  if (!(c.burn_in > 0 && c.burn_in < c.n_iterations))
    throw ValidationError("lda: need 0 < burn_in < n_iterations");
}

}  // namespace

TopicModel fit_lda(const DocTermMatrix& dtm, const LdaConfig& config) {
  check_config(config, dtm.n_terms);
  const int K = config.k;
  const int V = dtm.n_terms;
  const int D = dtm.n_docs;
  const double alpha = config.resolved_alpha();
  const double beta = config.beta;
  const double v_beta = V * beta;

  // Flatten documents to one term id per token occurrence.
  std::vector<std::vector<int>> words(D);
  for (int d = 0; d < D; ++d)
    for (const auto& [t, c] : dtm.rows[d])
      words[d].insert(words[d].end(), c, t);

  std::vector<int> n_kt(static_cast<std::size_t>(K) * V, 0);
  std::vector<int> n_k(K, 0);
  std::vector<int> n_dk(static_cast<std::size_t>(D) * K, 0);
  std::vector<std::vector<int>> z(D);

  Rng rng(config.seed);
  for (int d = 0; d < D; ++d) {
    z[d].resize(words[d].size());
    for (std::size_t i = 0; i < words[d].size(); ++i) {
      int topic = static_cast<int>(rng.below(K));
      z[d][i] = topic;
      n_kt[static_cast<std::size_t>(topic) * V + words[d][i]]++;
      n_k[topic]++;
      n_dk[static_cast<std::size_t>(d) * K + topic]++;
    }
  }

  Mat phi = Mat::Zero(K, V);
  Mat gamma = Mat::Zero(D, K);
  Mat phi_acc, gamma_acc;
  int n_samples = 0;
  if (config.average_samples) {
    phi_acc = Mat::Zero(K, V);
    gamma_acc = Mat::Zero(D, K);
  }

  auto estimate = [&](Mat& phi_out, Mat& gamma_out) {
    for (int k = 0; k < K; ++k)
      for (int t = 0; t < V; ++t)
        phi_out(k, t) =
            (n_kt[static_cast<std::size_t>(k) * V + t] + beta) / (n_k[k] + v_beta);
    for (int d = 0; d < D; ++d) {
      double len = static_cast<double>(words[d].size());
      for (int k = 0; k < K; ++k)
        gamma_out(d, k) =
            (n_dk[static_cast<std::size_t>(d) * K + k] + alpha) / (len + K * alpha);
    }
  };

  std::vector<double> p(K);
  for (int iter = 1; iter <= config.n_iterations; ++iter) {
    for (int d = 0; d < D; ++d) {
      int* dk = &n_dk[static_cast<std::size_t>(d) * K];
      for (std::size_t i = 0; i < words[d].size(); ++i) {
        const int t = words[d][i];
        const int old = z[d][i];
        n_kt[static_cast<std::size_t>(old) * V + t]--;
        n_k[old]--;
        dk[old]--;
        double total = 0.0;
        for (int k = 0; k < K; ++k) {
          total += (dk[k] + alpha) *
                   (n_kt[static_cast<std::size_t>(k) * V + t] + beta) /
                   (n_k[k] + v_beta);
          p[k] = total;
        }
        double u = rng.uniform() * total;
        int chosen = 0;
        while (chosen < K - 1 && p[chosen] <= u) ++chosen;
        z[d][i] = chosen;
        n_kt[static_cast<std::size_t>(chosen) * V + t]++;
        n_k[chosen]++;
        dk[chosen]++;
      }
    }
    if (config.average_samples && iter > config.burn_in) {
      estimate(phi, gamma);
      phi_acc += phi;
      gamma_acc += gamma;
      ++n_samples;
    }
  }

  TopicModel model;
  model.config = config;
  if (config.average_samples) {
    model.phi = phi_acc / n_samples;
    model.gamma = gamma_acc / n_samples;
  } else {
    estimate(phi, gamma);
    model.phi = phi;
    model.gamma = gamma;
  }
  return model;
}

std::vector<int> top_terms(const TopicModel& model, int topic, int top_m) {
  const int V = static_cast<int>(model.phi.cols());
  std::vector<int> order(V);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return model.phi(topic, a) > model.phi(topic, b);
  });
  order.resize(std::min(top_m, V));
  return order;
}

std::vector<double> topic_coherence(const TopicModel& model,
                                    const DocTermMatrix& dtm, int top_m) {
  if (top_m < 2) throw ValidationError("topic_coherence: top_m must be >= 2");
  if (top_m > dtm.n_terms)
    throw ValidationError("topic_coherence: top_m exceeds vocabulary size");
  const int D = dtm.n_docs;
  const int K = static_cast<int>(model.phi.rows());

  // Document-presence sets for every term involved in some topic's top list.
  std::vector<std::vector<int>> docs_with(dtm.n_terms);
  std::vector<char> needed(dtm.n_terms, 0);
  std::vector<std::vector<int>> tops(K);
  for (int k = 0; k < K; ++k) {
    tops[k] = top_terms(model, k, top_m);
    for (int t : tops[k]) needed[t] = 1;
  }
  for (int d = 0; d < D; ++d)
    for (const auto& [t, c] : dtm.rows[d])
      if (needed[t]) docs_with[t].push_back(d);

  auto co_df = [&](int a, int b) {
    const auto& da = docs_with[a];
    const auto& db = docs_with[b];
    std::size_t i = 0, j = 0;
    int n = 0;
    while (i < da.size() && j < db.size()) {
      if (da[i] == db[j]) {
        ++n;
        ++i;
        ++j;
      } else if (da[i] < db[j]) {
        ++i;
      } else {
        ++j;
      }
    }
    return n;
  };

  std::vector<double> coherence(K, 0.0);
  for (int k = 0; k < K; ++k) {
    double sum = 0.0;
    int pairs = 0;
    const auto& top = tops[k];
    for (std::size_t i = 0; i < top.size(); ++i) {
      double df_i = static_cast<double>(docs_with[top[i]].size());
      for (std::size_t j = i + 1; j < top.size(); ++j) {
        double df_j = static_cast<double>(docs_with[top[j]].size());
        sum += co_df(top[i], top[j]) / df_i - df_j / D;
        ++pairs;
      }
    }
    coherence[k] = pairs > 0 ? sum / pairs : 0.0;
  }
  return coherence;
}

CoherenceReport select_k(const DocTermMatrix& dtm, int k_min, int k_max,
                         const LdaConfig& base, int n_threads, int top_m) {
  if (k_min < 2 || k_max < k_min)
    throw ValidationError("select_k: need 2 <= k_min <= k_max");
  if (k_max > dtm.n_terms)
    throw ValidationError("select_k: k_max exceeds vocabulary size");

  CoherenceReport report;
  report.entries.resize(k_max - k_min + 1);
  parallel_for(report.entries.size(), n_threads, [&](std::size_t i) {
    int k = k_min + static_cast<int>(i);
    LdaConfig config = base;
    config.k = k;
    config.alpha = base.alpha > 0.0 ? base.alpha : 50.0 / k;
    config.seed = derive_seed(base.seed, static_cast<std::uint64_t>(k));
    TopicModel model;
    try {
      model = fit_lda(dtm, config);
    } catch (const std::exception& e) {
      throw NumericalError("select_k failed at k=" + std::to_string(k) + ": " +
                           e.what());
    }
    CoherenceEntry entry;
    entry.k = k;
    entry.per_topic = topic_coherence(model, dtm, top_m);
    entry.mean_coherence =
        std::accumulate(entry.per_topic.begin(), entry.per_topic.end(), 0.0) /
        entry.per_topic.size();
    report.entries[i] = std::move(entry);
  });

  report.best_k = report.entries.front().k;
  double best = report.entries.front().mean_coherence;
  for (const auto& e : report.entries) {
    if (e.mean_coherence > best) {
      best = e.mean_coherence;
      report.best_k = e.k;
    }
  }
  return report;
}

Mat lda_features(const TopicModel& model) { return model.gamma; }

std::vector<std::string> lda_feature_names(int k) {
  std::vector<std::string> names;
  names.reserve(k);
  for (int i = 1; i <= k; ++i)
    names.push_back("lda_topic_" + std::to_string(i));
  return names;
}

double perplexity(const TopicModel& model, const DocTermMatrix& dtm) {
  double log_lik = 0.0;
  long n_tokens = 0;
  for (int d = 0; d < dtm.n_docs; ++d) {
    for (const auto& [t, c] : dtm.rows[d]) {
      double p = model.gamma.row(d).dot(model.phi.col(t));
      if (p <= 0.0)
        throw NumericalError("perplexity: zero token probability");
      log_lik += c * std::log(p);
      n_tokens += c;
    }
  }
  if (n_tokens == 0) throw ValidationError("perplexity: empty corpus");
  return std::exp(-log_lik / n_tokens);
}

}  // namespace riskscreen
