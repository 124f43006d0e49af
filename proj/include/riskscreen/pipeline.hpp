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

#ifndef RISKSCREEN_PIPELINE_HPP_
#define RISKSCREEN_PIPELINE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "riskscreen/features.hpp"
#include "riskscreen/lsi.hpp"

namespace riskscreen {

struct LdaSettings {
  double alpha = 0.0;  // <= 0 means 50/k
  double beta = 0.1;
  int iterations = 2000;
  int burn_in = 1000;
  bool average_samples = false;
};

struct LassoSettings {
  int replicates = 100;
  int folds = 5;
  int lambda_count = 100;
  double lambda_ratio = 1e-3;
  double tol = 1e-7;
  int max_iter = 100000;
  bool shared_lambda = false;
};

// One experiment: inputs, hyperparameters, and the base seed every stage
// derives its own stream from. Relative paths resolve against the config
// file's directory.
struct ExperimentConfig {
  std::string corpus_path;
  CorpusFormat format = CorpusFormat::jsonl;
  std::string stopwords_path;
  std::string swn_path;
  std::string ol_positive_path;
  std::string ol_negative_path;
  std::string liwc_path;
  int min_df = 2;
  bool stem = true;
  int k_min = 2;
  int k_max = 20;
  int top_m = 5;
  LdaSettings lda;
  int lsi_rank = kFullRank;
  double test_fraction = 0.2;
  std::vector<FeatureSet> feature_sets = all_feature_sets();
  std::vector<Outcome> outcomes = {Outcome::epds, Outcome::web};
  LassoSettings lasso;
  std::uint64_t seed = 1;

  // Location-independent canonical form (paths as written in the config
  // file); fnv1a64 of it is the hash stamped into every artifact.
  std::string canonical_json;
  std::uint64_t hash() const { return fnv1a64(canonical_json); }
};

ExperimentConfig load_experiment_config(
    const std::string& path, std::optional<std::uint64_t> seed_override);

// Stage runners; each reads its predecessors' artifacts from out_dir and
// writes its own there. All files carry {config hash, seed, version}.
void run_synth(const std::string& spec_path,
               std::optional<std::uint64_t> seed_override,
               const std::string& out_file);
void run_preprocess(const ExperimentConfig& config, const std::string& out_dir);
void run_topics(const ExperimentConfig& config, const std::string& out_dir,
                int n_threads);
void run_featurize(const ExperimentConfig& config, const std::string& out_dir);
void run_train_eval(const ExperimentConfig& config, const std::string& out_dir,
                    int n_threads);
void run_report(const ExperimentConfig& config, const std::string& out_dir);

}  // namespace riskscreen

#endif  // RISKSCREEN_PIPELINE_HPP_
