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

#ifndef RISKSCREEN_SYNTH_HPP_
#define RISKSCREEN_SYNTH_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "riskscreen/corpus.hpp"

namespace riskscreen {

// clamp(round(base + loading * risk + N(0, noise_sd)), 0, max_value)
struct McGenSpec {
  double base = 0.0;
  double loading = 0.0;
  double noise_sd = 1.0;
  int max_value = 4;
};

// Generator with planted structure: text is drawn from disjoint topic word
// groups plus polarity words injected at a rate tied to the latent risk;
// scores follow the risk with fixed depression-scale coefficients and
// configurable loadings elsewhere. Marginals sit near the target screening
// distributions (mean ~7, sd ~5, ~15% at or above the cutoff).
struct SynthSpec {
  int n_respondents = 309;
  int n_topics_true = 3;
  int vocab_size = 60;
  double topic_concentration = 5.0;  // word prior inside a topic group
  double doc_length_mean = 40.0;
  // Chance per token of emitting a lexicon word: negative at
  // rate*sigmoid(risk), positive at rate*sigmoid(-risk).
  double sentiment_injection = 0.25;
  std::array<McGenSpec, 5> mc = {{
      {2.6, -0.9, 1.0, 4},    // mood
      {0.35, 0.55, 0.75, 4},  // conflict
      {1.5, -0.45, 0.8, 4},   // energy
      {6.2, -0.6, 1.7, 12},   // sleep_hours
      {1.6, -0.4, 0.65, 3},   // sleep_quality
  }};
  McGenSpec web = {-0.3, 0.6, 0.7, 3};  // each of the three items
  std::uint64_t seed = 0;
};

SynthSpec load_synth_spec(const std::string& path);
SynthSpec parse_synth_spec(const std::string& json_text);

std::vector<SurveyRecord> generate(const SynthSpec& spec);

// The planted pseudo-vocabulary, deterministic and stemmer-stable; group g
// of a k-topic spec owns the contiguous slice [g*V/k, (g+1)*V/k).
std::vector<std::string> planted_vocabulary(int vocab_size);

const std::vector<std::string>& negative_pool();
const std::vector<std::string>& positive_pool();

}  // namespace riskscreen

#endif  // RISKSCREEN_SYNTH_HPP_
