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

#include "riskscreen/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "riskscreen/rng.hpp"

namespace riskscreen {
namespace {

using nlohmann::json;

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

int clamp_round(double x, int max_value) {
  long v = std::lround(x);
  if (v < 0) return 0;
  if (v > max_value) return max_value;
  return static_cast<int>(v);
}

int draw_mc(Rng& rng, const McGenSpec& mc, double risk) {
  return clamp_round(mc.base + mc.loading * risk + rng.normal(0.0, mc.noise_sd),
                     mc.max_value);
}

McGenSpec parse_mc(const json& j, const McGenSpec& defaults) {
  McGenSpec mc = defaults;
  if (j.contains("base")) mc.base = j["base"].get<double>();
  if (j.contains("loading")) mc.loading = j["loading"].get<double>();
  if (j.contains("noise_sd")) mc.noise_sd = j["noise_sd"].get<double>();
  if (j.contains("max")) mc.max_value = j["max"].get<int>();
  return mc;
}

}  // namespace

const std::vector<std::string>& negative_pool() {
  static const std::vector<std::string> pool = {
      "sad",   "angry",  "worried",   "anxious", "tired",
      "upset", "lonely", "miserable", "awful",   "terrible"};
  return pool;
}

const std::vector<std::string>& positive_pool() {
  static const std::vector<std::string> pool = {
      "happy", "glad",      "calm",  "cheerful", "hopeful",
      "wonderful", "great", "blessed", "joyful", "proud"};
  return pool;
}

std::vector<std::string> planted_vocabulary(int vocab_size) {
  // CVCo nonsense words from letters no stemmer rule touches; each is its
  // own stem, none is a stopword, none collides with the polarity pools.
  static const char consonants[] = {'b', 'd', 'f', 'g', 'k',
                                    'm', 'p', 'v', 'w', 'z'};
  static const char vowels[] = {'a', 'e', 'i', 'o', 'u'};
  std::vector<std::string> words;
  words.reserve(vocab_size);
  for (int c1 = 0; c1 < 10 && static_cast<int>(words.size()) < vocab_size; ++c1)
    for (int v1 = 0; v1 < 5 && static_cast<int>(words.size()) < vocab_size; ++v1)
      for (int c2 = 0; c2 < 10 && static_cast<int>(words.size()) < vocab_size;
           ++c2) {
        std::string w{consonants[c1], vowels[v1], consonants[c2], 'o'};
        words.push_back(w);
      }
  if (static_cast<int>(words.size()) < vocab_size)
    throw ValidationError("planted_vocabulary: vocab_size above 500");
  return words;
}

SynthSpec parse_synth_spec(const std::string& json_text) {
  json j = json::parse(json_text, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw ValidationError("synth spec is not a JSON object");
  SynthSpec spec;
  if (j.contains("n_respondents")) spec.n_respondents = j["n_respondents"].get<int>();
  if (j.contains("n_topics_true")) spec.n_topics_true = j["n_topics_true"].get<int>();
  if (j.contains("vocab_size")) spec.vocab_size = j["vocab_size"].get<int>();
  if (j.contains("topic_concentration"))
    spec.topic_concentration = j["topic_concentration"].get<double>();
  if (j.contains("doc_length_mean"))
    spec.doc_length_mean = j["doc_length_mean"].get<double>();
  if (j.contains("sentiment_injection"))
    spec.sentiment_injection = j["sentiment_injection"].get<double>();
  const char* mc_names[5] = {"mood", "conflict", "energy", "sleep_hours",
                             "sleep_quality"};
  if (j.contains("mc")) {
    for (int i = 0; i < 5; ++i)
      if (j["mc"].contains(mc_names[i]))
        spec.mc[i] = parse_mc(j["mc"][mc_names[i]], spec.mc[i]);
  }
  if (j.contains("web")) spec.web = parse_mc(j["web"], spec.web);
  if (j.contains("seed")) spec.seed = j["seed"].get<std::uint64_t>();
  return spec;
}

SynthSpec load_synth_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open synth spec: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_synth_spec(ss.str());
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

std::vector<SurveyRecord> generate(const SynthSpec& spec) {
  if (spec.n_respondents < 1)
    throw ValidationError("synth: n_respondents must be >= 1");
  if (spec.n_topics_true < 1)
    throw ValidationError("synth: n_topics_true must be >= 1");
  if (spec.vocab_size < 2 * spec.n_topics_true)
    throw ValidationError("synth: vocabulary smaller than 2 * n_topics_true");
  if (spec.topic_concentration <= 0.0)
    throw ValidationError("synth: topic_concentration must be positive");
  if (spec.sentiment_injection < 0.0 || spec.sentiment_injection > 1.0)
    throw ValidationError("synth: sentiment_injection outside [0, 1]");
  if (spec.doc_length_mean < 8.0)
    throw ValidationError("synth: doc_length_mean must be >= 8");

  const int T = spec.n_topics_true;
  const int V = spec.vocab_size;
  const auto vocab = planted_vocabulary(V);
  Rng rng(spec.seed);

  // Word weights per topic over its own slice of the vocabulary.
  std::vector<std::vector<double>> topic_words(T);
  std::vector<int> group_start(T + 1);
  for (int t = 0; t <= T; ++t) group_start[t] = t * V / T;
  for (int t = 0; t < T; ++t) {
    int size = group_start[t + 1] - group_start[t];
    topic_words[t] = rng.dirichlet(
        std::vector<double>(size, spec.topic_concentration));
    // Cumulative for sampling.
    for (int i = 1; i < size; ++i) topic_words[t][i] += topic_words[t][i - 1];
  }
  const double doc_topic_alpha = 0.08;  // sharp mixtures, recoverable topics

  auto sample_topic_word = [&](Rng& r, const std::vector<double>& theta_cum) {
    double u = r.uniform();
    int t = 0;
    while (t < T - 1 && theta_cum[t] <= u) ++t;
    const auto& cum = topic_words[t];
    double w = r.uniform() * cum.back();
    int i = static_cast<int>(
        std::lower_bound(cum.begin(), cum.end(), w) - cum.begin());
    if (i >= static_cast<int>(cum.size())) i = static_cast<int>(cum.size()) - 1;
    return vocab[group_start[t] + i];
  };

  std::vector<SurveyRecord> records;
  records.reserve(spec.n_respondents);
  for (int i = 0; i < spec.n_respondents; ++i) {
    double risk = rng.normal();

    auto theta = rng.dirichlet(std::vector<double>(T, doc_topic_alpha));
    for (int t = 1; t < T; ++t) theta[t] += theta[t - 1];

    int length = std::max(8, rng.poisson(spec.doc_length_mean));
    const double p_neg = spec.sentiment_injection * sigmoid(risk);
    const double p_pos = spec.sentiment_injection * sigmoid(-risk);
    std::vector<std::string> tokens;
    tokens.reserve(length);
    for (int w = 0; w < length; ++w) {
      double u = rng.uniform();
      if (u < p_neg) {
        tokens.push_back(negative_pool()[rng.below(negative_pool().size())]);
      } else if (u < p_neg + p_pos) {
        tokens.push_back(positive_pool()[rng.below(positive_pool().size())]);
      } else {
        tokens.push_back(sample_topic_word(rng, theta));
      }
    }

    SurveyRecord r;
    char id[16];
    std::snprintf(id, sizeof(id), "r%05d", i + 1);
    r.respondent_id = id;
    // Four prompt answers: contiguous quarters of the token stream.
    for (int q = 0; q < 4; ++q) {
      std::size_t lo = tokens.size() * q / 4;
      std::size_t hi = tokens.size() * (q + 1) / 4;
      std::string text;
      for (std::size_t k = lo; k < hi; ++k) {
        if (!text.empty()) text += ' ';
        text += tokens[k];
      }
      r.text_answers[q] = text;
    }
    for (int m = 0; m < 5; ++m) r.mc_answers[m] = draw_mc(rng, spec.mc[m], risk);
    r.epds_score = clamp_round(7.0 + 5.0 * risk + rng.normal(), 30);
    r.epds_item10 = r.epds_score / 10;
    for (int m = 0; m < 3; ++m) r.web_items[m] = draw_mc(rng, spec.web, risk);
    r.web_score = r.web_items[0] + r.web_items[1] + r.web_items[2];
    r.cohort = rng.below(2) == 0 ? Cohort::pregnant : Cohort::postpartum;
    validate_record(r, "synth record " + r.respondent_id);
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace riskscreen
