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

#include "riskscreen/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>

#include "json.hpp"
#include "riskscreen/eval.hpp"
#include "riskscreen/lasso.hpp"
#include "riskscreen/lda.hpp"
#include "riskscreen/rng.hpp"
#include "riskscreen/synth.hpp"

namespace riskscreen {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Stage tags for seed derivation; cell tags start at 100.
constexpr std::uint64_t kTagTopics = 1;
constexpr std::uint64_t kTagLdaRefit = 2;
constexpr std::uint64_t kTagSplit = 3;

std::uint64_t cell_tag(FeatureSet set, Outcome outcome) {
  const auto& sets = all_feature_sets();
  auto set_idx = std::find(sets.begin(), sets.end(), set) - sets.begin();
  auto out_idx = outcome == Outcome::epds ? 0 : 1;
  return 100 + static_cast<std::uint64_t>(out_idx) * sets.size() + set_idx;
}

std::string cell_name(FeatureSet set, Outcome outcome) {
  return feature_set_name(set) + "_" + outcome_name(outcome);
}

std::string meta_comment(std::uint64_t config_hash, std::uint64_t seed) {
  return "# config=" + to_hex(config_hash) + " seed=" + std::to_string(seed) +
         " version=" + std::string(kVersion);
}

json meta_object(std::uint64_t config_hash, std::uint64_t seed) {
  return json{{"config", to_hex(config_hash)},
              {"seed", seed},
              {"version", std::string(kVersion)}};
}

std::ofstream create_file(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot create " + path.string());
  return out;
}

void write_json_file(const fs::path& path, const json& j) {
  auto out = create_file(path);
  out << j.dump(2) << "\n";
}

json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in)
    throw ValidationError("missing artifact " + path.string() +
                          " (run the earlier stages first)");
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded())
    throw ValidationError("invalid JSON in " + path.string());
  return j;
}

struct CsvTable {
  std::vector<std::string> comments;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in)
    throw ValidationError("missing artifact " + path.string() +
                          " (run the earlier stages first)");
  CsvTable table;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      table.comments.push_back(line);
      continue;
    }
    auto fields = csv_fields(line);
    if (table.header.empty())
      table.header = std::move(fields);
    else
      table.rows.push_back(std::move(fields));
  }
  if (table.header.empty())
    throw ValidationError(path.string() + ": no header row");
  return table;
}

double parse_num(const std::string& s, const fs::path& path) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ValidationError(path.string() + ": bad number \"" + s + "\"");
  }
}

// Numeric table whose first column is a row label (id or doc index).
struct LabeledMatrix {
  std::vector<std::string> row_labels;
  std::vector<std::string> names;
  Mat values;
};

LabeledMatrix read_labeled_matrix(const fs::path& path) {
  CsvTable table = read_csv(path);
  LabeledMatrix m;
  m.names.assign(table.header.begin() + 1, table.header.end());
  m.values.resize(table.rows.size(), m.names.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    if (table.rows[r].size() != table.header.size())
      throw ValidationError(path.string() + ": ragged row " +
                            std::to_string(r + 1));
    m.row_labels.push_back(table.rows[r][0]);
    for (std::size_t c = 1; c < table.rows[r].size(); ++c)
      m.values(r, c - 1) = parse_num(table.rows[r][c], path);
  }
  return m;
}

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

void require_file(const std::string& path, const char* what) {
  if (!fs::exists(path))
    throw ValidationError(std::string(what) + " not found: " + path);
}

PreprocessOptions preprocess_options(const ExperimentConfig& config) {
  PreprocessOptions opts;
  opts.stopwords = load_stopwords(config.stopwords_path);
  opts.stem = config.stem;
  return opts;
}

std::vector<Document> preprocess_all(const ExperimentConfig& config,
                                     const std::vector<SurveyRecord>& records) {
  PreprocessOptions opts = preprocess_options(config);
  std::vector<Document> docs;
  docs.reserve(records.size());
  for (const auto& r : records) docs.push_back(preprocess(r, opts));
  return docs;
}

// dtm.csv round trip. The shape comment makes trailing empty documents
// recoverable.
void write_dtm_csv(const fs::path& path, const DocTermMatrix& dtm,
                   const std::string& meta) {
  auto out = create_file(path);
  out << meta << "\n";
  out << "# docs=" << dtm.n_docs << " terms=" << dtm.n_terms << "\n";
  out << "doc,term,count\n";
  for (int d = 0; d < dtm.n_docs; ++d)
    for (const auto& [t, c] : dtm.rows[d])
      out << d << ',' << t << ',' << c << "\n";
}

DocTermMatrix read_dtm_csv(const fs::path& path) {
  CsvTable table = read_csv(path);
  DocTermMatrix dtm;
  for (const auto& comment : table.comments) {
    int d, t;
    if (std::sscanf(comment.c_str(), "# docs=%d terms=%d", &d, &t) == 2) {
      dtm.n_docs = d;
      dtm.n_terms = t;
    }
  }
  if (dtm.n_docs <= 0 || dtm.n_terms <= 0)
    throw ValidationError(path.string() + ": missing docs/terms shape comment");
  dtm.rows.resize(dtm.n_docs);
  for (const auto& row : table.rows) {
    if (row.size() != 3)
      throw ValidationError(path.string() + ": expected doc,term,count");
    int d = static_cast<int>(parse_num(row[0], path));
    int t = static_cast<int>(parse_num(row[1], path));
    int c = static_cast<int>(parse_num(row[2], path));
    if (d < 0 || d >= dtm.n_docs || t < 0 || t >= dtm.n_terms || c < 1)
      throw ValidationError(path.string() + ": entry out of range");
    dtm.rows[d].emplace_back(t, c);
  }
  for (auto& row : dtm.rows) std::sort(row.begin(), row.end());
  return dtm;
}

std::vector<std::string> read_vocab_terms(const fs::path& path) {
  std::ifstream in(path);
  if (!in)
    throw ValidationError("missing artifact " + path.string() +
                          " (run preprocess first)");
  std::vector<std::string> terms;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    terms.push_back(tab == std::string::npos ? line : line.substr(0, tab));
  }
  return terms;
}

void write_labeled_matrix(const fs::path& path, const std::string& meta,
                          const std::string& label_col,
                          const std::vector<std::string>& row_labels,
                          const std::vector<std::string>& names,
                          const Mat& values) {
  auto out = create_file(path);
  out << meta << "\n" << label_col;
  for (const auto& n : names) out << ',' << csv_escape(n);
  out << "\n";
  for (int r = 0; r < values.rows(); ++r) {
    out << csv_escape(row_labels[r]);
    for (int c = 0; c < values.cols(); ++c)
      out << ',' << format_double(values(r, c));
    out << "\n";
  }
}

Split read_split_json(const fs::path& path, int n) {
  json j = read_json_file(path);
  Split split;
  split.seed = j.at("seed").get<std::uint64_t>();
  split.train = j.at("train").get<std::vector<int>>();
  split.test = j.at("test").get<std::vector<int>>();
  std::vector<char> seen(n, 0);
  for (int idx : split.train) {
    if (idx < 0 || idx >= n || seen[idx])
      throw ValidationError(path.string() + ": bad train index");
    seen[idx] = 1;
  }
  for (int idx : split.test) {
    if (idx < 0 || idx >= n || seen[idx])
      throw ValidationError(path.string() + ": bad test index");
    seen[idx] = 1;
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end())
    throw ValidationError(path.string() + ": split does not cover all rows");
  return split;
}

std::pair<double, double> mean_sd(const std::vector<double>& v) {
  double mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
  if (v.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (v.size() - 1))};
}

void write_coef_chart(const fs::path& path, const std::string& title,
                      const std::vector<std::pair<std::string, double>>& coefs,
                      const std::string& meta);

}  // namespace

ExperimentConfig load_experiment_config(
    const std::string& path, std::optional<std::uint64_t> seed_override) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config: " + path);
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw ValidationError("config is not a JSON object: " + path);

  static const char* known[] = {
      "corpus",     "format",     "stopwords", "swn_lexicon", "ol_positive",
      "ol_negative", "liwc_dict", "min_df",    "stem",        "k_range",
      "top_m",      "lda",        "lsi_rank",  "test_fraction",
      "feature_sets", "outcomes", "lasso",     "seed"};
  for (const auto& [key, value] : j.items()) {
    if (std::find_if(std::begin(known), std::end(known), [&](const char* k) {
          return key == k;
        }) == std::end(known))
      throw ValidationError("config: unknown key \"" + key + "\"");
  }

  const fs::path dir = fs::path(path).parent_path();
  auto resolve = [&](const std::string& p) {
    if (p.empty() || fs::path(p).is_absolute()) return p;
    return (dir / p).string();
  };

  ExperimentConfig c;
  if (!j.contains("corpus") || !j["corpus"].is_string())
    throw ValidationError("config: missing string field \"corpus\"");
  c.corpus_path = resolve(j["corpus"].get<std::string>());
  std::string format = j.value("format", std::string("jsonl"));
  if (format == "jsonl")
    c.format = CorpusFormat::jsonl;
  else if (format == "csv")
    c.format = CorpusFormat::csv;
  else
    throw ValidationError("config: format must be jsonl|csv");

  const std::string data_dir = RISKSCREEN_DATA_DIR;
  c.stopwords_path = j.contains("stopwords")
                         ? resolve(j["stopwords"].get<std::string>())
                         : data_dir + "/stopwords_english.txt";
  c.swn_path = j.contains("swn_lexicon")
                   ? resolve(j["swn_lexicon"].get<std::string>())
                   : data_dir + "/swn_demo.tsv";
  c.ol_positive_path = j.contains("ol_positive")
                           ? resolve(j["ol_positive"].get<std::string>())
                           : data_dir + "/ol_positive_demo.txt";
  c.ol_negative_path = j.contains("ol_negative")
                           ? resolve(j["ol_negative"].get<std::string>())
                           : data_dir + "/ol_negative_demo.txt";
  c.liwc_path = j.contains("liwc_dict")
                    ? resolve(j["liwc_dict"].get<std::string>())
                    : data_dir + "/liwc_demo.dic";

  c.min_df = j.value("min_df", 2);
  c.stem = j.value("stem", true);
  if (j.contains("k_range")) {
    if (!j["k_range"].is_array() || j["k_range"].size() != 2)
      throw ValidationError("config: k_range must be [min, max]");
    c.k_min = j["k_range"][0].get<int>();
    c.k_max = j["k_range"][1].get<int>();
  }
  c.top_m = j.value("top_m", 5);
  if (j.contains("lda")) {
    const json& l = j["lda"];
    c.lda.alpha = l.value("alpha", c.lda.alpha);
    c.lda.beta = l.value("beta", c.lda.beta);
    c.lda.iterations = l.value("iterations", c.lda.iterations);
    c.lda.burn_in = l.value("burn_in", c.lda.burn_in);
    c.lda.average_samples = l.value("average_samples", c.lda.average_samples);
  }
  if (j.contains("lsi_rank")) {
    if (j["lsi_rank"].is_string()) {
      if (j["lsi_rank"].get<std::string>() != "full")
        throw ValidationError("config: lsi_rank must be \"full\" or an int");
      c.lsi_rank = kFullRank;
    } else {
      c.lsi_rank = j["lsi_rank"].get<int>();
      if (c.lsi_rank < 1)
        throw ValidationError("config: lsi_rank must be >= 1");
    }
  }
  c.test_fraction = j.value("test_fraction", 0.2);
  if (j.contains("feature_sets")) {
    c.feature_sets.clear();
    for (const auto& name : j["feature_sets"])
      c.feature_sets.push_back(parse_feature_set(name.get<std::string>()));
    if (c.feature_sets.empty())
      throw ValidationError("config: feature_sets is empty");
  }
  if (j.contains("outcomes")) {
    c.outcomes.clear();
    for (const auto& name : j["outcomes"])
      c.outcomes.push_back(parse_outcome(name.get<std::string>()));
    if (c.outcomes.empty())
      throw ValidationError("config: outcomes is empty");
  }
  if (j.contains("lasso")) {
    const json& l = j["lasso"];
    c.lasso.replicates = l.value("replicates", c.lasso.replicates);
    c.lasso.folds = l.value("folds", c.lasso.folds);
    c.lasso.lambda_count = l.value("lambda_count", c.lasso.lambda_count);
    c.lasso.lambda_ratio = l.value("lambda_ratio", c.lasso.lambda_ratio);
    c.lasso.tol = l.value("tol", c.lasso.tol);
    c.lasso.max_iter = l.value("max_iter", c.lasso.max_iter);
    c.lasso.shared_lambda = l.value("shared_lambda", c.lasso.shared_lambda);
  }
  c.seed = j.value("seed", std::uint64_t{1});
  if (seed_override) c.seed = *seed_override;

  if (c.min_df < 1) throw ValidationError("config: min_df must be >= 1");
  if (c.k_min < 2 || c.k_max < c.k_min)
    throw ValidationError("config: need 2 <= k_range[0] <= k_range[1]");
  if (c.top_m < 2) throw ValidationError("config: top_m must be >= 2");
  if (!(c.test_fraction > 0.0 && c.test_fraction < 1.0))
    throw ValidationError("config: test_fraction must be in (0,1)");
  if (c.lasso.replicates < 1 || c.lasso.folds < 2)
    throw ValidationError("config: lasso needs replicates >= 1, folds >= 2");
  require_file(c.corpus_path, "corpus");
  require_file(c.stopwords_path, "stopword file");
  require_file(c.swn_path, "scored lexicon");
  require_file(c.ol_positive_path, "positive list");
  require_file(c.ol_negative_path, "negative list");
  require_file(c.liwc_path, "category dictionary");

  // Hash paths as written, not as resolved: identical config files must
  // stamp identical artifacts no matter which directory they run from.
  auto as_given = [&](const char* key) {
    return j.contains(key) ? j[key].get<std::string>()
                           : std::string("default");
  };
  json canonical;
  canonical["corpus"] = j["corpus"].get<std::string>();
  canonical["format"] = format;
  canonical["stopwords"] = as_given("stopwords");
  canonical["swn_lexicon"] = as_given("swn_lexicon");
  canonical["ol_positive"] = as_given("ol_positive");
  canonical["ol_negative"] = as_given("ol_negative");
  canonical["liwc_dict"] = as_given("liwc_dict");
  canonical["min_df"] = c.min_df;
  canonical["stem"] = c.stem;
  canonical["k_range"] = {c.k_min, c.k_max};
  canonical["top_m"] = c.top_m;
  canonical["lda"] = {{"alpha", c.lda.alpha},
                      {"beta", c.lda.beta},
                      {"iterations", c.lda.iterations},
                      {"burn_in", c.lda.burn_in},
                      {"average_samples", c.lda.average_samples}};
  canonical["lsi_rank"] = c.lsi_rank;
  canonical["test_fraction"] = c.test_fraction;
  json sets = json::array();
  for (FeatureSet s : c.feature_sets) sets.push_back(feature_set_name(s));
  canonical["feature_sets"] = sets;
  json outs = json::array();
  for (Outcome o : c.outcomes) outs.push_back(outcome_name(o));
  canonical["outcomes"] = outs;
  canonical["lasso"] = {{"replicates", c.lasso.replicates},
                        {"folds", c.lasso.folds},
                        {"lambda_count", c.lasso.lambda_count},
                        {"lambda_ratio", c.lasso.lambda_ratio},
                        {"tol", c.lasso.tol},
                        {"max_iter", c.lasso.max_iter},
                        {"shared_lambda", c.lasso.shared_lambda}};
  canonical["seed"] = c.seed;
  c.canonical_json = canonical.dump();
  return c;
}

void run_synth(const std::string& spec_path,
               std::optional<std::uint64_t> seed_override,
               const std::string& out_file) {
  SynthSpec spec = load_synth_spec(spec_path);
  if (seed_override) spec.seed = *seed_override;
  auto records = generate(spec);

  json canonical;
  canonical["n_respondents"] = spec.n_respondents;
  canonical["n_topics_true"] = spec.n_topics_true;
  canonical["vocab_size"] = spec.vocab_size;
  canonical["topic_concentration"] = spec.topic_concentration;
  canonical["doc_length_mean"] = spec.doc_length_mean;
  canonical["sentiment_injection"] = spec.sentiment_injection;
  const char* mc_names[5] = {"mood", "conflict", "energy", "sleep_hours",
                             "sleep_quality"};
  for (int i = 0; i < 5; ++i)
    canonical["mc"][mc_names[i]] = {{"base", spec.mc[i].base},
                                    {"loading", spec.mc[i].loading},
                                    {"noise_sd", spec.mc[i].noise_sd},
                                    {"max", spec.mc[i].max_value}};
  canonical["web"] = {{"base", spec.web.base},
                      {"loading", spec.web.loading},
                      {"noise_sd", spec.web.noise_sd},
                      {"max", spec.web.max_value}};
  canonical["seed"] = spec.seed;

  fs::path out_path(out_file);
  if (!out_path.parent_path().empty())
    fs::create_directories(out_path.parent_path());
  auto out = create_file(out_path);
  out << meta_comment(fnv1a64(canonical.dump()), spec.seed) << "\n";
  bool csv = out_path.extension() == ".csv";
  write_corpus(out, records, csv ? CorpusFormat::csv : CorpusFormat::jsonl);
  std::cout << "synth: wrote " << records.size() << " records to " << out_file
            << "\n";
}

void run_preprocess(const ExperimentConfig& config,
                    const std::string& out_dir) {
  fs::create_directories(out_dir);
  auto records = load_corpus(config.corpus_path, config.format);
  if (records.empty())
    throw ValidationError("empty corpus: " + config.corpus_path);
  auto docs = preprocess_all(config, records);
  auto [vocab, dtm] = build_dtm(docs, config.min_df);

  const std::string meta = meta_comment(config.hash(), config.seed);
  {
    auto out = create_file(fs::path(out_dir) / "vocab.txt");
    out << meta << "\n";
    for (int t = 0; t < vocab.size(); ++t)
      out << vocab.terms[t] << '\t' << vocab.document_frequency[t] << "\n";
  }
  write_dtm_csv(fs::path(out_dir) / "dtm.csv", dtm, meta);
  std::cout << "preprocess: " << dtm.n_docs << " documents, " << dtm.n_terms
            << " terms\n";
}

void run_topics(const ExperimentConfig& config, const std::string& out_dir,
                int n_threads) {
  const fs::path dir(out_dir);
  DocTermMatrix dtm = read_dtm_csv(dir / "dtm.csv");
  auto terms = read_vocab_terms(dir / "vocab.txt");
  if (static_cast<int>(terms.size()) != dtm.n_terms)
    throw ValidationError("vocab.txt and dtm.csv disagree on term count");

  LdaConfig base;
  base.alpha = config.lda.alpha;
  base.beta = config.lda.beta;
  base.n_iterations = config.lda.iterations;
  base.burn_in = config.lda.burn_in;
  base.average_samples = config.lda.average_samples;
  base.seed = derive_seed(config.seed, kTagTopics);

  CoherenceReport report =
      select_k(dtm, config.k_min, config.k_max, base, n_threads, config.top_m);

  const std::string meta = meta_comment(config.hash(), config.seed);
  {
    auto out = create_file(dir / "coherence.csv");
    out << meta << "\nk,mean_coherence\n";
    for (const auto& e : report.entries)
      out << e.k << ',' << format_double(e.mean_coherence) << "\n";
  }

  LdaConfig final_config = base;
  final_config.k = report.best_k;
  final_config.seed = derive_seed(config.seed, kTagLdaRefit);
  TopicModel model = fit_lda(dtm, final_config);
  auto coherence = topic_coherence(model, dtm, config.top_m);
  std::cout << "topics: best_k=" << report.best_k
            << " perplexity=" << format_double(perplexity(model, dtm)) << "\n";

  {
    auto out = create_file(dir / "topics.csv");
    out << meta << "\n";
    int n_top = std::min(8, dtm.n_terms);
    out << "topic,coherence";
    for (int i = 1; i <= n_top; ++i) out << ",term_" << i;
    out << "\n";
    for (int k = 0; k < report.best_k; ++k) {
      out << (k + 1) << ',' << format_double(coherence[k]);
      for (int t : top_terms(model, k, n_top)) out << ',' << terms[t];
      out << "\n";
    }
  }

  std::vector<std::string> doc_labels;
  for (int d = 0; d < dtm.n_docs; ++d) doc_labels.push_back(std::to_string(d));
  write_labeled_matrix(dir / "gamma.csv", meta, "doc", doc_labels,
                       lda_feature_names(report.best_k), model.gamma);

  int rank = config.lsi_rank;
  int full = std::min(dtm.n_docs, dtm.n_terms);
  if (rank == kFullRank) rank = full;
  if (rank > full)
    throw ValidationError("lsi_rank " + std::to_string(rank) +
                          " exceeds min(docs, terms) = " + std::to_string(full));
  LsiModel lsi = fit_lsi(dtm, rank);
  write_labeled_matrix(dir / "lsi.csv", meta, "doc", doc_labels,
                       lsi_feature_names(rank), lsi_features(lsi));
  {
    auto out = create_file(dir / "lsi_singular_values.csv");
    out << meta << "\nconcept,sigma\n";
    for (int i = 0; i < lsi.singular_values.size(); ++i)
      out << (i + 1) << ',' << format_double(lsi.singular_values[i]) << "\n";
  }
}

void run_featurize(const ExperimentConfig& config, const std::string& out_dir) {
  const fs::path dir(out_dir);
  auto records = load_corpus(config.corpus_path, config.format);
  if (records.empty())
    throw ValidationError("empty corpus: " + config.corpus_path);
  auto docs = preprocess_all(config, records);

  ScoredLexicon swn = load_scored_lexicon(config.swn_path);
  PolarityLists ol =
      load_polarity_lists(config.ol_positive_path, config.ol_negative_path);
  CategoryDictionary dic = load_category_dictionary(config.liwc_path);

  LabeledMatrix gamma = read_labeled_matrix(dir / "gamma.csv");
  LabeledMatrix lsi = read_labeled_matrix(dir / "lsi.csv");
  if (gamma.values.rows() != static_cast<int>(records.size()) ||
      lsi.values.rows() != static_cast<int>(records.size()))
    throw ValidationError(
        "gamma.csv/lsi.csv row counts do not match the corpus; rerun topics");

  FeatureMatrix sentiment = sentiment_fragment(docs, swn, ol);
  FeatureMatrix liwc = liwc_fragment(docs, dic);
  FeatureMatrix lda_frag{gamma.names, gamma.values, {}, {}};
  FeatureMatrix lsi_frag{lsi.names, lsi.values, {}, {}};
  FeatureMatrix mc = mc_fragment(records);

  std::vector<std::string> ids;
  for (const auto& r : records) ids.push_back(r.respondent_id);
  const std::string meta = meta_comment(config.hash(), config.seed);

  for (FeatureSet set : config.feature_sets) {
    FeatureMatrix fm = assemble(sentiment, liwc, lda_frag, lsi_frag, mc, set);
    write_labeled_matrix(dir / ("features_" + feature_set_name(set) + ".csv"),
                         meta, "id", ids, fm.names, fm.values);
  }

  RiskLabels epds = label(records, Outcome::epds);
  RiskLabels web = label(records, Outcome::web);
  {
    auto out = create_file(dir / "labels.csv");
    out << meta << "\nid,epds,epds_bin,web,web_bin\n";
    for (std::size_t i = 0; i < records.size(); ++i)
      out << csv_escape(ids[i]) << ',' << epds.continuous[i] << ','
          << epds.binary[i] << ',' << web.continuous[i] << ',' << web.binary[i]
          << "\n";
  }

  Split split = make_split(static_cast<int>(records.size()),
                           config.test_fraction,
                           derive_seed(config.seed, kTagSplit));
  json sj;
  sj["meta"] = meta_object(config.hash(), config.seed);
  sj["seed"] = split.seed;
  sj["train"] = split.train;
  sj["test"] = split.test;
  write_json_file(dir / "split.json", sj);
  std::cout << "featurize: " << config.feature_sets.size()
            << " feature sets, split " << split.train.size() << "/"
            << split.test.size() << "\n";
}

void run_train_eval(const ExperimentConfig& config, const std::string& out_dir,
                    int n_threads) {
  const fs::path dir(out_dir);
  LabeledMatrix labels = read_labeled_matrix(dir / "labels.csv");
  const int n = static_cast<int>(labels.values.rows());
  if (labels.names != std::vector<std::string>{"epds", "epds_bin", "web",
                                               "web_bin"})
    throw ValidationError("labels.csv has unexpected columns");
  Split split = read_split_json(dir / "split.json", n);
  const std::string meta = meta_comment(config.hash(), config.seed);

  struct Cell {
    Outcome outcome;
    FeatureSet set;
  };
  std::vector<Cell> plan;
  for (Outcome outcome : config.outcomes)
    for (FeatureSet set : config.feature_sets) plan.push_back({outcome, set});

  // Cells are independent and write disjoint files, so they run in
  // parallel; a lone cell instead gets the threads for its replicates.
  const int cell_threads = plan.size() > 1 ? n_threads : 1;
  const int rep_threads = plan.size() > 1 ? 1 : n_threads;

  std::vector<json> cell_json(plan.size());
  std::vector<std::string> cell_log(plan.size());

  parallel_for(plan.size(), cell_threads, [&](std::size_t ci) {
    const Outcome outcome = plan[ci].outcome;
    const FeatureSet set = plan[ci].set;
    const std::string name = cell_name(set, outcome);

    Vec y_all = labels.values.col(outcome == Outcome::epds ? 0 : 2);
    Vec bin_col = labels.values.col(outcome == Outcome::epds ? 1 : 3);
    std::vector<int> bin_all(n);
    for (int i = 0; i < n; ++i) bin_all[i] = bin_col[i] != 0.0 ? 1 : 0;

    LabeledMatrix raw = read_labeled_matrix(
        dir / ("features_" + feature_set_name(set) + ".csv"));
    if (raw.row_labels != labels.row_labels)
      throw ValidationError("features_" + feature_set_name(set) +
                            ".csv rows do not match labels.csv");

    json cell;
    cell["feature_set"] = feature_set_name(set);
    cell["outcome"] = outcome_name(outcome);
    try {
      FeatureMatrix fm{raw.names, raw.values, {}, {}};
      FeatureMatrix scaled = zscore(fm, split);
      Mat x_train = take_rows(scaled.values, split.train);
      Mat x_test = take_rows(scaled.values, split.test);
      Vec y_train = take(y_all, split.train);
      Vec y_test = take(y_all, split.test);
      std::vector<int> bin_train, bin_test;
      for (int i : split.train) bin_train.push_back(bin_all[i]);
      for (int i : split.test) bin_test.push_back(bin_all[i]);

      CvOptions cv_opts;
      cv_opts.n_replicates = config.lasso.replicates;
      cv_opts.n_folds = config.lasso.folds;
      cv_opts.seed = derive_seed(config.seed, cell_tag(set, outcome));
      cv_opts.n_threads = rep_threads;
      cv_opts.lambda_count = config.lasso.lambda_count;
      cv_opts.lambda_ratio = config.lasso.lambda_ratio;
      cv_opts.shared_lambda = config.lasso.shared_lambda;
      cv_opts.solve.tol = config.lasso.tol;
      cv_opts.solve.max_iter = config.lasso.max_iter;
      CvResult cv =
          cv_replicates(x_train, y_train, bin_train, scaled.names, cv_opts);

      std::vector<double> rep_r2, rep_auc, rep_lambda;
      for (const auto& run : cv.replicates) {
        rep_r2.push_back(run.r2);
        rep_auc.push_back(run.auc);
        rep_lambda.push_back(run.model.lambda_chosen);
      }
      auto [r2_mean, r2_sd] = mean_sd(rep_r2);
      auto [auc_mean, auc_sd] = mean_sd(rep_auc);
      cell["cv_r2_mean"] = r2_mean;
      cell["cv_r2_sd"] = r2_sd;
      cell["cv_auc_mean"] = auc_mean;
      cell["cv_auc_sd"] = auc_sd;

      Vec test_pred = predict(cv.averaged, x_test, scaled.names);
      std::string note;
      try {
        cell["test_r2"] = r_squared(test_pred, y_test);
      } catch (const NumericalError& e) {
        cell["test_r2"] = nullptr;
        note = e.what();
      }
      try {
        cell["test_auc"] = auc(test_pred, bin_test);
        RocCurve roc = roc_curve(test_pred, bin_test);
        auto out = create_file(dir / ("roc_" + name + ".csv"));
        out << meta << "\nfpr,tpr\n";
        for (const auto& [fpr, tpr] : roc.points)
          out << format_double(fpr) << ',' << format_double(tpr) << "\n";
      } catch (const NumericalError& e) {
        cell["test_auc"] = nullptr;
        note = note.empty() ? e.what() : note + "; " + e.what();
      }
      if (!note.empty()) cell["error"] = note;

      json model;
      model["meta"] = meta_object(config.hash(), config.seed);
      model["outcome"] = outcome_name(outcome);
      model["feature_set"] = feature_set_name(set);
      model["intercept"] = cv.averaged.intercept;
      json coef, freq;
      for (std::size_t jx = 0; jx < scaled.names.size(); ++jx) {
        coef[scaled.names[jx]] = cv.averaged.coefficients[jx];
        freq[scaled.names[jx]] = cv.averaged.selection_frequency[jx];
      }
      model["coefficients"] = coef;
      model["selection_frequency"] = freq;
      auto [lam_mean, lam_sd] = mean_sd(rep_lambda);
      model["lambda_summary"] = {
          {"mean", lam_mean},
          {"sd", lam_sd},
          {"min", *std::min_element(rep_lambda.begin(), rep_lambda.end())},
          {"max", *std::max_element(rep_lambda.begin(), rep_lambda.end())}};
      model["seeds"] = {{"base", config.seed},
                        {"cv", cv_opts.seed},
                        {"split", split.seed}};
      write_json_file(dir / ("model_" + name + ".json"), model);

      // Coefficient report, ranked two ways.
      std::vector<int> by_coef(scaled.names.size());
      std::iota(by_coef.begin(), by_coef.end(), 0);
      std::stable_sort(by_coef.begin(), by_coef.end(), [&](int a, int b) {
        return std::abs(cv.averaged.coefficients[a]) >
               std::abs(cv.averaged.coefficients[b]);
      });
      std::vector<int> by_freq(scaled.names.size());
      std::iota(by_freq.begin(), by_freq.end(), 0);
      std::stable_sort(by_freq.begin(), by_freq.end(), [&](int a, int b) {
        return cv.averaged.selection_frequency[a] >
               cv.averaged.selection_frequency[b];
      });
      std::vector<int> freq_rank(scaled.names.size());
      for (std::size_t r = 0; r < by_freq.size(); ++r)
        freq_rank[by_freq[r]] = static_cast<int>(r + 1);
      auto out = create_file(dir / ("coef_" + name + ".csv"));
      out << meta
          << "\nrank_by_abs_coef,name,mean_coefficient,selection_frequency,"
             "rank_by_selection\n";
      for (std::size_t r = 0; r < by_coef.size(); ++r) {
        int jx = by_coef[r];
        out << (r + 1) << ',' << csv_escape(scaled.names[jx]) << ','
            << format_double(cv.averaged.coefficients[jx]) << ','
            << format_double(cv.averaged.selection_frequency[jx]) << ','
            << freq_rank[jx] << "\n";
      }
      cell_log[ci] = "train-eval " + name + ": cv_auc=" +
                     format_double(auc_mean);
    } catch (const NumericalError& e) {
      // One degenerate cell must not sink the run; record and move on.
      for (const char* f : {"cv_r2_mean", "cv_r2_sd", "cv_auc_mean",
                            "cv_auc_sd", "test_r2", "test_auc"})
        cell[f] = nullptr;
      cell["error"] = e.what();
      cell_log[ci] = "train-eval " + name + ": " + e.what();
    }
    cell_json[ci] = std::move(cell);
  });

  for (const auto& line : cell_log) std::cout << line << "\n";

  json mj;
  mj["meta"] = meta_object(config.hash(), config.seed);
  mj["cells"] = cell_json;
  write_json_file(dir / "metrics.json", mj);
}

void run_report(const ExperimentConfig& config, const std::string& out_dir) {
  const fs::path dir(out_dir);
  json metrics = read_json_file(dir / "metrics.json");

  auto fmt = [](const json& v) {
    if (v.is_null()) return std::string("n/a");
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v.get<double>());
    return std::string(buf);
  };

  auto out = create_file(dir / "report.txt");
  out << meta_comment(config.hash(), config.seed) << "\n";
  out << "averaged model performance by feature set\n";
  for (Outcome outcome : config.outcomes) {
    out << "\noutcome: " << outcome_name(outcome) << "\n";
    char header[160];
    std::snprintf(header, sizeof(header), "  %-16s %22s %22s %9s %9s\n",
                  "feature_set", "cv_r2 mean (sd)", "cv_auc mean (sd)",
                  "test_r2", "test_auc");
    out << header;
    for (const auto& cell : metrics["cells"]) {
      if (cell["outcome"] != outcome_name(outcome)) continue;
      std::string cv_r2 = fmt(cell["cv_r2_mean"]);
      if (!cell["cv_r2_sd"].is_null())
        cv_r2 += " (" + fmt(cell["cv_r2_sd"]) + ")";
      std::string cv_auc = fmt(cell["cv_auc_mean"]);
      if (!cell["cv_auc_sd"].is_null())
        cv_auc += " (" + fmt(cell["cv_auc_sd"]) + ")";
      char row[160];
      std::snprintf(row, sizeof(row), "  %-16s %22s %22s %9s %9s\n",
                    cell["feature_set"].get<std::string>().c_str(),
                    cv_r2.c_str(), cv_auc.c_str(),
                    fmt(cell["test_r2"]).c_str(),
                    fmt(cell["test_auc"]).c_str());
      out << row;
      if (cell.contains("error"))
        out << "    note: " << cell["error"].get<std::string>() << "\n";
    }
  }

  for (const auto& cell : metrics["cells"]) {
    if (cell.contains("error") && cell["cv_r2_mean"].is_null()) continue;
    std::string name = cell["feature_set"].get<std::string>() + "_" +
                       cell["outcome"].get<std::string>();
    json model = read_json_file(dir / ("model_" + name + ".json"));
    std::vector<std::pair<std::string, double>> coefs;
    for (const auto& [key, value] : model["coefficients"].items())
      coefs.emplace_back(key, value.get<double>());
    std::stable_sort(coefs.begin(), coefs.end(), [](const auto& a,
                                                    const auto& b) {
      return std::abs(a.second) > std::abs(b.second);
    });
    if (coefs.size() > 20) coefs.resize(20);
    write_coef_chart(dir / ("chart_" + name + ".svg"),
                     "top coefficients: " + name, coefs,
                     meta_comment(config.hash(), config.seed));
  }
  std::cout << "report: wrote report.txt\n";
}

namespace {

void write_coef_chart(const fs::path& path, const std::string& title,
                      const std::vector<std::pair<std::string, double>>& coefs,
                      const std::string& meta) {
  const int row_h = 22;
  const int label_w = 200;
  const int half_w = 220;
  const int top = 40;
  const int width = label_w + 2 * half_w + 80;
  const int height = top + row_h * static_cast<int>(coefs.size()) + 20;
  double max_abs = 1e-12;
  for (const auto& [name, value] : coefs)
    max_abs = std::max(max_abs, std::abs(value));
  const int cx = label_w + half_w;

  auto out = create_file(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\">\n";
  out << "<!-- " << meta.substr(2) << " -->\n";
  out << "<style>text{font-family:monospace;font-size:12px}</style>\n";
  out << "<text x=\"8\" y=\"20\">" << title << "</text>\n";
  out << "<line x1=\"" << cx << "\" y1=\"" << (top - 8) << "\" x2=\"" << cx
      << "\" y2=\"" << (height - 12) << "\" stroke=\"#999\"/>\n";
  for (std::size_t i = 0; i < coefs.size(); ++i) {
    const auto& [name, value] = coefs[i];
    int y = top + static_cast<int>(i) * row_h;
    int bar = static_cast<int>(std::lround(std::abs(value) / max_abs * half_w));
    int x = value < 0 ? cx - bar : cx;
    const char* fill = value < 0 ? "#c0504d" : "#4f81bd";
    out << "<text x=\"8\" y=\"" << (y + 14) << "\">" << name << "</text>\n";
    out << "<rect x=\"" << x << "\" y=\"" << (y + 4) << "\" width=\""
        << std::max(bar, 1) << "\" height=\"14\" fill=\"" << fill << "\"/>\n";
    int tx = value < 0 ? cx - bar - 4 : cx + bar + 4;
    out << "<text x=\"" << tx << "\" y=\"" << (y + 14) << "\""
        << (value < 0 ? " text-anchor=\"end\"" : "") << ">"
        << format_double(value) << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace
}  // namespace riskscreen
