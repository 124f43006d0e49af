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

// Pipeline driver: synthesize or ingest a journaling corpus, build text and
// survey features, train replicated cross-validated lasso models, and report
// screening performance. Stages persist plain CSV/JSON artifacts so each can
// be rerun or inspected on its own.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "riskscreen/common.hpp"
#include "riskscreen/pipeline.hpp"

namespace {

// 0 success, 2 bad input or config, 3 numerical failure.
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "riskscreen: psychosocial risk screening from journal text and survey "
      "answers"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out;
  std::string spec_path;
  std::optional<std::uint64_t> seed;
  int threads = 1;

  app.add_option("--config", config_path, "experiment config (JSON)");
  app.add_option("--seed", seed, "override the configured base seed");
  app.add_option("--out", out,
                 "output directory (for synth: the corpus file to write)");
  app.add_option("--threads", threads, "worker threads")
      ->check(CLI::PositiveNumber);
  app.set_version_flag("--version", std::string(riskscreen::kVersion));

  auto* synth =
      app.add_subcommand("synth", "generate a synthetic survey corpus");
  synth->add_option("--spec", spec_path, "generator spec (JSON)");
  auto* preprocess = app.add_subcommand(
      "preprocess", "tokenize, stem, and build the document-term matrix");
  auto* topics = app.add_subcommand(
      "topics", "sweep topic counts by coherence, fit LDA and LSI");
  auto* featurize = app.add_subcommand(
      "featurize", "assemble feature matrices, labels, and the train/test "
                   "split");
  auto* train_eval = app.add_subcommand(
      "train-eval", "replicated cross-validated lasso per feature set and "
                    "outcome");
  auto* report = app.add_subcommand(
      "report", "summary tables and coefficient charts from saved metrics");
  for (auto* sub : {synth, preprocess, topics, featurize, train_eval, report})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (synth->parsed()) {
      if (spec_path.empty())
        throw riskscreen::ValidationError("synth requires --spec");
      if (out.empty())
        throw riskscreen::ValidationError("synth requires --out <file>");
      riskscreen::run_synth(spec_path, seed, out);
      return 0;
    }

    if (config_path.empty())
      throw riskscreen::ValidationError("this subcommand requires --config");
    if (out.empty())
      throw riskscreen::ValidationError("this subcommand requires --out <dir>");
    riskscreen::ExperimentConfig config =
        riskscreen::load_experiment_config(config_path, seed);

    if (preprocess->parsed()) {
      riskscreen::run_preprocess(config, out);
    } else if (topics->parsed()) {
      riskscreen::run_topics(config, out, threads);
    } else if (featurize->parsed()) {
      riskscreen::run_featurize(config, out);
    } else if (train_eval->parsed()) {
      riskscreen::run_train_eval(config, out, threads);
    } else if (report->parsed()) {
      riskscreen::run_report(config, out);
    }
    return 0;
  } catch (const riskscreen::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const riskscreen::NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitNumerical;
  }
}
