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

#ifndef RISKSCREEN_CORPUS_HPP_
#define RISKSCREEN_CORPUS_HPP_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "riskscreen/common.hpp"

namespace riskscreen {

enum class Cohort { pregnant, postpartum };

// One survey response: four journal prompts, five multiple-choice answers
// (mood 0-4, conflict 0-4, energy 0-4, sleep hours 0-12, sleep quality 0-3),
// the two screening scales, and cohort.
struct SurveyRecord {
  std::string respondent_id;
  std::array<std::string, 4> text_answers;
  std::array<int, 5> mc_answers;
  int epds_score = 0;
  int epds_item10 = 0;
  int web_score = 0;  // always the sum of web_items
  std::array<int, 3> web_items = {0, 0, 0};
  Cohort cohort = Cohort::pregnant;
};

// Throws ValidationError naming the offending field; `where` is a file/line
// prefix for messages.
void validate_record(const SurveyRecord& record,
                     const std::string& where = "record");

enum class CorpusFormat { jsonl, csv };

std::vector<SurveyRecord> parse_corpus(std::istream& in, CorpusFormat format);
std::vector<SurveyRecord> load_corpus(const std::string& path,
                                      CorpusFormat format);
void write_corpus(std::ostream& out, const std::vector<SurveyRecord>& records,
                  CorpusFormat format);

struct PreprocessOptions {
  std::unordered_set<std::string> stopwords;
  bool stem = true;
};

std::unordered_set<std::string> load_stopwords(const std::string& path);

struct Document {
  std::string respondent_id;
  std::vector<std::string> tokens;
  std::size_t raw_char_len = 0;
};

// Lowercase, split on anything outside a-z, drop tokens shorter than 2.
std::vector<std::string> tokenize(const std::string& text);

// Joins the four prompts, tokenizes, removes stopwords (before stemming,
// so the list is written in surface forms), then stems.
Document preprocess(const SurveyRecord& record, const PreprocessOptions& opts);

struct Vocabulary {
  std::vector<std::string> terms;  // index -> term, lexicographic
  std::unordered_map<std::string, int> index;
  std::vector<int> document_frequency;

  int size() const { return static_cast<int>(terms.size()); }
  // -1 when the term was filtered out or never seen.
  int id(const std::string& term) const {
    auto it = index.find(term);
    return it == index.end() ? -1 : it->second;
  }
};

// Sparse counts; each row holds (term index, count) sorted by term index.
struct DocTermMatrix {
  int n_docs = 0;
  int n_terms = 0;
  std::vector<std::vector<std::pair<int, int>>> rows;

  int row_sum(int d) const;
  Mat dense() const;  // docs x terms
};

// Vocabulary keeps terms appearing in at least min_df documents, so row sums
// count the retained tokens only (all tokens when min_df = 1).
std::pair<Vocabulary, DocTermMatrix> build_dtm(
    const std::vector<Document>& docs, int min_df);

// CSV plumbing shared by the artifact files: quoted fields absorb commas
// and doubled quotes.
std::vector<std::string> csv_fields(const std::string& line);
std::string csv_escape(const std::string& field);

}  // namespace riskscreen

#endif  // RISKSCREEN_CORPUS_HPP_
