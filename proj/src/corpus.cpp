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

#include "riskscreen/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"
#include "riskscreen/stemmer.hpp"

namespace riskscreen {
namespace {

using nlohmann::json;

const char* kCsvHeader =
    "id,text1,text2,text3,text4,mood,conflict,energy,sleep_hours,"
    "sleep_quality,epds,epds_item10,web1,web2,web3,cohort";

void check_range(int value, int lo, int hi, const char* field,
                 const std::string& where) {
  if (value < lo || value > hi)
    throw ValidationError(where + ": " + field + "=" + std::to_string(value) +
                          " outside [" + std::to_string(lo) + "," +
                          std::to_string(hi) + "]");
}

Cohort parse_cohort(const std::string& s, const std::string& where) {
  if (s == "pregnant") return Cohort::pregnant;
  if (s == "postpartum") return Cohort::postpartum;
  throw ValidationError(where + ": cohort must be pregnant|postpartum, got \"" +
                        s + "\"");
}

int get_int(const json& j, const char* field, const std::string& where) {
  if (!j.contains(field))
    throw ValidationError(where + ": missing field " + field);
  if (!j[field].is_number_integer())
    throw ValidationError(where + ": field " + field + " must be an integer");
  return j[field].get<int>();
}

SurveyRecord record_from_json(const json& j, const std::string& where) {
  SurveyRecord r;
  if (!j.contains("id") || !j["id"].is_string())
    throw ValidationError(where + ": missing string field id");
  r.respondent_id = j["id"].get<std::string>();
  if (!j.contains("texts") || !j["texts"].is_array() || j["texts"].size() != 4)
    throw ValidationError(where + ": texts must be an array of 4 strings");
  for (int i = 0; i < 4; ++i) {
    if (!j["texts"][i].is_string())
      throw ValidationError(where + ": texts[" + std::to_string(i) +
                            "] must be a string");
    r.text_answers[i] = j["texts"][i].get<std::string>();
  }
  if (!j.contains("mc") || !j["mc"].is_array() || j["mc"].size() != 5)
    throw ValidationError(where + ": mc must be an array of 5 integers");
  for (int i = 0; i < 5; ++i) r.mc_answers[i] = j["mc"][i].get<int>();
  r.epds_score = get_int(j, "epds", where);
  r.epds_item10 = get_int(j, "epds_item10", where);
  if (!j.contains("web_items") || !j["web_items"].is_array() ||
      j["web_items"].size() != 3)
    throw ValidationError(where + ": web_items must be an array of 3 integers");
  for (int i = 0; i < 3; ++i) r.web_items[i] = j["web_items"][i].get<int>();
  r.web_score = r.web_items[0] + r.web_items[1] + r.web_items[2];
  if (!j.contains("cohort") || !j["cohort"].is_string())
    throw ValidationError(where + ": missing string field cohort");
  r.cohort = parse_cohort(j["cohort"].get<std::string>(), where);
  return r;
}

// One CSV line -> fields. Quotes cover commas and doubled quotes; embedded
// newlines are not supported (JSONL carries free text exactly).
std::vector<std::string> split_csv(const std::string& line,
                                   const std::string& where) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) throw ValidationError(where + ": unterminated quote");
  fields.push_back(cur);
  return fields;
}

int to_int(const std::string& s, const char* field, const std::string& where) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ValidationError(where + ": field " + field + " is not an integer: \"" +
                          s + "\"");
  }
}

SurveyRecord record_from_csv(const std::vector<std::string>& f,
                      const std::string& where) {
  if (f.size() != 16)
    throw ValidationError(where + ": expected 16 columns, got " +
                          std::to_string(f.size()));
  SurveyRecord r;
  r.respondent_id = f[0];
  for (int i = 0; i < 4; ++i) r.text_answers[i] = f[1 + i];
  const char* mc_names[5] = {"mood", "conflict", "energy", "sleep_hours",
                             "sleep_quality"};
  for (int i = 0; i < 5; ++i) r.mc_answers[i] = to_int(f[5 + i], mc_names[i], where);
  r.epds_score = to_int(f[10], "epds", where);
  r.epds_item10 = to_int(f[11], "epds_item10", where);
  for (int i = 0; i < 3; ++i) r.web_items[i] = to_int(f[12 + i], "web_items", where);
  r.web_score = r.web_items[0] + r.web_items[1] + r.web_items[2];
  r.cohort = parse_cohort(f[15], where);
  return r;
}

std::string quote_csv(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

void validate_record(const SurveyRecord& r, const std::string& where) {
  if (r.respondent_id.empty())
    throw ValidationError(where + ": empty respondent id");
  const int mc_max[5] = {4, 4, 4, 12, 3};
  const char* mc_names[5] = {"mood", "conflict", "energy", "sleep_hours",
                             "sleep_quality"};
  for (int i = 0; i < 5; ++i)
    check_range(r.mc_answers[i], 0, mc_max[i], mc_names[i], where);
  check_range(r.epds_score, 0, 30, "epds", where);
  check_range(r.epds_item10, 0, 3, "epds_item10", where);
  for (int i = 0; i < 3; ++i)
    check_range(r.web_items[i], 0, 3, "web_items", where);
  if (r.web_score != r.web_items[0] + r.web_items[1] + r.web_items[2])
    throw ValidationError(where + ": web_score does not equal sum of items");
}

std::vector<SurveyRecord> parse_corpus(std::istream& in, CorpusFormat format) {
  std::vector<SurveyRecord> records;
  std::string line;
  int line_no = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::string where = "line " + std::to_string(line_no);
    if (format == CorpusFormat::jsonl) {
      json j = json::parse(line, nullptr, false);
      if (j.is_discarded())
        throw ValidationError(where + ": invalid JSON");
      records.push_back(record_from_json(j, where));
    } else {
      auto fields = split_csv(line, where);
      if (!saw_header && !fields.empty() && fields[0] == "id") {
        saw_header = true;
        continue;
      }
      records.push_back(record_from_csv(fields, where));
    }
    validate_record(records.back(), where);
  }
  return records;
}

std::vector<SurveyRecord> load_corpus(const std::string& path,
                                      CorpusFormat format) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open corpus file: " + path);
  try {
    return parse_corpus(in, format);
  } catch (const ValidationError& e) {
    throw ValidationError(path + ", " + e.what());
  }
}

void write_corpus(std::ostream& out, const std::vector<SurveyRecord>& records,
                  CorpusFormat format) {
  if (format == CorpusFormat::csv) out << kCsvHeader << "\n";
  for (const auto& r : records) {
    const char* cohort =
        r.cohort == Cohort::pregnant ? "pregnant" : "postpartum";
    if (format == CorpusFormat::jsonl) {
      nlohmann::ordered_json j;
      j["id"] = r.respondent_id;
      j["texts"] = r.text_answers;
      j["mc"] = r.mc_answers;
      j["epds"] = r.epds_score;
      j["epds_item10"] = r.epds_item10;
      j["web_items"] = r.web_items;
      j["cohort"] = cohort;
      out << j.dump() << "\n";
    } else {
      out << quote_csv(r.respondent_id);
      for (const auto& t : r.text_answers) out << ',' << quote_csv(t);
      for (int v : r.mc_answers) out << ',' << v;
      out << ',' << r.epds_score << ',' << r.epds_item10;
      for (int v : r.web_items) out << ',' << v;
      out << ',' << cohort << "\n";
    }
  }
}

std::vector<std::string> csv_fields(const std::string& line) {
  return split_csv(line, "csv");
}

std::string csv_escape(const std::string& field) {
  bool needs = field.empty() || field[0] == '#';
  for (char c : field)
    if (c == ',' || c == '"' || c == '\n') needs = true;
  return needs ? quote_csv(field) : field;
}

std::unordered_set<std::string> load_stopwords(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open stopword file: " + path);
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto end = line.find('#');
    if (end != std::string::npos) line = line.substr(0, end);
    std::istringstream ss(line);
    std::string w;
    while (ss >> w) words.insert(w);
  }
  return words;
}

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char ch : text) {
    char c = ch;
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    if (c >= 'a' && c <= 'z') {
      cur += c;
    } else if (!cur.empty()) {
      if (cur.size() >= 2) tokens.push_back(cur);
      cur.clear();
    }
  }
  if (cur.size() >= 2) tokens.push_back(cur);
  return tokens;
}

Document preprocess(const SurveyRecord& record, const PreprocessOptions& opts) {
  std::string joined;
  for (const auto& t : record.text_answers) {
    if (!joined.empty()) joined += ' ';
    joined += t;
  }
  Document doc;
  doc.respondent_id = record.respondent_id;
  doc.raw_char_len = joined.size();
  for (auto& tok : tokenize(joined)) {
    if (opts.stopwords.count(tok)) continue;
    doc.tokens.push_back(opts.stem ? porter_stem(tok) : tok);
  }
  return doc;
}

int DocTermMatrix::row_sum(int d) const {
  int s = 0;
  for (const auto& [t, c] : rows[d]) s += c;
  return s;
}

Mat DocTermMatrix::dense() const {
  Mat m = Mat::Zero(n_docs, n_terms);
  for (int d = 0; d < n_docs; ++d)
    for (const auto& [t, c] : rows[d]) m(d, t) = c;
  return m;
}

std::pair<Vocabulary, DocTermMatrix> build_dtm(
    const std::vector<Document>& docs, int min_df) {
  if (docs.empty()) throw ValidationError("build_dtm: no documents");
  if (min_df < 1) throw ValidationError("build_dtm: min_df must be >= 1");

  // Ordered map gives the lexicographic term order directly.
  std::map<std::string, int> df;
  for (const auto& doc : docs) {
    std::map<std::string, int> seen;
    for (const auto& t : doc.tokens) seen[t] = 1;
    for (const auto& [t, one] : seen) df[t] += one;
  }

  Vocabulary vocab;
  for (const auto& [term, count] : df) {
    if (count < min_df) continue;
    vocab.index.emplace(term, static_cast<int>(vocab.terms.size()));
    vocab.terms.push_back(term);
    vocab.document_frequency.push_back(count);
  }
  if (vocab.terms.empty())
    throw ValidationError("build_dtm: no terms survive min_df=" +
                          std::to_string(min_df));

  DocTermMatrix dtm;
  dtm.n_docs = static_cast<int>(docs.size());
  dtm.n_terms = vocab.size();
  dtm.rows.resize(docs.size());
  for (std::size_t d = 0; d < docs.size(); ++d) {
    std::map<int, int> counts;
    for (const auto& t : docs[d].tokens) {
      int id = vocab.id(t);
      if (id >= 0) counts[id]++;
    }
    dtm.rows[d].assign(counts.begin(), counts.end());
  }
  return {std::move(vocab), std::move(dtm)};
}

}  // namespace riskscreen
