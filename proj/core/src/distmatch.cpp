#include "medslot/distmatch.hpp"

#include <algorithm>
#include <cctype>
#include <istream>

#include "medslot/errors.hpp"
#include "medslot/tokenize.hpp"

namespace medslot {

namespace {

const char* kBuiltinSynonyms =
#include "synonyms_data.inc"
    ;

std::vector<std::string> lowercase_tokens(const std::vector<std::string>& tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) {
    std::string lower;
    lower.reserve(t.size());
    for (unsigned char c : t) lower.push_back(static_cast<char>(std::tolower(c)));
    out.push_back(std::move(lower));
  }
  return out;
}

bool contains_subsequence(const std::vector<std::string>& haystack, const std::vector<std::string>& needle) {
  if (needle.empty() || needle.size() > haystack.size()) return false;
  for (std::size_t i = 0; i + needle.size() <= haystack.size(); ++i) {
    if (std::equal(needle.begin(), needle.end(), haystack.begin() + static_cast<std::ptrdiff_t>(i))) return true;
  }
  return false;
}

}  // namespace

std::string_view record_field_name(RecordField f) {
  switch (f) {
    case RecordField::drug: return "drug";
    case RecordField::dose: return "dose";
    case RecordField::form: return "form";
    case RecordField::route: return "route";
    case RecordField::frequency: return "frequency";
  }
  return "?";
}

SynonymTable SynonymTable::parse(std::string_view tsv) {
  SynonymTable table;
  std::size_t start = 0;
  while (start <= tsv.size()) {
    std::size_t nl = tsv.find('\n', start);
    std::string_view line = nl == std::string_view::npos ? tsv.substr(start) : tsv.substr(start, nl - start);
    start = nl == std::string_view::npos ? tsv.size() + 1 : nl + 1;
    if (line.empty() || line.front() == '#') continue;

    std::vector<std::vector<std::string>> members;
    std::vector<std::string> keys;
    std::size_t field_start = 0;
    while (field_start <= line.size()) {
      std::size_t tab = line.find('\t', field_start);
      std::string_view phrase =
          tab == std::string_view::npos ? line.substr(field_start) : line.substr(field_start, tab - field_start);
      field_start = tab == std::string_view::npos ? line.size() + 1 : tab + 1;
      std::string key = normalize_tokens(phrase);
      if (key.empty()) continue;
      keys.push_back(key);
      members.push_back(tokenize(phrase));
    }
    if (members.empty()) continue;
    std::size_t id = table.classes_.size();
    table.classes_.push_back(std::move(members));
    for (auto& key : keys) table.class_of_.emplace(std::move(key), id);
  }
  return table;
}

const SynonymTable& SynonymTable::builtin() {
  static const SynonymTable table = SynonymTable::parse(kBuiltinSynonyms);
  return table;
}

std::vector<std::vector<std::string>> SynonymTable::variants(std::string_view phrase) const {
  std::string key = normalize_tokens(phrase);
  if (auto it = class_of_.find(key); it != class_of_.end()) return classes_[it->second];
  if (key.empty()) return {};
  return {tokenize(phrase)};
}

std::pair<int, std::set<RecordField>> score_sentence(const PrescriptionRecord& record,
                                                     const std::vector<std::string>& sentence,
                                                     const SynonymTable& synonyms) {
  const auto hay = lowercase_tokens(sentence);
  std::set<RecordField> matched;

  auto try_plain = [&](RecordField field, const std::string& text) {
    if (text.empty()) return;
    auto needle = tokenize(text);
    if (contains_subsequence(hay, needle)) matched.insert(field);
  };
  auto try_synonyms = [&](RecordField field, const std::string& text) {
    if (text.empty()) return;
    for (const auto& needle : synonyms.variants(text)) {
      if (contains_subsequence(hay, needle)) {
        matched.insert(field);
        return;
      }
    }
  };

  try_plain(RecordField::drug, record.drug);
  std::string dose = record.dose_value;
  if (!record.dose_unit.empty()) dose += dose.empty() ? record.dose_unit : " " + record.dose_unit;
  try_plain(RecordField::dose, dose);
  try_plain(RecordField::form, record.form);
  try_synonyms(RecordField::route, record.route);
  try_synonyms(RecordField::frequency, record.frequency);

  return {static_cast<int>(matched.size()), std::move(matched)};
}

std::vector<MatchResult> match_patient(const std::vector<PrescriptionRecord>& records,
                                       const std::vector<std::vector<std::string>>& sentences, int min_score,
                                       const SynonymTable& synonyms) {
  if (min_score < 1) throw DataError("min_score must be at least 1");

  std::vector<MatchResult> results;
  for (const auto& record : records) {
    int best_score = 0;
    int best_index = -1;
    std::set<RecordField> best_fields;
    for (std::size_t i = 0; i < sentences.size(); ++i) {
      auto [score, fields] = score_sentence(record, sentences[i], synonyms);
      if (score > best_score) {
        best_score = score;
        best_index = static_cast<int>(i);
        best_fields = std::move(fields);
      }
    }
    if (best_index >= 0 && best_score >= min_score) {
      results.push_back(MatchResult{record, sentences[static_cast<std::size_t>(best_index)], best_index, best_score,
                                    std::move(best_fields)});
    }
  }
  return results;
}

std::vector<SentencePair> filter_corpus(const std::vector<MatchResult>& results, int max_src_len, bool dedup) {
  if (max_src_len < 1) throw DataError("max_src_len must be at least 1");

  std::set<std::pair<std::vector<std::string>, std::vector<SlotEntry>>> seen;
  std::vector<SentencePair> pairs;
  for (const auto& result : results) {
    if (static_cast<int>(result.sentence.size()) > max_src_len) continue;

    SlotFrame frame;
    for (RecordField field : result.matched_fields) {
      switch (field) {
        case RecordField::drug: frame.add(SlotLabel::m, result.record.drug); break;
        case RecordField::dose:
          frame.add(SlotLabel::dose, result.record.dose_value + " " + result.record.dose_unit);
          break;
        case RecordField::route: frame.add(SlotLabel::mode, result.record.route); break;
        case RecordField::frequency: frame.add(SlotLabel::freq, result.record.frequency); break;
        case RecordField::form: break;  // no slot carries the form
      }
    }

    auto src = lowercase_tokens(result.sentence);
    if (dedup && !seen.insert({src, frame.entries()}).second) continue;
    pairs.push_back(SentencePair{result.record.patient_id, result.sentence_index, std::move(src), std::move(frame)});
  }
  return pairs;
}

namespace {

std::vector<std::string> parse_csv_row(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c != '\r') {
      field.push_back(c);
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

}  // namespace

std::vector<PrescriptionRecord> read_records_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw CsvError("records file is empty");
  auto header = parse_csv_row(line);
  const std::vector<std::string> expected = {"patient_id", "drug",  "dose_value", "dose_unit",
                                             "form",       "route", "frequency"};
  if (header != expected) throw CsvError("bad records header: '" + line + "'");

  std::vector<PrescriptionRecord> records;
  long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = parse_csv_row(line);
    if (fields.size() != expected.size())
      throw CsvError("line " + std::to_string(line_no) + ": expected " + std::to_string(expected.size()) +
                     " fields, found " + std::to_string(fields.size()));
    PrescriptionRecord r;
    r.patient_id = fields[0];
    r.drug = fields[1];
    r.dose_value = fields[2];
    r.dose_unit = fields[3];
    r.form = fields[4];
    r.route = fields[5];
    r.frequency = fields[6];
    if (r.patient_id.empty() || r.drug.empty())
      throw CsvError("line " + std::to_string(line_no) + ": patient_id and drug must be non-empty");
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace medslot
