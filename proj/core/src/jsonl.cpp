#include "medslot/jsonl.hpp"

#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>

#include "medslot/errors.hpp"

namespace medslot {

using nlohmann::json;

namespace {

json tokens_to_json(const std::vector<std::string>& tokens) { return json(tokens); }

std::vector<std::string> tokens_from_json(const json& j, long line_no, const char* field) {
  if (!j.is_array()) throw JsonlError(line_no, std::string(field) + " is not an array");
  std::vector<std::string> out;
  out.reserve(j.size());
  for (const auto& item : j) {
    if (!item.is_string()) throw JsonlError(line_no, std::string(field) + " contains a non-string");
    out.push_back(item.get<std::string>());
  }
  return out;
}

template <class Fn>
void for_each_record(std::istream& in, Fn&& fn) {
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded()) throw JsonlError(line_no, "invalid JSON");
    fn(j, line_no);
  }
}

}  // namespace

void write_token_pairs_jsonl(std::ostream& out, const std::vector<TokenPair>& pairs) {
  for (const auto& p : pairs) {
    json j{{"doc_id", p.doc_id},
           {"sentence_index", p.sentence_index},
           {"src", tokens_to_json(p.src)},
           {"tgt", tokens_to_json(p.tgt)}};
    out << j.dump() << '\n';
  }
}

std::vector<TokenPair> read_token_pairs_jsonl(std::istream& in) {
  std::vector<TokenPair> pairs;
  for_each_record(in, [&](const json& j, long line_no) {
    if (!j.is_object() || !j.contains("doc_id") || !j.contains("sentence_index") || !j.contains("src") ||
        !j.contains("tgt"))
      throw JsonlError(line_no, "expected {doc_id, sentence_index, src, tgt}");
    if (!j["doc_id"].is_string() || !j["sentence_index"].is_number_integer())
      throw JsonlError(line_no, "bad doc_id or sentence_index");
    TokenPair p;
    p.doc_id = j["doc_id"].get<std::string>();
    p.sentence_index = j["sentence_index"].get<int>();
    p.src = tokens_from_json(j["src"], line_no, "src");
    p.tgt = tokens_from_json(j["tgt"], line_no, "tgt");
    pairs.push_back(std::move(p));
  });
  return pairs;
}

void write_pairs_jsonl(std::ostream& out, const std::vector<SentencePair>& pairs) {
  std::vector<TokenPair> raw;
  raw.reserve(pairs.size());
  for (const auto& p : pairs)
    raw.push_back(TokenPair{p.doc_id, p.sentence_index, p.src_tokens, linearize_frame(p.target)});
  write_token_pairs_jsonl(out, raw);
}

std::vector<SentencePair> read_pairs_jsonl(std::istream& in) {
  std::vector<SentencePair> pairs;
  for (auto& raw : read_token_pairs_jsonl(in)) {
    SentencePair p;
    p.doc_id = std::move(raw.doc_id);
    p.sentence_index = raw.sentence_index;
    p.src_tokens = std::move(raw.src);
    p.target = parse_linearized_lenient(raw.tgt);
    pairs.push_back(std::move(p));
  }
  return pairs;
}

void write_notes_jsonl(std::ostream& out, const std::vector<PatientSentence>& notes) {
  for (const auto& n : notes) {
    json j{{"patient_id", n.patient_id}, {"sentence", tokens_to_json(n.tokens)}};
    out << j.dump() << '\n';
  }
}

std::vector<PatientSentence> read_notes_jsonl(std::istream& in) {
  std::vector<PatientSentence> notes;
  for_each_record(in, [&](const json& j, long line_no) {
    if (!j.is_object() || !j.contains("patient_id") || !j.contains("sentence") || !j["patient_id"].is_string())
      throw JsonlError(line_no, "expected {patient_id, sentence}");
    PatientSentence n;
    n.patient_id = j["patient_id"].get<std::string>();
    n.tokens = tokens_from_json(j["sentence"], line_no, "sentence");
    notes.push_back(std::move(n));
  });
  return notes;
}

}  // namespace medslot
