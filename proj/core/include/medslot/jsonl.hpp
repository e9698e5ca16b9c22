#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "medslot/corpus.hpp"

namespace medslot {

// Sentence owned by a patient, input to the distant matcher.
struct PatientSentence {
  std::string patient_id;
  std::vector<std::string> tokens;

  friend bool operator==(const PatientSentence&, const PatientSentence&) = default;
};

// JSON-lines pair format: {"doc_id", "sentence_index", "src": [...], "tgt": [...]}.
// The tgt array is the linearized frame.
void write_pairs_jsonl(std::ostream& out, const std::vector<SentencePair>& pairs);
std::vector<SentencePair> read_pairs_jsonl(std::istream& in);

// Raw token-level view of the same file, for pipelines (BPE) that work on
// tokens without interpreting the frame.
struct TokenPair {
  std::string doc_id;
  int sentence_index = 0;
  std::vector<std::string> src;
  std::vector<std::string> tgt;
};
void write_token_pairs_jsonl(std::ostream& out, const std::vector<TokenPair>& pairs);
std::vector<TokenPair> read_token_pairs_jsonl(std::istream& in);

// JSON-lines notes format: {"patient_id", "sentence": [...]}.
void write_notes_jsonl(std::ostream& out, const std::vector<PatientSentence>& notes);
std::vector<PatientSentence> read_notes_jsonl(std::istream& in);

}  // namespace medslot
