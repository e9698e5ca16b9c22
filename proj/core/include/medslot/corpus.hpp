#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "medslot/frame.hpp"

namespace medslot {

// Position inside a document: 1-based line, 0-based character column.
struct TextPos {
  int line = 0;
  int col = 0;

  friend bool operator==(const TextPos&, const TextPos&) = default;
  friend auto operator<=>(const TextPos&, const TextPos&) = default;
};

// One slot occurrence with inclusive start/end character offsets.
struct SlotSpan {
  SlotLabel label;
  std::string value;
  TextPos start;
  TextPos end;

  friend bool operator==(const SlotSpan&, const SlotSpan&) = default;
};

// One annotation line: the slots of a single medication mention.
struct MedicationEvent {
  std::vector<SlotSpan> slots;

  friend bool operator==(const MedicationEvent&, const MedicationEvent&) = default;
};

struct ClinicalDocument {
  std::string doc_id;
  std::vector<std::string> lines;  // raw, byte-exact
};

// The atomic training/eval unit: tokenized sentence plus unaligned frame.
struct SentencePair {
  std::string doc_id;
  int sentence_index = 0;
  std::vector<std::string> src_tokens;
  SlotFrame target;

  friend bool operator==(const SentencePair&, const SentencePair&) = default;
};

// Contiguous piece of one document line covered by a sentence. Columns are
// half-open [begin, end).
struct LinePiece {
  int line = 0;
  int begin = 0;
  int end = 0;

  friend bool operator==(const LinePiece&, const LinePiece&) = default;
};

struct Sentence {
  int index = 0;
  std::vector<LinePiece> pieces;
  std::vector<std::string> tokens;

  int first_line() const { return pieces.empty() ? 0 : pieces.front().line; }
  int last_line() const { return pieces.empty() ? 0 : pieces.back().line; }
};

// Parses an annotation file: one medication event per line, entries separated
// by `||`, entry = `label="value" L:C L:C` or `label="nm"`. Entries whose
// value is "nm" are dropped. Throws MalformedEntry / OffsetOrderError.
std::vector<MedicationEvent> parse_annotation_file(std::string_view text);

// Rule-based clinical sentence segmentation: terminal punctuation with an
// abbreviation guard, blank-line boundaries, list-item boundaries. Every
// non-whitespace character lands in exactly one sentence.
std::vector<Sentence> segment_sentences(const ClinicalDocument& doc);

// Assigns each slot span to the sentence containing its start offset and
// drops all positional information. Every sentence yields one pair; sentences
// without slots get an empty frame. Throws OffsetOutOfRange.
std::vector<SentencePair> align_events_to_sentences(const ClinicalDocument& doc,
                                                    const std::vector<MedicationEvent>& events);

}  // namespace medslot
