#pragma once

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "medslot/corpus.hpp"

namespace medslot {

// Structured drug-order row used for distant supervision.
struct PrescriptionRecord {
  std::string patient_id;
  std::string drug;
  std::string dose_value;
  std::string dose_unit;
  std::string form;       // may be empty
  std::string route;      // may be empty
  std::string frequency;  // may be empty

  friend bool operator==(const PrescriptionRecord&, const PrescriptionRecord&) = default;
};

// Scorable record fields. Dose value and unit count as one field.
enum class RecordField { drug, dose, form, route, frequency };

std::string_view record_field_name(RecordField f);

struct MatchResult {
  PrescriptionRecord record;
  std::vector<std::string> sentence;
  int sentence_index = 0;
  int score = 0;
  std::set<RecordField> matched_fields;
};

// Equivalence classes of route/frequency phrasings, loaded from a tab-
// separated data file (one class per line, members tab-separated).
class SynonymTable {
 public:
  static SynonymTable parse(std::string_view tsv);
  static const SynonymTable& builtin();

  // Token sequences the phrase may match as; always includes the phrase's
  // own tokenization.
  std::vector<std::vector<std::string>> variants(std::string_view phrase) const;

  std::size_t class_count() const { return classes_.size(); }

 private:
  std::map<std::string, std::size_t> class_of_;
  std::vector<std::vector<std::vector<std::string>>> classes_;
};

// One point per record field whose pattern occurs whole-token-anchored in the
// sentence; case-insensitive, with route/frequency synonym expansion.
std::pair<int, std::set<RecordField>> score_sentence(const PrescriptionRecord& record,
                                                     const std::vector<std::string>& sentence,
                                                     const SynonymTable& synonyms = SynonymTable::builtin());

// For each record picks the highest-scoring sentence (ties: earliest) and
// emits it when the score reaches min_score. Records matching nothing are
// dropped. All records must belong to one patient.
std::vector<MatchResult> match_patient(const std::vector<PrescriptionRecord>& records,
                                       const std::vector<std::vector<std::string>>& sentences, int min_score,
                                       const SynonymTable& synonyms = SynonymTable::builtin());

// Drops sentences longer than max_src_len, optionally removes exact duplicate
// (sentence, frame) pairs, and converts survivors to SentencePairs. Matched
// fields map drug->m, dose->do, route->mo, frequency->f.
std::vector<SentencePair> filter_corpus(const std::vector<MatchResult>& results, int max_src_len, bool dedup);

// CSV with header patient_id,drug,dose_value,dose_unit,form,route,frequency.
std::vector<PrescriptionRecord> read_records_csv(std::istream& in);

}  // namespace medslot
