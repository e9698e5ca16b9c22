#pragma once

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace medslot {

// Learned byte-pair-encoding codec. Words end with the `</w>` marker fused
// onto their last character; merges are applied in learned order. Immutable
// after learning and freely shareable across threads.
struct BpeModel {
  std::vector<std::pair<std::string, std::string>> merges;
  std::set<std::string> vocab;
  std::string eow = "</w>";

  static constexpr std::string_view kJoiner = "@@";
};

// Greedy most-frequent-pair merging. Ties break on (left, right) lexicographic
// order; learning stops early once no pair occurs at least twice.
BpeModel learn_bpe(const std::map<std::string, long>& word_counts, int num_merges);

// Splits each token into subword pieces; non-final pieces carry the `@@`
// joiner so decoding is exact. Tokens in `protected_tokens` pass through
// unsplit. Total over any character sequence.
std::vector<std::string> bpe_encode(const BpeModel& model, const std::vector<std::string>& tokens,
                                    const std::set<std::string>* protected_tokens = nullptr);

// Exact inverse of bpe_encode. Throws DanglingJoiner when the sequence ends
// mid-word, unless `lenient` (model output may be truncated).
std::vector<std::string> bpe_decode(const BpeModel& model, const std::vector<std::string>& subwords,
                                    bool lenient = false);

// Merges file: header `#bpe-v1 <num_merges>`, then one `left right` per line.
void save_merges(std::ostream& out, const BpeModel& model);
BpeModel load_merges(std::istream& in);

// Stateful encoder with a per-token memo; results are identical to bpe_encode.
class BpeApplier {
 public:
  explicit BpeApplier(const BpeModel& model, const std::set<std::string>* protected_tokens = nullptr);

  std::vector<std::string> encode_token(const std::string& token);
  std::vector<std::string> encode(const std::vector<std::string>& tokens);

 private:
  const BpeModel& model_;
  const std::set<std::string>* protected_;
  std::map<std::pair<std::string, std::string>, std::size_t> ranks_;
  std::unordered_map<std::string, std::vector<std::string>> memo_;
};

}  // namespace medslot
