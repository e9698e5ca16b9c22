#include "medslot/bpe.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "medslot/errors.hpp"

namespace medslot {

namespace {

// Splits a token into UTF-8 code points (bytes for invalid sequences).
std::vector<std::string> utf8_chars(std::string_view token) {
  std::vector<std::string> chars;
  std::size_t i = 0;
  while (i < token.size()) {
    unsigned char c = static_cast<unsigned char>(token[i]);
    std::size_t len = 1;
    if ((c & 0xE0) == 0xC0)
      len = 2;
    else if ((c & 0xF0) == 0xE0)
      len = 3;
    else if ((c & 0xF8) == 0xF0)
      len = 4;
    len = std::min(len, token.size() - i);
    chars.emplace_back(token.substr(i, len));
    i += len;
  }
  return chars;
}

// Initial symbol sequence of a word: characters, last one fused with </w>.
std::vector<std::string> word_symbols(std::string_view word, const std::string& eow) {
  auto symbols = utf8_chars(word);
  if (!symbols.empty()) symbols.back() += eow;
  return symbols;
}

using Pair = std::pair<std::string, std::string>;

}  // namespace

BpeModel learn_bpe(const std::map<std::string, long>& word_counts, int num_merges) {
  BpeModel model;

  std::vector<std::vector<std::string>> words;
  std::vector<long> counts;
  words.reserve(word_counts.size());
  for (const auto& [word, count] : word_counts) {
    if (word.empty() || count <= 0) continue;
    words.push_back(word_symbols(word, model.eow));
    counts.push_back(count);
  }

  std::map<Pair, long> pair_counts;
  std::map<Pair, std::set<std::size_t>> where;
  auto add_word_pairs = [&](std::size_t w, long sign) {
    const auto& sym = words[w];
    for (std::size_t i = 0; i + 1 < sym.size(); ++i) {
      Pair p{sym[i], sym[i + 1]};
      long& c = pair_counts[p];
      c += sign * counts[w];
      if (sign > 0) {
        where[p].insert(w);
      } else if (c <= 0) {
        pair_counts.erase(p);
        where[p].erase(w);
        if (where[p].empty()) where.erase(p);
      }
    }
  };
  for (std::size_t w = 0; w < words.size(); ++w) add_word_pairs(w, +1);

  for (int merge = 0; merge < num_merges; ++merge) {
    const Pair* best = nullptr;
    long best_count = 0;
    for (const auto& [pair, count] : pair_counts) {
      if (count > best_count) {
        best = &pair;
        best_count = count;
      }
      // std::map iterates pairs in lexicographic order, so the first pair
      // seen at any count already wins ties.
    }
    if (best == nullptr || best_count < 2) break;

    Pair chosen = *best;
    std::string merged = chosen.first + chosen.second;
    model.merges.push_back(chosen);

    std::vector<std::size_t> affected(where[chosen].begin(), where[chosen].end());
    for (std::size_t w : affected) {
      add_word_pairs(w, -1);
      auto& sym = words[w];
      std::vector<std::string> next;
      next.reserve(sym.size());
      for (std::size_t i = 0; i < sym.size();) {
        if (i + 1 < sym.size() && sym[i] == chosen.first && sym[i + 1] == chosen.second) {
          next.push_back(merged);
          i += 2;
        } else {
          next.push_back(sym[i]);
          ++i;
        }
      }
      sym = std::move(next);
      add_word_pairs(w, +1);
    }
  }

  for (const auto& sym : words)
    for (const auto& s : sym) model.vocab.insert(s);
  return model;
}

BpeApplier::BpeApplier(const BpeModel& model, const std::set<std::string>* protected_tokens)
    : model_(model), protected_(protected_tokens) {
  for (std::size_t i = 0; i < model.merges.size(); ++i) ranks_.emplace(model.merges[i], i);
}

std::vector<std::string> BpeApplier::encode_token(const std::string& token) {
  if (token.empty()) return {};
  if (protected_ != nullptr && protected_->count(token)) return {token};
  if (auto it = memo_.find(token); it != memo_.end()) return it->second;

  auto symbols = word_symbols(token, model_.eow);
  // Repeatedly apply the highest-priority (lowest-rank) applicable merge;
  // equivalent to applying the merge list in learned order.
  while (symbols.size() > 1) {
    std::size_t best_rank = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = 0; i + 1 < symbols.size(); ++i) {
      auto it = ranks_.find(Pair{symbols[i], symbols[i + 1]});
      if (it != ranks_.end() && it->second < best_rank) best_rank = it->second;
    }
    if (best_rank == std::numeric_limits<std::size_t>::max()) break;

    const Pair& chosen = model_.merges[best_rank];
    std::vector<std::string> next;
    next.reserve(symbols.size());
    for (std::size_t i = 0; i < symbols.size();) {
      if (i + 1 < symbols.size() && symbols[i] == chosen.first && symbols[i + 1] == chosen.second) {
        next.push_back(chosen.first + chosen.second);
        i += 2;
      } else {
        next.push_back(symbols[i]);
        ++i;
      }
    }
    symbols = std::move(next);
  }

  std::vector<std::string> pieces;
  pieces.reserve(symbols.size());
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    std::string piece = symbols[i];
    if (i + 1 == symbols.size() && piece.size() >= model_.eow.size() &&
        piece.compare(piece.size() - model_.eow.size(), model_.eow.size(), model_.eow) == 0)
      piece.erase(piece.size() - model_.eow.size());
    if (i + 1 < symbols.size()) piece += BpeModel::kJoiner;
    if (!piece.empty()) pieces.push_back(std::move(piece));
  }
  memo_.emplace(token, pieces);
  return pieces;
}

std::vector<std::string> BpeApplier::encode(const std::vector<std::string>& tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& tok : tokens) {
    auto pieces = encode_token(tok);
    out.insert(out.end(), pieces.begin(), pieces.end());
  }
  return out;
}

std::vector<std::string> bpe_encode(const BpeModel& model, const std::vector<std::string>& tokens,
                                    const std::set<std::string>* protected_tokens) {
  BpeApplier applier(model, protected_tokens);
  return applier.encode(tokens);
}

std::vector<std::string> bpe_decode(const BpeModel& model, const std::vector<std::string>& subwords,
                                    bool lenient) {
  (void)model;
  const std::string joiner(BpeModel::kJoiner);
  std::vector<std::string> tokens;
  std::string current;
  bool open = false;
  for (const auto& piece : subwords) {
    if (piece.size() >= joiner.size() &&
        piece.compare(piece.size() - joiner.size(), joiner.size(), joiner) == 0) {
      current += piece.substr(0, piece.size() - joiner.size());
      open = true;
    } else {
      current += piece;
      tokens.push_back(std::move(current));
      current.clear();
      open = false;
    }
  }
  if (open) {
    if (!lenient) throw DanglingJoiner("subword sequence ends mid-word");
    if (!current.empty()) tokens.push_back(std::move(current));
  }
  return tokens;
}

void save_merges(std::ostream& out, const BpeModel& model) {
  out << "#bpe-v1 " << model.merges.size() << '\n';
  for (const auto& [left, right] : model.merges) out << left << ' ' << right << '\n';
}

BpeModel load_merges(std::istream& in) {
  BpeModel model;
  std::string line;
  if (!std::getline(in, line)) throw MalformedMergesFile("empty merges file");
  std::istringstream header(line);
  std::string magic;
  std::size_t declared = 0;
  if (!(header >> magic >> declared) || magic != "#bpe-v1")
    throw MalformedMergesFile("bad header: '" + line + "'");

  long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::size_t space = line.find(' ');
    if (space == std::string::npos || space == 0 || space + 1 >= line.size())
      throw MalformedMergesFile("bad merge at line " + std::to_string(line_no) + ": '" + line + "'");
    model.merges.emplace_back(line.substr(0, space), line.substr(space + 1));
  }
  if (model.merges.size() != declared)
    throw MalformedMergesFile("header declares " + std::to_string(declared) + " merges, file has " +
                              std::to_string(model.merges.size()));
  for (const auto& [left, right] : model.merges) {
    model.vocab.insert(left);
    model.vocab.insert(right);
    model.vocab.insert(left + right);
  }
  return model;
}

}  // namespace medslot
