#include "medslot/tokenize.hpp"

#include <cctype>

namespace medslot {

namespace {

// Word characters: ASCII alphanumerics plus any non-ASCII byte, so UTF-8
// sequences are never split mid-character.
bool is_word_byte(unsigned char c) { return std::isalnum(c) != 0 || c >= 0x80; }

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (unsigned char c : text) {
    if (std::isspace(c)) {
      if (!current.empty()) {
        tokens.push_back(current);
        current.clear();
      }
    } else if (is_word_byte(c)) {
      current.push_back(static_cast<char>(std::tolower(c)));
    } else {
      if (!current.empty()) {
        tokens.push_back(current);
        current.clear();
      }
      tokens.emplace_back(1, static_cast<char>(c));
    }
  }
  if (!current.empty()) tokens.push_back(current);
  return tokens;
}

std::string normalize_tokens(std::string_view text) {
  std::string out;
  for (const auto& tok : tokenize(text)) {
    if (!out.empty()) out.push_back(' ');
    out += tok;
  }
  return out;
}

}  // namespace medslot
