#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace medslot {

// Deterministic rule tokenizer shared by the corpus, matcher and synth paths:
// lowercase, split on whitespace, every punctuation character becomes its own
// token, digit/letter runs stay glued ("20mg" is one token).
std::vector<std::string> tokenize(std::string_view text);

// tokenize() then join with single spaces; canonical form for frame values.
std::string normalize_tokens(std::string_view text);

}  // namespace medslot
