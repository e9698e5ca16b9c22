#include "medslot/frame.hpp"

#include <algorithm>

#include "medslot/errors.hpp"
#include "medslot/tokenize.hpp"

namespace medslot {

namespace {

constexpr std::array<std::string_view, 6> kSlotNames = {"m", "do", "mo", "f", "du", "r"};

bool is_structural_token(std::string_view tok) {
  return tok == kFrameDelimiter || tok == kEmptyFrameToken || slot_group_token(tok).has_value();
}

// Canonical value form: tokenized, lowercased, structural tokens removed.
std::string clean_value(std::string_view raw) {
  std::string out;
  for (const auto& tok : tokenize(raw)) {
    if (is_structural_token(tok)) continue;
    if (!out.empty()) out.push_back(' ');
    out += tok;
  }
  return out;
}

}  // namespace

std::string_view slot_name(SlotLabel label) { return kSlotNames[static_cast<std::size_t>(label)]; }

std::optional<SlotLabel> slot_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kSlotNames.size(); ++i) {
    if (kSlotNames[i] == name) return static_cast<SlotLabel>(i);
  }
  return std::nullopt;
}

std::optional<SlotLabel> slot_group_token(std::string_view token) {
  if (token.size() < 2 || token.back() != '=') return std::nullopt;
  return slot_from_name(token.substr(0, token.size() - 1));
}

SlotFrame::SlotFrame(std::vector<SlotEntry> entries) {
  for (auto& e : entries) add(e.label, e.value);
}

void SlotFrame::add(SlotLabel label, std::string_view value) {
  std::string cleaned = clean_value(value);
  if (cleaned.empty()) return;
  SlotEntry entry{label, std::move(cleaned)};
  auto pos = std::upper_bound(entries_.begin(), entries_.end(), entry);
  entries_.insert(pos, std::move(entry));
}

std::vector<std::string> linearize_frame(const SlotFrame& frame) {
  if (frame.empty()) return {std::string(kEmptyFrameToken)};
  std::vector<std::string> tokens;
  bool first = true;
  for (const auto& entry : frame.entries()) {
    if (!first) tokens.emplace_back(kFrameDelimiter);
    first = false;
    tokens.push_back(std::string(slot_name(entry.label)) + "=");
    for (const auto& tok : tokenize(entry.value)) tokens.push_back(tok);
  }
  return tokens;
}

namespace {

SlotFrame parse_linearized_impl(const std::vector<std::string>& tokens, bool lenient) {
  SlotFrame frame;
  if (tokens.empty() || (tokens.size() == 1 && tokens[0] == kEmptyFrameToken)) return frame;

  std::optional<SlotLabel> current;
  std::string value;
  auto flush = [&] {
    if (current) frame.add(*current, value);
    current.reset();
    value.clear();
  };

  for (const auto& tok : tokens) {
    if (auto label = slot_group_token(tok)) {
      flush();
      current = *label;
    } else if (tok == kFrameDelimiter) {
      if (!current && !lenient) throw DataError("frame delimiter outside a slot group");
      flush();
    } else if (tok == kEmptyFrameToken) {
      if (!lenient) throw DataError("<empty> mixed with slot groups");
    } else {
      if (!current) {
        if (!lenient) throw DataError("value token '" + tok + "' before any slot label");
        continue;
      }
      if (!value.empty()) value.push_back(' ');
      value += tok;
    }
  }
  flush();
  return frame;
}

}  // namespace

SlotFrame parse_linearized(const std::vector<std::string>& tokens) {
  return parse_linearized_impl(tokens, false);
}

SlotFrame parse_linearized_lenient(const std::vector<std::string>& tokens) {
  return parse_linearized_impl(tokens, true);
}

}  // namespace medslot
