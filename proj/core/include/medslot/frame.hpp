#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace medslot {

// The six medication slots, in canonical order.
enum class SlotLabel { m = 0, dose, mode, freq, dur, reason };

inline constexpr std::array<SlotLabel, 6> kAllSlots = {
    SlotLabel::m,    SlotLabel::dose, SlotLabel::mode,
    SlotLabel::freq, SlotLabel::dur,  SlotLabel::reason};

// Surface form used in annotation files and linearized frames: m do mo f du r.
std::string_view slot_name(SlotLabel label);
std::optional<SlotLabel> slot_from_name(std::string_view name);

struct SlotEntry {
  SlotLabel label;
  std::string value;

  friend bool operator==(const SlotEntry&, const SlotEntry&) = default;
  friend auto operator<=>(const SlotEntry&, const SlotEntry&) = default;
};

// Unordered slot->value mapping attached to one sentence. Duplicate labels are
// allowed (multi-drug sentences); entries are kept sorted by (label, value).
// Values are whitespace-normalized and purged of structural tokens on insert
// so that the linearized form always round-trips.
class SlotFrame {
 public:
  SlotFrame() = default;
  explicit SlotFrame(std::vector<SlotEntry> entries);

  // Normalizes the value; silently ignores values that normalize to nothing.
  void add(SlotLabel label, std::string_view value);

  const std::vector<SlotEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  friend bool operator==(const SlotFrame&, const SlotFrame&) = default;

 private:
  std::vector<SlotEntry> entries_;
};

// Structural tokens of the linearized target side.
inline constexpr std::string_view kFrameDelimiter = ";";
inline constexpr std::string_view kEmptyFrameToken = "<empty>";

// Token that opens a slot group ("m=", "do=", ...), or nullopt.
std::optional<SlotLabel> slot_group_token(std::string_view token);

// Canonical target-side linearization: `m= tylenol ; do= 650 mg`.
// An empty frame becomes the single token `<empty>`.
std::vector<std::string> linearize_frame(const SlotFrame& frame);

// Strict inverse of linearize_frame; throws DataError on malformed input.
SlotFrame parse_linearized(const std::vector<std::string>& tokens);

// Total variant for model output: skips anything that does not fit the
// grammar instead of throwing.
SlotFrame parse_linearized_lenient(const std::vector<std::string>& tokens);

}  // namespace medslot
