#include "medslot/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "medslot/errors.hpp"
#include "medslot/tokenize.hpp"

namespace medslot {

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    std::string_view line = text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = nl + 1;
  }
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Parses `L:C` at position i, advancing i past it.
bool parse_pos(std::string_view s, std::size_t& i, TextPos& out) {
  std::size_t start = i;
  long line = 0, col = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) line = line * 10 + (s[i++] - '0');
  if (i == start || i >= s.size() || s[i] != ':') return false;
  ++i;
  std::size_t col_start = i;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) col = col * 10 + (s[i++] - '0');
  if (i == col_start) return false;
  out = TextPos{static_cast<int>(line), static_cast<int>(col)};
  return true;
}

}  // namespace

std::vector<MedicationEvent> parse_annotation_file(std::string_view text) {
  std::vector<MedicationEvent> events;
  int line_no = 0;
  for (std::string_view raw_line : split_lines(text)) {
    ++line_no;
    if (trim(raw_line).empty()) continue;

    MedicationEvent event;
    std::size_t entry_start = 0;
    std::string_view line = raw_line;
    while (entry_start <= line.size()) {
      std::size_t sep = line.find("||", entry_start);
      std::string_view entry =
          trim(sep == std::string_view::npos ? line.substr(entry_start) : line.substr(entry_start, sep - entry_start));
      entry_start = sep == std::string_view::npos ? line.size() + 1 : sep + 2;

      if (entry.empty()) throw MalformedEntry(line_no, "empty entry");

      std::size_t eq = entry.find('=');
      if (eq == std::string_view::npos) throw MalformedEntry(line_no, "missing '='");
      auto label = slot_from_name(entry.substr(0, eq));
      if (!label) throw MalformedEntry(line_no, "unknown slot label '" + std::string(entry.substr(0, eq)) + "'");

      std::size_t i = eq + 1;
      if (i >= entry.size() || entry[i] != '"') throw MalformedEntry(line_no, "value is not quoted");
      ++i;
      std::size_t close = entry.find('"', i);
      if (close == std::string_view::npos) throw MalformedEntry(line_no, "unterminated quoted value");
      std::string value(entry.substr(i, close - i));
      i = close + 1;

      while (i < entry.size() && std::isspace(static_cast<unsigned char>(entry[i]))) ++i;
      bool has_offsets = i < entry.size();

      TextPos start{}, end{};
      if (has_offsets) {
        if (!parse_pos(entry, i, start)) throw MalformedEntry(line_no, "bad start offset");
        while (i < entry.size() && std::isspace(static_cast<unsigned char>(entry[i]))) ++i;
        if (!parse_pos(entry, i, end)) throw MalformedEntry(line_no, "bad end offset");
        while (i < entry.size() && std::isspace(static_cast<unsigned char>(entry[i]))) ++i;
        if (i != entry.size()) throw MalformedEntry(line_no, "trailing garbage after offsets");
        if (end < start) {
          std::ostringstream os;
          os << start.line << ":" << start.col << " > " << end.line << ":" << end.col;
          throw OffsetOrderError(line_no, os.str());
        }
      }

      if (trim(value) == "nm") {
        // "not mentioned" entries carry no information.
      } else if (!has_offsets) {
        throw MalformedEntry(line_no, "missing offsets for value '" + value + "'");
      } else if (trim(value).empty()) {
        throw MalformedEntry(line_no, "empty value");
      } else {
        event.slots.push_back(SlotSpan{*label, std::string(trim(value)), start, end});
      }

      if (sep == std::string_view::npos) break;
    }
    events.push_back(std::move(event));
  }
  return events;
}

namespace {

// Abbreviations whose trailing period does not end a sentence. Single letters
// are also guarded, which covers dotted forms like q.d. and b.i.d.
const std::set<std::string, std::less<>>& abbreviation_guard() {
  static const std::set<std::string, std::less<>> guard = {
      "dr", "mr", "mrs", "ms", "prof", "st", "vs", "etc", "eg", "ie",
      "fig", "dept", "approx", "inc", "jr", "sr", "rev", "hosp"};
  return guard;
}

bool is_guarded_abbreviation(std::string_view line, std::size_t period_idx) {
  std::size_t end = period_idx;
  std::size_t begin = end;
  while (begin > 0 && std::isalpha(static_cast<unsigned char>(line[begin - 1]))) --begin;
  if (begin == end) return false;  // no word before the period
  std::string word;
  for (std::size_t k = begin; k < end; ++k)
    word.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(line[k]))));
  if (word.size() == 1) return true;
  return abbreviation_guard().count(word) > 0;
}

bool is_sentence_terminal(char c) { return c == '.' || c == '!' || c == '?'; }

// List items start a new sentence: bullets or short enumerators like "1." "2)".
bool is_list_item_start(std::string_view line) {
  std::size_t i = 0;
  while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
  if (i >= line.size()) return false;
  char c = line[i];
  if (c == '-' || c == '*' || c == '+') return i + 1 < line.size() && std::isspace(static_cast<unsigned char>(line[i + 1]));
  std::size_t d = i;
  while (d < line.size() && std::isdigit(static_cast<unsigned char>(line[d]))) ++d;
  if (d > i && d - i <= 2 && d < line.size() && (line[d] == '.' || line[d] == ')'))
    return d + 1 >= line.size() || std::isspace(static_cast<unsigned char>(line[d + 1]));
  return false;
}

struct SentenceBuilder {
  std::vector<Sentence> sentences;
  Sentence current;
  std::string current_text;

  void extend(int line, int col) {
    if (!current.pieces.empty() && current.pieces.back().line == line) {
      current.pieces.back().end = col + 1;
    } else {
      if (!current_text.empty()) current_text.push_back(' ');
      current.pieces.push_back(LinePiece{line, col, col + 1});
    }
  }

  void append_char(char c) { current_text.push_back(c); }

  void flush() {
    if (current.pieces.empty()) return;
    current.index = static_cast<int>(sentences.size());
    current.tokens = tokenize(current_text);
    sentences.push_back(std::move(current));
    current = Sentence{};
    current_text.clear();
  }
};

}  // namespace

std::vector<Sentence> segment_sentences(const ClinicalDocument& doc) {
  SentenceBuilder builder;
  for (std::size_t li = 0; li < doc.lines.size(); ++li) {
    const std::string& line = doc.lines[li];
    const int line_no = static_cast<int>(li) + 1;

    bool blank = trim(line).empty();
    if (blank) {
      builder.flush();
      continue;
    }
    if (is_list_item_start(line)) builder.flush();

    for (std::size_t col = 0; col < line.size(); ++col) {
      char c = line[col];
      if (std::isspace(static_cast<unsigned char>(c))) {
        if (!builder.current.pieces.empty() && builder.current.pieces.back().line == line_no &&
            builder.current.pieces.back().end == static_cast<int>(col)) {
          // Interior whitespace stays inside the current piece.
          builder.current.pieces.back().end = static_cast<int>(col) + 1;
          builder.append_char(' ');
        }
        continue;
      }
      builder.extend(line_no, static_cast<int>(col));
      builder.append_char(c);

      bool at_eol_ws = col + 1 >= line.size() || std::isspace(static_cast<unsigned char>(line[col + 1]));
      if (is_sentence_terminal(c) && at_eol_ws && !(c == '.' && is_guarded_abbreviation(line, col))) {
        builder.flush();
      }
    }
    // Trim trailing whitespace that may have been absorbed into the piece.
    if (!builder.current.pieces.empty() && builder.current.pieces.back().line == line_no) {
      auto& piece = builder.current.pieces.back();
      while (piece.end > piece.begin &&
             std::isspace(static_cast<unsigned char>(line[static_cast<std::size_t>(piece.end) - 1])))
        --piece.end;
      while (!builder.current_text.empty() && builder.current_text.back() == ' ') builder.current_text.pop_back();
    }
  }
  builder.flush();
  return builder.sentences;
}

std::vector<SentencePair> align_events_to_sentences(const ClinicalDocument& doc,
                                                    const std::vector<MedicationEvent>& events) {
  const auto sentences = segment_sentences(doc);

  auto validate_pos = [&](const TextPos& pos) {
    if (pos.line < 1 || pos.line > static_cast<int>(doc.lines.size()))
      throw OffsetOutOfRange("line " + std::to_string(pos.line) + " outside document " + doc.doc_id);
    if (pos.col < 0 || pos.col >= static_cast<int>(doc.lines[static_cast<std::size_t>(pos.line) - 1].size()))
      throw OffsetOutOfRange("column " + std::to_string(pos.col) + " outside line " + std::to_string(pos.line) +
                             " of document " + doc.doc_id);
  };

  auto sentence_at = [&](const TextPos& pos) -> int {
    validate_pos(pos);
    const Sentence* following = nullptr;
    for (const auto& sent : sentences) {
      for (const auto& piece : sent.pieces) {
        if (piece.line != pos.line) continue;
        if (pos.col >= piece.begin && pos.col < piece.end) return sent.index;
        if (pos.col < piece.begin && following == nullptr) following = &sent;
      }
    }
    // Offset fell in whitespace between sentences: attach to the next piece
    // on the line, or the nearest preceding one.
    if (following) return following->index;
    int best = -1;
    for (const auto& sent : sentences)
      for (const auto& piece : sent.pieces)
        if (piece.line == pos.line) best = sent.index;
    if (best >= 0) return best;
    throw OffsetOutOfRange("no sentence covers line " + std::to_string(pos.line) + " of document " + doc.doc_id);
  };

  std::vector<SlotFrame> frames(sentences.size());
  for (const auto& event : events) {
    for (const auto& span : event.slots) {
      validate_pos(span.end);
      frames[static_cast<std::size_t>(sentence_at(span.start))].add(span.label, span.value);
    }
  }

  std::vector<SentencePair> pairs;
  pairs.reserve(sentences.size());
  for (const auto& sent : sentences) {
    pairs.push_back(SentencePair{doc.doc_id, sent.index, sent.tokens,
                                 std::move(frames[static_cast<std::size_t>(sent.index)])});
  }
  return pairs;
}

}  // namespace medslot
