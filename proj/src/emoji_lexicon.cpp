#include "uzopinion/emoji_lexicon.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "uzopinion/error.hpp"
#include "uzopinion/unicode.hpp"

namespace uzopinion {

namespace {

std::uint64_t parse_count(std::string_view field, std::string_view where,
                          std::size_t line_no, std::string_view column) {
  std::uint64_t value = 0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    throw Error(std::string(where) + ":" + std::to_string(line_no) +
                ": bad " + std::string(column) + " value '" + std::string(field) + "'");
  return value;
}

std::string trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return std::string(s);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    if (pos == std::string::npos) {
      fields.push_back(trim(line.substr(start)));
      break;
    }
    fields.push_back(trim(line.substr(start, pos - start)));
    start = pos + 1;
  }
  return fields;
}

std::string sequence_from_hex(std::string_view field, std::string_view where,
                              std::size_t line_no) {
  std::string out;
  std::istringstream iss{std::string(field)};
  std::string hex;
  while (iss >> hex) {
    char32_t cp = 0;
    for (char c : hex) {
      int digit;
      if (c >= '0' && c <= '9') digit = c - '0';
      else if (c >= 'a' && c <= 'f') digit = c - 'a' + 10;
      else if (c >= 'A' && c <= 'F') digit = c - 'A' + 10;
      else
        throw Error(std::string(where) + ":" + std::to_string(line_no) +
                    ": bad code point '" + hex + "'");
      cp = cp * 16 + static_cast<char32_t>(digit);
    }
    if (cp == 0 || cp > 0x10FFFF)
      throw Error(std::string(where) + ":" + std::to_string(line_no) +
                  ": code point out of range '" + hex + "'");
    uni::append_utf8(out, cp);
  }
  if (out.empty())
    throw Error(std::string(where) + ":" + std::to_string(line_no) +
                ": empty sequence_hex field");
  return out;
}

// strips variation selectors and skin-tone modifiers
std::string strip_modifiers(std::string_view sequence) {
  const auto cps = uni::decode_utf8(sequence);
  std::string out;
  for (char32_t cp : cps) {
    if (cp == uni::kVs15 || cp == uni::kVs16 || uni::is_emoji_modifier(cp)) continue;
    uni::append_utf8(out, cp);
  }
  return out;
}

std::string first_code_point(std::string_view sequence) {
  const auto cps = uni::decode_utf8(sequence);
  std::string out;
  if (!cps.empty()) uni::append_utf8(out, cps.front());
  return out;
}

}  // namespace

void EmojiLexicon::add(EmojiLexiconEntry entry, std::string_view where,
                       std::size_t line_no) {
  const std::string at = std::string(where) + ":" + std::to_string(line_no);
  if (entry.occurrences == 0)
    throw Error(at + ": occurrences must be >= 1");
  if (entry.neg + entry.neut + entry.pos != entry.occurrences)
    throw Error(at + ": neg+neut+pos (" +
                std::to_string(entry.neg + entry.neut + entry.pos) +
                ") does not equal occurrences (" +
                std::to_string(entry.occurrences) + ")");
  entry.score = (static_cast<double>(entry.pos) - static_cast<double>(entry.neg)) /
                static_cast<double>(entry.occurrences);
  auto [it, inserted] = entries_.emplace(entry.sequence, std::move(entry));
  if (!inserted)
    throw Error(at + ": duplicate sequence '" + it->first + "'");
}

EmojiLexicon EmojiLexicon::parse(std::istream& in, std::string_view source_name) {
  EmojiLexicon lex;
  std::string line;
  std::size_t line_no = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split_csv(line);
    if (!saw_header) {
      if (fields != std::vector<std::string>{"sequence_hex", "occurrences", "neg",
                                             "neut", "pos"})
        throw Error(std::string(source_name) + ":" + std::to_string(line_no) +
                    ": expected header 'sequence_hex,occurrences,neg,neut,pos'");
      saw_header = true;
      continue;
    }
    if (fields.size() != 5)
      throw Error(std::string(source_name) + ":" + std::to_string(line_no) +
                  ": expected 5 comma-separated fields, got " +
                  std::to_string(fields.size()));
    EmojiLexiconEntry entry;
    entry.sequence = sequence_from_hex(fields[0], source_name, line_no);
    entry.occurrences = parse_count(fields[1], source_name, line_no, "occurrences");
    entry.neg = parse_count(fields[2], source_name, line_no, "neg");
    entry.neut = parse_count(fields[3], source_name, line_no, "neut");
    entry.pos = parse_count(fields[4], source_name, line_no, "pos");
    lex.add(std::move(entry), source_name, line_no);
  }
  if (!saw_header)
    throw Error(std::string(source_name) + ": missing header row");
  return lex;
}

EmojiLexicon EmojiLexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open emoji lexicon: " + path.string());
  return parse(in, path.string());
}

EmojiLexicon EmojiLexicon::from_entries(std::vector<EmojiLexiconEntry> entries) {
  EmojiLexicon lex;
  std::size_t row = 0;
  for (auto& e : entries) lex.add(std::move(e), "<entries>", ++row);
  return lex;
}

const EmojiLexiconEntry* EmojiLexicon::find(std::string_view sequence) const {
  const auto it = entries_.find(sequence);
  return it == entries_.end() ? nullptr : &it->second;
}

std::optional<double> EmojiLexicon::lookup(std::string_view sequence) const {
  if (const auto* e = find(sequence)) return e->score;
  const std::string stripped = strip_modifiers(sequence);
  if (stripped != sequence && !stripped.empty())
    if (const auto* e = find(stripped)) return e->score;
  const std::string base = first_code_point(sequence);
  if (base != sequence && base != stripped && !base.empty())
    if (const auto* e = find(base)) return e->score;
  return std::nullopt;
}

std::vector<std::string> detect_emoji(const SegmentedText& seg) {
  std::vector<std::string> out;
  for (const auto& s : seg.segments)
    if (s.kind == SegmentKind::emoji) out.push_back(s.content);
  return out;
}

EmojiFeatureBlock emoji_features(const std::vector<std::string>& emoji,
                                 const EmojiLexicon& lexicon) {
  EmojiFeatureBlock block;
  block.n_emoji = emoji.size();
  if (emoji.empty()) return block;
  double sum = 0.0;
  for (const auto& e : emoji) {
    const double score = lexicon.lookup(e).value_or(0.0);
    sum += score;
    if (score > 0.0) ++block.n_positive;
    if (score < 0.0) ++block.n_negative;
  }
  block.avg_score = sum / static_cast<double>(emoji.size());
  return block;
}

}  // namespace uzopinion
