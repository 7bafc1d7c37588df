#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uzopinion/segment.hpp"

namespace uzopinion {

/// One lexicon row: how often an emoji was seen in negative, neutral and
/// positive contexts, plus the derived score (pos - neg) / occurrences.
struct EmojiLexiconEntry {
  std::string sequence;  // UTF-8 emoji sequence
  std::uint64_t occurrences = 0;
  std::uint64_t neg = 0;
  std::uint64_t neut = 0;
  std::uint64_t pos = 0;
  double score = 0.0;
};

/// Emoji sentiment lexicon, immutable once loaded and safe to share across
/// threads. The CSV layout is:
///
///   sequence_hex,occurrences,neg,neut,pos
///   1F602,10,2,3,5
///
/// sequence_hex holds space-separated code points. The header row is
/// mandatory; neg + neut + pos must equal occurrences on every row.
class EmojiLexicon {
 public:
  static EmojiLexicon parse(std::istream& in, std::string_view source_name);
  static EmojiLexicon load(const std::filesystem::path& path);

  /// Builds from entries directly (tests, synthetic data). Validates counts
  /// and rejects duplicate sequences like the CSV path does.
  static EmojiLexicon from_entries(std::vector<EmojiLexiconEntry> entries);

  const EmojiLexiconEntry* find(std::string_view sequence) const;

  /// Score with fallback: exact sequence, then the sequence with variation
  /// selectors and skin-tone modifiers stripped, then the first code point
  /// alone. Unknown emoji yield nullopt.
  std::optional<double> lookup(std::string_view sequence) const;

  std::size_t size() const { return entries_.size(); }

 private:
  void add(EmojiLexiconEntry entry, std::string_view where, std::size_t line_no);

  std::map<std::string, EmojiLexiconEntry, std::less<>> entries_;
};

/// Emoji segments of a post, in order, one item per occurrence. A ZWJ
/// sequence is a single item.
std::vector<std::string> detect_emoji(const SegmentedText& seg);

/// The four emoji features of a post.
struct EmojiFeatureBlock {
  std::size_t n_emoji = 0;
  double avg_score = 0.0;   // mean over occurrences; unknown emoji score 0
  std::size_t n_positive = 0;  // occurrences with score > 0
  std::size_t n_negative = 0;  // occurrences with score < 0
};

EmojiFeatureBlock emoji_features(const std::vector<std::string>& emoji,
                                 const EmojiLexicon& lexicon);

}  // namespace uzopinion
