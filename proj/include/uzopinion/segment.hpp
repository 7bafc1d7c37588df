#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace uzopinion {

enum class SegmentKind { word, punctuation, special, digit_run, emoji, other };

std::string_view to_string(SegmentKind kind);

struct Segment {
  SegmentKind kind;
  std::string content;

  bool operator==(const Segment&) const = default;
};

/// Text split into typed units. Whitespace is not emitted as a segment but
/// counts toward graphemes_total; concatenating segment contents plus the
/// whitespace clusters reproduces the input.
struct SegmentedText {
  std::size_t graphemes_total = 0;
  std::size_t graphemes_no_space = 0;
  std::vector<Segment> segments;
};

/// Punctuation counted by the statistics block: . , ! ? : ;
bool is_punctuation_cluster(std::string_view cluster);
/// The fixed special-character list: ( ) [ ] { } - / & | ^ _ # % + * @ $ ~ = « » < >
bool is_special_cluster(std::string_view cluster);

/// Segments Latin-script text into words, punctuation, special characters,
/// digit runs, emoji and leftovers. Works on extended grapheme clusters, so
/// ZWJ emoji and modifier sequences are single units. Words are maximal
/// letter runs; ʻ and ʼ are letters, a straight or typographic apostrophe
/// joins a word only between two letters.
SegmentedText segment(std::string_view text);

}  // namespace uzopinion
