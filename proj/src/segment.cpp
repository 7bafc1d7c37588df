#include "uzopinion/segment.hpp"

#include <array>

#include "uzopinion/unicode.hpp"

namespace uzopinion {

namespace {

constexpr std::array<std::string_view, 6> kPunctuation = {".", ",", "!", "?", ":", ";"};

constexpr std::array<std::string_view, 24> kSpecial = {
    "(", ")", "[", "]", "{", "}", "-", "/", "&", "|", "^", "_",
    "#", "%", "+", "*", "@", "$", "~", "=", "«", "»", "<", ">"};

enum class ClusterClass { space, emoji, letter, apostrophe, digit, punct, special, other };

ClusterClass classify(std::string_view cluster) {
  const auto cps = uni::decode_utf8(cluster);
  if (cps.empty()) return ClusterClass::other;
  const char32_t head = cps.front();
  if (uni::is_space(head)) return ClusterClass::space;
  if (uni::is_pictographic(head)) return ClusterClass::emoji;
  // keycap forms of #, * and digits need the emoji variation selector
  if ((head == U'#' || head == U'*' || uni::is_digit(head)) && cps.size() > 1) {
    for (char32_t cp : cps)
      if (cp == uni::kVs16) return ClusterClass::emoji;
  }
  if (uni::is_letter(head)) return ClusterClass::letter;
  if (head == U'\'' || head == U'’') return ClusterClass::apostrophe;
  if (uni::is_digit(head)) return ClusterClass::digit;
  for (auto p : kPunctuation)
    if (cluster == p) return ClusterClass::punct;
  for (auto s : kSpecial)
    if (cluster == s) return ClusterClass::special;
  return ClusterClass::other;
}

}  // namespace

std::string_view to_string(SegmentKind kind) {
  switch (kind) {
    case SegmentKind::word: return "word";
    case SegmentKind::punctuation: return "punctuation";
    case SegmentKind::special: return "special";
    case SegmentKind::digit_run: return "digit_run";
    case SegmentKind::emoji: return "emoji";
    case SegmentKind::other: return "other";
  }
  return "other";
}

bool is_punctuation_cluster(std::string_view cluster) {
  for (auto p : kPunctuation)
    if (cluster == p) return true;
  return false;
}

bool is_special_cluster(std::string_view cluster) {
  for (auto s : kSpecial)
    if (cluster == s) return true;
  return false;
}

SegmentedText segment(std::string_view text) {
  const auto clusters = uni::grapheme_clusters(text);
  SegmentedText out;
  out.graphemes_total = clusters.size();

  std::string word;
  std::string digits;
  auto flush_word = [&] {
    if (!word.empty()) {
      out.segments.push_back({SegmentKind::word, std::move(word)});
      word.clear();
    }
  };
  auto flush_digits = [&] {
    if (!digits.empty()) {
      out.segments.push_back({SegmentKind::digit_run, std::move(digits)});
      digits.clear();
    }
  };

  for (std::size_t i = 0; i < clusters.size(); ++i) {
    const std::string& cl = clusters[i];
    const ClusterClass cls = classify(cl);
    if (cls != ClusterClass::space) ++out.graphemes_no_space;
    switch (cls) {
      case ClusterClass::space:
        flush_word();
        flush_digits();
        break;
      case ClusterClass::letter:
        flush_digits();
        word += cl;
        break;
      case ClusterClass::apostrophe:
        // internal only: joins a word when wedged between two letters
        if (!word.empty() && i + 1 < clusters.size() &&
            classify(clusters[i + 1]) == ClusterClass::letter) {
          word += cl;
        } else {
          flush_word();
          flush_digits();
          out.segments.push_back({SegmentKind::other, cl});
        }
        break;
      case ClusterClass::digit:
        flush_word();
        digits += cl;
        break;
      case ClusterClass::emoji:
        flush_word();
        flush_digits();
        out.segments.push_back({SegmentKind::emoji, cl});
        break;
      case ClusterClass::punct:
        flush_word();
        flush_digits();
        out.segments.push_back({SegmentKind::punctuation, cl});
        break;
      case ClusterClass::special:
        flush_word();
        flush_digits();
        out.segments.push_back({SegmentKind::special, cl});
        break;
      case ClusterClass::other:
        flush_word();
        flush_digits();
        out.segments.push_back({SegmentKind::other, cl});
        break;
    }
  }
  flush_word();
  flush_digits();
  return out;
}

}  // namespace uzopinion
