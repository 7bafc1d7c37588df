#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace uzopinion {

enum class Label : std::uint8_t { negative = 0, positive = 1 };
inline constexpr std::size_t kNumClasses = 2;

enum class Script : std::uint8_t { latin, cyrillic, mixed };

/// Closed 15-category part-of-speech tagset. Tags arrive as input
/// annotation; the library never assigns them.
enum class PosTag : std::uint8_t {
  noun = 0,
  proper_noun,
  verb,
  adjective,
  numeral,
  pronoun,
  adverb,
  helping_word,
  coord_conj,
  subord_conj,
  modal,
  imitative,
  interjection,
  auxiliary,
  other_x,
};
inline constexpr std::size_t kNumPosTags = 15;

std::string_view to_string(Label label);
std::string_view to_string(Script script);
std::string_view to_string(PosTag tag);

std::optional<Label> label_from_string(std::string_view s);
std::optional<Script> script_from_string(std::string_view s);
std::optional<PosTag> pos_tag_from_string(std::string_view s);

struct PosToken {
  std::string token;
  PosTag tag;

  bool operator==(const PosToken&) const = default;
};

/// One review comment as ingested: raw text, script tag, POS-annotated
/// tokens and the opinion label.
struct RawPost {
  std::string id;
  std::string text;
  Script script = Script::latin;
  std::vector<PosToken> pos_tags;
  Label label = Label::positive;

  bool operator==(const RawPost&) const = default;
};

}  // namespace uzopinion
