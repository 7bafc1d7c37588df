#include "uzopinion/post.hpp"

#include <array>

namespace uzopinion {

namespace {

constexpr std::array<std::string_view, kNumPosTags> kPosNames = {
    "noun",       "proper_noun", "verb",     "adjective",    "numeral",
    "pronoun",    "adverb",      "helping_word", "coord_conj", "subord_conj",
    "modal",      "imitative",   "interjection", "auxiliary",  "other_x"};

}  // namespace

std::string_view to_string(Label label) {
  return label == Label::positive ? "positive" : "negative";
}

std::string_view to_string(Script script) {
  switch (script) {
    case Script::latin: return "latin";
    case Script::cyrillic: return "cyrillic";
    case Script::mixed: return "mixed";
  }
  return "latin";
}

std::string_view to_string(PosTag tag) {
  return kPosNames[static_cast<std::size_t>(tag)];
}

std::optional<Label> label_from_string(std::string_view s) {
  if (s == "positive") return Label::positive;
  if (s == "negative") return Label::negative;
  return std::nullopt;
}

std::optional<Script> script_from_string(std::string_view s) {
  if (s == "latin") return Script::latin;
  if (s == "cyrillic") return Script::cyrillic;
  if (s == "mixed") return Script::mixed;
  return std::nullopt;
}

std::optional<PosTag> pos_tag_from_string(std::string_view s) {
  for (std::size_t i = 0; i < kPosNames.size(); ++i)
    if (kPosNames[i] == s) return static_cast<PosTag>(i);
  return std::nullopt;
}

}  // namespace uzopinion
