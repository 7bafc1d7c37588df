#pragma once

#include <array>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "uzopinion/emoji_lexicon.hpp"
#include "uzopinion/post.hpp"
#include "uzopinion/segment.hpp"

namespace uzopinion {

inline constexpr std::size_t kStatFeatures = 23;
inline constexpr std::size_t kPosFeatures = 15;
inline constexpr std::size_t kEmojiFeatures = 4;
inline constexpr std::size_t kAllFeatures =
    kStatFeatures + kPosFeatures + kEmojiFeatures;  // 42
inline constexpr std::size_t kNoEmojiFeatures = kStatFeatures + kPosFeatures;  // 38

/// Ordered feature names with their block ("statistical", "pos", "emoji").
struct FeatureSchema {
  std::vector<std::string> names;
  std::vector<std::string> blocks;

  std::size_t size() const { return names.size(); }
  bool operator==(const FeatureSchema&) const = default;
};

using SchemaPtr = std::shared_ptr<const FeatureSchema>;

/// The canonical 42-feature schema, or the 38-feature one without the emoji
/// block. The returned pointer is a process-wide constant.
SchemaPtr feature_schema(bool include_emoji);

struct FeatureVector {
  std::vector<double> values;
  SchemaPtr schema;
  std::optional<Label> label;
};

/// An assembled feature matrix; all rows share one schema.
struct Dataset {
  SchemaPtr schema;
  std::vector<FeatureVector> rows;

  std::size_t size() const { return rows.size(); }
};

/// The 23 word-level statistics, in schema order. Word lengths are measured
/// in grapheme clusters; unique-word and hapax counts are case-folded.
/// A post without words yields zeros for every word-derived statistic.
std::array<double, kStatFeatures> statistical_features(const SegmentedText& seg);

/// Per-category tag counts in schema order; sums to the number of tags.
std::array<double, kPosFeatures> pos_features(const std::vector<PosToken>& tags);

/// Full pipeline for one post: transliterate, segment, count. Block order is
/// statistical, POS, then (optionally) emoji. The first 38 values never
/// depend on the emoji flag.
FeatureVector assemble(const RawPost& post, const EmojiLexicon& lexicon,
                       bool include_emoji);

Dataset assemble_all(const std::vector<RawPost>& posts, const EmojiLexicon& lexicon,
                     bool include_emoji);

void write_schema_json(std::ostream& out, const FeatureSchema& schema);
void write_schema_csv(std::ostream& out, const FeatureSchema& schema);

}  // namespace uzopinion
