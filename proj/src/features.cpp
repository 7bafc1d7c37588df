#include "uzopinion/features.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <nlohmann/json.hpp>

#include "uzopinion/translit.hpp"
#include "uzopinion/unicode.hpp"

namespace uzopinion {

namespace {

const std::vector<std::string> kStatNames = {
    "total number of characters",
    "total number of characters without spaces",
    "number of special characters",
    "number of lower case characters",
    "number of upper case characters",
    "number of digits characters",
    "number of all words",
    "number of unique words",
    "mean length of all unique words",
    "maximum length of all words",
    "minimum length of all words",
    "mean length of all words",
    "standard deviation of the length of all words",
    "variance of the length of all words",
    "kurtosis of the length of all words",
    "skewness of the length of all words",
    "percentile 25% of the length of all words",
    "percentile 50% (median) of the length of all words",
    "percentile 75% of the length of all words",
    "number of punctuation characters",
    "number of words with length less than 4 characters",
    "number of the hapax-legomena",
    "number of the hapax-dislegomena",
};

const std::vector<std::string> kPosNames = {
    "number of nouns",
    "number of proper nouns",
    "number of verbs",
    "number of adjectives",
    "number of numerals",
    "number of pronouns",
    "number of adverbs",
    "number of helping words",
    "number of coordinating conjunctions",
    "number of subordinating conjunctions",
    "number of modal words",
    "number of imitative words",
    "number of interjections",
    "number of auxiliaries",
    "number of other words (x)",
};

const std::vector<std::string> kEmojiNames = {
    "number of emoji",
    "average sentiment score of all emoji per post",
    "number of positive emoji",
    "number of negative emoji",
};

SchemaPtr build_schema(bool include_emoji) {
  auto schema = std::make_shared<FeatureSchema>();
  for (const auto& n : kStatNames) {
    schema->names.push_back(n);
    schema->blocks.push_back("statistical");
  }
  for (const auto& n : kPosNames) {
    schema->names.push_back(n);
    schema->blocks.push_back("pos");
  }
  if (include_emoji) {
    for (const auto& n : kEmojiNames) {
      schema->names.push_back(n);
      schema->blocks.push_back("emoji");
    }
  }
  return schema;
}

// linear interpolation at rank (n-1)*p over the sorted sample
double percentile(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) return 0.0;
  if (sorted.size() == 1) return sorted.front();
  const double rank = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(rank);
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = rank - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

SchemaPtr feature_schema(bool include_emoji) {
  static const SchemaPtr with = build_schema(true);
  static const SchemaPtr without = build_schema(false);
  return include_emoji ? with : without;
}

std::array<double, kStatFeatures> statistical_features(const SegmentedText& seg) {
  std::array<double, kStatFeatures> f{};

  std::size_t special = 0, lower = 0, upper = 0, digits = 0, punct = 0;
  std::vector<double> word_lengths;
  std::map<std::string, std::size_t> word_freq;  // case-folded

  for (const auto& s : seg.segments) {
    const auto clusters = uni::grapheme_clusters(s.content);
    switch (s.kind) {
      case SegmentKind::special:
        special += clusters.size();
        break;
      case SegmentKind::punctuation:
        punct += clusters.size();
        break;
      case SegmentKind::digit_run:
        digits += clusters.size();
        break;
      case SegmentKind::word:
        word_lengths.push_back(static_cast<double>(clusters.size()));
        ++word_freq[uni::fold_case(s.content)];
        break;
      default:
        break;
    }
    // case counts run over every cluster of the post
    for (const auto& cl : clusters) {
      const auto cps = uni::decode_utf8(cl);
      if (cps.empty()) continue;
      if (uni::is_lower(cps.front())) ++lower;
      else if (uni::is_upper(cps.front())) ++upper;
    }
  }

  const std::size_t n_words = word_lengths.size();
  double mean = 0.0, m2 = 0.0, m3 = 0.0, m4 = 0.0;
  double min_len = 0.0, max_len = 0.0;
  if (n_words > 0) {
    for (double len : word_lengths) mean += len;
    mean /= static_cast<double>(n_words);
    min_len = *std::min_element(word_lengths.begin(), word_lengths.end());
    max_len = *std::max_element(word_lengths.begin(), word_lengths.end());
    for (double len : word_lengths) {
      const double d = len - mean;
      m2 += d * d;
      m3 += d * d * d;
      m4 += d * d * d * d;
    }
    m2 /= static_cast<double>(n_words);
    m3 /= static_cast<double>(n_words);
    m4 /= static_cast<double>(n_words);
  }
  const bool degenerate = n_words < 2 || m2 <= 0.0;
  const double skewness = degenerate ? 0.0 : m3 / std::pow(m2, 1.5);
  const double kurtosis = degenerate ? 0.0 : m4 / (m2 * m2) - 3.0;

  std::vector<double> sorted_lengths = word_lengths;
  std::sort(sorted_lengths.begin(), sorted_lengths.end());

  double unique_len_sum = 0.0;
  std::size_t hapax1 = 0, hapax2 = 0, short_words = 0;
  for (const auto& [form, freq] : word_freq) {
    unique_len_sum += static_cast<double>(uni::grapheme_count(form));
    if (freq == 1) ++hapax1;
    if (freq == 2) ++hapax2;
  }
  for (double len : word_lengths)
    if (len < 4.0) ++short_words;

  f[0] = static_cast<double>(seg.graphemes_total);
  f[1] = static_cast<double>(seg.graphemes_no_space);
  f[2] = static_cast<double>(special);
  f[3] = static_cast<double>(lower);
  f[4] = static_cast<double>(upper);
  f[5] = static_cast<double>(digits);
  f[6] = static_cast<double>(n_words);
  f[7] = static_cast<double>(word_freq.size());
  f[8] = word_freq.empty() ? 0.0
                           : unique_len_sum / static_cast<double>(word_freq.size());
  f[9] = max_len;
  f[10] = min_len;
  f[11] = mean;
  f[12] = std::sqrt(m2);
  f[13] = m2;
  f[14] = kurtosis;
  f[15] = skewness;
  f[16] = percentile(sorted_lengths, 0.25);
  f[17] = percentile(sorted_lengths, 0.50);
  f[18] = percentile(sorted_lengths, 0.75);
  f[19] = static_cast<double>(punct);
  f[20] = static_cast<double>(short_words);
  f[21] = static_cast<double>(hapax1);
  f[22] = static_cast<double>(hapax2);
  return f;
}

std::array<double, kPosFeatures> pos_features(const std::vector<PosToken>& tags) {
  std::array<double, kPosFeatures> f{};
  for (const auto& t : tags) f[static_cast<std::size_t>(t.tag)] += 1.0;
  return f;
}

FeatureVector assemble(const RawPost& post, const EmojiLexicon& lexicon,
                       bool include_emoji) {
  const auto latin = transliterate(post.text).text;
  const auto seg = segment(latin);
  const auto stats = statistical_features(seg);
  const auto pos = pos_features(post.pos_tags);

  FeatureVector v;
  v.schema = feature_schema(include_emoji);
  v.values.reserve(v.schema->size());
  v.values.insert(v.values.end(), stats.begin(), stats.end());
  v.values.insert(v.values.end(), pos.begin(), pos.end());
  if (include_emoji) {
    const auto block = emoji_features(detect_emoji(seg), lexicon);
    v.values.push_back(static_cast<double>(block.n_emoji));
    v.values.push_back(block.avg_score);
    v.values.push_back(static_cast<double>(block.n_positive));
    v.values.push_back(static_cast<double>(block.n_negative));
  }
  v.label = post.label;
  return v;
}

Dataset assemble_all(const std::vector<RawPost>& posts, const EmojiLexicon& lexicon,
                     bool include_emoji) {
  Dataset data;
  data.schema = feature_schema(include_emoji);
  data.rows.reserve(posts.size());
  for (const auto& p : posts) data.rows.push_back(assemble(p, lexicon, include_emoji));
  return data;
}

void write_schema_json(std::ostream& out, const FeatureSchema& schema) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < schema.size(); ++i) {
    rows.push_back({{"index", i}, {"name", schema.names[i]}, {"block", schema.blocks[i]}});
  }
  out << rows.dump(2) << '\n';
}

void write_schema_csv(std::ostream& out, const FeatureSchema& schema) {
  out << "index,name,block\n";
  for (std::size_t i = 0; i < schema.size(); ++i) {
    std::string name = schema.names[i];
    const bool quote = name.find(',') != std::string::npos;
    if (quote) name = "\"" + name + "\"";
    out << i << ',' << name << ',' << schema.blocks[i] << '\n';
  }
}

}  // namespace uzopinion
