#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace uzopinion::testsupport {

namespace {

using json = nlohmann::json;

// ASCII-only fold; fixture words are ASCII letters plus the (caseless)
// modifier letters after transliteration
std::string ascii_fold(const std::string& s) {
  std::string out = s;
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

double interpolated_percentile(std::vector<double> values, double p) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const double rank = p * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(rank));
  const auto hi = static_cast<std::size_t>(std::ceil(rank));
  if (hi >= values.size()) return values.back();
  return values[lo] + (rank - std::floor(rank)) * (values[hi] - values[lo]);
}

}  // namespace

std::vector<OraclePost> load_oracle(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open oracle file: " + path.string());
  json j;
  in >> j;
  std::vector<OraclePost> out;
  for (const auto& row : j) {
    OraclePost p;
    p.id = row.at("id").get<std::string>();
    p.total = row.at("total").get<double>();
    p.no_space = row.at("no_space").get<double>();
    p.special = row.at("special").get<double>();
    p.lower = row.at("lower").get<double>();
    p.upper = row.at("upper").get<double>();
    p.digits = row.at("digits").get<double>();
    p.punct = row.at("punct").get<double>();
    p.words = row.at("words").get<std::vector<std::string>>();
    p.word_lengths = row.at("word_lengths").get<std::vector<double>>();
    for (const auto& s : row.at("emoji_scores")) {
      if (s.is_null())
        p.emoji_scores.push_back(std::nullopt);
      else
        p.emoji_scores.push_back(s.get<double>());
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<double> oracle_features(const OraclePost& oracle, const RawPost& post,
                                    bool include_emoji) {
  const auto& lengths = oracle.word_lengths;
  const auto n = static_cast<double>(lengths.size());

  double mean = 0.0;
  for (double len : lengths) mean += len;
  if (n > 0) mean /= n;

  double min_len = 0.0, max_len = 0.0;
  if (n > 0) {
    min_len = *std::min_element(lengths.begin(), lengths.end());
    max_len = *std::max_element(lengths.begin(), lengths.end());
  }

  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double len : lengths) {
    m2 += std::pow(len - mean, 2.0);
    m3 += std::pow(len - mean, 3.0);
    m4 += std::pow(len - mean, 4.0);
  }
  if (n > 0) {
    m2 /= n;
    m3 /= n;
    m4 /= n;
  }
  double skewness = 0.0, kurtosis = 0.0;
  if (lengths.size() >= 2 && m2 > 0.0) {
    skewness = m3 / std::pow(m2, 1.5);
    kurtosis = m4 / (m2 * m2) - 3.0;
  }

  // folded frequency table; unique-form lengths come from the annotation
  std::map<std::string, std::size_t> freq;
  std::map<std::string, double> form_length;
  for (std::size_t i = 0; i < oracle.words.size(); ++i) {
    const std::string folded = ascii_fold(oracle.words[i]);
    ++freq[folded];
    form_length[folded] = oracle.word_lengths[i];
  }
  double unique_mean = 0.0;
  for (const auto& [form, len] : form_length) unique_mean += len;
  if (!form_length.empty()) unique_mean /= static_cast<double>(form_length.size());
  double hapax1 = 0.0, hapax2 = 0.0;
  for (const auto& [form, count] : freq) {
    if (count == 1) hapax1 += 1.0;
    if (count == 2) hapax2 += 1.0;
  }
  double short_words = 0.0;
  for (double len : lengths)
    if (len < 4.0) short_words += 1.0;

  std::vector<double> out = {
      oracle.total,
      oracle.no_space,
      oracle.special,
      oracle.lower,
      oracle.upper,
      oracle.digits,
      n,
      static_cast<double>(freq.size()),
      unique_mean,
      max_len,
      min_len,
      mean,
      std::sqrt(m2),
      m2,
      kurtosis,
      skewness,
      interpolated_percentile(lengths, 0.25),
      interpolated_percentile(lengths, 0.50),
      interpolated_percentile(lengths, 0.75),
      oracle.punct,
      short_words,
      hapax1,
      hapax2,
  };

  double tag_counts[15] = {};
  for (const auto& t : post.pos_tags) ++tag_counts[static_cast<int>(t.tag)];
  for (double c : tag_counts) out.push_back(c);

  if (include_emoji) {
    double sum = 0.0, n_pos = 0.0, n_neg = 0.0;
    for (const auto& score : oracle.emoji_scores) {
      const double s = score.value_or(0.0);
      sum += s;
      if (s > 0.0) n_pos += 1.0;
      if (s < 0.0) n_neg += 1.0;
    }
    const auto n_emoji = static_cast<double>(oracle.emoji_scores.size());
    out.push_back(n_emoji);
    out.push_back(n_emoji > 0 ? sum / n_emoji : 0.0);
    out.push_back(n_pos);
    out.push_back(n_neg);
  }
  return out;
}

}  // namespace uzopinion::testsupport
