#include "uzopinion/dataset.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

#include "uzopinion/emoji_lexicon.hpp"
#include "uzopinion/error.hpp"
#include "uzopinion/segment.hpp"
#include "uzopinion/translit.hpp"

namespace uzopinion {

namespace {

using json = nlohmann::json;

RawPost post_from_json(const json& j, const std::string& at) {
  RawPost post;
  if (!j.is_object()) throw Error(at + ": expected a JSON object");
  try {
    post.id = j.at("id").get<std::string>();
    post.text = j.at("text").get<std::string>();
    const auto script = script_from_string(j.at("script").get<std::string>());
    if (!script)
      throw Error(at + ": unknown script '" + j.at("script").get<std::string>() + "'");
    post.script = *script;
    const auto label = label_from_string(j.at("label").get<std::string>());
    if (!label)
      throw Error(at + ": unknown label '" + j.at("label").get<std::string>() + "'");
    post.label = *label;
    for (const auto& tok : j.at("tokens")) {
      PosToken t;
      t.token = tok.at("t").get<std::string>();
      const auto tag = pos_tag_from_string(tok.at("pos").get<std::string>());
      if (!tag)
        throw Error(at + ": unknown pos tag '" + tok.at("pos").get<std::string>() +
                    "'");
      t.tag = *tag;
      post.pos_tags.push_back(std::move(t));
    }
  } catch (const json::exception& e) {
    throw Error(at + ": " + e.what());
  }
  if (post.text.empty()) throw Error(at + ": empty text");
  if (post.id.empty()) throw Error(at + ": empty id");
  return post;
}

std::size_t count_words(const RawPost& post) {
  const auto seg = segment(transliterate(post.text).text);
  std::size_t words = 0;
  for (const auto& s : seg.segments)
    if (s.kind == SegmentKind::word) ++words;
  return words;
}

}  // namespace

std::vector<RawPost> parse_posts(std::istream& in, std::string_view source_name) {
  std::vector<RawPost> posts;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string at = std::string(source_name) + ":" + std::to_string(line_no);
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw Error(at + ": malformed JSON: " + e.what());
    }
    RawPost post = post_from_json(j, at);
    if (post.pos_tags.empty() && count_words(post) > 0)
      throw Error(at + ": post '" + post.id +
                  "' contains words but has no POS annotation");
    posts.push_back(std::move(post));
  }
  return posts;
}

LoadedDataset load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open dataset: " + path.string());
  LoadedDataset out;
  out.posts = parse_posts(in, path.string());
  out.stats = ingest_stats(out.posts);
  return out;
}

IngestStats ingest_stats(const std::vector<RawPost>& posts) {
  IngestStats stats;
  stats.total_posts = posts.size();
  std::size_t emoji_sum = 0;
  bool first = true;
  for (const auto& post : posts) {
    switch (post.script) {
      case Script::cyrillic: ++stats.posts_cyrillic; break;
      case Script::latin: ++stats.posts_latin; break;
      case Script::mixed: ++stats.posts_mixed; break;
    }
    if (post.label == Label::positive)
      ++stats.positive_posts;
    else
      ++stats.negative_posts;

    const auto seg = segment(transliterate(post.text).text);
    const std::size_t n_emoji = detect_emoji(seg).size();
    emoji_sum += n_emoji;
    if (n_emoji == 0) stats.zero_emoji_ids.push_back(post.id);
    if (first) {
      stats.min_emoji = stats.max_emoji = n_emoji;
      first = false;
    } else {
      stats.min_emoji = std::min(stats.min_emoji, n_emoji);
      stats.max_emoji = std::max(stats.max_emoji, n_emoji);
    }
  }
  if (!posts.empty())
    stats.mean_emoji =
        static_cast<double>(emoji_sum) / static_cast<double>(posts.size());
  return stats;
}

void write_posts(std::ostream& out, const std::vector<RawPost>& posts) {
  for (const auto& post : posts) {
    json tokens = json::array();
    for (const auto& t : post.pos_tags)
      tokens.push_back({{"t", t.token}, {"pos", std::string(to_string(t.tag))}});
    const json j{{"id", post.id},
                 {"text", post.text},
                 {"script", std::string(to_string(post.script))},
                 {"tokens", tokens},
                 {"label", std::string(to_string(post.label))}};
    out << j.dump() << '\n';
  }
}

void write_dataset(const std::vector<RawPost>& posts,
                   const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write dataset: " + path.string());
  write_posts(out, posts);
  if (!out) throw Error("failed writing dataset: " + path.string());
}

void write_stats_csv(std::ostream& out, const IngestStats& stats) {
  out << "characteristic,value\n";
  out << "posts in cyrillic," << stats.posts_cyrillic << '\n';
  out << "posts in latin," << stats.posts_latin << '\n';
  out << "posts in mixed cyrillic-latin," << stats.posts_mixed << '\n';
  out << "total posts," << stats.total_posts << '\n';
  out << "positive posts," << stats.positive_posts << '\n';
  out << "negative posts," << stats.negative_posts << '\n';
  out << "minimum emoji per post," << stats.min_emoji << '\n';
  out << "maximum emoji per post," << stats.max_emoji << '\n';
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", stats.mean_emoji);
  out << "average emoji per post," << buf << '\n';
  out << "posts without emoji," << stats.zero_emoji_ids.size() << '\n';
}

}  // namespace uzopinion
