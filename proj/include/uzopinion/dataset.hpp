#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "uzopinion/post.hpp"

namespace uzopinion {

/// Corpus-level ingest statistics: script and class counts plus the emoji
/// distribution over posts. Posts without a single emoji are flagged, not
/// rejected.
struct IngestStats {
  std::size_t posts_cyrillic = 0;
  std::size_t posts_latin = 0;
  std::size_t posts_mixed = 0;
  std::size_t total_posts = 0;
  std::size_t positive_posts = 0;
  std::size_t negative_posts = 0;
  std::size_t min_emoji = 0;
  std::size_t max_emoji = 0;
  double mean_emoji = 0.0;
  std::vector<std::string> zero_emoji_ids;
};

struct LoadedDataset {
  std::vector<RawPost> posts;
  IngestStats stats;
};

/// One post per line:
///   {"id":"p1","text":"...","script":"latin",
///    "tokens":[{"t":"...","pos":"noun"}],"label":"positive"}
/// Errors name the line number. Posts must have non-empty text, a valid
/// label and script, known POS tags, and a non-empty token list whenever
/// the text contains word tokens.
std::vector<RawPost> parse_posts(std::istream& in, std::string_view source_name);
LoadedDataset load_dataset(const std::filesystem::path& path);

IngestStats ingest_stats(const std::vector<RawPost>& posts);

void write_posts(std::ostream& out, const std::vector<RawPost>& posts);
void write_dataset(const std::vector<RawPost>& posts,
                   const std::filesystem::path& path);

void write_stats_csv(std::ostream& out, const IngestStats& stats);

}  // namespace uzopinion
