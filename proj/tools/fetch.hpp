#pragma once

#include <cstddef>
#include <string>

namespace uzopinion {

struct FetchOptions {
  std::string video_id;
  std::string api_key;
  std::string base_url = "https://www.googleapis.com";
  std::size_t max_pages = 0;  // 0 = follow nextPageToken to the end
};

/// Downloads comment threads for a video and writes one raw provider item
/// per line. The payload is stored untransformed; labeling and POS
/// annotation are separate, human steps. Returns the item count.
std::size_t fetch_comments(const FetchOptions& options, const std::string& out_path);

}  // namespace uzopinion
