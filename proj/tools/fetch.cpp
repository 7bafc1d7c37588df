#include "fetch.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "httplib.h"
#include <nlohmann/json.hpp>

#include "uzopinion/error.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace uzopinion {

std::size_t fetch_comments(const FetchOptions& options, const std::string& out_path) {
  httplib::Client client(options.base_url);
  client.set_connection_timeout(10, 0);
  client.set_read_timeout(30, 0);
  client.set_follow_location(true);

  std::ostringstream lines;
  std::string page_token;
  std::size_t pages = 0;
  std::size_t items_total = 0;

  while (true) {
    httplib::Params params{{"part", "snippet,replies"},
                           {"videoId", options.video_id},
                           {"maxResults", "100"},
                           {"key", options.api_key}};
    if (!page_token.empty()) params.emplace("pageToken", page_token);

    const auto res = client.Get("/youtube/v3/commentThreads", params,
                                httplib::Headers{});
    if (!res)
      throw Error("network error talking to " + options.base_url + ": " +
                  httplib::to_string(res.error()));
    if (res->status != 200)
      throw Error("commentThreads endpoint returned HTTP " +
                  std::to_string(res->status));

    json payload;
    try {
      payload = json::parse(res->body);
    } catch (const json::exception& e) {
      throw Error(std::string("endpoint returned malformed JSON: ") + e.what());
    }
    if (payload.contains("items")) {
      for (const auto& item : payload["items"]) {
        lines << item.dump() << '\n';
        ++items_total;
      }
    }
    ++pages;
    if (options.max_pages != 0 && pages >= options.max_pages) break;
    if (!payload.contains("nextPageToken")) break;
    page_token = payload["nextPageToken"].get<std::string>();
  }

  const fs::path target(out_path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw Error("cannot write output file: " + out_path);
    out << lines.str();
    if (!out) {
      out.close();
      fs::remove(tmp);
      throw Error("failed writing output file: " + out_path);
    }
  }
  fs::rename(tmp, target);
  return items_total;
}

}  // namespace uzopinion
