#include "doctest.h"

#include <sstream>

#include "support/synthetic.hpp"
#include "uzopinion/features.hpp"
#include "uzopinion/segment.hpp"

using namespace uzopinion;
using namespace uzopinion::testsupport;

namespace {

// schema indices used below
constexpr std::size_t kWords = 6, kUnique = 7, kUniqueMean = 8, kMaxLen = 9,
                      kMinLen = 10, kMeanLen = 11, kStdev = 12, kVariance = 13,
                      kKurtosis = 14, kSkewness = 15, kP25 = 16, kP50 = 17,
                      kP75 = 18, kPunct = 19, kShort = 20, kHapax1 = 21,
                      kHapax2 = 22;

}  // namespace

TEST_CASE("statistical features on a small post") {
  const auto f = statistical_features(segment("Zoʻr kino! 😂"));
  CHECK(f[0] == 12);          // clusters
  CHECK(f[1] == 10);          // clusters without spaces
  CHECK(f[2] == 0);           // specials
  CHECK(f[3] == 6);           // lowercase
  CHECK(f[4] == 1);           // uppercase
  CHECK(f[5] == 0);           // digits
  CHECK(f[kWords] == 2);
  CHECK(f[kUnique] == 2);
  CHECK(f[kUniqueMean] == doctest::Approx(4.0));
  CHECK(f[kMeanLen] == doctest::Approx(4.0));
  CHECK(f[kStdev] == 0.0);
  CHECK(f[kSkewness] == 0.0);
  CHECK(f[kPunct] == 1);
  CHECK(f[kHapax1] == 2);
  CHECK(f[kHapax2] == 0);
}

TEST_CASE("equal word lengths give zero spread") {
  const auto f = statistical_features(segment("abc def ghi"));
  CHECK(f[kVariance] == 0.0);
  CHECK(f[kStdev] == 0.0);
  CHECK(f[kSkewness] == 0.0);
  CHECK(f[kKurtosis] == 0.0);
}

TEST_CASE("percentiles interpolate linearly") {
  // word lengths 1..5
  const auto f = statistical_features(segment("a bb ccc dddd eeeee"));
  CHECK(f[kP25] == doctest::Approx(2.0));
  CHECK(f[kP50] == doctest::Approx(3.0));
  CHECK(f[kP75] == doctest::Approx(4.0));
  CHECK(f[kMeanLen] == doctest::Approx(3.0));
  CHECK(f[kMinLen] == 1);
  CHECK(f[kMaxLen] == 5);
  CHECK(f[kShort] == 3);  // lengths 1, 2, 3
}

TEST_CASE("symmetric length multisets have zero skewness") {
  for (const auto* text : {"a bb ccc", "a a ccc ccc", "ab ab cd cd"}) {
    const auto f = statistical_features(segment(text));
    CHECK(f[kSkewness] == doctest::Approx(0.0).epsilon(1e-9));
  }
}

TEST_CASE("a post without words zeroes the word statistics") {
  const auto f = statistical_features(segment("😂 ... 123"));
  for (std::size_t i : {kWords, kUnique, kUniqueMean, kMaxLen, kMinLen, kMeanLen,
                        kStdev, kVariance, kKurtosis, kSkewness, kP25, kP50, kP75,
                        kShort, kHapax1, kHapax2})
    CHECK(f[i] == 0.0);
  CHECK(f[kPunct] == 3);
  CHECK(f[5] == 3);  // digits
}

TEST_CASE("case folding merges unique words and hapax counts") {
  const auto f = statistical_features(segment("Kino kino KINO zoʻr"));
  CHECK(f[kWords] == 4);
  CHECK(f[kUnique] == 2);
  CHECK(f[kHapax1] == 1);  // zoʻr
  CHECK(f[kHapax2] == 0);  // kino occurs three times
}

TEST_CASE("pos features count tags in schema order") {
  const auto f = pos_features({{"a", PosTag::noun},
                               {"b", PosTag::noun},
                               {"c", PosTag::verb}});
  CHECK(f[0] == 2);  // nouns
  CHECK(f[2] == 1);  // verbs
  double sum = 0;
  for (double v : f) sum += v;
  CHECK(sum == 3);

  const auto empty = pos_features({});
  for (double v : empty) CHECK(v == 0.0);

  const auto permuted = pos_features({{"c", PosTag::verb},
                                      {"a", PosTag::noun},
                                      {"b", PosTag::noun}});
  CHECK(permuted == f);
}

TEST_CASE("assemble produces 42 features, 38 without the emoji block") {
  const auto lexicon = synthetic_lexicon();
  RawPost post{"x", "Zoʻr kino! 😍", Script::latin,
               {{"Zoʻr", PosTag::adjective}, {"kino", PosTag::noun}},
               Label::positive};

  const auto with = assemble(post, lexicon, true);
  const auto without = assemble(post, lexicon, false);
  CHECK(with.values.size() == 42);
  CHECK(with.schema->names.size() == 42);
  CHECK(without.values.size() == 38);
  CHECK(with.label == Label::positive);

  for (std::size_t i = 0; i < 38; ++i) {
    CHECK(with.values[i] == without.values[i]);
    CHECK(with.schema->names[i] == without.schema->names[i]);
  }
  CHECK(with.schema->names[38] == "number of emoji");
  CHECK(with.schema->names[39] == "average sentiment score of all emoji per post");
  CHECK(with.schema->blocks[38] == "emoji");

  const auto again = assemble(post, lexicon, true);
  CHECK(again.values == with.values);
}

TEST_CASE("dropping the emoji block never changes the other 38 values") {
  const auto lexicon = synthetic_lexicon();
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    const auto posts = synthetic_posts(40, seed, true);
    const auto with = assemble_all(posts, lexicon, true);
    const auto without = assemble_all(posts, lexicon, false);
    for (std::size_t i = 0; i < posts.size(); ++i)
      for (std::size_t f = 0; f < 38; ++f)
        CHECK(with.rows[i].values[f] == without.rows[i].values[f]);
  }
}

TEST_CASE("count invariants hold on synthetic posts") {
  const auto lexicon = synthetic_lexicon();
  const auto posts = synthetic_posts(60, 9, false);
  for (const auto& post : posts) {
    const auto v = assemble(post, lexicon, true).values;
    CHECK(v[1] <= v[0]);                       // no-space <= total
    CHECK(v[kUnique] <= v[kWords]);            // unique <= words
    CHECK(v[kHapax1] + 2 * v[kHapax2] <= v[kWords]);
    CHECK(v[kMinLen] <= v[kMeanLen]);
    CHECK(v[kMeanLen] <= v[kMaxLen]);
    CHECK(v[kP25] <= v[kP50]);
    CHECK(v[kP50] <= v[kP75]);
  }
}

TEST_CASE("schema export") {
  std::ostringstream json_out;
  write_schema_json(json_out, *feature_schema(true));
  CHECK(json_out.str().find("\"index\": 0") != std::string::npos);
  CHECK(json_out.str().find("average sentiment score") != std::string::npos);

  std::ostringstream csv_out;
  write_schema_csv(csv_out, *feature_schema(false));
  std::string line;
  std::getline(csv_out, line);
  CHECK(line == "index,name,block");
  std::size_t rows = 0;
  while (std::getline(csv_out, line)) ++rows;
  CHECK(rows == 38);
}
