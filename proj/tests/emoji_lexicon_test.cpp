#include "doctest.h"

#include <sstream>

#include "support/random_text.hpp"
#include "uzopinion/emoji_lexicon.hpp"
#include "uzopinion/error.hpp"
#include "uzopinion/rng.hpp"
#include "uzopinion/segment.hpp"

using namespace uzopinion;
using namespace uzopinion::testsupport;

namespace {

EmojiLexicon parse_lexicon(const std::string& body) {
  std::istringstream in("sequence_hex,occurrences,neg,neut,pos\n" + body);
  return EmojiLexicon::parse(in, "test.csv");
}

}  // namespace

TEST_CASE("lexicon rows derive the score (pos - neg) / occurrences") {
  const auto lex = parse_lexicon("1F602,10,2,3,5\n2764,4,0,0,4\n1F4A9,6,6,0,0\n");
  CHECK(lex.size() == 3);
  CHECK(lex.find("😂")->score == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(lex.find("❤")->score == doctest::Approx(1.0));
  CHECK(lex.find("💩")->score == doctest::Approx(-1.0));
  CHECK(lex.find("😂")->neg + lex.find("😂")->neut + lex.find("😂")->pos ==
        lex.find("😂")->occurrences);
}

TEST_CASE("lexicon load errors carry the line number") {
  CHECK_THROWS_WITH_AS(parse_lexicon("1F602,10,2,3\n"),
                       doctest::Contains("test.csv:2"), Error);
  CHECK_THROWS_WITH_AS(parse_lexicon("1F602,10,2,3,6\n"),
                       doctest::Contains("does not equal occurrences"), Error);
  CHECK_THROWS_WITH_AS(parse_lexicon("1F602,10,2,3,5\n1F602,4,0,0,4\n"),
                       doctest::Contains("duplicate"), Error);
  CHECK_THROWS_WITH_AS(parse_lexicon("XYZ,10,2,3,5\n"),
                       doctest::Contains("bad code point"), Error);
  std::istringstream no_header("1F602,10,2,3,5\n");
  CHECK_THROWS_WITH_AS(EmojiLexicon::parse(no_header, "test.csv"),
                       doctest::Contains("header"), Error);
  std::istringstream empty("");
  CHECK_THROWS_WITH_AS(EmojiLexicon::parse(empty, "test.csv"),
                       doctest::Contains("missing header"), Error);
}

TEST_CASE("detect returns emoji occurrences in order") {
  const auto three = detect_emoji(segment("😂😂❤"));
  REQUIRE(three.size() == 3);
  CHECK(three[0] == "😂");
  CHECK(three[1] == "😂");
  CHECK(three[2] == "❤");

  CHECK(detect_emoji(segment("kino")).empty());
  CHECK(detect_emoji(segment("👩‍👩‍👧")).size() == 1);
}

TEST_CASE("emoji feature block") {
  const auto lex = parse_lexicon("1F602,10,2,3,5\n2764,4,0,0,4\n");

  const auto block = emoji_features({"😂", "😂", "❤"}, lex);
  CHECK(block.n_emoji == 3);
  CHECK(block.avg_score == doctest::Approx((0.3 + 0.3 + 1.0) / 3.0).epsilon(1e-12));
  CHECK(block.n_positive == 3);
  CHECK(block.n_negative == 0);

  const auto empty = emoji_features({}, lex);
  CHECK(empty.n_emoji == 0);
  CHECK(empty.avg_score == 0.0);
  CHECK(empty.n_positive == 0);
  CHECK(empty.n_negative == 0);

  const auto unknown = emoji_features({"🌚"}, lex);
  CHECK(unknown.n_emoji == 1);
  CHECK(unknown.avg_score == 0.0);
  CHECK(unknown.n_positive == 0);
  CHECK(unknown.n_negative == 0);
}

TEST_CASE("lookup falls back from modifiers to the base code point") {
  const auto lex = parse_lexicon("1F44D,10,0,2,8\n1F468 200D 1F469,10,0,0,10\n");
  CHECK(lex.lookup("👍").value() == doctest::Approx(0.8));
  CHECK(lex.lookup("👍🏽").value() == doctest::Approx(0.8));   // skin tone stripped
  CHECK(lex.lookup("👍️").value() == doctest::Approx(0.8));  // vs16 stripped
  CHECK(lex.lookup("👨‍👩").value() == doctest::Approx(1.0));  // exact ZWJ pair
  // ZWJ triple is unknown even though a prefix pair exists; base 👨 is unknown too
  CHECK(!lex.lookup("👨‍👩‍👧").has_value());
}

TEST_CASE("avg_score stays in [-1, 1] and ignores order") {
  const auto lex = parse_lexicon("1F602,10,2,3,5\n2764,4,0,0,4\n1F4A9,6,6,0,0\n");
  Rng rng(5);
  const std::vector<std::string> pool = {"😂", "❤", "💩", "🌚"};
  for (int i = 0; i < 200; ++i) {
    std::vector<std::string> emoji;
    const std::size_t n = rng.next_below(8);
    for (std::size_t j = 0; j < n; ++j)
      emoji.push_back(pool[rng.next_below(pool.size())]);
    const auto block = emoji_features(emoji, lex);
    CHECK(block.avg_score >= -1.0);
    CHECK(block.avg_score <= 1.0);
    CHECK(block.n_positive + block.n_negative <= block.n_emoji);

    auto shuffled = emoji;
    rng.shuffle(shuffled);
    const auto again = emoji_features(shuffled, lex);
    CHECK(again.n_emoji == block.n_emoji);
    CHECK(again.avg_score == doctest::Approx(block.avg_score).epsilon(1e-12));
    CHECK(again.n_positive == block.n_positive);
    CHECK(again.n_negative == block.n_negative);
  }
}

TEST_CASE("adding an unknown emoji pulls avg_score toward zero") {
  const auto lex = parse_lexicon("1F602,10,2,3,5\n1F4A9,6,6,0,0\n");
  Rng rng(6);
  const std::vector<std::string> pool = {"😂", "💩"};
  for (int i = 0; i < 100; ++i) {
    std::vector<std::string> emoji;
    const std::size_t n = 1 + rng.next_below(6);
    for (std::size_t j = 0; j < n; ++j)
      emoji.push_back(pool[rng.next_below(pool.size())]);
    const double before = emoji_features(emoji, lex).avg_score;
    emoji.push_back("🌚");  // unknown, scores 0
    const double after = emoji_features(emoji, lex).avg_score;
    if (before == 0.0)
      CHECK(after == 0.0);
    else
      CHECK(std::abs(after) < std::abs(before));
  }
}
