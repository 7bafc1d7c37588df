#include "doctest.h"

#include <sstream>

#include "support/random_text.hpp"
#include "uzopinion/error.hpp"
#include "uzopinion/rng.hpp"
#include "uzopinion/segment.hpp"
#include "uzopinion/translit.hpp"
#include "uzopinion/unicode.hpp"

using namespace uzopinion;
using namespace uzopinion::testsupport;

TEST_CASE("utf8 round trip and error recovery") {
  const std::string text = "Zoʻr кино 😂 1️⃣";
  CHECK(uni::encode_utf8(uni::decode_utf8(text)) == text);

  const std::string bad = "ok\xC3(";  // truncated two-byte sequence
  const auto cps = uni::decode_utf8(bad);
  REQUIRE(cps.size() == 4);
  CHECK(cps[2] == uni::kReplacement);
  CHECK(cps[3] == U'(');
}

TEST_CASE("grapheme clusters keep emoji sequences whole") {
  CHECK(uni::grapheme_count("kino") == 4);
  CHECK(uni::grapheme_count("😂") == 1);
  CHECK(uni::grapheme_count("👨‍👩‍👧") == 1);    // ZWJ family
  CHECK(uni::grapheme_count("👍🏽") == 1);        // skin tone
  CHECK(uni::grapheme_count("2️⃣") == 1);        // keycap
  CHECK(uni::grapheme_count("🇺🇿") == 1);        // flag pair
  CHECK(uni::grapheme_count("🇺🇿🇺🇿") == 2);     // two flag pairs
  CHECK(uni::grapheme_count("é") == 1);   // combining accent
  CHECK(uni::grapheme_count("oʻ") == 2);        // the modifier letter is its own unit
}

TEST_CASE("transliteration follows the 1995 Latin alphabet") {
  CHECK(transliterate("кино").text == "kino");
  CHECK(transliterate("film").text == "film");
  CHECK(transliterate("Ўзбек").text == "Oʻzbek");
  CHECK(transliterate("шаҳар").text == "shahar");
  CHECK(transliterate("чиройли").text == "chiroyli");
  CHECK(transliterate("ғалаба").text == "gʻalaba");
  CHECK(transliterate("қизиқ").text == "qiziq");
  CHECK(transliterate("юлдуз").text == "yulduz");
  CHECK(transliterate("ёмон").text == "yomon");
  CHECK(transliterate("цирк").text == "tsirk");
  CHECK(transliterate("объект").text == "obʼekt");  // ъ is not a vowel
  CHECK(transliterate("фильм").text == "film");
}

TEST_CASE("ye rule: word start or after a vowel") {
  CHECK(transliterate("Ер").text == "Yer");        // word start
  CHECK(transliterate("мен").text == "men");       // after consonant
  CHECK(transliterate("оила ел").text == "oila yel");
  CHECK(transliterate("дае").text == "daye");      // after vowel
  CHECK(transliterate("53е").text == "53ye");      // digits do not make a word
}

TEST_CASE("unmappable Cyrillic passes through with a warning") {
  const auto res = transliterate("киноѕ");  // U+0455 has no rule
  CHECK(res.text == "kinoѕ");
  REQUIRE(res.warnings.size() == 1);
  CHECK(res.warnings[0].code_point == U'ѕ');
  CHECK(res.warnings[0].message().find("0455") != std::string::npos);
}

TEST_CASE("transliteration is idempotent on random mixed text") {
  Rng rng(2024);
  for (int i = 0; i < 200; ++i) {
    const std::string text = random_mixed_text(rng);
    const std::string once = transliterate(text).text;
    CHECK(transliterate(once).text == once);
  }
}

TEST_CASE("rule table file round trip matches the builtin table") {
  const auto from_file = TranslitTable::load(std::string(UZOPINION_DATA_DIR) +
                                             "/translit_uz.tsv");
  CHECK(from_file == TranslitTable::builtin());
}

TEST_CASE("rule table parse errors name the line") {
  std::istringstream bad_hex("04ZZ\tx\n");
  CHECK_THROWS_WITH_AS(TranslitTable::parse(bad_hex, "rules.tsv"),
                       doctest::Contains("rules.tsv:1"), Error);
  std::istringstream bad_ctx("0435\te\tsometimes\n");
  CHECK_THROWS_WITH_AS(TranslitTable::parse(bad_ctx, "rules.tsv"),
                       doctest::Contains("unknown context"), Error);
  std::istringstream one_field("0435\n");
  CHECK_THROWS_AS(TranslitTable::parse(one_field, "rules.tsv"), Error);
}

TEST_CASE("segmentation splits words, punctuation, specials, digits, emoji") {
  const auto seg = segment("Zoʻr kino! 😂");
  CHECK(seg.graphemes_total == 12);
  CHECK(seg.graphemes_no_space == 10);
  REQUIRE(seg.segments.size() == 4);
  CHECK(seg.segments[0] == Segment{SegmentKind::word, "Zoʻr"});
  CHECK(seg.segments[1] == Segment{SegmentKind::word, "kino"});
  CHECK(seg.segments[2] == Segment{SegmentKind::punctuation, "!"});
  CHECK(seg.segments[3] == Segment{SegmentKind::emoji, "😂"});

  const auto single = segment("❤");
  CHECK(single.graphemes_total == 1);
  REQUIRE(single.segments.size() == 1);
  CHECK(single.segments[0].kind == SegmentKind::emoji);

  const auto mixed = segment("a-b (c)");
  REQUIRE(mixed.segments.size() == 6);
  CHECK(mixed.segments[0] == Segment{SegmentKind::word, "a"});
  CHECK(mixed.segments[1] == Segment{SegmentKind::special, "-"});
  CHECK(mixed.segments[2] == Segment{SegmentKind::word, "b"});
  CHECK(mixed.segments[3] == Segment{SegmentKind::special, "("});
  CHECK(mixed.segments[4] == Segment{SegmentKind::word, "c"});
  CHECK(mixed.segments[5] == Segment{SegmentKind::special, ")"});
}

TEST_CASE("apostrophes join words only between letters") {
  const auto seg = segment("don't 'quoted' togʻ oʻzi");
  REQUIRE(seg.segments.size() == 6);
  CHECK(seg.segments[0] == Segment{SegmentKind::word, "don't"});
  CHECK(seg.segments[1] == Segment{SegmentKind::other, "'"});
  CHECK(seg.segments[2] == Segment{SegmentKind::word, "quoted"});
  CHECK(seg.segments[3] == Segment{SegmentKind::other, "'"});
  CHECK(seg.segments[4] == Segment{SegmentKind::word, "togʻ"});
  CHECK(seg.segments[5] == Segment{SegmentKind::word, "oʻzi"});
}

TEST_CASE("bare digits and keycaps are distinct") {
  const auto seg = segment("1 2️⃣ #tag #️⃣");
  REQUIRE(seg.segments.size() == 5);
  CHECK(seg.segments[0].kind == SegmentKind::digit_run);
  CHECK(seg.segments[1].kind == SegmentKind::emoji);
  CHECK(seg.segments[2].kind == SegmentKind::special);  // bare #
  CHECK(seg.segments[3].kind == SegmentKind::word);
  CHECK(seg.segments[4].kind == SegmentKind::emoji);    // keycap #
}

TEST_CASE("segment partition reconstructs the text") {
  Rng rng(77);
  for (int i = 0; i < 300; ++i) {
    const std::string text = transliterate(random_mixed_text(rng)).text;
    const auto seg = segment(text);

    std::string rebuilt;
    for (const auto& s : seg.segments) rebuilt += s.content;
    std::string no_space;
    std::size_t space_clusters = 0;
    for (const auto& cl : uni::grapheme_clusters(text)) {
      const auto cps = uni::decode_utf8(cl);
      if (!cps.empty() && uni::is_space(cps.front()))
        ++space_clusters;
      else
        no_space += cl;
    }
    CHECK(rebuilt == no_space);
    CHECK(seg.graphemes_total == seg.graphemes_no_space + space_clusters);

    std::size_t segment_clusters = 0;
    for (const auto& s : seg.segments)
      segment_clusters += uni::grapheme_count(s.content);
    CHECK(segment_clusters == seg.graphemes_no_space);
  }
}

TEST_CASE("emoji segments are whole grapheme clusters") {
  Rng rng(99);
  for (int i = 0; i < 300; ++i) {
    const std::string text = random_mixed_text(rng);
    for (const auto& s : segment(text).segments) {
      if (s.kind == SegmentKind::emoji) CHECK(uni::grapheme_count(s.content) == 1);
    }
  }
}
