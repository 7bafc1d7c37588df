#include "uzopinion/unicode.hpp"

#include <algorithm>
#include <array>

namespace uzopinion::uni {

namespace {

struct Range {
  char32_t lo;
  char32_t hi;
};

bool in_ranges(const Range* first, const Range* last, char32_t cp) {
  auto it = std::upper_bound(first, last, cp,
                             [](char32_t v, const Range& r) { return v < r.lo; });
  return it != first && cp <= (it - 1)->hi;
}

// Unicode Emoji property (emoji-data range table).
constexpr Range kEmojiRanges[] = {
    {0x0023, 0x0023}, {0x002A, 0x002A}, {0x0030, 0x0039}, {0x00A9, 0x00A9},
    {0x00AE, 0x00AE}, {0x203C, 0x203C}, {0x2049, 0x2049}, {0x2122, 0x2122},
    {0x2139, 0x2139}, {0x2194, 0x2199}, {0x21A9, 0x21AA}, {0x231A, 0x231B},
    {0x2328, 0x2328}, {0x23CF, 0x23CF}, {0x23E9, 0x23F3}, {0x23F8, 0x23FA},
    {0x24C2, 0x24C2}, {0x25AA, 0x25AB}, {0x25B6, 0x25B6}, {0x25C0, 0x25C0},
    {0x25FB, 0x25FE}, {0x2600, 0x2604}, {0x260E, 0x260E}, {0x2611, 0x2611},
    {0x2614, 0x2615}, {0x2618, 0x2618}, {0x261D, 0x261D}, {0x2620, 0x2620},
    {0x2622, 0x2623}, {0x2626, 0x2626}, {0x262A, 0x262A}, {0x262E, 0x262F},
    {0x2638, 0x263A}, {0x2640, 0x2640}, {0x2642, 0x2642}, {0x2648, 0x2653},
    {0x265F, 0x2660}, {0x2663, 0x2663}, {0x2665, 0x2666}, {0x2668, 0x2668},
    {0x267B, 0x267B}, {0x267E, 0x267F}, {0x2692, 0x2697}, {0x2699, 0x2699},
    {0x269B, 0x269C}, {0x26A0, 0x26A1}, {0x26A7, 0x26A7}, {0x26AA, 0x26AB},
    {0x26B0, 0x26B1}, {0x26BD, 0x26BE}, {0x26C4, 0x26C5}, {0x26C8, 0x26C8},
    {0x26CE, 0x26CF}, {0x26D1, 0x26D1}, {0x26D3, 0x26D4}, {0x26E9, 0x26EA},
    {0x26F0, 0x26F5}, {0x26F7, 0x26FA}, {0x26FD, 0x26FD}, {0x2702, 0x2702},
    {0x2705, 0x2705}, {0x2708, 0x270D}, {0x270F, 0x270F}, {0x2712, 0x2712},
    {0x2714, 0x2714}, {0x2716, 0x2716}, {0x271D, 0x271D}, {0x2721, 0x2721},
    {0x2728, 0x2728}, {0x2733, 0x2734}, {0x2744, 0x2744}, {0x2747, 0x2747},
    {0x274C, 0x274C}, {0x274E, 0x274E}, {0x2753, 0x2755}, {0x2757, 0x2757},
    {0x2763, 0x2764}, {0x2795, 0x2797}, {0x27A1, 0x27A1}, {0x27B0, 0x27B0},
    {0x27BF, 0x27BF}, {0x2934, 0x2935}, {0x2B05, 0x2B07}, {0x2B1B, 0x2B1C},
    {0x2B50, 0x2B50}, {0x2B55, 0x2B55}, {0x3030, 0x3030}, {0x303D, 0x303D},
    {0x3297, 0x3297}, {0x3299, 0x3299}, {0x1F004, 0x1F004}, {0x1F0CF, 0x1F0CF},
    {0x1F170, 0x1F171}, {0x1F17E, 0x1F17F}, {0x1F18E, 0x1F18E},
    {0x1F191, 0x1F19A}, {0x1F1E6, 0x1F1FF}, {0x1F201, 0x1F202},
    {0x1F21A, 0x1F21A}, {0x1F22F, 0x1F22F}, {0x1F232, 0x1F23A},
    {0x1F250, 0x1F251}, {0x1F300, 0x1F321}, {0x1F324, 0x1F393},
    {0x1F396, 0x1F397}, {0x1F399, 0x1F39B}, {0x1F39E, 0x1F3F0},
    {0x1F3F3, 0x1F3F5}, {0x1F3F7, 0x1F4FD}, {0x1F4FF, 0x1F53D},
    {0x1F549, 0x1F54E}, {0x1F550, 0x1F567}, {0x1F56F, 0x1F570},
    {0x1F573, 0x1F57A}, {0x1F587, 0x1F587}, {0x1F58A, 0x1F58D},
    {0x1F590, 0x1F590}, {0x1F595, 0x1F596}, {0x1F5A4, 0x1F5A5},
    {0x1F5A8, 0x1F5A8}, {0x1F5B1, 0x1F5B2}, {0x1F5BC, 0x1F5BC},
    {0x1F5C2, 0x1F5C4}, {0x1F5D1, 0x1F5D3}, {0x1F5DC, 0x1F5DE},
    {0x1F5E1, 0x1F5E1}, {0x1F5E3, 0x1F5E3}, {0x1F5E8, 0x1F5E8},
    {0x1F5EF, 0x1F5EF}, {0x1F5F3, 0x1F5F3}, {0x1F5FA, 0x1F64F},
    {0x1F680, 0x1F6C5}, {0x1F6CB, 0x1F6D2}, {0x1F6D5, 0x1F6D7},
    {0x1F6DC, 0x1F6E5}, {0x1F6E9, 0x1F6E9}, {0x1F6EB, 0x1F6EC},
    {0x1F6F0, 0x1F6F0}, {0x1F6F3, 0x1F6FC}, {0x1F7E0, 0x1F7EB},
    {0x1F7F0, 0x1F7F0}, {0x1F90C, 0x1F93A}, {0x1F93C, 0x1F945},
    {0x1F947, 0x1F9FF}, {0x1FA70, 0x1FA7C}, {0x1FA80, 0x1FA88},
    {0x1FA90, 0x1FABD}, {0x1FABF, 0x1FAC5}, {0x1FACE, 0x1FADB},
    {0x1FAE0, 0x1FAE8}, {0x1FAF0, 0x1FAF8},
};

constexpr Range kCombiningRanges[] = {
    {0x0300, 0x036F},   // combining diacritical marks
    {0x0483, 0x0489},   // cyrillic combining marks
    {0x200C, 0x200C},   // zero width non-joiner
    {0x1AB0, 0x1AFF},   {0x1DC0, 0x1DFF},
    {0x20D0, 0x20FF},   // marks for symbols, incl. enclosing keycap
    {0xFE00, 0xFE0F},   // variation selectors
    {0xFE20, 0xFE2F},
    {0x1F3FB, 0x1F3FF},  // emoji skin-tone modifiers
    {0xE0020, 0xE007F},  // tag characters (flag sequences)
};

bool is_control(char32_t cp) {
  return cp < 0x20 || cp == 0x7F || (cp >= 0x80 && cp <= 0x9F);
}

}  // namespace

std::u32string decode_utf8(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t i = 0;
  const auto n = text.size();
  while (i < n) {
    const auto b0 = static_cast<unsigned char>(text[i]);
    char32_t cp = kReplacement;
    std::size_t len = 1;
    if (b0 < 0x80) {
      cp = b0;
    } else if ((b0 & 0xE0) == 0xC0) {
      cp = b0 & 0x1F;
      len = 2;
    } else if ((b0 & 0xF0) == 0xE0) {
      cp = b0 & 0x0F;
      len = 3;
    } else if ((b0 & 0xF8) == 0xF0) {
      cp = b0 & 0x07;
      len = 4;
    } else {
      out.push_back(kReplacement);
      ++i;
      continue;
    }
    if (i + len > n) {
      out.push_back(kReplacement);
      ++i;
      continue;
    }
    bool ok = true;
    for (std::size_t k = 1; k < len; ++k) {
      const auto bk = static_cast<unsigned char>(text[i + k]);
      if ((bk & 0xC0) != 0x80) {
        ok = false;
        break;
      }
      cp = (cp << 6) | (bk & 0x3F);
    }
    if (!ok || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF) ||
        (len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
        (len == 4 && cp < 0x10000)) {
      out.push_back(kReplacement);
      ++i;
      continue;
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string encode_utf8(std::u32string_view text) {
  std::string out;
  out.reserve(text.size() * 2);
  for (char32_t cp : text) append_utf8(out, cp);
  return out;
}

bool is_space(char32_t cp) {
  return cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r' ||
         cp == U'\f' || cp == U'\v' || cp == 0x00A0 ||
         (cp >= 0x2000 && cp <= 0x200A) || cp == 0x2028 || cp == 0x2029 ||
         cp == 0x202F || cp == 0x205F || cp == 0x3000;
}

bool is_digit(char32_t cp) { return cp >= U'0' && cp <= U'9'; }

bool is_cyrillic(char32_t cp) {
  return (cp >= 0x0400 && cp <= 0x052F) || (cp >= 0x2DE0 && cp <= 0x2DFF) ||
         (cp >= 0xA640 && cp <= 0xA69F);
}

bool is_letter(char32_t cp) {
  if ((cp >= U'A' && cp <= U'Z') || (cp >= U'a' && cp <= U'z')) return true;
  if (cp == 0x00D7 || cp == 0x00F7) return false;
  if (cp >= 0x00C0 && cp <= 0x00FF) return true;
  if (cp >= 0x0100 && cp <= 0x024F) return true;  // latin extended A/B
  if (cp >= 0x0250 && cp <= 0x02AF) return true;  // IPA extensions
  if (cp >= 0x02B0 && cp <= 0x02C1) return true;  // modifier letters (ʻ, ʼ)
  if (cp >= 0x0370 && cp <= 0x03FF && cp != 0x0387) return true;
  if (is_cyrillic(cp) && !(cp >= 0x0483 && cp <= 0x0489)) return true;
  return false;
}

bool is_upper(char32_t cp) {
  if (cp >= U'A' && cp <= U'Z') return true;
  if (cp >= 0x00C0 && cp <= 0x00DE && cp != 0x00D7) return true;
  if (cp >= 0x0400 && cp <= 0x042F) return true;
  if (cp >= 0x0460 && cp <= 0x052F) return (cp % 2) == 0;
  if (cp >= 0x0100 && cp <= 0x0177) return (cp % 2) == 0;
  return false;
}

bool is_lower(char32_t cp) {
  if (cp >= U'a' && cp <= U'z') return true;
  if (cp >= 0x00DF && cp <= 0x00FF && cp != 0x00F7) return true;
  if (cp >= 0x0430 && cp <= 0x045F) return true;
  if (cp >= 0x0460 && cp <= 0x052F) return (cp % 2) == 1;
  if (cp >= 0x0100 && cp <= 0x0177) return (cp % 2) == 1;
  if (cp >= 0x0250 && cp <= 0x02AF) return true;
  return false;
}

bool is_combining(char32_t cp) {
  return in_ranges(std::begin(kCombiningRanges), std::end(kCombiningRanges), cp);
}

bool is_emoji(char32_t cp) {
  return in_ranges(std::begin(kEmojiRanges), std::end(kEmojiRanges), cp);
}

bool is_pictographic(char32_t cp) {
  if (cp == U'#' || cp == U'*' || (cp >= U'0' && cp <= U'9')) return false;
  return is_emoji(cp);
}

bool is_emoji_modifier(char32_t cp) { return cp >= 0x1F3FB && cp <= 0x1F3FF; }

bool is_regional_indicator(char32_t cp) { return cp >= 0x1F1E6 && cp <= 0x1F1FF; }

char32_t to_lower(char32_t cp) {
  if (cp >= U'A' && cp <= U'Z') return cp + 0x20;
  if (cp >= 0x00C0 && cp <= 0x00DE && cp != 0x00D7) return cp + 0x20;
  if (cp >= 0x0410 && cp <= 0x042F) return cp + 0x20;
  if (cp >= 0x0400 && cp <= 0x040F) return cp + 0x50;
  if (cp >= 0x0460 && cp <= 0x052F && (cp % 2) == 0) return cp + 1;
  if (cp >= 0x0100 && cp <= 0x0177 && (cp % 2) == 0) return cp + 1;
  return cp;
}

std::string fold_case(std::string_view text) {
  const auto cps = decode_utf8(text);
  std::string out;
  out.reserve(text.size());
  for (char32_t cp : cps) append_utf8(out, to_lower(cp));
  return out;
}

std::vector<std::string> grapheme_clusters(std::string_view text) {
  const auto cps = decode_utf8(text);
  std::vector<std::string> out;
  const std::size_t n = cps.size();
  std::size_t i = 0;
  while (i < n) {
    const std::size_t start = i;
    const char32_t head = cps[i++];
    if (head == U'\r' && i < n && cps[i] == U'\n') {
      ++i;
    } else if (!is_control(head)) {
      bool pict = is_pictographic(head);
      int ri_run = is_regional_indicator(head) ? 1 : 0;
      bool after_zwj = false;
      while (i < n) {
        const char32_t next = cps[i];
        if (next == kZwj) {
          after_zwj = true;
          ++i;
          continue;
        }
        if (is_combining(next)) {
          after_zwj = false;
          ++i;
          continue;
        }
        if (after_zwj && pict && is_pictographic(next)) {
          after_zwj = false;
          ++i;
          continue;
        }
        if (ri_run == 1 && is_regional_indicator(next)) {
          ri_run = 2;
          ++i;
          continue;
        }
        break;
      }
    }
    out.push_back(encode_utf8(std::u32string_view(cps).substr(start, i - start)));
  }
  return out;
}

std::size_t grapheme_count(std::string_view text) {
  return grapheme_clusters(text).size();
}

}  // namespace uzopinion::uni
