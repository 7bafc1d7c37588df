#include "uzopinion/translit.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "uzopinion/error.hpp"
#include "uzopinion/unicode.hpp"

namespace uzopinion {

namespace {

bool is_vowel(char32_t cp) {
  switch (cp) {
    case U'a': case U'e': case U'i': case U'o': case U'u':
    case U'A': case U'E': case U'I': case U'O': case U'U':
    case U'а': case U'е': case U'ё': case U'и': case U'о': case U'у':
    case U'э': case U'ю': case U'я': case U'ў': case U'ы':
    case U'А': case U'Е': case U'Ё': case U'И': case U'О': case U'У':
    case U'Э': case U'Ю': case U'Я': case U'Ў': case U'Ы':
      return true;
    default:
      return false;
  }
}

// Cyrillic → 1995 Uzbek Latin. Same TSV format as external rule files;
// oʻ/gʻ use U+02BB, ъ maps to U+02BC. е/Е carry the positional ye-rule.
constexpr std::string_view kBuiltinRules = R"(# Cyrillic -> Uzbek Latin (1995 alphabet)
0430	a
0431	b
0432	v
0433	g
0434	d
0435	ye	ye_position
0435	e
0451	yo
0436	j
0437	z
0438	i
0439	y
043A	k
043B	l
043C	m
043D	n
043E	o
043F	p
0440	r
0441	s
0442	t
0443	u
0444	f
0445	x
0446	ts
0447	ch
0448	sh
0449	sh
044A	ʼ
044B	i
044C		any
044D	e
044E	yu
044F	ya
045E	oʻ
0493	gʻ
049B	q
04B3	h
0410	A
0411	B
0412	V
0413	G
0414	D
0415	Ye	ye_position
0415	E
0401	Yo
0416	J
0417	Z
0418	I
0419	Y
041A	K
041B	L
041C	M
041D	N
041E	O
041F	P
0420	R
0421	S
0422	T
0423	U
0424	F
0425	X
0426	Ts
0427	Ch
0428	Sh
0429	Sh
042A	ʼ
042B	I
042C		any
042D	E
042E	Yu
042F	Ya
040E	Oʻ
0492	Gʻ
049A	Q
04B2	H
)";

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find('\t', start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

std::u32string parse_source(const std::string& field, std::string_view where,
                            std::size_t line_no) {
  std::u32string from;
  std::istringstream iss(field);
  std::string hex;
  while (iss >> hex) {
    char32_t cp = 0;
    for (char c : hex) {
      int digit;
      if (c >= '0' && c <= '9') digit = c - '0';
      else if (c >= 'a' && c <= 'f') digit = c - 'a' + 10;
      else if (c >= 'A' && c <= 'F') digit = c - 'A' + 10;
      else
        throw Error(std::string(where) + ":" + std::to_string(line_no) +
                    ": bad code point '" + hex + "'");
      cp = cp * 16 + static_cast<char32_t>(digit);
    }
    if (cp == 0 || cp > 0x10FFFF)
      throw Error(std::string(where) + ":" + std::to_string(line_no) +
                  ": code point out of range '" + hex + "'");
    from.push_back(cp);
  }
  if (from.empty())
    throw Error(std::string(where) + ":" + std::to_string(line_no) +
                ": empty source field");
  return from;
}

}  // namespace

void TranslitTable::add(TranslitRule rule) {
  auto& bucket = by_head_[rule.from.front()];
  bucket.push_back(std::move(rule));
  // longest source first; positional rule before the unconditional one
  std::stable_sort(bucket.begin(), bucket.end(),
                   [](const TranslitRule& a, const TranslitRule& b) {
                     if (a.from.size() != b.from.size())
                       return a.from.size() > b.from.size();
                     return a.context == TranslitContext::ye_position &&
                            b.context == TranslitContext::any;
                   });
  ++count_;
}

const std::vector<TranslitRule>* TranslitTable::rules_for(char32_t head) const {
  const auto it = by_head_.find(head);
  return it == by_head_.end() ? nullptr : &it->second;
}

std::size_t TranslitTable::size() const { return count_; }

TranslitTable TranslitTable::parse(std::istream& in, std::string_view source_name) {
  TranslitTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split_tabs(line);
    if (fields.size() < 2 || fields.size() > 3)
      throw Error(std::string(source_name) + ":" + std::to_string(line_no) +
                  ": expected 2 or 3 tab-separated fields");
    TranslitRule rule;
    rule.from = parse_source(fields[0], source_name, line_no);
    rule.to = fields[1];
    if (fields.size() == 3 && !fields[2].empty() && fields[2] != "any") {
      if (fields[2] == "ye_position")
        rule.context = TranslitContext::ye_position;
      else
        throw Error(std::string(source_name) + ":" + std::to_string(line_no) +
                    ": unknown context '" + fields[2] + "'");
    }
    table.add(std::move(rule));
  }
  return table;
}

TranslitTable TranslitTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open transliteration table: " + path.string());
  return parse(in, path.string());
}

const TranslitTable& TranslitTable::builtin() {
  static const TranslitTable table = [] {
    std::istringstream in{std::string(kBuiltinRules)};
    return parse(in, "<builtin>");
  }();
  return table;
}

std::string TranslitWarning::message() const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "unmapped Cyrillic code point U+%04X at index %zu",
                static_cast<unsigned>(code_point), code_point_index);
  return buf;
}

TranslitResult transliterate(std::string_view text, const TranslitTable& table) {
  const auto cps = uni::decode_utf8(text);
  TranslitResult result;
  result.text.reserve(text.size());
  const std::size_t n = cps.size();
  std::size_t i = 0;
  while (i < n) {
    const char32_t head = cps[i];
    const TranslitRule* match = nullptr;
    if (const auto* rules = table.rules_for(head)) {
      for (const auto& rule : *rules) {
        if (i + rule.from.size() > n) continue;
        if (std::u32string_view(cps).substr(i, rule.from.size()) != rule.from)
          continue;
        if (rule.context == TranslitContext::ye_position) {
          const bool word_initial = i == 0 || !uni::is_letter(cps[i - 1]);
          if (!word_initial && !is_vowel(cps[i - 1])) continue;
        }
        match = &rule;
        break;
      }
    }
    if (match) {
      result.text += match->to;
      i += match->from.size();
    } else {
      if (uni::is_cyrillic(head))
        result.warnings.push_back({i, head});
      uni::append_utf8(result.text, head);
      ++i;
    }
  }
  return result;
}

}  // namespace uzopinion
