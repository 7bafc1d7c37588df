#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace uzopinion {

/// Replacement context for a transliteration rule. `ye_position` fires when
/// the source code point sits at a word start or right after a vowel, which
/// is how Cyrillic е splits into "ye"/"e" in the 1995 Uzbek Latin alphabet.
enum class TranslitContext { any, ye_position };

struct TranslitRule {
  std::u32string from;  // one or more source code points
  std::string to;       // UTF-8 replacement, may be empty
  TranslitContext context = TranslitContext::any;
};

/// Rule table for script conversion. Rules are grouped by leading code
/// point; longer sources win, context-specific rules are tried before the
/// unconditional one.
class TranslitTable {
 public:
  /// Built-in Cyrillic → 1995 Uzbek Latin table.
  static const TranslitTable& builtin();

  /// Parses the TSV rule format: `source hex code point(s) <TAB> replacement
  /// <TAB> optional context`. Lines starting with # and blank lines are
  /// skipped. Context is either empty, "any" or "ye_position".
  static TranslitTable parse(std::istream& in, std::string_view source_name);
  static TranslitTable load(const std::filesystem::path& path);

  void add(TranslitRule rule);
  const std::vector<TranslitRule>* rules_for(char32_t head) const;
  std::size_t size() const;

  bool operator==(const TranslitTable& other) const = default;

 private:
  std::map<char32_t, std::vector<TranslitRule>> by_head_;
  std::size_t count_ = 0;
};

struct TranslitWarning {
  std::size_t code_point_index = 0;  // offset into the decoded input
  char32_t code_point = 0;

  std::string message() const;
};

struct TranslitResult {
  std::string text;
  std::vector<TranslitWarning> warnings;  // Cyrillic code points left as-is
};

/// Converts Cyrillic or mixed-script text to Latin script. Latin input
/// passes through unchanged. Cyrillic code points missing from the table
/// pass through and are reported in `warnings`.
TranslitResult transliterate(std::string_view text,
                             const TranslitTable& table = TranslitTable::builtin());

}  // namespace uzopinion
