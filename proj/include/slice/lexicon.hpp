#ifndef SLICE_LEXICON_HPP
#define SLICE_LEXICON_HPP

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace slice {

/// Candidate languages for code attribution and AST comparison.
enum class Language { sql, python, csharp };

inline constexpr std::array<Language, 3> kAllLanguages = {
    Language::sql, Language::python, Language::csharp};

std::string_view language_name(Language language);
Language parse_language(std::string_view name); // throws UnsupportedLanguage

/// Reserved words and signal tokens for one language. SQL matches
/// case-insensitively; Python and C# match exactly.
struct LanguageLexicon {
    Language language = Language::sql;
    bool case_sensitive = true;
    std::unordered_set<std::string> keywords; // lowercased when !case_sensitive

    bool contains(std::string_view token) const;
};

using LexiconSet = std::vector<LanguageLexicon>;

/// The shipped keyword lists: SQL reserved words plus aggregate functions,
/// Python reserved words plus dataframe-API signals, C# reserved words plus
/// LINQ signals.
const LexiconSet& builtin_lexicons();

/// Loads lexicons from a config file with one section per language
/// (name, case-sensitivity, keyword list). All three candidate languages
/// must be present.
LexiconSet load_lexicons(const std::filesystem::path& path);

/// True when the token is a keyword in any of the given lexicons.
bool is_any_keyword(std::string_view token, const LexiconSet& lexicons);

} // namespace slice

#endif // SLICE_LEXICON_HPP
