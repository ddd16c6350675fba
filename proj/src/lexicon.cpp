#include "slice/lexicon.hpp"

#include "slice/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>

namespace slice {

namespace {

std::string to_lower(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

LanguageLexicon make_lexicon(Language language, bool case_sensitive,
                             std::initializer_list<std::string_view> words) {
    LanguageLexicon lexicon;
    lexicon.language = language;
    lexicon.case_sensitive = case_sensitive;
    for (std::string_view w : words) {
        lexicon.keywords.insert(case_sensitive ? std::string(w) : to_lower(w));
    }
    return lexicon;
}

LexiconSet make_builtin() {
    LexiconSet set;
    set.push_back(make_lexicon(
        Language::sql, false,
        {
            "SELECT", "FROM", "WHERE", "GROUP", "BY", "HAVING", "ORDER",
            "JOIN", "INNER", "LEFT", "RIGHT", "FULL", "OUTER", "CROSS", "ON",
            "AS", "AND", "OR", "NOT", "NULL", "IN", "IS", "BETWEEN", "LIKE",
            "EXISTS", "UNION", "ALL", "DISTINCT", "CASE", "WHEN", "THEN",
            "ELSE", "END", "CAST", "CONVERT", "INSERT", "INTO", "VALUES",
            "UPDATE", "DELETE", "CREATE", "TABLE", "VIEW", "WITH", "OVER",
            "PARTITION", "LIMIT", "OFFSET", "TOP", "ASC", "DESC", "SET",
            "SUM", "COUNT", "AVG", "MIN", "MAX", "PIVOT", "UNPIVOT",
            "COALESCE", "NULLIF", "ROUND", "ABS", "CONCAT", "SUBSTRING",
            "TRIM", "UPPER", "LOWER", "DATEADD", "DATEDIFF", "GETDATE",
            "ROW_NUMBER", "RANK", "DENSE_RANK", "STDEV", "VARIANCE",
        }));
    set.push_back(make_lexicon(
        Language::python, true,
        {
            "and", "as", "assert", "async", "await", "break", "class",
            "continue", "def", "del", "elif", "else", "except", "finally",
            "for", "from", "global", "if", "import", "in", "is", "lambda",
            "nonlocal", "not", "or", "pass", "raise", "return", "try",
            "while", "with", "yield", "True", "False", "None",
            // dataframe-API signal tokens
            "withColumn", "withColumnRenamed", "filter", "groupBy", "agg",
            "alias", "lit", "col", "when", "otherwise", "isin", "isNull",
            "isNotNull", "dropDuplicates", "orderBy", "selectExpr", "udf",
            "to_timestamp", "to_date", "initcap", "regexp_replace",
            "dropna", "fillna", "groupby", "pivot_table", "merge", "apply",
            "assign", "rename", "astype", "read_csv", "read_parquet",
        }));
    set.push_back(make_lexicon(
        Language::csharp, true,
        {
            "abstract", "base", "bool", "break", "byte", "case", "catch",
            "char", "checked", "class", "const", "continue", "decimal",
            "default", "delegate", "do", "double", "else", "enum", "event",
            "explicit", "extern", "false", "finally", "fixed", "float",
            "foreach", "goto", "implicit", "int", "interface", "internal",
            "lock", "long", "namespace", "new", "null", "object", "operator",
            "out", "override", "params", "private", "protected", "public",
            "readonly", "ref", "sbyte", "sealed", "short", "sizeof",
            "stackalloc", "static", "string", "struct", "switch", "this",
            "throw", "true", "try", "typeof", "uint", "ulong", "unchecked",
            "unsafe", "ushort", "using", "var", "virtual", "void",
            "volatile", "while",
            // LINQ signal tokens
            "orderby", "ascending", "descending", "equals", "let", "into",
            "Select", "Where", "GroupBy", "OrderBy", "OrderByDescending",
            "ThenBy", "Join", "Aggregate", "Sum", "Count", "Average",
            "First", "FirstOrDefault", "ToList", "ToArray", "ToDictionary",
            "SelectMany", "Distinct",
        }));
    return set;
}

} // namespace

std::string_view language_name(Language language) {
    switch (language) {
    case Language::sql: return "sql";
    case Language::python: return "python";
    case Language::csharp: return "csharp";
    }
    return "unknown";
}

Language parse_language(std::string_view name) {
    std::string lowered = to_lower(name);
    if (lowered == "sql") return Language::sql;
    if (lowered == "python" || lowered == "pyspark") return Language::python;
    if (lowered == "csharp" || lowered == "c#" || lowered == "cs") return Language::csharp;
    throw Error(ErrorCode::UnsupportedLanguage, "unknown language \"" + std::string(name) + "\"");
}

bool LanguageLexicon::contains(std::string_view token) const {
    if (case_sensitive) {
        return keywords.contains(std::string(token));
    }
    return keywords.contains(to_lower(token));
}

const LexiconSet& builtin_lexicons() {
    static const LexiconSet lexicons = make_builtin();
    return lexicons;
}

LexiconSet load_lexicons(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot open lexicon file " + path.string());
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ConfigError,
                    "lexicon file " + path.string() + " is not valid JSON: " + e.what());
    }
    if (!doc.contains("languages") || !doc["languages"].is_array()) {
        throw Error(ErrorCode::ConfigError, "missing config key languages");
    }

    LexiconSet set;
    for (const auto& entry : doc["languages"]) {
        for (const char* key : {"name", "case_sensitive", "keywords"}) {
            if (!entry.contains(key)) {
                throw Error(ErrorCode::ConfigError,
                            std::string("missing config key languages[].") + key);
            }
        }
        LanguageLexicon lexicon;
        lexicon.language = parse_language(entry["name"].get<std::string>());
        lexicon.case_sensitive = entry["case_sensitive"].get<bool>();
        for (const auto& word : entry["keywords"]) {
            std::string w = word.get<std::string>();
            if (w.empty()) continue;
            lexicon.keywords.insert(lexicon.case_sensitive ? w : to_lower(w));
        }
        if (lexicon.keywords.empty()) {
            throw Error(ErrorCode::ConfigError,
                        "empty keyword list for " + std::string(language_name(lexicon.language)));
        }
        set.push_back(std::move(lexicon));
    }

    for (Language language : kAllLanguages) {
        bool found = std::any_of(set.begin(), set.end(), [&](const LanguageLexicon& l) {
            return l.language == language;
        });
        if (!found) {
            throw Error(ErrorCode::ConfigError,
                        "lexicon file must cover " + std::string(language_name(language)));
        }
    }
    return set;
}

bool is_any_keyword(std::string_view token, const LexiconSet& lexicons) {
    return std::any_of(lexicons.begin(), lexicons.end(),
                       [&](const LanguageLexicon& l) { return l.contains(token); });
}

} // namespace slice
