#include "slice/lineage.hpp"

#include "slice/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>

namespace slice {

namespace {

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v';
}

void append_utf8(std::string& out, uint32_t cp) {
    if (cp <= 0x7F) {
        out.push_back(static_cast<char>(cp));
    } else if (cp <= 0x7FF) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp <= 0xFFFF) {
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

/// Minimal scanner for the four-key dictionary. Hand-rolled so that the
/// strict/lenient split, non-string value rejection, and duplicate-key
/// detection are all under direct control.
class DictScanner {
public:
    DictScanner(std::string_view text, DictSyntax syntax)
        : text_(text), syntax_(syntax) {}

    std::map<std::string, std::string> parse() {
        std::map<std::string, std::string> pairs;
        skip_ws();
        expect('{', "expected '{' to open the dictionary");
        skip_ws();
        if (!eof() && peek() == '}') {
            ++pos_;
        } else {
            for (;;) {
                skip_ws();
                std::string key = parse_string("key");
                skip_ws();
                expect(':', "expected ':' after key");
                skip_ws();
                std::string value = parse_value();
                if (!pairs.emplace(key, std::move(value)).second) {
                    throw Error(ErrorCode::KeySetMismatch, "duplicate key \"" + key + "\"");
                }
                skip_ws();
                if (eof()) {
                    throw Error(ErrorCode::MalformedDict, "unterminated dictionary");
                }
                if (peek() == ',') {
                    ++pos_;
                    skip_ws();
                    if (!eof() && peek() == '}') {
                        if (syntax_ == DictSyntax::strict) {
                            throw Error(ErrorCode::MalformedDict, "trailing comma");
                        }
                        ++pos_;
                        break;
                    }
                    continue;
                }
                if (peek() == '}') {
                    ++pos_;
                    break;
                }
                throw Error(ErrorCode::MalformedDict, "expected ',' or '}' after value");
            }
        }
        skip_ws();
        if (!eof()) {
            throw Error(ErrorCode::MalformedDict, "trailing content after dictionary");
        }
        return pairs;
    }

private:
    bool eof() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    void skip_ws() {
        while (!eof() && is_space(peek())) ++pos_;
    }

    void expect(char c, const char* message) {
        if (eof() || peek() != c) {
            throw Error(ErrorCode::MalformedDict, message);
        }
        ++pos_;
    }

    std::string parse_value() {
        if (eof()) {
            throw Error(ErrorCode::MalformedDict, "missing value");
        }
        char c = peek();
        if (c == '"' || (syntax_ == DictSyntax::lenient && c == '\'')) {
            return parse_string("value");
        }
        throw Error(ErrorCode::MalformedDict, "value is not a string");
    }

    std::string parse_string(const char* what) {
        if (eof()) {
            throw Error(ErrorCode::MalformedDict, std::string("missing ") + what);
        }
        char quote = peek();
        if (quote != '"' && !(syntax_ == DictSyntax::lenient && quote == '\'')) {
            throw Error(ErrorCode::MalformedDict,
                        std::string(what) + " is not a double-quoted string");
        }
        ++pos_;
        std::string out;
        while (true) {
            if (eof()) {
                throw Error(ErrorCode::MalformedDict, "unterminated string");
            }
            char c = text_[pos_++];
            if (c == quote) break;
            if (c == '\\') {
                out += parse_escape(quote);
            } else {
                out.push_back(c);
            }
        }
        return out;
    }

    std::string parse_escape(char quote) {
        if (eof()) {
            throw Error(ErrorCode::MalformedDict, "dangling escape");
        }
        char c = text_[pos_++];
        std::string out;
        switch (c) {
        case '"': out.push_back('"'); break;
        case '\\': out.push_back('\\'); break;
        case '/': out.push_back('/'); break;
        case 'b': out.push_back('\b'); break;
        case 'f': out.push_back('\f'); break;
        case 'n': out.push_back('\n'); break;
        case 'r': out.push_back('\r'); break;
        case 't': out.push_back('\t'); break;
        case 'u': {
            uint32_t cp = parse_hex4();
            if (cp >= 0xD800 && cp <= 0xDBFF) {
                if (pos_ + 1 < text_.size() && text_[pos_] == '\\' && text_[pos_ + 1] == 'u') {
                    pos_ += 2;
                    uint32_t low = parse_hex4();
                    if (low < 0xDC00 || low > 0xDFFF) {
                        throw Error(ErrorCode::MalformedDict, "invalid surrogate pair");
                    }
                    cp = 0x10000 + ((cp - 0xD800) << 10) + (low - 0xDC00);
                } else {
                    throw Error(ErrorCode::MalformedDict, "lone surrogate in \\u escape");
                }
            } else if (cp >= 0xDC00 && cp <= 0xDFFF) {
                throw Error(ErrorCode::MalformedDict, "lone surrogate in \\u escape");
            }
            append_utf8(out, cp);
            break;
        }
        default:
            if (syntax_ == DictSyntax::lenient && c == quote) {
                out.push_back(quote);
            } else {
                throw Error(ErrorCode::MalformedDict,
                            std::string("unknown escape \\") + c);
            }
        }
        return out;
    }

    uint32_t parse_hex4() {
        if (pos_ + 4 > text_.size()) {
            throw Error(ErrorCode::MalformedDict, "truncated \\u escape");
        }
        uint32_t value = 0;
        for (int i = 0; i < 4; ++i) {
            char c = text_[pos_++];
            value <<= 4;
            if (c >= '0' && c <= '9') value |= static_cast<uint32_t>(c - '0');
            else if (c >= 'a' && c <= 'f') value |= static_cast<uint32_t>(c - 'a' + 10);
            else if (c >= 'A' && c <= 'F') value |= static_cast<uint32_t>(c - 'A' + 10);
            else throw Error(ErrorCode::MalformedDict, "invalid \\u escape");
        }
        return value;
    }

    std::string_view text_;
    DictSyntax syntax_;
    size_t pos_ = 0;
};

std::set<std::string> split_on_delims_outside_parens(std::string_view text,
                                                     std::string_view delims) {
    std::set<std::string> out;
    int depth = 0;
    size_t start = 0;
    auto flush = [&](size_t end) {
        std::string_view piece = trim(text.substr(start, end - start));
        if (!piece.empty()) out.emplace(piece);
    };
    for (size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == '(') {
            ++depth;
        } else if (c == ')') {
            if (depth > 0) --depth;
        } else if (depth == 0 && delims.find(c) != std::string_view::npos) {
            flush(i);
            start = i + 1;
        }
    }
    flush(text.size());
    return out;
}

} // namespace

std::string_view trim(std::string_view text) {
    size_t begin = 0;
    size_t end = text.size();
    while (begin < end && is_space(text[begin])) ++begin;
    while (end > begin && is_space(text[end - 1])) --end;
    return text.substr(begin, end - begin);
}

std::vector<std::string> split_codeend(std::string_view field_text) {
    std::vector<std::string> out;
    size_t start = 0;
    while (start <= field_text.size()) {
        size_t pos = field_text.find(kCodeEnd, start);
        std::string_view piece = (pos == std::string_view::npos)
                                     ? field_text.substr(start)
                                     : field_text.substr(start, pos - start);
        std::string_view trimmed = trim(piece);
        if (!trimmed.empty()) out.emplace_back(trimmed);
        if (pos == std::string_view::npos) break;
        start = pos + kCodeEnd.size();
    }
    return out;
}

std::set<std::string> parse_schema_list(std::string_view text) {
    std::set<std::string> out;
    size_t start = 0;
    for (size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == ',') {
            std::string_view piece = trim(text.substr(start, i - start));
            if (!piece.empty()) out.emplace(piece);
            start = i + 1;
        }
    }
    return out;
}

std::set<std::string> parse_table_list(std::string_view text) {
    return split_on_delims_outside_parens(text, ";,");
}

SchemaLineage parse_lineage_dict(std::string_view text, DictSyntax syntax) {
    auto pairs = DictScanner(text, syntax).parse();

    const std::string_view required[] = {kKeySourceSchema, kKeySourceTable,
                                         kKeyTransformation, kKeyAggregation};
    for (std::string_view key : required) {
        if (!pairs.contains(std::string(key))) {
            throw Error(ErrorCode::KeySetMismatch,
                        "missing key \"" + std::string(key) + "\"");
        }
    }
    if (pairs.size() != 4) {
        for (const auto& [key, _] : pairs) {
            bool known = std::any_of(std::begin(required), std::end(required),
                                     [&](std::string_view k) { return k == key; });
            if (!known) {
                throw Error(ErrorCode::KeySetMismatch, "unexpected key \"" + key + "\"");
            }
        }
    }

    SchemaLineage lineage;
    lineage.source_schema = parse_schema_list(pairs[std::string(kKeySourceSchema)]);
    lineage.source_table = parse_table_list(pairs[std::string(kKeySourceTable)]);
    lineage.transformation = split_codeend(pairs[std::string(kKeyTransformation)]);
    lineage.aggregation = split_codeend(pairs[std::string(kKeyAggregation)]);
    return lineage;
}

std::string join_schema_field(const std::set<std::string>& columns) {
    std::string out;
    for (const auto& c : columns) {
        if (!out.empty()) out += ", ";
        out += c;
    }
    return out;
}

std::string join_table_field(const std::set<std::string>& tables) {
    std::string out;
    for (const auto& t : tables) {
        if (!out.empty()) out += "; ";
        out += t;
    }
    return out;
}

std::string join_snippet_field(const std::vector<std::string>& snippets) {
    std::string out;
    for (const auto& s : snippets) {
        if (!out.empty()) {
            out += ' ';
            out += kCodeEnd;
            out += ' ';
        }
        out += s;
    }
    return out;
}

std::string escape_string(std::string_view text) {
    std::string out;
    out.reserve(text.size() + 2);
    for (unsigned char c : text) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\b': out += "\\b"; break;
        case '\f': out += "\\f"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default:
            if (c < 0x20) {
                static const char* hex = "0123456789abcdef";
                out += "\\u00";
                out.push_back(hex[c >> 4]);
                out.push_back(hex[c & 0xF]);
            } else {
                out.push_back(static_cast<char>(c));
            }
        }
    }
    return out;
}

std::string canonical_serialize(const SchemaLineage& lineage) {
    std::string out = "{";
    auto field = [&](std::string_view key, const std::string& value, bool last = false) {
        out += '"';
        out += key;
        out += "\": \"";
        out += escape_string(value);
        out += last ? "\"" : "\", ";
    };
    field(kKeySourceSchema, join_schema_field(lineage.source_schema));
    field(kKeySourceTable, join_table_field(lineage.source_table));
    field(kKeyTransformation, join_snippet_field(lineage.transformation));
    field(kKeyAggregation, join_snippet_field(lineage.aggregation), true);
    out += '}';
    return out;
}

std::vector<std::string> lineage_findings(const SchemaLineage& lineage) {
    std::vector<std::string> findings;
    auto check_elements = [&](const auto& container, std::string_view field) {
        for (const auto& element : container) {
            if (trim(element).empty() || trim(element).size() != element.size()) {
                findings.push_back(std::string(field) +
                                   ": element is empty or not trimmed: \"" + element + "\"");
            }
            if (element.find(kCodeEnd) != std::string::npos) {
                findings.push_back(std::string(field) + ": element contains " +
                                   std::string(kCodeEnd) + ": \"" + element + "\"");
            }
        }
    };
    check_elements(lineage.source_schema, kKeySourceSchema);
    check_elements(lineage.source_table, kKeySourceTable);
    check_elements(lineage.transformation, kKeyTransformation);
    check_elements(lineage.aggregation, kKeyAggregation);

    // Full round-trip check catches anything element checks cannot express
    // (delimiter characters inside names, etc.).
    try {
        SchemaLineage round = parse_lineage_dict(canonical_serialize(lineage));
        if (!(round == lineage)) {
            findings.push_back("lineage does not survive serialize/parse round-trip");
        }
    } catch (const Error& e) {
        findings.push_back(std::string("canonical form fails to parse: ") + e.what());
    }
    return findings;
}

} // namespace slice
