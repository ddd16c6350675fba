#include "slice/tokenizer.hpp"

#include "slice/lineage.hpp"

#include <array>
#include <cctype>

namespace slice {

namespace {

bool ident_start(unsigned char c) {
    return std::isalpha(c) || c == '_' || c >= 0x80;
}

bool ident_cont(unsigned char c) {
    return std::isalnum(c) || c == '_' || c >= 0x80;
}

// Ordered longest-first within each leading character.
constexpr std::array<std::string_view, 22> kMultiCharOps = {
    "==", "!=", "<>", "<=", ">=", "=>", "->", "||", "&&", "**", "//",
    "::", "++", "--", "+=", "-=", "*=", "/=", "%=", "??", "?.", "|>",
};

} // namespace

std::vector<CodeToken> lex_code(std::string_view text) {
    std::vector<CodeToken> tokens;
    size_t i = 0;
    const size_t n = text.size();
    while (i < n) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        if (std::isspace(c)) {
            ++i;
            continue;
        }
        if (text.compare(i, kCodeEnd.size(), kCodeEnd) == 0) {
            tokens.push_back({TokenKind::codeend, std::string(kCodeEnd)});
            i += kCodeEnd.size();
            continue;
        }
        if (ident_start(c)) {
            size_t start = i;
            while (i < n && ident_cont(static_cast<unsigned char>(text[i]))) ++i;
            tokens.push_back({TokenKind::identifier, std::string(text.substr(start, i - start))});
            continue;
        }
        if (std::isdigit(c)) {
            size_t start = i;
            while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            if (i + 1 < n && text[i] == '.' &&
                std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
                ++i;
                while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            }
            if (i < n && (text[i] == 'e' || text[i] == 'E')) {
                size_t j = i + 1;
                if (j < n && (text[j] == '+' || text[j] == '-')) ++j;
                if (j < n && std::isdigit(static_cast<unsigned char>(text[j]))) {
                    i = j;
                    while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
                }
            }
            tokens.push_back({TokenKind::number, std::string(text.substr(start, i - start))});
            continue;
        }
        if (c == '"' || c == '\'') {
            char quote = static_cast<char>(c);
            size_t start = i++;
            while (i < n) {
                if (text[i] == '\\' && i + 1 < n) {
                    i += 2;
                    continue;
                }
                if (text[i] == quote) {
                    ++i;
                    break;
                }
                ++i;
            }
            tokens.push_back({TokenKind::string_lit, std::string(text.substr(start, i - start))});
            continue;
        }
        bool matched = false;
        for (std::string_view op : kMultiCharOps) {
            if (text.compare(i, op.size(), op) == 0) {
                tokens.push_back({TokenKind::op, std::string(op)});
                i += op.size();
                matched = true;
                break;
            }
        }
        if (!matched) {
            tokens.push_back({TokenKind::op, std::string(1, text[i])});
            ++i;
        }
    }
    return tokens;
}

std::vector<std::string> tokenize_code(std::string_view text) {
    std::vector<std::string> out;
    for (auto& token : lex_code(text)) {
        out.push_back(std::move(token.text));
    }
    return out;
}

} // namespace slice
