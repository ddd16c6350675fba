#ifndef SLICE_TOKENIZER_HPP
#define SLICE_TOKENIZER_HPP

#include <string>
#include <string_view>
#include <vector>

namespace slice {

enum class TokenKind {
    identifier,
    number,
    string_lit,
    op,      // punctuation / operator (maximal munch over a fixed list)
    codeend, // the literal snippet separator
};

struct CodeToken {
    TokenKind kind;
    std::string text;

    bool operator==(const CodeToken&) const = default;
};

/// Lexes code text into typed tokens:
///   - identifiers ([A-Za-z_] plus non-ASCII bytes) stay intact
///   - numbers (digits with optional fraction/exponent) stay intact
///   - quoted string literals ('...' or "...", backslash escapes) stay
///     intact, quotes included; an unterminated literal runs to end of text
///   - operator characters become standalone tokens, with common multi-char
///     operators (==, <=, =>, ||, ...) kept whole
///   - the literal <CODEEND> separator is kept as a single sentinel token
std::vector<CodeToken> lex_code(std::string_view text);

/// Flat token texts from lex_code. Deterministic; whitespace never appears.
std::vector<std::string> tokenize_code(std::string_view text);

} // namespace slice

#endif // SLICE_TOKENIZER_HPP
