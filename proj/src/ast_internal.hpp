#ifndef SLICE_AST_INTERNAL_HPP
#define SLICE_AST_INTERNAL_HPP

#include "slice/ast.hpp"
#include "slice/tokenizer.hpp"

#include <algorithm>
#include <cctype>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace slice::detail {

inline std::string upper_ascii(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return out;
}

/// Shared recursive-descent machinery. Every consuming helper advances by
/// at least one token, and primary() falls back to swallowing a single
/// token, so parsing always terminates on arbitrary input.
class FragmentParserBase {
public:
    explicit FragmentParserBase(std::vector<CodeToken> tokens)
        : tokens_(std::move(tokens)) {}

protected:
    static constexpr int kMaxDepth = 100;

    bool at_end() const { return pos_ >= tokens_.size(); }

    const CodeToken& peek(size_t ahead = 0) const {
        static const CodeToken eof{TokenKind::op, ""};
        return pos_ + ahead < tokens_.size() ? tokens_[pos_ + ahead] : eof;
    }

    AstNode take() {
        AstNode leaf = AstNode::leaf(tokens_[pos_]);
        ++pos_;
        return leaf;
    }

    void skip() { ++pos_; }

    bool check_op(std::string_view op) const {
        return !at_end() && peek().kind == TokenKind::op && peek().text == op;
    }

    bool check_codeend() const {
        return !at_end() && peek().kind == TokenKind::codeend;
    }

    bool check_ident() const {
        return !at_end() && peek().kind == TokenKind::identifier;
    }

    /// Case-insensitive keyword test for SQL; exact otherwise.
    bool check_word(std::string_view word, bool fold_case, size_t ahead = 0) const {
        const CodeToken& t = peek(ahead);
        if (t.kind != TokenKind::identifier) return false;
        if (fold_case) return upper_ascii(t.text) == upper_ascii(word);
        return t.text == word;
    }

    /// RAII depth guard: beyond kMaxDepth, parsers degrade to token leaves.
    struct DepthGuard {
        explicit DepthGuard(int& depth) : depth_(depth) { ++depth_; }
        ~DepthGuard() { --depth_; }
        int& depth_;
    };

    bool too_deep() const { return depth_ >= kMaxDepth; }

    std::vector<CodeToken> tokens_;
    size_t pos_ = 0;
    int depth_ = 0;
};

AstNode parse_sql_fragment(std::vector<CodeToken> tokens);
AstNode parse_python_fragment(std::vector<CodeToken> tokens);
AstNode parse_csharp_fragment(std::vector<CodeToken> tokens);

} // namespace slice::detail

#endif // SLICE_AST_INTERNAL_HPP
