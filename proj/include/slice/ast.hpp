#ifndef SLICE_AST_HPP
#define SLICE_AST_HPP

#include "slice/lexicon.hpp"
#include "slice/tokenizer.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace slice {

/// Parse tree node. Token leaves carry the lexed token; structural nodes
/// carry a kind (operators are folded into the kind, e.g. "binop:+") and
/// children. Similarity looks only at structural kinds, so renaming leaf
/// identifiers never changes a score.
struct AstNode {
    std::string kind;
    std::string token; // leaf text; empty for structural nodes
    bool is_token = false;
    std::vector<AstNode> children;

    static AstNode leaf(const CodeToken& t) {
        AstNode node;
        node.kind = "tok";
        node.token = t.text;
        node.is_token = true;
        return node;
    }

    static AstNode make(std::string kind) {
        AstNode node;
        node.kind = std::move(kind);
        return node;
    }
};

/// Parses a code fragment with an error-tolerant grammar for the language.
/// Never throws on malformed input: unparseable stretches degrade to token
/// leaves under the root. The root node has kind "unit".
AstNode parse_fragment(Language language, std::string_view text);

/// Serializes a structural node by node-kind structure; token leaves are
/// dropped.
std::string structure_signature(const AstNode& node);

/// Multiset of signatures of every structural node below (and excluding)
/// the "unit" root.
std::map<std::string, int> subtree_multiset(const AstNode& root);

/// F1 between the two subtree multisets. When either side has no structural
/// node, falls back to 1 if the token streams are equal, else 0.
///
/// Parser state is created per call; concurrent calls are safe, and all
/// returned values are plain data that can move freely between threads.
double ast_similarity(std::string_view pred, std::string_view gold,
                      Language language);

} // namespace slice

#endif // SLICE_AST_HPP
