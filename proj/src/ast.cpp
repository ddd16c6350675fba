#include "slice/ast.hpp"

#include "ast_internal.hpp"

namespace slice {

AstNode parse_fragment(Language language, std::string_view text) {
    std::vector<CodeToken> tokens = lex_code(text);
    switch (language) {
    case Language::sql: return detail::parse_sql_fragment(std::move(tokens));
    case Language::python: return detail::parse_python_fragment(std::move(tokens));
    case Language::csharp: return detail::parse_csharp_fragment(std::move(tokens));
    }
    return AstNode::make("unit");
}

std::string structure_signature(const AstNode& node) {
    std::string out = node.kind;
    out.push_back('(');
    for (const AstNode& child : node.children) {
        if (child.is_token) continue;
        out += structure_signature(child);
    }
    out.push_back(')');
    return out;
}

namespace {

void collect(const AstNode& node, std::map<std::string, int>& out) {
    for (const AstNode& child : node.children) {
        if (child.is_token) continue;
        out[structure_signature(child)] += 1;
        collect(child, out);
    }
}

} // namespace

std::map<std::string, int> subtree_multiset(const AstNode& root) {
    std::map<std::string, int> out;
    collect(root, out);
    return out;
}

double ast_similarity(std::string_view pred, std::string_view gold, Language language) {
    auto pred_trees = subtree_multiset(parse_fragment(language, pred));
    auto gold_trees = subtree_multiset(parse_fragment(language, gold));

    auto total = [](const std::map<std::string, int>& m) {
        int n = 0;
        for (const auto& [_, count] : m) n += count;
        return n;
    };
    int pred_total = total(pred_trees);
    int gold_total = total(gold_trees);

    if (pred_total == 0 || gold_total == 0) {
        // No structure to compare on at least one side: fall back to
        // whitespace-normalized text equality.
        return tokenize_code(pred) == tokenize_code(gold) ? 1.0 : 0.0;
    }

    int inter = 0;
    for (const auto& [signature, count] : pred_trees) {
        auto it = gold_trees.find(signature);
        if (it != gold_trees.end()) {
            inter += std::min(count, it->second);
        }
    }
    if (inter == 0) return 0.0;
    double precision = static_cast<double>(inter) / pred_total;
    double recall = static_cast<double>(inter) / gold_total;
    return 2.0 * precision * recall / (precision + recall);
}

} // namespace slice
