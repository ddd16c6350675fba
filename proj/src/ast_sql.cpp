#include "ast_internal.hpp"

#include <array>

namespace slice::detail {

namespace {

constexpr std::array<std::string_view, 11> kClauseStarters = {
    "FROM", "WHERE", "GROUP", "HAVING", "ORDER", "LIMIT", "OFFSET",
    "JOIN", "INNER", "LEFT", "RIGHT",
};

constexpr std::array<std::string_view, 8> kJoinWords = {
    "JOIN", "INNER", "LEFT", "RIGHT", "FULL", "OUTER", "CROSS", "NATURAL",
};

class SqlParser : public FragmentParserBase {
public:
    using FragmentParserBase::FragmentParserBase;

    AstNode parse() {
        AstNode unit = AstNode::make("unit");
        while (!at_end()) {
            if (check_codeend() || check_op(";")) {
                unit.children.push_back(take());
                continue;
            }
            unit.children.push_back(statement());
        }
        return unit;
    }

private:
    bool kw(std::string_view word, size_t ahead = 0) const {
        return check_word(word, /*fold_case=*/true, ahead);
    }

    bool is_clause_starter() const {
        for (std::string_view w : kClauseStarters) {
            if (kw(w)) return true;
        }
        return kw("FULL") || kw("CROSS") || kw("NATURAL") || kw("UNION") || kw("TOP");
    }

    bool is_join_starter() const {
        for (std::string_view w : kJoinWords) {
            if (kw(w)) return true;
        }
        return false;
    }

    AstNode statement() {
        if (kw("SELECT")) return select_statement();
        if (kw("WITH")) return with_statement();
        if (is_clause_starter()) return clause();
        return expression();
    }

    AstNode with_statement() {
        AstNode node = AstNode::make("with");
        node.children.push_back(take()); // WITH
        for (;;) {
            if (!check_ident()) break;
            AstNode cte = AstNode::make("cte");
            cte.children.push_back(take()); // name
            if (kw("AS")) cte.children.push_back(take());
            if (check_op("(")) {
                cte.children.push_back(paren_group());
            }
            node.children.push_back(std::move(cte));
            if (check_op(",")) {
                skip();
                continue;
            }
            break;
        }
        if (kw("SELECT")) node.children.push_back(select_statement());
        return node;
    }

    AstNode select_statement() {
        AstNode node = AstNode::make("select");
        node.children.push_back(take()); // SELECT
        if (kw("DISTINCT") || kw("ALL")) node.children.push_back(take());
        if (kw("TOP")) {
            node.children.push_back(take());
            if (!at_end() && peek().kind == TokenKind::number) node.children.push_back(take());
        }
        node.children.push_back(select_items());
        while (!at_end() && is_clause_starter()) {
            node.children.push_back(clause());
        }
        return node;
    }

    AstNode select_items() {
        AstNode items = AstNode::make("select_items");
        if (at_end() || is_clause_starter()) return items;
        for (;;) {
            items.children.push_back(select_item());
            if (check_op(",")) {
                skip();
                if (at_end() || is_clause_starter()) break;
                continue;
            }
            break;
        }
        return items;
    }

    AstNode select_item() {
        AstNode item = AstNode::make("select_item");
        if (check_op("*")) {
            item.children.push_back(take());
            return item;
        }
        item.children.push_back(expression());
        if (kw("AS")) {
            AstNode alias = AstNode::make("alias");
            alias.children.push_back(take()); // AS
            if (check_ident() || (!at_end() && peek().kind == TokenKind::string_lit)) {
                alias.children.push_back(take());
            }
            item.children.push_back(std::move(alias));
        } else if (check_ident() && !is_clause_starter() && !kw("AND") && !kw("OR")) {
            AstNode alias = AstNode::make("alias");
            alias.children.push_back(take());
            item.children.push_back(std::move(alias));
        }
        return item;
    }

    AstNode clause() {
        if (kw("FROM")) return from_clause();
        if (is_join_starter()) return join_clause();
        if (kw("WHERE")) return keyword_expr_clause("where");
        if (kw("HAVING")) return keyword_expr_clause("having");
        if (kw("GROUP")) return group_or_order("group_by");
        if (kw("ORDER")) return group_or_order("order_by");
        if (kw("LIMIT") || kw("OFFSET") || kw("TOP")) {
            AstNode node = AstNode::make("limit");
            node.children.push_back(take());
            if (!at_end() && peek().kind == TokenKind::number) node.children.push_back(take());
            return node;
        }
        if (kw("UNION")) {
            AstNode node = AstNode::make("union");
            node.children.push_back(take());
            if (kw("ALL")) node.children.push_back(take());
            if (kw("SELECT")) node.children.push_back(select_statement());
            return node;
        }
        return expression();
    }

    AstNode from_clause() {
        AstNode node = AstNode::make("from");
        node.children.push_back(take()); // FROM
        for (;;) {
            node.children.push_back(table_ref());
            if (check_op(",")) {
                skip();
                continue;
            }
            break;
        }
        while (is_join_starter()) {
            node.children.push_back(join_clause());
        }
        return node;
    }

    AstNode join_clause() {
        AstNode node = AstNode::make("join");
        while (!at_end() && is_join_starter() && !kw("JOIN")) {
            node.children.push_back(take()); // INNER / LEFT / ...
        }
        if (kw("JOIN")) node.children.push_back(take());
        node.children.push_back(table_ref());
        if (kw("ON")) {
            AstNode on = AstNode::make("on");
            on.children.push_back(take());
            on.children.push_back(expression());
            node.children.push_back(std::move(on));
        } else if (kw("USING")) {
            AstNode using_node = AstNode::make("using");
            using_node.children.push_back(take());
            if (check_op("(")) using_node.children.push_back(paren_group());
            node.children.push_back(std::move(using_node));
        }
        return node;
    }

    AstNode table_ref() {
        AstNode node = AstNode::make("table_ref");
        if (check_op("(")) {
            node.children.push_back(paren_group());
        } else if (check_ident() || (!at_end() && peek().kind == TokenKind::string_lit)) {
            node.children.push_back(postfix_expression());
        } else if (!at_end() && !is_clause_starter()) {
            node.children.push_back(take());
        }
        if (kw("AS")) {
            node.children.push_back(take());
            if (check_ident()) node.children.push_back(take());
        } else if (check_ident() && !is_clause_starter() && !kw("ON") && !kw("USING")) {
            node.children.push_back(take());
        }
        return node;
    }

    AstNode keyword_expr_clause(std::string kind) {
        AstNode node = AstNode::make(std::move(kind));
        node.children.push_back(take()); // WHERE / HAVING
        node.children.push_back(expression());
        return node;
    }

    AstNode group_or_order(std::string kind) {
        AstNode node = AstNode::make(std::move(kind));
        node.children.push_back(take()); // GROUP / ORDER
        if (kw("BY")) node.children.push_back(take());
        for (;;) {
            if (at_end() || is_clause_starter() || check_op(";") || check_codeend()) break;
            AstNode item = AstNode::make("item");
            item.children.push_back(expression());
            if (kw("ASC") || kw("DESC")) item.children.push_back(take());
            node.children.push_back(std::move(item));
            if (check_op(",")) {
                skip();
                continue;
            }
            break;
        }
        return node;
    }

    AstNode expression() {
        DepthGuard guard(depth_);
        if (too_deep()) return at_end() ? AstNode::make("unit") : take();
        return or_expression();
    }

    AstNode or_expression() {
        AstNode lhs = and_expression();
        while (kw("OR")) {
            AstNode node = AstNode::make("binop:OR");
            node.children.push_back(std::move(lhs));
            node.children.push_back(take());
            node.children.push_back(and_expression());
            lhs = std::move(node);
        }
        return lhs;
    }

    AstNode and_expression() {
        AstNode lhs = not_expression();
        while (kw("AND")) {
            AstNode node = AstNode::make("binop:AND");
            node.children.push_back(std::move(lhs));
            node.children.push_back(take());
            node.children.push_back(not_expression());
            lhs = std::move(node);
        }
        return lhs;
    }

    AstNode not_expression() {
        if (kw("NOT")) {
            AstNode node = AstNode::make("unaryop:NOT");
            node.children.push_back(take());
            node.children.push_back(not_expression());
            return node;
        }
        return comparison();
    }

    AstNode comparison() {
        AstNode lhs = additive();
        for (;;) {
            if (check_op("=") || check_op("==") || check_op("<>") || check_op("!=") ||
                check_op("<") || check_op(">") || check_op("<=") || check_op(">=")) {
                AstNode node = AstNode::make("binop:" + peek().text);
                node.children.push_back(std::move(lhs));
                node.children.push_back(take());
                node.children.push_back(additive());
                lhs = std::move(node);
                continue;
            }
            if (kw("LIKE")) {
                AstNode node = AstNode::make("binop:LIKE");
                node.children.push_back(std::move(lhs));
                node.children.push_back(take());
                node.children.push_back(additive());
                lhs = std::move(node);
                continue;
            }
            if (kw("IN")) {
                AstNode node = AstNode::make("in_list");
                node.children.push_back(std::move(lhs));
                node.children.push_back(take());
                if (check_op("(")) node.children.push_back(paren_group());
                lhs = std::move(node);
                continue;
            }
            if (kw("IS")) {
                AstNode node = AstNode::make("is_test");
                node.children.push_back(std::move(lhs));
                node.children.push_back(take());
                if (kw("NOT")) node.children.push_back(take());
                if (kw("NULL") || check_ident()) node.children.push_back(take());
                lhs = std::move(node);
                continue;
            }
            if (kw("BETWEEN")) {
                AstNode node = AstNode::make("between");
                node.children.push_back(std::move(lhs));
                node.children.push_back(take());
                node.children.push_back(additive());
                if (kw("AND")) {
                    node.children.push_back(take());
                    node.children.push_back(additive());
                }
                lhs = std::move(node);
                continue;
            }
            break;
        }
        return lhs;
    }

    AstNode additive() {
        AstNode lhs = multiplicative();
        while (check_op("+") || check_op("-") || check_op("||")) {
            AstNode node = AstNode::make("binop:" + peek().text);
            node.children.push_back(std::move(lhs));
            node.children.push_back(take());
            node.children.push_back(multiplicative());
            lhs = std::move(node);
        }
        return lhs;
    }

    AstNode multiplicative() {
        AstNode lhs = unary();
        while (check_op("*") || check_op("/") || check_op("%")) {
            // A trailing star before a clause keyword is select-star use,
            // not multiplication; bail out so "items" stay well-formed.
            if (check_op("*") && (at_end() || peek(1).text.empty())) break;
            AstNode node = AstNode::make("binop:" + peek().text);
            node.children.push_back(std::move(lhs));
            node.children.push_back(take());
            node.children.push_back(unary());
            lhs = std::move(node);
        }
        return lhs;
    }

    AstNode unary() {
        if (check_op("-") || check_op("+")) {
            AstNode node = AstNode::make("unaryop:" + peek().text);
            node.children.push_back(take());
            node.children.push_back(unary());
            return node;
        }
        return postfix_expression();
    }

    AstNode postfix_expression() {
        AstNode expr = primary();
        for (;;) {
            if (check_op("(")) {
                AstNode call = AstNode::make("call");
                call.children.push_back(std::move(expr));
                call.children.push_back(call_args());
                expr = std::move(call);
                continue;
            }
            if (check_op(".")) {
                AstNode member = AstNode::make("member");
                member.children.push_back(std::move(expr));
                member.children.push_back(take()); // '.'
                if (check_ident() || check_op("*")) member.children.push_back(take());
                expr = std::move(member);
                continue;
            }
            break;
        }
        return expr;
    }

    AstNode call_args() {
        AstNode args = AstNode::make("args");
        skip(); // '('
        if (check_op(")")) {
            skip();
            return args;
        }
        if (kw("DISTINCT")) args.children.push_back(take());
        for (;;) {
            if (at_end()) break;
            if (check_op(")")) {
                skip();
                break;
            }
            if (check_op("*")) {
                args.children.push_back(take());
            } else {
                AstNode arg = expression();
                // CAST(x AS type)
                if (kw("AS")) {
                    AstNode as_node = AstNode::make("cast_as");
                    as_node.children.push_back(std::move(arg));
                    as_node.children.push_back(take());
                    as_node.children.push_back(expression());
                    arg = std::move(as_node);
                }
                args.children.push_back(std::move(arg));
            }
            if (check_op(",")) {
                skip();
                continue;
            }
            if (check_op(")")) {
                skip();
                break;
            }
            // Unexpected token inside args: swallow it and keep going.
            args.children.push_back(take());
        }
        return args;
    }

    AstNode paren_group() {
        AstNode node = AstNode::make("paren");
        skip(); // '('
        if (kw("SELECT")) {
            node.children.push_back(select_statement());
        } else if (!check_op(")")) {
            for (;;) {
                if (at_end() || check_op(")")) break;
                node.children.push_back(expression());
                if (check_op(",")) {
                    skip();
                    continue;
                }
                if (!check_op(")")) {
                    if (at_end()) break;
                    node.children.push_back(take());
                    continue;
                }
                break;
            }
        }
        if (check_op(")")) skip();
        return node;
    }

    AstNode primary() {
        DepthGuard guard(depth_);
        if (at_end()) return AstNode::make("unit");
        if (too_deep()) return take();
        if (kw("CASE")) return case_expression();
        if (check_op("(")) return paren_group();
        if (kw("SELECT")) return select_statement();
        // Identifier, number, string, star, or any stray token.
        return take();
    }

    AstNode case_expression() {
        AstNode node = AstNode::make("case");
        node.children.push_back(take()); // CASE
        if (!kw("WHEN") && !kw("END") && !at_end()) {
            node.children.push_back(expression());
        }
        while (kw("WHEN")) {
            AstNode when = AstNode::make("when");
            when.children.push_back(take());
            when.children.push_back(expression());
            if (kw("THEN")) {
                when.children.push_back(take());
                when.children.push_back(expression());
            }
            node.children.push_back(std::move(when));
        }
        if (kw("ELSE")) {
            AstNode else_node = AstNode::make("else");
            else_node.children.push_back(take());
            else_node.children.push_back(expression());
            node.children.push_back(std::move(else_node));
        }
        if (kw("END")) node.children.push_back(take());
        return node;
    }
};

} // namespace

AstNode parse_sql_fragment(std::vector<CodeToken> tokens) {
    return SqlParser(std::move(tokens)).parse();
}

} // namespace slice::detail
