#include "ast_internal.hpp"

namespace slice::detail {

namespace {

class CSharpParser : public FragmentParserBase {
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
        return check_word(word, /*fold_case=*/false, ahead);
    }

    AstNode statement() {
        if (kw("return")) return keyword_statement("return");
        if (kw("using")) return keyword_statement("using");
        if (kw("var") && peek(1).kind == TokenKind::identifier) {
            return declaration();
        }
        if (kw("if") || kw("while") || kw("switch")) return header_statement("cond_header");
        if (kw("foreach") || kw("for")) return header_statement("loop_header");
        if (kw("throw")) return keyword_statement("throw");
        if (check_op("{")) return block();
        return expression_statement();
    }

    AstNode declaration() {
        AstNode node = AstNode::make("decl");
        node.children.push_back(take()); // var
        node.children.push_back(take()); // name
        if (check_op("=")) {
            node.children.push_back(take());
            node.children.push_back(expression());
        }
        return node;
    }

    AstNode keyword_statement(std::string kind) {
        AstNode node = AstNode::make(std::move(kind));
        node.children.push_back(take());
        if (!at_end() && !check_op(";") && !check_codeend()) {
            node.children.push_back(expression());
        }
        return node;
    }

    AstNode header_statement(std::string kind) {
        AstNode node = AstNode::make(std::move(kind));
        node.children.push_back(take());
        if (check_op("(")) node.children.push_back(paren_group());
        if (check_op("{")) node.children.push_back(block());
        return node;
    }

    AstNode block() {
        AstNode node = AstNode::make("block");
        skip(); // '{'
        while (!at_end() && !check_op("}")) {
            if (check_op(";") || check_op(",")) {
                node.children.push_back(take());
                continue;
            }
            node.children.push_back(statement());
        }
        if (check_op("}")) skip();
        return node;
    }

    AstNode expression_statement() {
        AstNode expr = expression();
        if (check_op("=") || check_op("+=") || check_op("-=") || check_op("*=") ||
            check_op("/=")) {
            AstNode assign = AstNode::make("assign:" + peek().text);
            assign.children.push_back(std::move(expr));
            assign.children.push_back(take());
            assign.children.push_back(expression());
            return assign;
        }
        return expr;
    }

    AstNode expression() {
        DepthGuard guard(depth_);
        if (at_end()) return AstNode::make("unit");
        if (too_deep()) return take();
        if (kw("from") && peek(1).kind == TokenKind::identifier) return query_expression();
        AstNode expr = coalesce();
        if (check_op("?")) {
            AstNode node = AstNode::make("ternary");
            node.children.push_back(std::move(expr));
            node.children.push_back(take());
            node.children.push_back(expression());
            if (check_op(":")) {
                node.children.push_back(take());
                node.children.push_back(expression());
            }
            return node;
        }
        if (check_op("=>")) {
            AstNode node = AstNode::make("lambda");
            node.children.push_back(std::move(expr));
            node.children.push_back(take());
            node.children.push_back(expression());
            return node;
        }
        return expr;
    }

    /// LINQ query syntax: from x in src where ... select ...
    AstNode query_expression() {
        AstNode node = AstNode::make("query");
        AstNode from = AstNode::make("query_from");
        from.children.push_back(take()); // from
        if (check_ident()) from.children.push_back(take());
        if (kw("in")) {
            from.children.push_back(take());
            from.children.push_back(coalesce());
        }
        node.children.push_back(std::move(from));
        for (;;) {
            if (kw("where")) {
                AstNode clause = AstNode::make("query_where");
                clause.children.push_back(take());
                clause.children.push_back(expression());
                node.children.push_back(std::move(clause));
                continue;
            }
            if (kw("select")) {
                AstNode clause = AstNode::make("query_select");
                clause.children.push_back(take());
                clause.children.push_back(expression());
                node.children.push_back(std::move(clause));
                continue;
            }
            if (kw("group")) {
                AstNode clause = AstNode::make("query_group");
                clause.children.push_back(take());
                clause.children.push_back(expression());
                if (kw("by")) {
                    clause.children.push_back(take());
                    clause.children.push_back(expression());
                }
                node.children.push_back(std::move(clause));
                continue;
            }
            if (kw("orderby")) {
                AstNode clause = AstNode::make("query_orderby");
                clause.children.push_back(take());
                clause.children.push_back(expression());
                if (kw("ascending") || kw("descending")) clause.children.push_back(take());
                node.children.push_back(std::move(clause));
                continue;
            }
            if (kw("let")) {
                AstNode clause = AstNode::make("query_let");
                clause.children.push_back(take());
                clause.children.push_back(expression_statement());
                node.children.push_back(std::move(clause));
                continue;
            }
            break;
        }
        return node;
    }

    AstNode coalesce() {
        AstNode lhs = logical_or();
        while (check_op("??")) {
            AstNode node = AstNode::make("binop:??");
            node.children.push_back(std::move(lhs));
            node.children.push_back(take());
            node.children.push_back(logical_or());
            lhs = std::move(node);
        }
        return lhs;
    }

    AstNode logical_or() {
        AstNode lhs = logical_and();
        while (check_op("||")) {
            AstNode node = AstNode::make("binop:||");
            node.children.push_back(std::move(lhs));
            node.children.push_back(take());
            node.children.push_back(logical_and());
            lhs = std::move(node);
        }
        return lhs;
    }

    AstNode logical_and() {
        AstNode lhs = bit_expression();
        while (check_op("&&")) {
            AstNode node = AstNode::make("binop:&&");
            node.children.push_back(std::move(lhs));
            node.children.push_back(take());
            node.children.push_back(bit_expression());
            lhs = std::move(node);
        }
        return lhs;
    }

    AstNode bit_expression() {
        AstNode lhs = equality();
        while (check_op("|") || check_op("&") || check_op("^")) {
            AstNode node = AstNode::make("binop:" + peek().text);
            node.children.push_back(std::move(lhs));
            node.children.push_back(take());
            node.children.push_back(equality());
            lhs = std::move(node);
        }
        return lhs;
    }

    AstNode equality() {
        AstNode lhs = relational();
        while (check_op("==") || check_op("!=")) {
            AstNode node = AstNode::make("binop:" + peek().text);
            node.children.push_back(std::move(lhs));
            node.children.push_back(take());
            node.children.push_back(relational());
            lhs = std::move(node);
        }
        return lhs;
    }

    AstNode relational() {
        AstNode lhs = additive();
        while (check_op("<") || check_op(">") || check_op("<=") || check_op(">=") ||
               kw("is") || kw("as")) {
            AstNode node = AstNode::make("binop:" + peek().text);
            node.children.push_back(std::move(lhs));
            node.children.push_back(take());
            node.children.push_back(additive());
            lhs = std::move(node);
        }
        return lhs;
    }

    AstNode additive() {
        AstNode lhs = multiplicative();
        while (check_op("+") || check_op("-")) {
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
            AstNode node = AstNode::make("binop:" + peek().text);
            node.children.push_back(std::move(lhs));
            node.children.push_back(take());
            node.children.push_back(unary());
            lhs = std::move(node);
        }
        return lhs;
    }

    AstNode unary() {
        if (check_op("!") || check_op("-") || check_op("+")) {
            AstNode node = AstNode::make("unaryop:" + peek().text);
            node.children.push_back(take());
            node.children.push_back(unary());
            return node;
        }
        if (kw("new")) {
            AstNode node = AstNode::make("new");
            node.children.push_back(take());
            node.children.push_back(postfix_expression());
            if (check_op("{")) node.children.push_back(initializer());
            return node;
        }
        return postfix_expression();
    }

    AstNode initializer() {
        AstNode node = AstNode::make("initializer");
        skip(); // '{'
        while (!at_end() && !check_op("}")) {
            if (check_op(",")) {
                skip();
                continue;
            }
            node.children.push_back(expression_statement());
        }
        if (check_op("}")) skip();
        return node;
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
            if (check_op("[")) {
                AstNode idx = AstNode::make("indexer");
                idx.children.push_back(std::move(expr));
                skip();
                while (!at_end() && !check_op("]")) {
                    if (check_op(",")) {
                        skip();
                        continue;
                    }
                    idx.children.push_back(expression());
                }
                if (check_op("]")) skip();
                expr = std::move(idx);
                continue;
            }
            if (check_op(".") || check_op("?.")) {
                AstNode member = AstNode::make("member");
                member.children.push_back(std::move(expr));
                member.children.push_back(take());
                if (check_ident()) member.children.push_back(take());
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
        while (!at_end() && !check_op(")")) {
            if (check_op(",")) {
                skip();
                continue;
            }
            args.children.push_back(expression());
        }
        if (check_op(")")) skip();
        return args;
    }

    AstNode paren_group() {
        AstNode node = AstNode::make("paren");
        skip(); // '('
        while (!at_end() && !check_op(")")) {
            if (check_op(",")) {
                skip();
                continue;
            }
            node.children.push_back(expression());
        }
        if (check_op(")")) skip();
        return node;
    }

    AstNode primary() {
        DepthGuard guard(depth_);
        if (at_end()) return AstNode::make("unit");
        if (too_deep()) return take();
        if (check_op("(")) return paren_group();
        if (check_op("{")) return initializer();
        return take();
    }
};

} // namespace

AstNode parse_csharp_fragment(std::vector<CodeToken> tokens) {
    return CSharpParser(std::move(tokens)).parse();
}

} // namespace slice::detail
