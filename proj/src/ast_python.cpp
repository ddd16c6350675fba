#include "ast_internal.hpp"

namespace slice::detail {

namespace {

class PythonParser : public FragmentParserBase {
public:
    using FragmentParserBase::FragmentParserBase;

    AstNode parse() {
        AstNode unit = AstNode::make("unit");
        while (!at_end()) {
            if (check_codeend() || check_op(";") || check_op(":") || check_op("\\")) {
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
        if (kw("def")) return def_statement();
        if (kw("return")) return keyword_statement("return");
        if (kw("import") || kw("from")) return import_statement();
        if (kw("if") || kw("elif") || kw("while")) return header_statement("cond_header");
        if (kw("for")) return for_statement();
        if (kw("with")) return header_statement("with_header");
        if (kw("else") || kw("try") || kw("except") || kw("finally") || kw("pass") ||
            kw("break") || kw("continue")) {
            return take();
        }
        return expression_statement();
    }

    AstNode def_statement() {
        AstNode node = AstNode::make("def");
        node.children.push_back(take()); // def
        if (check_ident()) node.children.push_back(take());
        if (check_op("(")) node.children.push_back(params());
        if (check_op(":")) node.children.push_back(take());
        return node;
    }

    AstNode params() {
        AstNode node = AstNode::make("params");
        skip(); // '('
        while (!at_end() && !check_op(")")) {
            if (check_op(",")) {
                skip();
                continue;
            }
            AstNode param = expression();
            if (check_op("=")) {
                AstNode dflt = AstNode::make("default");
                dflt.children.push_back(std::move(param));
                dflt.children.push_back(take());
                dflt.children.push_back(expression());
                param = std::move(dflt);
            }
            node.children.push_back(std::move(param));
        }
        if (check_op(")")) skip();
        return node;
    }

    AstNode keyword_statement(std::string kind) {
        AstNode node = AstNode::make(std::move(kind));
        node.children.push_back(take());
        if (!at_end() && !check_codeend()) node.children.push_back(expression());
        return node;
    }

    AstNode import_statement() {
        AstNode node = AstNode::make("import");
        node.children.push_back(take()); // import / from
        while (check_ident() || check_op(".") || check_op(",") || check_op("*")) {
            node.children.push_back(take());
        }
        return node;
    }

    AstNode header_statement(std::string kind) {
        AstNode node = AstNode::make(std::move(kind));
        node.children.push_back(take()); // if / while / with / elif
        node.children.push_back(expression());
        if (kw("as")) {
            node.children.push_back(take());
            if (check_ident()) node.children.push_back(take());
        }
        if (check_op(":")) node.children.push_back(take());
        return node;
    }

    AstNode for_statement() {
        AstNode node = AstNode::make("for_header");
        node.children.push_back(take()); // for
        node.children.push_back(expression());
        if (kw("in")) {
            node.children.push_back(take());
            node.children.push_back(expression());
        }
        if (check_op(":")) node.children.push_back(take());
        return node;
    }

    AstNode expression_statement() {
        AstNode expr = expression();
        if (check_op("=") || check_op("+=") || check_op("-=") || check_op("*=") ||
            check_op("/=") || check_op("%=")) {
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
        if (kw("lambda")) return lambda_expression();
        AstNode expr = or_test();
        if (kw("if")) {
            AstNode node = AstNode::make("ifexp");
            node.children.push_back(std::move(expr));
            node.children.push_back(take());
            node.children.push_back(or_test());
            if (kw("else")) {
                node.children.push_back(take());
                node.children.push_back(expression());
            }
            return node;
        }
        return expr;
    }

    AstNode lambda_expression() {
        AstNode node = AstNode::make("lambda");
        node.children.push_back(take()); // lambda
        AstNode args = AstNode::make("params");
        while (check_ident() || check_op(",") || check_op("*")) {
            args.children.push_back(take());
        }
        node.children.push_back(std::move(args));
        if (check_op(":")) {
            node.children.push_back(take());
            node.children.push_back(expression());
        }
        return node;
    }

    AstNode or_test() {
        AstNode lhs = and_test();
        while (kw("or")) {
            AstNode node = AstNode::make("boolop:or");
            node.children.push_back(std::move(lhs));
            node.children.push_back(take());
            node.children.push_back(and_test());
            lhs = std::move(node);
        }
        return lhs;
    }

    AstNode and_test() {
        AstNode lhs = not_test();
        while (kw("and")) {
            AstNode node = AstNode::make("boolop:and");
            node.children.push_back(std::move(lhs));
            node.children.push_back(take());
            node.children.push_back(not_test());
            lhs = std::move(node);
        }
        return lhs;
    }

    AstNode not_test() {
        if (kw("not")) {
            AstNode node = AstNode::make("unaryop:not");
            node.children.push_back(take());
            node.children.push_back(not_test());
            return node;
        }
        return comparison();
    }

    AstNode comparison() {
        AstNode lhs = bit_or();
        for (;;) {
            std::string op;
            if (check_op("==") || check_op("!=") || check_op("<") || check_op(">") ||
                check_op("<=") || check_op(">=")) {
                op = peek().text;
            } else if (kw("in")) {
                op = "in";
            } else if (kw("is")) {
                op = "is";
            } else if (kw("not") && kw("in", 1)) {
                op = "not-in";
            } else {
                break;
            }
            AstNode node = AstNode::make("compare:" + op);
            node.children.push_back(std::move(lhs));
            node.children.push_back(take());
            if (op == "not-in") node.children.push_back(take());
            if (op == "is" && kw("not")) node.children.push_back(take());
            node.children.push_back(bit_or());
            lhs = std::move(node);
        }
        return lhs;
    }

    AstNode bit_or() {
        AstNode lhs = arithmetic();
        while (check_op("|") || check_op("&") || check_op("^")) {
            AstNode node = AstNode::make("binop:" + peek().text);
            node.children.push_back(std::move(lhs));
            node.children.push_back(take());
            node.children.push_back(arithmetic());
            lhs = std::move(node);
        }
        return lhs;
    }

    AstNode arithmetic() {
        AstNode lhs = term();
        while (check_op("+") || check_op("-")) {
            AstNode node = AstNode::make("binop:" + peek().text);
            node.children.push_back(std::move(lhs));
            node.children.push_back(take());
            node.children.push_back(term());
            lhs = std::move(node);
        }
        return lhs;
    }

    AstNode term() {
        AstNode lhs = factor();
        while (check_op("*") || check_op("/") || check_op("//") || check_op("%") ||
               check_op("@")) {
            AstNode node = AstNode::make("binop:" + peek().text);
            node.children.push_back(std::move(lhs));
            node.children.push_back(take());
            node.children.push_back(factor());
            lhs = std::move(node);
        }
        return lhs;
    }

    AstNode factor() {
        if (check_op("-") || check_op("+") || check_op("~")) {
            AstNode node = AstNode::make("unaryop:" + peek().text);
            node.children.push_back(take());
            node.children.push_back(factor());
            return node;
        }
        return power();
    }

    AstNode power() {
        AstNode base = postfix_expression();
        if (check_op("**")) {
            AstNode node = AstNode::make("binop:**");
            node.children.push_back(std::move(base));
            node.children.push_back(take());
            node.children.push_back(factor());
            return node;
        }
        return base;
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
                AstNode sub = AstNode::make("subscript");
                sub.children.push_back(std::move(expr));
                sub.children.push_back(bracket_group("index", "[", "]"));
                expr = std::move(sub);
                continue;
            }
            if (check_op(".")) {
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
            // keyword argument: ident '=' value (but not '==')
            if (check_ident() && peek(1).kind == TokenKind::op && peek(1).text == "=") {
                AstNode kwarg = AstNode::make("kwarg");
                kwarg.children.push_back(take());
                kwarg.children.push_back(take());
                kwarg.children.push_back(expression());
                args.children.push_back(std::move(kwarg));
                continue;
            }
            args.children.push_back(expression());
        }
        if (check_op(")")) skip();
        return args;
    }

    AstNode bracket_group(std::string kind, std::string_view open, std::string_view close) {
        AstNode node = AstNode::make(std::move(kind));
        (void)open;
        skip(); // consume opener
        while (!at_end() && !check_op(close)) {
            if (check_op(",") || check_op(":")) {
                skip();
                continue;
            }
            node.children.push_back(expression());
        }
        if (check_op(close)) skip();
        return node;
    }

    AstNode primary() {
        DepthGuard guard(depth_);
        if (at_end()) return AstNode::make("unit");
        if (too_deep()) return take();
        if (kw("lambda")) return lambda_expression();
        if (check_op("(")) return bracket_group("paren", "(", ")");
        if (check_op("[")) return bracket_group("list", "[", "]");
        if (check_op("{")) return dict_literal();
        return take();
    }

    AstNode dict_literal() {
        AstNode node = AstNode::make("dict");
        skip(); // '{'
        while (!at_end() && !check_op("}")) {
            if (check_op(",")) {
                skip();
                continue;
            }
            AstNode key = expression();
            if (check_op(":")) {
                AstNode item = AstNode::make("dict_item");
                item.children.push_back(std::move(key));
                item.children.push_back(take());
                item.children.push_back(expression());
                node.children.push_back(std::move(item));
            } else {
                node.children.push_back(std::move(key));
            }
        }
        if (check_op("}")) skip();
        return node;
    }
};

} // namespace

AstNode parse_python_fragment(std::vector<CodeToken> tokens) {
    return PythonParser(std::move(tokens)).parse();
}

} // namespace slice::detail
