#include "linguine/parser.hpp"

#include <sstream>

#include "linguine/lexer.hpp"

namespace linguine {

namespace ast {

const char* binop_name(BinOp op) {
    switch (op) {
        case BinOp::Plus: return "plus";
        case BinOp::Minus: return "minus";
        case BinOp::Times: return "times";
        case BinOp::DividedBy: return "divided-by";
        case BinOp::Modulo: return "modulo";
    }
    return "?";
}

const char* relop_name(RelOp op) {
    switch (op) {
        case RelOp::Is: return "is";
        case RelOp::IsEqualTo: return "is-equal-to";
        case RelOp::GreaterThan: return "greater-than";
        case RelOp::LessThan: return "less-than";
    }
    return "?";
}

ExprPtr Expr::make(Kind kind, Span span) {
    auto e = std::make_unique<Expr>();
    e->kind = kind;
    e->span = span;
    return e;
}

ReferentStack referent_push(const ReferentStack& stack, const std::string& name,
                            Span site) {
    ReferentStack next = stack;
    next.entries.push_back({name, site});
    return next;
}

std::string resolve_pronoun(const ReferentStack& stack,
                            const std::string& pronoun) {
    (void)pronoun;  // every pronoun word resolves to the stack top
    if (stack.empty()) return kUnresolved;
    return stack.entries.back().name;
}

}  // namespace ast

namespace {

using ast::Block;
using ast::Expr;
using ast::ExprPtr;
using ast::Program;
using ast::ReferentStack;
using ast::Stmt;
using ast::StmtPtr;

class Parser {
public:
    explicit Parser(const TokenStream& stream) : stream_(stream) {}

    Program parse_program() {
        Program program;
        while (!at_end()) {
            program.statements.push_back(parse_stmt());
        }
        return program;
    }

private:
    const TokenStream& stream_;
    std::size_t pos_ = 0;
    ReferentStack referents_;

    bool at_end() const { return pos_ >= stream_.tokens.size(); }

    const Token* peek(std::size_t ahead = 0) const {
        std::size_t i = pos_ + ahead;
        if (i >= stream_.tokens.size()) return nullptr;
        return &stream_.tokens[i];
    }

    const Token& advance() { return stream_.tokens[pos_++]; }

    Span last_span() const {
        if (stream_.tokens.empty()) return Span::at(1, 1, 1, 0, 0);
        std::size_t i = pos_ < stream_.tokens.size() ? pos_
                                                     : stream_.tokens.size() - 1;
        return stream_.tokens[i].span;
    }

    [[noreturn]] void error(const std::string& message,
                            bool incomplete = false) const {
        Diagnostic d;
        d.category = DiagCategory::Parse;
        d.message = message;
        d.span = last_span();
        d.incomplete_input = incomplete || pos_ >= stream_.tokens.size();
        throw CompileError(std::move(d));
    }

    [[noreturn]] void expected(const std::string& what) const {
        if (at_end()) {
            error("unexpected end of input: expected " + what, true);
        }
        const Token& t = *peek();
        error("unexpected '" + t.lexeme + "': expected " + what);
    }

    const Token& expect_keyword(Keyword k, const std::string& what) {
        if (!at_end() && peek()->is_keyword(k)) return advance();
        expected(what);
    }

    const Token& expect_punct(Punct p, const std::string& what) {
        if (!at_end() && peek()->is_punct(p)) return advance();
        expected(what);
    }

    std::string expect_ident(Span* span_out) {
        if (!at_end() && peek()->kind == TokenKind::Ident) {
            const Token& t = advance();
            if (span_out) *span_out = t.span;
            return t.lexeme;
        }
        expected("a variable name");
    }

    void expect_period() { expect_punct(Punct::Period, "'.'"); }

    void push_referent(const std::string& name, Span site) {
        referents_ = ast::referent_push(referents_, name, site);
    }

    // Statements ------------------------------------------------------------

    StmtPtr parse_stmt() {
        if (at_end()) expected("a statement");
        const Token& t = *peek();
        if (t.kind == TokenKind::Keyword) {
            switch (t.keyword) {
                case Keyword::Let: return parse_let();
                case Keyword::If: return parse_if();
                case Keyword::While: return parse_while();
                case Keyword::ForEach: return parse_for_each();
                case Keyword::Print: return parse_print();
                case Keyword::Add: return parse_add_to();
                default: break;
            }
        }
        expected("a statement ('Let', 'If', 'While', 'For each', 'Print' or "
                 "'Add')");
    }

    StmtPtr parse_let() {
        const Token& kw = advance();
        auto stmt = std::make_unique<Stmt>();
        stmt->kind = Stmt::Kind::Let;
        stmt->name = expect_ident(&stmt->name_span);
        expect_keyword(Keyword::Be, "'be'");
        stmt->expr = parse_expr();
        expect_period();
        stmt->span = kw.span.to(stmt->expr->span);
        // The binding becomes the pronoun antecedent only after the whole
        // sentence; a pronoun inside the value refers to the previous one.
        push_referent(stmt->name, stmt->name_span);
        return stmt;
    }

    StmtPtr parse_print() {
        const Token& kw = advance();
        auto stmt = std::make_unique<Stmt>();
        stmt->kind = Stmt::Kind::Print;
        stmt->expr = parse_expr();
        expect_period();
        stmt->span = kw.span.to(stmt->expr->span);
        return stmt;
    }

    StmtPtr parse_add_to() {
        const Token& kw = advance();
        auto stmt = std::make_unique<Stmt>();
        stmt->kind = Stmt::Kind::AddTo;
        stmt->expr = parse_expr();
        expect_keyword(Keyword::To, "'to'");
        stmt->name = expect_ident(&stmt->name_span);
        expect_period();
        stmt->span = kw.span.to(stmt->name_span);
        // Appending does not rebind the pronoun antecedent.
        return stmt;
    }

    StmtPtr parse_if() {
        const Token& kw = advance();
        return parse_if_tail(kw.span);
    }

    // Parses from the condition on; used for both 'If' and 'Else if'.
    StmtPtr parse_if_tail(Span kw_span) {
        auto stmt = std::make_unique<Stmt>();
        stmt->kind = Stmt::Kind::If;
        stmt->expr = parse_expr();
        expect_punct(Punct::Colon, "':'");
        stmt->span = kw_span.to(stmt->expr->span);
        stmt->body = parse_block({Keyword::Else, Keyword::EndIf}, "'End if.'");
        if (!at_end() && peek()->is_keyword(Keyword::Else)) {
            const Token& else_tok = advance();
            if (!at_end() && peek()->is_keyword(Keyword::If)) {
                advance();  // 'else if' becomes a nested If in the else block
                Block chain;
                chain.stmts.push_back(parse_if_tail(else_tok.span));
                stmt->else_block = std::move(chain);
                return stmt;  // nested tail consumed 'End if.'
            }
            expect_punct(Punct::Colon, "':'");
            stmt->else_block =
                parse_block({Keyword::EndIf}, "'End if.'");
        }
        expect_keyword(Keyword::EndIf, "'End if.'");
        expect_period();
        return stmt;
    }

    StmtPtr parse_while() {
        const Token& kw = advance();
        auto stmt = std::make_unique<Stmt>();
        stmt->kind = Stmt::Kind::While;
        stmt->expr = parse_expr();
        expect_punct(Punct::Colon, "':'");
        stmt->span = kw.span.to(stmt->expr->span);
        stmt->body = parse_block({Keyword::EndWhile}, "'End while.'");
        expect_keyword(Keyword::EndWhile, "'End while.'");
        expect_period();
        return stmt;
    }

    StmtPtr parse_for_each() {
        const Token& kw = advance();
        auto stmt = std::make_unique<Stmt>();
        stmt->kind = Stmt::Kind::ForEach;
        stmt->name = expect_ident(&stmt->name_span);
        expect_keyword(Keyword::In, "'in'");
        stmt->expr = parse_expr();
        expect_punct(Punct::Colon, "':'");
        stmt->span = kw.span.to(stmt->expr->span);
        // The loop variable is a binding site visible to the body.
        push_referent(stmt->name, stmt->name_span);
        stmt->body = parse_block({Keyword::EndFor}, "'End for.'");
        expect_keyword(Keyword::EndFor, "'End for.'");
        expect_period();
        return stmt;
    }

    Block parse_block(std::initializer_list<Keyword> closers,
                      const std::string& closer_text) {
        Block block;
        while (true) {
            if (at_end()) {
                error("unterminated block: expected " + closer_text, true);
            }
            const Token& t = *peek();
            if (t.kind == TokenKind::Keyword) {
                bool closing = false;
                for (Keyword k : closers)
                    if (t.keyword == k) closing = true;
                if (closing) break;
            }
            block.stmts.push_back(parse_stmt());
        }
        return block;
    }

    // Expressions ------------------------------------------------------------
    //
    //   expr       := additive (relop additive)?          non-chaining
    //   additive   := multiplicative ((plus|minus) multiplicative)*
    //   multiplicative := postfix ((times|divided by|modulo) postfix)*
    //   postfix    := primary ('reversed')*
    //   primary    := int | string | pronoun | ident | '[' exprs ']'
    //              | ('sum of'|'length of') postfix

    ExprPtr parse_expr() {
        ExprPtr lhs = parse_additive();
        if (!at_end() && peek()->kind == TokenKind::Keyword) {
            ast::RelOp op;
            switch (peek()->keyword) {
                case Keyword::Is: op = ast::RelOp::Is; break;
                case Keyword::IsEqualTo: op = ast::RelOp::IsEqualTo; break;
                case Keyword::GreaterThan: op = ast::RelOp::GreaterThan; break;
                case Keyword::LessThan: op = ast::RelOp::LessThan; break;
                default: return lhs;
            }
            advance();
            ExprPtr rhs = parse_additive();
            auto e = Expr::make(Expr::Kind::RelOp, lhs->span.to(rhs->span));
            e->rel_op = op;
            e->args.push_back(std::move(lhs));
            e->args.push_back(std::move(rhs));
            return e;
        }
        return lhs;
    }

    ExprPtr parse_additive() {
        ExprPtr lhs = parse_multiplicative();
        while (!at_end() && peek()->kind == TokenKind::Keyword &&
               (peek()->keyword == Keyword::Plus ||
                peek()->keyword == Keyword::Minus)) {
            ast::BinOp op = peek()->keyword == Keyword::Plus
                                ? ast::BinOp::Plus
                                : ast::BinOp::Minus;
            advance();
            ExprPtr rhs = parse_multiplicative();
            auto e = Expr::make(Expr::Kind::BinOp, lhs->span.to(rhs->span));
            e->bin_op = op;
            e->args.push_back(std::move(lhs));
            e->args.push_back(std::move(rhs));
            lhs = std::move(e);
        }
        return lhs;
    }

    ExprPtr parse_multiplicative() {
        ExprPtr lhs = parse_postfix();
        while (!at_end() && peek()->kind == TokenKind::Keyword) {
            ast::BinOp op;
            switch (peek()->keyword) {
                case Keyword::Times: op = ast::BinOp::Times; break;
                case Keyword::DividedBy: op = ast::BinOp::DividedBy; break;
                case Keyword::Modulo: op = ast::BinOp::Modulo; break;
                default: return lhs;
            }
            advance();
            ExprPtr rhs = parse_postfix();
            auto e = Expr::make(Expr::Kind::BinOp, lhs->span.to(rhs->span));
            e->bin_op = op;
            e->args.push_back(std::move(lhs));
            e->args.push_back(std::move(rhs));
            lhs = std::move(e);
        }
        return lhs;
    }

    ExprPtr parse_postfix() {
        ExprPtr e = parse_primary();
        while (!at_end() && peek()->is_keyword(Keyword::Reversed)) {
            const Token& t = advance();
            auto r = Expr::make(Expr::Kind::Reversed, e->span.to(t.span));
            r->args.push_back(std::move(e));
            e = std::move(r);
        }
        return e;
    }

    ExprPtr parse_primary() {
        if (at_end()) expected("an expression");
        const Token& t = *peek();
        switch (t.kind) {
            case TokenKind::Int: {
                advance();
                auto e = Expr::make(Expr::Kind::IntLit, t.span);
                e->int_value = t.int_value;
                return e;
            }
            case TokenKind::Str: {
                advance();
                auto e = Expr::make(Expr::Kind::StrLit, t.span);
                e->text = t.str_value;
                return e;
            }
            case TokenKind::Pronoun: {
                advance();
                auto e = Expr::make(Expr::Kind::Pronoun, t.span);
                e->text = t.lexeme;
                e->referent = ast::resolve_pronoun(referents_, t.lexeme);
                return e;
            }
            case TokenKind::Ident: {
                advance();
                auto e = Expr::make(Expr::Kind::Var, t.span);
                e->text = t.lexeme;
                return e;
            }
            case TokenKind::Punct:
                if (t.punct == Punct::LBracket) return parse_list_literal();
                break;
            case TokenKind::Keyword:
                if (t.keyword == Keyword::SumOf ||
                    t.keyword == Keyword::LengthOf) {
                    advance();
                    ExprPtr arg = parse_postfix();
                    auto e = Expr::make(t.keyword == Keyword::SumOf
                                            ? Expr::Kind::SumOf
                                            : Expr::Kind::LengthOf,
                                        t.span.to(arg->span));
                    e->args.push_back(std::move(arg));
                    return e;
                }
                break;
        }
        expected("an expression");
    }

    ExprPtr parse_list_literal() {
        const Token& open = advance();
        auto e = Expr::make(Expr::Kind::ListLit, open.span);
        if (!at_end() && peek()->is_punct(Punct::RBracket)) {
            const Token& close = advance();
            e->span = open.span.to(close.span);
            return e;  // empty literal; rejected later by type checking
        }
        while (true) {
            e->args.push_back(parse_expr());
            if (!at_end() && peek()->is_punct(Punct::Comma)) {
                advance();
                continue;
            }
            const Token& close = expect_punct(Punct::RBracket, "']' or ','");
            e->span = open.span.to(close.span);
            return e;
        }
    }
};

}  // namespace

ast::Program parse(const TokenStream& tokens) {
    return Parser(tokens).parse_program();
}

namespace ast {

namespace {

void dump_expr(std::ostringstream& out, const Expr& e);

void dump_args(std::ostringstream& out, const Expr& e) {
    for (const ExprPtr& a : e.args) {
        out << ' ';
        dump_expr(out, *a);
    }
}

void dump_expr(std::ostringstream& out, const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::IntLit:
            out << "(int " << e.int_value << ')';
            break;
        case Expr::Kind::StrLit:
            out << "(str \"" << e.text << "\")";
            break;
        case Expr::Kind::ListLit:
            out << "(list";
            dump_args(out, e);
            out << ')';
            break;
        case Expr::Kind::Var:
            out << "(var " << e.text << ')';
            break;
        case Expr::Kind::Pronoun:
            out << "(pronoun " << e.text << ' ' << e.referent << ')';
            break;
        case Expr::Kind::BinOp:
            out << "(bin " << binop_name(e.bin_op);
            dump_args(out, e);
            out << ')';
            break;
        case Expr::Kind::RelOp:
            out << "(rel " << relop_name(e.rel_op);
            dump_args(out, e);
            out << ')';
            break;
        case Expr::Kind::SumOf:
            out << "(sum-of";
            dump_args(out, e);
            out << ')';
            break;
        case Expr::Kind::LengthOf:
            out << "(length-of";
            dump_args(out, e);
            out << ')';
            break;
        case Expr::Kind::Reversed:
            out << "(reversed";
            dump_args(out, e);
            out << ')';
            break;
    }
}

void dump_block(std::ostringstream& out, const Block& block, int indent);

void dump_stmt(std::ostringstream& out, const Stmt& s, int indent) {
    std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    out << pad;
    switch (s.kind) {
        case Stmt::Kind::Let:
            out << "(let " << s.name << ' ';
            dump_expr(out, *s.expr);
            out << ")\n";
            break;
        case Stmt::Kind::Print:
            out << "(print ";
            dump_expr(out, *s.expr);
            out << ")\n";
            break;
        case Stmt::Kind::AddTo:
            out << "(add-to ";
            dump_expr(out, *s.expr);
            out << ' ' << s.name << ")\n";
            break;
        case Stmt::Kind::If:
            out << "(if ";
            dump_expr(out, *s.expr);
            out << '\n';
            out << pad << "  (then\n";
            dump_block(out, s.body, indent + 2);
            out << pad << "  )\n";
            if (s.else_block) {
                out << pad << "  (else\n";
                dump_block(out, *s.else_block, indent + 2);
                out << pad << "  )\n";
            }
            out << pad << ")\n";
            break;
        case Stmt::Kind::While:
            out << "(while ";
            dump_expr(out, *s.expr);
            out << '\n';
            dump_block(out, s.body, indent + 1);
            out << pad << ")\n";
            break;
        case Stmt::Kind::ForEach:
            out << "(for-each " << s.name << ' ';
            dump_expr(out, *s.expr);
            out << '\n';
            dump_block(out, s.body, indent + 1);
            out << pad << ")\n";
            break;
    }
}

void dump_block(std::ostringstream& out, const Block& block, int indent) {
    for (const StmtPtr& s : block.stmts) dump_stmt(out, *s, indent);
}

}  // namespace

std::string dump_program(const Program& program) {
    std::ostringstream out;
    for (const StmtPtr& s : program.statements) dump_stmt(out, *s, 0);
    return out.str();
}

}  // namespace ast

}  // namespace linguine
