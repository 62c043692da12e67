#include "linguine/desugar.hpp"

#include <sstream>

namespace linguine {

namespace {

core::ExprPtr desugar_expr(const ast::Expr& e) {
    using SK = ast::Expr::Kind;
    using CK = core::Expr::Kind;
    switch (e.kind) {
        case SK::IntLit: {
            auto c = core::Expr::make(CK::IntLit, e.span);
            c->int_value = e.int_value;
            return c;
        }
        case SK::StrLit: {
            auto c = core::Expr::make(CK::StrLit, e.span);
            c->text = e.text;
            return c;
        }
        case SK::ListLit: {
            auto c = core::Expr::make(CK::ListLit, e.span);
            for (const ast::ExprPtr& a : e.args)
                c->args.push_back(desugar_expr(*a));
            return c;
        }
        case SK::Var: {
            auto c = core::Expr::make(CK::Var, e.span);
            c->text = e.text;
            return c;
        }
        case SK::Pronoun: {
            auto c = core::Expr::make(CK::Pronoun, e.span);
            c->text = e.text;
            c->referent = e.referent;
            return c;
        }
        case SK::BinOp: {
            auto c = core::Expr::make(CK::BinOp, e.span);
            c->bin_op = e.bin_op;
            c->args.push_back(desugar_expr(*e.args[0]));
            c->args.push_back(desugar_expr(*e.args[1]));
            return c;
        }
        case SK::RelOp: {
            auto c = core::Expr::make(CK::RelOp, e.span);
            c->rel_op = e.rel_op;
            c->args.push_back(desugar_expr(*e.args[0]));
            c->args.push_back(desugar_expr(*e.args[1]));
            return c;
        }
        case SK::SumOf: {
            auto c = core::Expr::make(CK::Reduce, e.span);
            c->bin_op = ast::BinOp::Plus;
            auto init = core::Expr::make(CK::IntLit, e.span);
            init->int_value = 0;
            c->args.push_back(std::move(init));
            c->args.push_back(desugar_expr(*e.args[0]));
            return c;
        }
        case SK::LengthOf: {
            auto c = core::Expr::make(CK::Builtin, e.span);
            c->builtin = core::BuiltinFn::Len;
            c->args.push_back(desugar_expr(*e.args[0]));
            return c;
        }
        case SK::Reversed: {
            auto c = core::Expr::make(CK::Builtin, e.span);
            c->builtin = core::BuiltinFn::Rev;
            c->args.push_back(desugar_expr(*e.args[0]));
            return c;
        }
    }
    internal_error("unhandled surface expression kind");
}

core::Block desugar_block(const ast::Block& block);

core::StmtPtr desugar_stmt(const ast::Stmt& s) {
    auto c = std::make_unique<core::Stmt>();
    c->span = s.span;
    c->name = s.name;
    c->name_span = s.name_span;
    switch (s.kind) {
        case ast::Stmt::Kind::Let:
            c->kind = core::Stmt::Kind::Let;
            c->expr = desugar_expr(*s.expr);
            break;
        case ast::Stmt::Kind::Print:
            c->kind = core::Stmt::Kind::Print;
            c->expr = desugar_expr(*s.expr);
            break;
        case ast::Stmt::Kind::AddTo:
            c->kind = core::Stmt::Kind::Append;
            c->expr = desugar_expr(*s.expr);
            break;
        case ast::Stmt::Kind::If:
            c->kind = core::Stmt::Kind::If;
            c->expr = desugar_expr(*s.expr);
            c->body = desugar_block(s.body);
            if (s.else_block) c->else_block = desugar_block(*s.else_block);
            break;
        case ast::Stmt::Kind::While:
            c->kind = core::Stmt::Kind::While;
            c->expr = desugar_expr(*s.expr);
            c->body = desugar_block(s.body);
            break;
        case ast::Stmt::Kind::ForEach:
            c->kind = core::Stmt::Kind::ForEach;
            c->expr = desugar_expr(*s.expr);
            c->body = desugar_block(s.body);
            break;
    }
    return c;
}

core::Block desugar_block(const ast::Block& block) {
    core::Block out;
    for (const ast::StmtPtr& s : block.stmts)
        out.stmts.push_back(desugar_stmt(*s));
    return out;
}

core::ExprPtr copy_expr(const core::Expr& e) {
    auto c = core::Expr::make(e.kind, e.span);
    c->int_value = e.int_value;
    c->text = e.text;
    c->referent = e.referent;
    c->bin_op = e.bin_op;
    c->rel_op = e.rel_op;
    c->builtin = e.builtin;
    for (const core::ExprPtr& a : e.args) c->args.push_back(copy_expr(*a));
    return c;
}

core::Block copy_block(const core::Block& block);

core::StmtPtr copy_stmt(const core::Stmt& s) {
    auto c = std::make_unique<core::Stmt>();
    c->kind = s.kind;
    c->span = s.span;
    c->name = s.name;
    c->name_span = s.name_span;
    if (s.expr) c->expr = copy_expr(*s.expr);
    c->body = copy_block(s.body);
    if (s.else_block) c->else_block = copy_block(*s.else_block);
    return c;
}

core::Block copy_block(const core::Block& block) {
    core::Block out;
    for (const core::StmtPtr& s : block.stmts)
        out.stmts.push_back(copy_stmt(*s));
    return out;
}

}  // namespace

core::Program desugar(const ast::Program& program) {
    core::Program out;
    for (const ast::StmtPtr& s : program.statements)
        out.statements.push_back(desugar_stmt(*s));
    return out;
}

core::Program desugar(const core::Program& program) {
    core::Program out;
    for (const core::StmtPtr& s : program.statements)
        out.statements.push_back(copy_stmt(*s));
    return out;
}

namespace core {

ExprPtr Expr::make(Kind kind, Span span) {
    auto e = std::make_unique<Expr>();
    e->kind = kind;
    e->span = span;
    return e;
}

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
            out << "(bin " << ast::binop_name(e.bin_op);
            dump_args(out, e);
            out << ')';
            break;
        case Expr::Kind::RelOp:
            out << "(rel " << ast::relop_name(e.rel_op);
            dump_args(out, e);
            out << ')';
            break;
        case Expr::Kind::Reduce:
            out << "(reduce " << ast::binop_name(e.bin_op);
            dump_args(out, e);
            out << ')';
            break;
        case Expr::Kind::Builtin:
            out << "(builtin "
                << (e.builtin == BuiltinFn::Len ? "len" : "rev");
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
        case Stmt::Kind::Append:
            out << "(append " << s.name << ' ';
            dump_expr(out, *s.expr);
            out << ")\n";
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

}  // namespace core

}  // namespace linguine
