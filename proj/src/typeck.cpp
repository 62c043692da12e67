#include "linguine/typeck.hpp"

#include <sstream>

namespace linguine {

namespace {

using core::Block;
using core::Expr;
using core::Stmt;

using Env = std::map<std::string, TypeTerm>;

[[noreturn]] void fail(DiagCategory category, std::string message, Span span,
                       std::vector<std::string> notes = {}) {
    Diagnostic d;
    d.category = category;
    d.message = std::move(message);
    d.span = span;
    d.notes = std::move(notes);
    throw CompileError(std::move(d));
}

std::string span_text(Span s) {
    return std::to_string(s.line) + ":" + std::to_string(s.col);
}

class Checker {
public:
    TypedProgram run(core::Program program) {
        for (core::StmtPtr& s : program.statements) check_stmt(*s);
        TypedProgram typed;
        typed.program = std::move(program);
        typed.bindings = std::move(bindings_);
        return typed;
    }

private:
    Env env_;        // definitely-assigned variables on every path here
    Env flat_;       // textually most recent binding, ignoring branches
    std::vector<BindingInfo> bindings_;

    void bind(const std::string& name, TypeTerm type, Span span) {
        env_.insert_or_assign(name, type);
        flat_.insert_or_assign(name, type);
        bindings_.push_back({name, std::move(type), span});
    }

    void check_stmt(Stmt& s) {
        switch (s.kind) {
            case Stmt::Kind::Let: {
                TypeTerm t = check_expr(*s.expr);
                bind(s.name, std::move(t), s.name_span);
                break;
            }
            case Stmt::Kind::Print:
                check_expr(*s.expr);
                break;
            case Stmt::Kind::Append: {
                auto it = env_.find(s.name);
                if (it == env_.end()) {
                    fail(DiagCategory::Type,
                         "cannot add to unbound variable '" + s.name + "'",
                         s.name_span);
                }
                if (it->second.kind != TypeTerm::Kind::List) {
                    fail(DiagCategory::Type,
                         "'Add ... to' requires a list, but '" + s.name +
                             "' has type " + type_name(it->second),
                         s.name_span);
                }
                TypeTerm elem = check_expr(*s.expr);
                if (elem != *it->second.elem) {
                    fail(DiagCategory::Type,
                         "cannot add " + type_name(elem) + " to '" + s.name +
                             "' of type " + type_name(it->second),
                         s.expr->span);
                }
                break;
            }
            case Stmt::Kind::If: {
                require_bool(*s.expr, "'If' condition");
                Env before = env_;
                check_block(s.body);
                Env after_then = std::move(env_);
                env_ = before;
                if (s.else_block) check_block(*s.else_block);
                Env after_else = std::move(env_);
                env_ = merge_branches(after_then, after_else, s.span);
                break;
            }
            case Stmt::Kind::While: {
                require_bool(*s.expr, "'While' condition");
                Env before = env_;
                check_block(s.body);
                check_loop_invariance(before, env_, s.span);
                env_ = std::move(before);
                break;
            }
            case Stmt::Kind::ForEach: {
                TypeTerm list_t = check_expr(*s.expr);
                if (list_t.kind != TypeTerm::Kind::List) {
                    fail(DiagCategory::Type,
                         "'For each' requires a list, found " +
                             type_name(list_t),
                         s.expr->span);
                }
                if (env_.count(s.name)) {
                    fail(DiagCategory::Type,
                         "loop variable '" + s.name +
                             "' shadows an existing binding; pick another "
                             "name",
                         s.name_span);
                }
                Env before = env_;
                bind(s.name, *list_t.elem, s.name_span);
                Env at_entry = env_;
                check_block(s.body);
                check_loop_invariance(at_entry, env_, s.span);
                // The loop variable does not survive the loop.
                env_ = std::move(before);
                break;
            }
        }
    }

    void check_block(Block& block) {
        for (core::StmtPtr& s : block.stmts) check_stmt(*s);
    }

    void require_bool(Expr& e, const std::string& what) {
        TypeTerm t = check_expr(e);
        if (t.kind != TypeTerm::Kind::Bool) {
            fail(DiagCategory::Type,
                 what + " must be Bool, found " + type_name(t), e.span);
        }
    }

    Env merge_branches(const Env& a, const Env& b, Span span) {
        Env merged;
        for (const auto& [name, type] : a) {
            auto it = b.find(name);
            if (it == b.end()) continue;  // bound on one path only
            if (type != it->second) {
                fail(DiagCategory::Type,
                     "'" + name + "' has type " + type_name(type) +
                         " on one branch and " + type_name(it->second) +
                         " on the other",
                     span);
            }
            merged.emplace(name, type);
        }
        return merged;
    }

    // A loop body may rebind an outer variable, but never to another type:
    // the next iteration would observe the new type where the first observed
    // the old one.
    void check_loop_invariance(const Env& entry, const Env& exit, Span span) {
        for (const auto& [name, type] : entry) {
            auto it = exit.find(name);
            if (it != exit.end() && it->second != type) {
                fail(DiagCategory::Type,
                     "loop body changes the type of '" + name + "' from " +
                         type_name(type) + " to " + type_name(it->second),
                     span);
            }
        }
    }

    TypeTerm check_expr(Expr& e) {
        TypeTerm t = infer_expr(e);
        e.type = t;
        return t;
    }

    TypeTerm infer_expr(Expr& e) {
        switch (e.kind) {
            case Expr::Kind::IntLit:
                return TypeTerm::make_int();
            case Expr::Kind::StrLit:
                return TypeTerm::make_str();
            case Expr::Kind::ListLit: {
                if (e.args.empty()) {
                    fail(DiagCategory::Type,
                         "cannot infer the element type of an empty list",
                         e.span);
                }
                TypeTerm elem = check_expr(*e.args[0]);
                for (std::size_t i = 1; i < e.args.size(); ++i) {
                    TypeTerm t = check_expr(*e.args[i]);
                    if (t != elem) {
                        fail(DiagCategory::Type,
                             "list elements must share one type: " +
                                 type_name(elem) + " vs " + type_name(t),
                             e.args[i]->span,
                             {"first element at " + span_text(e.args[0]->span)});
                    }
                }
                return TypeTerm::make_list(std::move(elem));
            }
            case Expr::Kind::Var: {
                auto it = env_.find(e.text);
                if (it != env_.end()) return it->second;
                if (flat_.count(e.text)) {
                    fail(DiagCategory::Type,
                         "variable '" + e.text +
                             "' may be unbound here: it is not assigned on "
                             "every path to this use",
                         e.span);
                }
                fail(DiagCategory::Type, "unbound variable '" + e.text + "'",
                     e.span);
            }
            case Expr::Kind::Pronoun: {
                if (e.referent == ast::kUnresolved) {
                    fail(DiagCategory::PronounUndefined,
                         "pronoun '" + e.text +
                             "' has no antecedent: no variable is bound at "
                             "this point",
                         e.span);
                }
                auto it = flat_.find(e.referent);
                if (it == flat_.end()) {
                    internal_error("pronoun referent '" + e.referent +
                                   "' missing from the flat environment");
                }
                // Provisional typing; the referent analysis later proves the
                // antecedent unique and defined on every path.
                return it->second;
            }
            case Expr::Kind::BinOp: {
                TypeTerm lhs = check_expr(*e.args[0]);
                TypeTerm rhs = check_expr(*e.args[1]);
                if (lhs.kind != TypeTerm::Kind::Int ||
                    rhs.kind != TypeTerm::Kind::Int) {
                    const Expr& bad = lhs.kind != TypeTerm::Kind::Int
                                          ? *e.args[0]
                                          : *e.args[1];
                    fail(DiagCategory::Type,
                         std::string("operator '") +
                             ast::binop_name(e.bin_op) +
                             "' requires Int operands: " + type_name(lhs) +
                             " vs " + type_name(rhs),
                         e.span, {"offending operand at " +
                                  span_text(bad.span)});
                }
                return TypeTerm::make_int();
            }
            case Expr::Kind::RelOp: {
                TypeTerm lhs = check_expr(*e.args[0]);
                TypeTerm rhs = check_expr(*e.args[1]);
                if (lhs != rhs) {
                    fail(DiagCategory::Type,
                         std::string("comparison '") +
                             ast::relop_name(e.rel_op) +
                             "' requires both sides to have the same type: " +
                             type_name(lhs) + " vs " + type_name(rhs),
                         e.span,
                         {"left operand at " + span_text(e.args[0]->span),
                          "right operand at " + span_text(e.args[1]->span)});
                }
                bool ordering = e.rel_op == ast::RelOp::GreaterThan ||
                                e.rel_op == ast::RelOp::LessThan;
                if (ordering && lhs.kind != TypeTerm::Kind::Int) {
                    fail(DiagCategory::Type,
                         std::string("ordering comparison '") +
                             ast::relop_name(e.rel_op) +
                             "' is only defined for Int, found " +
                             type_name(lhs),
                         e.span);
                }
                return TypeTerm::make_bool();
            }
            case Expr::Kind::Reduce: {
                TypeTerm init = check_expr(*e.args[0]);
                TypeTerm list = check_expr(*e.args[1]);
                unify(init, TypeTerm::make_int(), e.args[0]->span);
                unify(list, TypeTerm::make_list(TypeTerm::make_int()),
                      e.args[1]->span);
                return TypeTerm::make_int();
            }
            case Expr::Kind::Builtin: {
                TypeTerm arg = check_expr(*e.args[0]);
                if (e.builtin == core::BuiltinFn::Len) {
                    if (arg.kind == TypeTerm::Kind::Str ||
                        arg.kind == TypeTerm::Kind::List) {
                        return TypeTerm::make_int();
                    }
                    fail(DiagCategory::Type,
                         "'length of' requires a list or string, found " +
                             type_name(arg),
                         e.args[0]->span);
                }
                if (arg.kind == TypeTerm::Kind::Str ||
                    arg.kind == TypeTerm::Kind::List) {
                    return arg;  // rev preserves the operand type
                }
                fail(DiagCategory::Type,
                     "'reversed' requires a list or string, found " +
                         type_name(arg),
                     e.args[0]->span);
            }
        }
        internal_error("unhandled core expression kind");
    }
};

}  // namespace

TypedProgram infer(core::Program program) {
    return Checker().run(std::move(program));
}

std::string dump_types(const TypedProgram& typed) {
    std::ostringstream out;
    for (const BindingInfo& b : typed.bindings) {
        out << b.name << " : " << type_name(b.type) << '\n';
    }
    return out.str();
}

}  // namespace linguine
