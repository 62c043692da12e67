#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "linguine/ast.hpp"
#include "linguine/types.hpp"

namespace linguine::core {

using ast::BinOp;
using ast::RelOp;

enum class BuiltinFn { Len, Rev };

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

// Minimal core expression language: the surface sugar (sum of, length of,
// reversed) is gone, replaced by Reduce and Builtin nodes.
struct Expr {
    enum class Kind {
        IntLit,
        StrLit,
        ListLit,
        Var,
        Pronoun,
        BinOp,
        RelOp,
        Reduce,    // args = {init, list}; op folds left with init
        Builtin,   // args = {operand}
    };

    Kind kind;
    Span span;
    std::int64_t int_value = 0;
    std::string text;                  // StrLit value, Var name, Pronoun word
    std::string referent;              // Pronoun provisional antecedent
    BinOp bin_op = BinOp::Plus;        // BinOp and Reduce operator
    RelOp rel_op = RelOp::Is;
    BuiltinFn builtin = BuiltinFn::Len;
    std::vector<ExprPtr> args;

    // Filled by type inference.
    std::optional<TypeTerm> type;

    static ExprPtr make(Kind kind, Span span);
};

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;

struct Block {
    std::vector<StmtPtr> stmts;
};

struct Stmt {
    enum class Kind { Let, If, While, ForEach, Print, Append };

    Kind kind;
    Span span;
    std::string name;                 // Let/ForEach binder, Append target
    Span name_span;
    ExprPtr expr;
    Block body;
    std::optional<Block> else_block;
};

struct Program {
    std::vector<StmtPtr> statements;
};

// `--emit-core` rendering, same shape as the surface AST dump.
std::string dump_program(const Program& program);

}  // namespace linguine::core
