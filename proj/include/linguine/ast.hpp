#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "linguine/diagnostics.hpp"

namespace linguine::ast {

enum class BinOp { Plus, Minus, Times, DividedBy, Modulo };
enum class RelOp { Is, IsEqualTo, GreaterThan, LessThan };

const char* binop_name(BinOp op);
const char* relop_name(RelOp op);

inline constexpr const char* kUnresolved = "unresolved";

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct Expr {
    enum class Kind {
        IntLit,
        StrLit,
        ListLit,
        Var,
        Pronoun,
        BinOp,
        RelOp,
        SumOf,
        LengthOf,
        Reversed,
    };

    Kind kind;
    Span span;
    std::int64_t int_value = 0;       // IntLit
    std::string text;                 // StrLit value, Var name, Pronoun word
    std::string referent;             // Pronoun: provisional antecedent
    BinOp bin_op = BinOp::Plus;
    RelOp rel_op = RelOp::Is;
    std::vector<ExprPtr> args;        // operands / list elements

    static ExprPtr make(Kind kind, Span span);
};

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;

struct Block {
    std::vector<StmtPtr> stmts;
};

struct Stmt {
    enum class Kind { Let, If, While, ForEach, Print, AddTo };

    Kind kind;
    Span span;
    std::string name;                 // Let/ForEach binder, AddTo target
    Span name_span;
    ExprPtr expr;                     // Let value, If/While cond, ForEach
                                      // list, Print value, AddTo element
    Block body;                       // If then-block, While/ForEach body
    std::optional<Block> else_block;  // If only; else-if chains are nested Ifs
};

struct Program {
    std::vector<StmtPtr> statements;
};

// Parser-maintained stack of recent binding sites; top is the default
// pronoun antecedent. Pronoun resolution never mutates it.
struct ReferentStack {
    struct Entry {
        std::string name;
        Span site;
    };
    std::vector<Entry> entries;  // back() is the top

    bool empty() const { return entries.empty(); }
};

ReferentStack referent_push(const ReferentStack& stack, const std::string& name,
                            Span site);
std::string resolve_pronoun(const ReferentStack& stack,
                            const std::string& pronoun);

// `--emit-ast` rendering: one statement per line, blocks indented.
std::string dump_program(const Program& program);

}  // namespace linguine::ast
