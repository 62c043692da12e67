#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "linguine/typeck.hpp"

namespace linguine::ssa {

// SSA value name: a versioned user variable (x_2) or a compiler temp (t7).
struct Name {
    std::string base;
    int version = 0;
    bool is_temp = false;

    std::string str() const {
        if (is_temp) return base;
        return base + "_" + std::to_string(version);
    }
};

inline bool operator==(const Name& a, const Name& b) {
    return a.base == b.base && a.version == b.version && a.is_temp == b.is_temp;
}
inline bool operator<(const Name& a, const Name& b) {
    if (a.base != b.base) return a.base < b.base;
    if (a.version != b.version) return a.version < b.version;
    return a.is_temp < b.is_temp;
}

// Pronoun occurrences survive lowering only as operand metadata; the operand
// itself is the SSA name of the resolved antecedent.
struct PronounOrigin {
    std::string word;
    std::string provisional;  // referent base name chosen by the parser
    Span span;
};

struct Operand {
    enum class Kind {
        Value,              // SSA name
        IntConst,
        StrConst,
        // A pronoun whose provisional referent has no live definition at
        // this point. Never survives referent analysis.
        UnresolvedPronoun,
    };

    Kind kind = Kind::Value;
    Name name;                              // Value
    std::int64_t int_value = 0;             // IntConst
    std::string str_value;                  // StrConst
    std::optional<PronounOrigin> pronoun;   // set for pronoun-derived operands

    static Operand value(Name n) {
        Operand o;
        o.kind = Kind::Value;
        o.name = std::move(n);
        return o;
    }
    static Operand int_const(std::int64_t v) {
        Operand o;
        o.kind = Kind::IntConst;
        o.int_value = v;
        return o;
    }
    static Operand str_const(std::string v) {
        Operand o;
        o.kind = Kind::StrConst;
        o.str_value = std::move(v);
        return o;
    }
};

enum class Opcode {
    Const,     // dst = literal operand
    Copy,      // dst = operand
    BinOp,     // dst = a op b
    RelOp,     // dst = a relop b
    Reduce,    // dst = fold(op, init, list)
    Builtin,   // dst = len(a) | rev(a) | index(list, i)
    ListNew,   // dst = [operands...]
    Append,    // dst = list ++ [elem]
    Print,     // print operand
    Br,        // conditional branch (cond, then_block, else_block)
    Jmp,       // unconditional branch
    Ret,       // program end
};

enum class BuiltinOp { Len, Rev, Index };

// Marks instructions materialized by loop lowering so the code generator can
// fold them back into structured headers.
enum class InstrRole {
    Normal,
    ForeachLen,
    ForeachIndexInit,
    ForeachCond,
    ForeachElem,
    ForeachIncr,
};

struct Instruction {
    Opcode op = Opcode::Const;
    std::optional<Name> dst;
    ast::BinOp bin_op = ast::BinOp::Plus;
    ast::RelOp rel_op = ast::RelOp::Is;
    BuiltinOp builtin = BuiltinOp::Len;
    std::vector<Operand> operands;
    int target_then = -1;   // Br/Jmp block ids
    int target_else = -1;
    TypeTerm type;          // dst type (or operand type for Print)
    Span span;
    InstrRole role = InstrRole::Normal;
    // True when this definition realizes a Let or loop-variable binding; the
    // referent analysis treats exactly these as antecedent updates.
    bool referent_binding = false;
    Span binding_site;  // the bound name's span, when referent_binding
};

struct PhiNode {
    Name dst;
    std::map<int, Name> incoming;  // predecessor block id -> value
    TypeTerm type;
    Span span;
};

struct BasicBlock {
    int id = 0;
    std::vector<PhiNode> phis;
    std::vector<Instruction> insts;
};

// Structured shape of the control-flow graph, recorded during lowering so
// code generation can walk if/while/for regions instead of relooping.
struct Region;

struct RegionItem {
    enum class Kind { Block, If, While, ForEach };
    Kind kind = Kind::Block;
    int block = -1;                     // Block: plain block id; loops: preheader
    int header = -1;                    // If: branch block; loops: header
    int join = -1;                      // If: join block; loops: exit block
    int exit_a = -1;                    // If: then-arm exit; loops: latch
    int exit_b = -1;                    // If: else-arm exit
    std::unique_ptr<Region> body;       // If: then; loops: body
    std::unique_ptr<Region> else_body;  // If only
    // ForEach extras:
    std::string elem_base;
    Operand list_operand;
    TypeTerm elem_type;
};

struct Region {
    std::vector<RegionItem> items;
};

// One record per pronoun occurrence, in source order.
struct PronounUse {
    int block = -1;
    int inst_index = -1;     // index into insts
    int operand_index = -1;
    PronounOrigin origin;
    bool resolved = false;   // operand kind == Value
    Name resolved_name;      // when resolved
};

struct SsaProgram {
    std::vector<BasicBlock> blocks;          // entry block first (id 0)
    std::map<int, std::vector<int>> succ;
    Region top;
    std::vector<PronounUse> pronoun_uses;
    std::string source_id;
};

std::vector<int> predecessors(const SsaProgram& prog, int block_id);

// Lowers a type-checked program into SSA form. Every variable gets a unique
// version; pronouns are replaced by the current version of their provisional
// referent (or an UnresolvedPronoun operand when none is live, which the
// referent analysis rejects with a proper diagnostic).
SsaProgram lower(const TypedProgram& typed);

struct VerifyError {
    std::string invariant;
    int block = -1;
    int inst_index = -1;
    std::string detail;
};

// Structural checks: single assignment, use dominance, phi/predecessor
// agreement, operand/instruction type agreement. Returns all violations
// (empty result means the program verified).
std::vector<VerifyError> verify_ssa(const SsaProgram& prog);

// `--emit-ir` rendering.
std::string dump_ir(const SsaProgram& prog);

}  // namespace linguine::ssa
