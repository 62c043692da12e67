#include "linguine/codegen.hpp"

#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace linguine {

namespace {

using ssa::BasicBlock;
using ssa::Instruction;
using ssa::Opcode;
using ssa::Operand;
using ssa::Region;
using ssa::RegionItem;
using ssa::SsaProgram;

// Names that must not collide with emitted identifiers: Python keywords plus
// the built-ins the generated code relies on.
const std::set<std::string>& python_reserved() {
    static const std::set<std::string> names = {
        "False",  "None",   "True",    "and",    "as",     "assert", "async",
        "await",  "break",  "class",   "continue", "def",  "del",    "elif",
        "else",   "except", "finally", "for",    "from",   "global", "if",
        "import", "in",     "is",      "lambda", "match",  "nonlocal", "not",
        "or",     "pass",   "raise",   "return", "try",    "while",  "with",
        "yield",  "print",  "sum",     "len",    "list",   "str",    "int",
        "bool",   "range",  "type",    "input",  "id",
    };
    return names;
}

std::string snake_case(const std::string& name) {
    std::string out;
    for (std::size_t i = 0; i < name.size(); ++i) {
        char c = name[i];
        if (c >= 'A' && c <= 'Z') {
            if (i > 0 && name[i - 1] != '_' &&
                !(name[i - 1] >= 'A' && name[i - 1] <= 'Z'))
                out += '_';
            out += static_cast<char>(c - 'A' + 'a');
        } else {
            out += c;
        }
    }
    return out;
}

std::string python_str_literal(const std::string& s) {
    bool has_single = s.find('\'') != std::string::npos;
    bool has_double = s.find('"') != std::string::npos;
    char quote = (has_single && !has_double) ? '"' : '\'';
    std::string out(1, quote);
    for (unsigned char c : s) {
        if (c == '\\') {
            out += "\\\\";
        } else if (c == quote) {
            out += '\\';
            out += static_cast<char>(c);
        } else if (c == '\t') {
            out += "\\t";
        } else if (c < 0x20 || c == 0x7f) {
            char buf[8];
            std::snprintf(buf, sizeof(buf), "\\x%02x", c);
            out += buf;
        } else {
            out += static_cast<char>(c);
        }
    }
    out += quote;
    return out;
}

struct Fragment {
    std::string text;
    bool atom = true;  // atoms never need parentheses when nested

    std::string nested() const { return atom ? text : "(" + text + ")"; }
};

const char* py_binop(ast::BinOp op) {
    switch (op) {
        case ast::BinOp::Plus: return "+";
        case ast::BinOp::Minus: return "-";
        case ast::BinOp::Times: return "*";
        case ast::BinOp::DividedBy: return "//";
        case ast::BinOp::Modulo: return "%";
    }
    return "?";
}

const char* py_relop(ast::RelOp op) {
    switch (op) {
        case ast::RelOp::Is:
        case ast::RelOp::IsEqualTo: return "==";
        case ast::RelOp::GreaterThan: return ">";
        case ast::RelOp::LessThan: return "<";
    }
    return "?";
}

bool suppressed(const Instruction& inst) {
    return inst.role != ssa::InstrRole::Normal;
}

class Emitter {
public:
    Emitter(const SsaProgram& prog, const EmitOptions& opts)
        : prog_(prog), opts_(opts) {}

    std::string run() {
        build_plan();
        count_uses();
        out_ << "# generated by linguinec\n";
        emit_region(prog_.top, 0);
        return out_.str();
    }

private:
    const SsaProgram& prog_;
    const EmitOptions& opts_;
    std::ostringstream out_;
    std::map<std::string, std::string> plan_;       // base -> identifier
    std::map<std::string, int> temp_uses_;          // temp name -> use count
    std::vector<std::pair<std::string, Fragment>> pending_;

    const BasicBlock& block(int id) const {
        return prog_.blocks[static_cast<std::size_t>(id)];
    }

    // Identifier plan ---------------------------------------------------------

    void add_base(const std::string& base, std::set<std::string>& taken) {
        if (base.empty() || base[0] == '.') return;  // loop-index internals
        if (plan_.count(base)) return;
        std::string ident = snake_case(base);
        if (python_reserved().count(ident)) ident += '_';
        std::string candidate = ident;
        int suffix = 2;
        while (taken.count(candidate))
            candidate = ident + "_" + std::to_string(suffix++);
        taken.insert(candidate);
        plan_.emplace(base, candidate);
    }

    void build_plan() {
        std::set<std::string> taken;
        for (const BasicBlock& b : prog_.blocks) {
            for (const ssa::PhiNode& phi : b.phis) add_base(phi.dst.base, taken);
            for (const Instruction& inst : b.insts)
                if (inst.dst && !inst.dst->is_temp)
                    add_base(inst.dst->base, taken);
        }
    }

    void count_uses() {
        auto count = [&](const Operand& op) {
            if (op.kind == Operand::Kind::Value && op.name.is_temp)
                ++temp_uses_[op.name.str()];
        };
        for (const BasicBlock& b : prog_.blocks) {
            for (const Instruction& inst : b.insts)
                for (const Operand& op : inst.operands) count(op);
            for (const ssa::PhiNode& phi : b.phis)
                for (const auto& [pred, name] : phi.incoming)
                    count(Operand::value(name));
        }
    }

    std::string ident(const ssa::Name& name) const {
        if (name.is_temp) return "_" + name.base;
        auto it = plan_.find(name.base);
        if (it == plan_.end())
            internal_error("no emitted identifier for base '" + name.base +
                           "'");
        return it->second;
    }

    // Lines -------------------------------------------------------------------

    void line(int indent, const std::string& text, Span span = {}) {
        for (int i = 0; i < indent; ++i) out_ << "    ";
        out_ << text;
        if (opts_.annotate && span.valid()) out_ << "  # line " << span.line;
        out_ << '\n';
    }

    // Pending single-use temporaries ------------------------------------------

    void flush_pending(int indent) {
        for (auto& [temp, frag] : pending_) {
            line(indent, "_" + temp + " = " + frag.text);
        }
        pending_.clear();
    }

    // Resolves operands right-to-left so consecutive pending temps fold back
    // into their single consumer in definition order.
    std::vector<Fragment> operand_fragments(const Instruction& inst,
                                            int indent) {
        std::vector<Fragment> frags(inst.operands.size());
        for (std::size_t ri = inst.operands.size(); ri-- > 0;) {
            const Operand& op = inst.operands[ri];
            frags[ri] = operand_fragment(op, indent);
        }
        return frags;
    }

    Fragment operand_fragment(const Operand& op, int indent) {
        switch (op.kind) {
            case Operand::Kind::IntConst:
                return {std::to_string(op.int_value), true};
            case Operand::Kind::StrConst:
                return {python_str_literal(op.str_value), true};
            case Operand::Kind::Value: {
                if (op.name.is_temp && !pending_.empty() &&
                    pending_.back().first == op.name.str()) {
                    Fragment frag = pending_.back().second;
                    pending_.pop_back();
                    return frag;
                }
                if (op.name.is_temp) {
                    // Out of fold order: materialize everything still pending.
                    flush_pending(indent);
                }
                return {ident(op.name), true};
            }
            case Operand::Kind::UnresolvedPronoun:
                internal_error("unresolved pronoun reached code generation");
        }
        internal_error("unhandled operand kind in code generation");
    }

    Fragment instruction_fragment(const Instruction& inst, int indent) {
        std::vector<Fragment> args = operand_fragments(inst, indent);
        switch (inst.op) {
            case Opcode::Const:
            case Opcode::Copy:
                return args[0];
            case Opcode::BinOp:
                return {args[0].nested() + ' ' + py_binop(inst.bin_op) + ' ' +
                            args[1].nested(),
                        false};
            case Opcode::RelOp:
                return {args[0].nested() + ' ' + py_relop(inst.rel_op) + ' ' +
                            args[1].nested(),
                        false};
            case Opcode::Reduce: {
                if (inst.operands[0].kind != Operand::Kind::IntConst ||
                    inst.operands[0].int_value != 0)
                    internal_error("reduce is only emitted for sums from 0");
                return {"sum(" + args[1].text + ")", true};
            }
            case Opcode::Builtin:
                switch (inst.builtin) {
                    case ssa::BuiltinOp::Len:
                        return {"len(" + args[0].text + ")", true};
                    case ssa::BuiltinOp::Rev:
                        return {args[0].nested() + "[::-1]", true};
                    case ssa::BuiltinOp::Index:
                        return {args[0].nested() + "[" + args[1].text + "]",
                                true};
                }
                break;
            case Opcode::ListNew: {
                std::string text = "[";
                for (std::size_t i = 0; i < args.size(); ++i) {
                    if (i) text += ", ";
                    text += args[i].text;
                }
                text += "]";
                return {text, true};
            }
            case Opcode::Append:
                return {args[0].nested() + " + [" + args[1].text + "]", false};
            default:
                break;
        }
        internal_error("unhandled instruction in code generation");
    }

    // Emits a block's instructions except its terminator. When `want_cond` is
    // set, returns the branch condition as a fragment.
    Fragment emit_block_body(int block_id, int indent, bool want_cond) {
        const BasicBlock& b = block(block_id);
        for (const Instruction& inst : b.insts) {
            bool is_term = inst.op == Opcode::Br || inst.op == Opcode::Jmp ||
                           inst.op == Opcode::Ret;
            if (is_term) break;
            if (suppressed(inst)) continue;
            if (inst.op == Opcode::Print) {
                std::vector<Fragment> args = operand_fragments(inst, indent);
                flush_pending(indent);
                line(indent, "print(" + args[0].text + ")", inst.span);
                continue;
            }
            Fragment frag = instruction_fragment(inst, indent);
            if (!inst.dst) internal_error("non-print instruction without dst");
            if (inst.dst->is_temp &&
                temp_uses_[inst.dst->str()] == 1) {
                pending_.emplace_back(inst.dst->str(), std::move(frag));
                continue;
            }
            flush_pending(indent);
            line(indent, ident(*inst.dst) + " = " + frag.text, inst.span);
        }
        if (want_cond) {
            const Instruction& term = b.insts.back();
            if (term.op != Opcode::Br)
                internal_error("expected a conditional branch terminator");
            Fragment cond = operand_fragment(term.operands[0], indent);
            flush_pending(indent);
            return cond;
        }
        flush_pending(indent);
        return {};
    }

    void emit_phi_copies(int pred, int succ, int indent) {
        for (const ssa::PhiNode& phi : block(succ).phis) {
            if (!phi.dst.base.empty() && phi.dst.base[0] == '.') continue;
            auto it = phi.incoming.find(pred);
            if (it == phi.incoming.end())
                internal_error("phi copy: missing incoming edge");
            std::string dst = ident(phi.dst);
            std::string src = ident(it->second);
            if (dst != src) line(indent, dst + " = " + src, phi.span);
        }
    }

    bool block_emits_nothing(int block_id) const {
        for (const Instruction& inst : block(block_id).insts) {
            bool is_term = inst.op == Opcode::Br || inst.op == Opcode::Jmp ||
                           inst.op == Opcode::Ret;
            if (!is_term && !suppressed(inst)) return false;
        }
        return true;
    }

    bool region_emits_nothing(const Region& region) const {
        for (const RegionItem& item : region.items) {
            if (item.kind != RegionItem::Kind::Block) return false;
            if (!block_emits_nothing(item.block)) return false;
        }
        return true;
    }

    bool arm_needs_copies(int pred, int succ) const {
        for (const ssa::PhiNode& phi : block(succ).phis) {
            if (!phi.dst.base.empty() && phi.dst.base[0] == '.') continue;
            auto it = phi.incoming.find(pred);
            if (it == phi.incoming.end()) continue;
            if (ident(phi.dst) != ident(it->second)) return true;
        }
        return false;
    }

    // Loop headers normally fold entirely into the `while` condition; a
    // header with a materialized value falls back to `while True`.
    bool header_folds(int header) const {
        const BasicBlock& b = block(header);
        for (const Instruction& inst : b.insts) {
            bool is_term = inst.op == Opcode::Br || inst.op == Opcode::Jmp ||
                           inst.op == Opcode::Ret;
            if (is_term) break;
            if (suppressed(inst)) continue;
            if (inst.op == Opcode::Print) return false;
            if (!inst.dst || !inst.dst->is_temp) return false;
            auto it = temp_uses_.find(inst.dst->str());
            if (it == temp_uses_.end() || it->second != 1) return false;
        }
        return true;
    }

    void emit_region(const Region& region, int indent) {
        for (const RegionItem& item : region.items) {
            switch (item.kind) {
                case RegionItem::Kind::Block:
                    emit_block_body(item.block, indent, false);
                    break;
                case RegionItem::Kind::If:
                    emit_if(item, indent, "if");
                    break;
                case RegionItem::Kind::While: {
                    emit_block_body(item.block, indent, false);
                    emit_phi_copies(item.block, item.header, indent);
                    if (header_folds(item.header)) {
                        Fragment cond =
                            emit_block_body(item.header, indent, true);
                        const Instruction& br = block(item.header).insts.back();
                        line(indent, "while " + cond.text + ":", br.span);
                        emit_region(*item.body, indent + 1);
                        emit_phi_copies(item.exit_a, item.header, indent + 1);
                        ensure_suite(*item.body, item.exit_a, item.header,
                                     indent + 1);
                    } else {
                        line(indent, "while True:");
                        Fragment cond =
                            emit_block_body(item.header, indent + 1, true);
                        line(indent + 1, "if not (" + cond.text + "):");
                        line(indent + 2, "break");
                        emit_region(*item.body, indent + 1);
                        emit_phi_copies(item.exit_a, item.header, indent + 1);
                    }
                    break;
                }
                case RegionItem::Kind::ForEach: {
                    emit_block_body(item.block, indent, false);
                    emit_phi_copies(item.block, item.header, indent);
                    Fragment list = operand_fragment(item.list_operand, indent);
                    flush_pending(indent);
                    std::string var = plan_.count(item.elem_base)
                                          ? plan_.at(item.elem_base)
                                          : snake_case(item.elem_base);
                    const BasicBlock& hb = block(item.header);
                    line(indent, "for " + var + " in " + list.text + ":",
                         hb.insts.empty() ? Span{} : hb.insts.back().span);
                    emit_region(*item.body, indent + 1);
                    emit_phi_copies(item.exit_a, item.header, indent + 1);
                    ensure_suite(*item.body, item.exit_a, item.header,
                                 indent + 1);
                    break;
                }
            }
        }
    }

    // An else arm holding exactly one nested if whose condition folds into
    // a single expression re-emits as an elif chain.
    const RegionItem* elif_chain(const RegionItem& item) const {
        const Region& else_region = *item.else_body;
        if (else_region.items.size() != 2) return nullptr;
        const RegionItem& nested = else_region.items[0];
        if (nested.kind != RegionItem::Kind::If) return nullptr;
        if (else_region.items[1].kind != RegionItem::Kind::Block ||
            !block_emits_nothing(else_region.items[1].block))
            return nullptr;
        if (arm_needs_copies(item.exit_b, item.join)) return nullptr;
        if (!header_folds(nested.header)) return nullptr;
        return &nested;
    }

    void emit_if(const RegionItem& item, int indent, const std::string& kw) {
        Fragment cond = emit_block_body(item.header, indent, true);
        const Instruction& br = block(item.header).insts.back();
        line(indent, kw + " " + cond.text + ":", br.span);
        emit_region(*item.body, indent + 1);
        emit_phi_copies(item.exit_a, item.join, indent + 1);
        ensure_suite(*item.body, item.exit_a, item.join, indent + 1);
        if (const RegionItem* chain = elif_chain(item)) {
            emit_if(*chain, indent, "elif");
            return;
        }
        bool else_empty = region_emits_nothing(*item.else_body) &&
                          !arm_needs_copies(item.exit_b, item.join);
        if (!else_empty) {
            line(indent, "else:");
            emit_region(*item.else_body, indent + 1);
            emit_phi_copies(item.exit_b, item.join, indent + 1);
            ensure_suite(*item.else_body, item.exit_b, item.join, indent + 1);
        }
    }

    // Python requires a non-empty suite under every block statement.
    void ensure_suite(const Region& body, int pred, int succ, int indent) {
        if (region_emits_nothing(body) && !arm_needs_copies(pred, succ))
            line(indent, "pass");
    }
};

}  // namespace

std::string emit_python(const ssa::SsaProgram& prog, const EmitOptions& opts) {
    return Emitter(prog, opts).run();
}

}  // namespace linguine
