#include "linguine/ssa.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <sstream>

namespace linguine::ssa {

namespace {

using core::Expr;
using core::Stmt;

// Base names (re)assigned anywhere in a block, including nested blocks.
void assigned_bases(const core::Block& block, std::set<std::string>& out) {
    for (const core::StmtPtr& s : block.stmts) {
        switch (s->kind) {
            case Stmt::Kind::Let:
            case Stmt::Kind::Append:
                out.insert(s->name);
                break;
            case Stmt::Kind::ForEach:
                out.insert(s->name);
                assigned_bases(s->body, out);
                break;
            case Stmt::Kind::If:
                assigned_bases(s->body, out);
                if (s->else_block) assigned_bases(*s->else_block, out);
                break;
            case Stmt::Kind::While:
                assigned_bases(s->body, out);
                break;
            case Stmt::Kind::Print:
                break;
        }
    }
}

Operand strip_pronoun(Operand op) {
    op.pronoun.reset();
    return op;
}

class Lowerer {
public:
    SsaProgram run(const TypedProgram& typed) {
        new_block();  // entry, id 0
        lower_stmts(typed.program.statements, prog_.top);
        Instruction ret;
        ret.op = Opcode::Ret;
        ret.type = TypeTerm::make_bool();
        append(std::move(ret));
        prog_.succ[cur_];  // terminal block has no successors
        prog_.top.items.push_back(block_item(cur_));
        return std::move(prog_);
    }

private:
    SsaProgram prog_;
    int cur_ = -1;
    std::map<std::string, Name> def_;            // base -> live SSA name
    std::map<std::string, TypeTerm> name_type_;  // rendered name -> type
    std::map<std::string, int> version_;
    int temp_counter_ = 0;
    int loop_counter_ = 0;

    BasicBlock& block(int id) { return prog_.blocks[static_cast<size_t>(id)]; }
    BasicBlock& cur() { return block(cur_); }

    int new_block() {
        int id = static_cast<int>(prog_.blocks.size());
        prog_.blocks.push_back(BasicBlock{id, {}, {}});
        if (cur_ < 0) cur_ = id;
        return id;
    }

    RegionItem block_item(int id) {
        RegionItem item;
        item.kind = RegionItem::Kind::Block;
        item.block = id;
        return item;
    }

    Name new_version(const std::string& base) {
        return Name{base, ++version_[base], false};
    }

    Name new_temp() { return Name{"t" + std::to_string(++temp_counter_), 0, true}; }

    void record_type(const Name& n, const TypeTerm& t) {
        name_type_.insert_or_assign(n.str(), t);
    }

    const TypeTerm& type_of(const Name& n) {
        auto it = name_type_.find(n.str());
        if (it == name_type_.end())
            internal_error("no recorded type for SSA name " + n.str());
        return it->second;
    }

    void append(Instruction inst) {
        if (inst.dst) record_type(*inst.dst, inst.type);
        int index = static_cast<int>(cur().insts.size());
        for (std::size_t i = 0; i < inst.operands.size(); ++i) {
            const Operand& op = inst.operands[i];
            if (!op.pronoun) continue;
            PronounUse use;
            use.block = cur_;
            use.inst_index = index;
            use.operand_index = static_cast<int>(i);
            use.origin = *op.pronoun;
            use.resolved = op.kind == Operand::Kind::Value;
            if (use.resolved) use.resolved_name = op.name;
            prog_.pronoun_uses.push_back(std::move(use));
        }
        cur().insts.push_back(std::move(inst));
    }

    void terminate_jmp(int target) {
        Instruction j;
        j.op = Opcode::Jmp;
        j.target_then = target;
        j.type = TypeTerm::make_bool();
        append(std::move(j));
        prog_.succ[cur_] = {target};
    }

    void terminate_br(Operand cond, int then_b, int else_b, Span span) {
        Instruction br;
        br.op = Opcode::Br;
        br.operands.push_back(std::move(cond));
        br.target_then = then_b;
        br.target_else = else_b;
        br.type = TypeTerm::make_bool();
        br.span = span;
        append(std::move(br));
        prog_.succ[cur_] = {then_b, else_b};
    }

    PhiNode& add_phi(int block_id, const std::string& base, TypeTerm type,
                     Span span) {
        PhiNode phi;
        phi.dst = new_version(base);
        phi.type = std::move(type);
        phi.span = span;
        record_type(phi.dst, phi.type);
        block(block_id).phis.push_back(std::move(phi));
        return block(block_id).phis.back();
    }

    // Expressions -----------------------------------------------------------

    Operand lower_expr(const Expr& e) { return lower_expr_into(e, nullptr); }

    // When `bind` is set, the value is materialized into a new version of
    // that variable and the defining instruction is flagged as a referent
    // binding site (`bind_site` is the bound name's span).
    Span bind_site_;
    Operand lower_expr_into(const Expr& e, const std::string* bind) {
        switch (e.kind) {
            case Expr::Kind::IntLit:
                return finish_atomic(Operand::int_const(e.int_value), e, bind);
            case Expr::Kind::StrLit:
                return finish_atomic(Operand::str_const(e.text), e, bind);
            case Expr::Kind::Var: {
                auto it = def_.find(e.text);
                if (it == def_.end())
                    internal_error("no live definition for variable '" +
                                   e.text + "'");
                return finish_atomic(Operand::value(it->second), e, bind);
            }
            case Expr::Kind::Pronoun: {
                Operand op;
                auto it = e.referent == ast::kUnresolved
                              ? def_.end()
                              : def_.find(e.referent);
                if (it == def_.end()) {
                    op.kind = Operand::Kind::UnresolvedPronoun;
                } else {
                    op = Operand::value(it->second);
                }
                op.pronoun = PronounOrigin{e.text, e.referent, e.span};
                return finish_atomic(std::move(op), e, bind);
            }
            case Expr::Kind::BinOp: {
                Operand a = lower_expr(*e.args[0]);
                Operand b = lower_expr(*e.args[1]);
                Instruction inst;
                inst.op = Opcode::BinOp;
                inst.bin_op = e.bin_op;
                inst.operands = {std::move(a), std::move(b)};
                return finish_compound(std::move(inst), e, bind);
            }
            case Expr::Kind::RelOp: {
                Operand a = lower_expr(*e.args[0]);
                Operand b = lower_expr(*e.args[1]);
                Instruction inst;
                inst.op = Opcode::RelOp;
                inst.rel_op = e.rel_op;
                inst.operands = {std::move(a), std::move(b)};
                return finish_compound(std::move(inst), e, bind);
            }
            case Expr::Kind::ListLit: {
                Instruction inst;
                inst.op = Opcode::ListNew;
                for (const core::ExprPtr& a : e.args)
                    inst.operands.push_back(lower_expr(*a));
                return finish_compound(std::move(inst), e, bind);
            }
            case Expr::Kind::Reduce: {
                Operand init = lower_expr(*e.args[0]);
                Operand list = lower_expr(*e.args[1]);
                Instruction inst;
                inst.op = Opcode::Reduce;
                inst.bin_op = e.bin_op;
                inst.operands = {std::move(init), std::move(list)};
                return finish_compound(std::move(inst), e, bind);
            }
            case Expr::Kind::Builtin: {
                Operand arg = lower_expr(*e.args[0]);
                Instruction inst;
                inst.op = Opcode::Builtin;
                inst.builtin = e.builtin == core::BuiltinFn::Len
                                   ? BuiltinOp::Len
                                   : BuiltinOp::Rev;
                inst.operands = {std::move(arg)};
                return finish_compound(std::move(inst), e, bind);
            }
        }
        internal_error("unhandled core expression in lowering");
    }

    Operand finish_atomic(Operand op, const Expr& e, const std::string* bind) {
        if (!bind) return op;
        Instruction inst;
        inst.op = op.kind == Operand::Kind::Value ||
                          op.kind == Operand::Kind::UnresolvedPronoun
                      ? Opcode::Copy
                      : Opcode::Const;
        inst.operands.push_back(std::move(op));
        return define(std::move(inst), e, *bind);
    }

    Operand finish_compound(Instruction inst, const Expr& e,
                            const std::string* bind) {
        if (bind) return define(std::move(inst), e, *bind);
        Name dst = new_temp();
        inst.dst = dst;
        inst.type = *e.type;
        inst.span = e.span;
        append(std::move(inst));
        return Operand::value(dst);
    }

    Operand define(Instruction inst, const Expr& e, const std::string& base) {
        Name dst = new_version(base);
        inst.dst = dst;
        inst.type = *e.type;
        inst.span = e.span;
        inst.referent_binding = true;
        inst.binding_site = bind_site_.valid() ? bind_site_ : e.span;
        append(std::move(inst));
        def_[base] = dst;
        return Operand::value(dst);
    }

    // Statements ------------------------------------------------------------

    void lower_stmts(const std::vector<core::StmtPtr>& stmts, Region& region) {
        for (const core::StmtPtr& s : stmts) lower_stmt(*s, region);
    }

    void lower_stmt(const Stmt& s, Region& region) {
        switch (s.kind) {
            case Stmt::Kind::Let:
                bind_site_ = s.name_span;
                lower_expr_into(*s.expr, &s.name);
                bind_site_ = Span{};
                break;
            case Stmt::Kind::Print: {
                Operand op = lower_expr(*s.expr);
                Instruction inst;
                inst.op = Opcode::Print;
                inst.operands.push_back(std::move(op));
                inst.type = *s.expr->type;
                inst.span = s.span;
                append(std::move(inst));
                break;
            }
            case Stmt::Kind::Append: {
                Operand elem = lower_expr(*s.expr);
                auto it = def_.find(s.name);
                if (it == def_.end())
                    internal_error("append to undefined list '" + s.name + "'");
                Name old = it->second;
                TypeTerm list_type = type_of(old);
                Instruction inst;
                inst.op = Opcode::Append;
                inst.operands = {Operand::value(old), std::move(elem)};
                Name dst = new_version(s.name);
                inst.dst = dst;
                inst.type = list_type;
                inst.span = s.span;
                append(std::move(inst));
                def_[s.name] = dst;
                break;
            }
            case Stmt::Kind::If:
                lower_if(s, region);
                break;
            case Stmt::Kind::While:
                lower_while(s, region);
                break;
            case Stmt::Kind::ForEach:
                lower_foreach(s, region);
                break;
        }
    }

    void lower_if(const Stmt& s, Region& region) {
        Operand cond = lower_expr(*s.expr);
        int entry = cur_;
        int then_b = new_block();
        int else_b = new_block();
        int join_b = new_block();
        terminate_br(std::move(cond), then_b, else_b, s.expr->span);

        std::map<std::string, Name> snapshot = def_;

        RegionItem item;
        item.kind = RegionItem::Kind::If;
        item.header = entry;
        item.join = join_b;
        item.body = std::make_unique<Region>();
        item.else_body = std::make_unique<Region>();

        cur_ = then_b;
        lower_stmts(s.body.stmts, *item.body);
        item.body->items.push_back(block_item(cur_));
        int then_exit = cur_;
        item.exit_a = then_exit;
        std::map<std::string, Name> then_defs = def_;
        terminate_jmp(join_b);

        def_ = snapshot;
        cur_ = else_b;
        if (s.else_block) lower_stmts(s.else_block->stmts, *item.else_body);
        item.else_body->items.push_back(block_item(cur_));
        int else_exit = cur_;
        item.exit_b = else_exit;
        std::map<std::string, Name> else_defs = def_;
        terminate_jmp(join_b);

        cur_ = join_b;
        def_.clear();
        for (const auto& [base, then_name] : then_defs) {
            auto it = else_defs.find(base);
            if (it == else_defs.end()) continue;
            if (then_name == it->second) {
                def_[base] = then_name;
                continue;
            }
            PhiNode& phi =
                add_phi(join_b, base, type_of(then_name), s.span);
            phi.incoming[then_exit] = then_name;
            phi.incoming[else_exit] = it->second;
            def_[base] = phi.dst;
        }
        region.items.push_back(std::move(item));
    }

    // Creates header phis for every variable live at entry and reassigned in
    // the body. Returns base -> phi dst.
    std::map<std::string, Name> make_loop_phis(
        int header, const core::Block& body,
        const std::map<std::string, Name>& entry_defs, Span span) {
        std::set<std::string> assigned;
        assigned_bases(body, assigned);
        std::map<std::string, Name> phis;
        for (const std::string& base : assigned) {
            auto it = entry_defs.find(base);
            if (it == entry_defs.end()) continue;
            PhiNode& phi = add_phi(header, base, type_of(it->second), span);
            phi.incoming.clear();  // filled by the caller
            phis[base] = phi.dst;
        }
        return phis;
    }

    void fill_loop_phis(int header, int preheader, int latch,
                        const std::map<std::string, Name>& entry_defs,
                        const std::map<std::string, Name>& phis) {
        for (PhiNode& phi : block(header).phis) {
            auto it = phis.find(phi.dst.base);
            if (it == phis.end() || !(it->second == phi.dst)) continue;
            phi.incoming[preheader] = entry_defs.at(phi.dst.base);
            phi.incoming[latch] = def_.at(phi.dst.base);
        }
    }

    void lower_while(const Stmt& s, Region& region) {
        int preheader = cur_;
        int header = new_block();
        int body_b = new_block();
        int exit_b = new_block();
        terminate_jmp(header);

        std::map<std::string, Name> entry_defs = def_;

        cur_ = header;
        std::map<std::string, Name> phis =
            make_loop_phis(header, s.body, entry_defs, s.span);
        for (const auto& [base, phi_dst] : phis) def_[base] = phi_dst;
        std::map<std::string, Name> header_defs = def_;

        Operand cond = lower_expr(*s.expr);
        terminate_br(std::move(cond), body_b, exit_b, s.expr->span);

        RegionItem item;
        item.kind = RegionItem::Kind::While;
        item.block = preheader;
        item.header = header;
        item.join = exit_b;
        item.body = std::make_unique<Region>();

        cur_ = body_b;
        lower_stmts(s.body.stmts, *item.body);
        item.body->items.push_back(block_item(cur_));
        int latch = cur_;
        item.exit_a = latch;
        fill_loop_phis(header, preheader, latch, entry_defs, phis);
        terminate_jmp(header);

        cur_ = exit_b;
        def_ = header_defs;
        region.items.push_back(std::move(item));
    }

    void lower_foreach(const Stmt& s, Region& region) {
        Operand list_op = lower_expr(*s.expr);
        TypeTerm elem_type = *s.expr->type->elem;

        std::string idx_base = ".idx" + std::to_string(++loop_counter_);

        Name len_name = new_temp();
        Instruction len_inst;
        len_inst.op = Opcode::Builtin;
        len_inst.builtin = BuiltinOp::Len;
        len_inst.operands = {list_op};
        len_inst.dst = len_name;
        len_inst.type = TypeTerm::make_int();
        len_inst.span = s.expr->span;
        len_inst.role = InstrRole::ForeachLen;
        append(std::move(len_inst));

        Name idx_init = new_version(idx_base);
        Instruction init_inst;
        init_inst.op = Opcode::Const;
        init_inst.operands = {Operand::int_const(0)};
        init_inst.dst = idx_init;
        init_inst.type = TypeTerm::make_int();
        init_inst.span = s.span;
        init_inst.role = InstrRole::ForeachIndexInit;
        append(std::move(init_inst));
        def_[idx_base] = idx_init;

        int preheader = cur_;
        int header = new_block();
        int body_b = new_block();
        int exit_b = new_block();
        terminate_jmp(header);

        std::map<std::string, Name> entry_defs = def_;

        cur_ = header;
        std::map<std::string, Name> phis =
            make_loop_phis(header, s.body, entry_defs, s.span);
        PhiNode& idx_phi = add_phi(header, idx_base, TypeTerm::make_int(),
                                   s.span);
        idx_phi.incoming.clear();
        Name idx_phi_dst = idx_phi.dst;
        phis[idx_base] = idx_phi_dst;
        for (const auto& [base, phi_dst] : phis) def_[base] = phi_dst;
        std::map<std::string, Name> header_defs = def_;

        Name cond_name = new_temp();
        Instruction cond_inst;
        cond_inst.op = Opcode::RelOp;
        cond_inst.rel_op = ast::RelOp::LessThan;
        cond_inst.operands = {Operand::value(idx_phi_dst),
                              Operand::value(len_name)};
        cond_inst.dst = cond_name;
        cond_inst.type = TypeTerm::make_bool();
        cond_inst.span = s.span;
        cond_inst.role = InstrRole::ForeachCond;
        append(std::move(cond_inst));
        terminate_br(Operand::value(cond_name), body_b, exit_b, s.span);

        RegionItem item;
        item.kind = RegionItem::Kind::ForEach;
        item.block = preheader;
        item.header = header;
        item.join = exit_b;
        item.body = std::make_unique<Region>();
        item.elem_base = s.name;
        item.list_operand = list_op;
        item.elem_type = elem_type;

        cur_ = body_b;
        Name elem = new_version(s.name);
        Instruction elem_inst;
        elem_inst.op = Opcode::Builtin;
        elem_inst.builtin = BuiltinOp::Index;
        elem_inst.operands = {strip_pronoun(list_op),
                              Operand::value(idx_phi_dst)};
        elem_inst.dst = elem;
        elem_inst.type = elem_type;
        elem_inst.span = s.name_span;
        elem_inst.role = InstrRole::ForeachElem;
        elem_inst.referent_binding = true;
        elem_inst.binding_site = s.name_span;
        append(std::move(elem_inst));
        def_[s.name] = elem;

        lower_stmts(s.body.stmts, *item.body);
        item.body->items.push_back(block_item(cur_));

        Name idx_next = new_temp();
        Instruction incr;
        incr.op = Opcode::BinOp;
        incr.bin_op = ast::BinOp::Plus;
        incr.operands = {Operand::value(idx_phi_dst), Operand::int_const(1)};
        incr.dst = idx_next;
        incr.type = TypeTerm::make_int();
        incr.span = s.span;
        incr.role = InstrRole::ForeachIncr;
        append(std::move(incr));
        def_[idx_base] = idx_next;

        int latch = cur_;
        item.exit_a = latch;
        fill_loop_phis(header, preheader, latch, entry_defs, phis);
        terminate_jmp(header);

        cur_ = exit_b;
        def_ = header_defs;
        def_.erase(idx_base);
        def_.erase(s.name);
        region.items.push_back(std::move(item));
    }
};

}  // namespace

std::vector<int> predecessors(const SsaProgram& prog, int block_id) {
    std::vector<int> preds;
    for (const auto& [from, targets] : prog.succ) {
        for (int t : targets) {
            if (t == block_id) {
                preds.push_back(from);
                break;
            }
        }
    }
    std::sort(preds.begin(), preds.end());
    return preds;
}

SsaProgram lower(const TypedProgram& typed) {
    return Lowerer().run(typed);
}

namespace {

std::string operand_str(const Operand& op) {
    switch (op.kind) {
        case Operand::Kind::Value: return op.name.str();
        case Operand::Kind::IntConst: return std::to_string(op.int_value);
        case Operand::Kind::StrConst: return "\"" + op.str_value + "\"";
        case Operand::Kind::UnresolvedPronoun:
            return "<pronoun " + op.pronoun->word + ">";
    }
    return "?";
}

const char* builtin_str(BuiltinOp b) {
    switch (b) {
        case BuiltinOp::Len: return "len";
        case BuiltinOp::Rev: return "rev";
        case BuiltinOp::Index: return "index";
    }
    return "?";
}

}  // namespace

std::string dump_ir(const SsaProgram& prog) {
    std::ostringstream out;
    for (const BasicBlock& b : prog.blocks) {
        out << "bb" << b.id << ":\n";
        for (const PhiNode& phi : b.phis) {
            out << "  " << phi.dst.str() << ':' << type_name(phi.type)
                << " = PHI";
            for (const auto& [pred, name] : phi.incoming) {
                out << " [bb" << pred << ": " << name.str() << ']';
            }
            out << '\n';
        }
        for (const Instruction& inst : b.insts) {
            out << "  ";
            if (inst.dst)
                out << inst.dst->str() << ':' << type_name(inst.type) << " = ";
            switch (inst.op) {
                case Opcode::Const:
                    out << "CONST " << operand_str(inst.operands[0]);
                    break;
                case Opcode::Copy:
                    out << "COPY " << operand_str(inst.operands[0]);
                    break;
                case Opcode::BinOp:
                    out << "BINOP " << ast::binop_name(inst.bin_op) << ' '
                        << operand_str(inst.operands[0]) << ' '
                        << operand_str(inst.operands[1]);
                    break;
                case Opcode::RelOp:
                    out << "RELOP " << ast::relop_name(inst.rel_op) << ' '
                        << operand_str(inst.operands[0]) << ' '
                        << operand_str(inst.operands[1]);
                    break;
                case Opcode::Reduce:
                    out << "REDUCE " << ast::binop_name(inst.bin_op) << ' '
                        << operand_str(inst.operands[0]) << ' '
                        << operand_str(inst.operands[1]);
                    break;
                case Opcode::Builtin:
                    out << "BUILTIN " << builtin_str(inst.builtin);
                    for (const Operand& op : inst.operands)
                        out << ' ' << operand_str(op);
                    break;
                case Opcode::ListNew:
                    out << "LISTNEW";
                    for (const Operand& op : inst.operands)
                        out << ' ' << operand_str(op);
                    break;
                case Opcode::Append:
                    out << "APPEND " << operand_str(inst.operands[0]) << ' '
                        << operand_str(inst.operands[1]);
                    break;
                case Opcode::Print:
                    out << "PRINT " << operand_str(inst.operands[0]);
                    break;
                case Opcode::Br:
                    out << "BR " << operand_str(inst.operands[0]) << " bb"
                        << inst.target_then << " bb" << inst.target_else;
                    break;
                case Opcode::Jmp:
                    out << "JMP bb" << inst.target_then;
                    break;
                case Opcode::Ret:
                    out << "RET";
                    break;
            }
            out << '\n';
        }
    }
    return out.str();
}

std::vector<VerifyError> verify_ssa(const SsaProgram& prog) {
    std::vector<VerifyError> errors;
    auto report = [&](std::string invariant, int block, int inst,
                      std::string detail) {
        errors.push_back(VerifyError{std::move(invariant), block, inst,
                                     std::move(detail)});
    };

    // Single assignment and def table.
    std::map<std::string, std::pair<int, int>> defs;  // name -> (block, inst)
    std::map<std::string, TypeTerm> def_types;
    for (const BasicBlock& b : prog.blocks) {
        for (const PhiNode& phi : b.phis) {
            if (!defs.emplace(phi.dst.str(), std::make_pair(b.id, -1)).second)
                report("single-assignment", b.id, -1,
                       phi.dst.str() + " defined more than once");
            def_types.insert_or_assign(phi.dst.str(), phi.type);
        }
        for (std::size_t i = 0; i < b.insts.size(); ++i) {
            const Instruction& inst = b.insts[i];
            if (!inst.dst) continue;
            if (!defs.emplace(inst.dst->str(),
                              std::make_pair(b.id, static_cast<int>(i)))
                     .second)
                report("single-assignment", b.id, static_cast<int>(i),
                       inst.dst->str() + " defined more than once");
            def_types.insert_or_assign(inst.dst->str(), inst.type);
        }
    }

    // Terminator discipline and successor agreement.
    for (const BasicBlock& b : prog.blocks) {
        if (b.insts.empty()) {
            report("terminator", b.id, -1, "block has no terminator");
            continue;
        }
        for (std::size_t i = 0; i < b.insts.size(); ++i) {
            const Instruction& inst = b.insts[i];
            bool is_term = inst.op == Opcode::Br || inst.op == Opcode::Jmp ||
                           inst.op == Opcode::Ret;
            bool last = i + 1 == b.insts.size();
            if (is_term != last)
                report("terminator", b.id, static_cast<int>(i),
                       last ? "block does not end in a terminator"
                            : "terminator before end of block");
        }
        const Instruction& term = b.insts.back();
        std::vector<int> expected;
        if (term.op == Opcode::Br)
            expected = {term.target_then, term.target_else};
        else if (term.op == Opcode::Jmp)
            expected = {term.target_then};
        auto it = prog.succ.find(b.id);
        std::vector<int> actual =
            it == prog.succ.end() ? std::vector<int>{} : it->second;
        if (actual != expected)
            report("successor-map", b.id,
                   static_cast<int>(b.insts.size()) - 1,
                   "succ entries disagree with the terminator");
    }

    // Dominator computation: iterative bitset intersection over the CFG.
    int n = static_cast<int>(prog.blocks.size());
    std::size_t words = (static_cast<std::size_t>(n) + 63) / 64;
    std::vector<std::vector<std::uint64_t>> dom(
        static_cast<std::size_t>(n),
        std::vector<std::uint64_t>(words, ~0ull));
    auto bit = [](int i) { return 1ull << (i % 64); };
    dom[0].assign(words, 0);
    dom[0][0] |= bit(0);
    std::vector<std::vector<int>> preds_of(static_cast<std::size_t>(n));
    for (int b = 0; b < n; ++b)
        preds_of[static_cast<std::size_t>(b)] = predecessors(prog, b);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int b = 1; b < n; ++b) {
            auto bi = static_cast<std::size_t>(b);
            std::vector<std::uint64_t> inter(words,
                                             preds_of[bi].empty() ? 0 : ~0ull);
            for (int p : preds_of[bi]) {
                const auto& pd = dom[static_cast<std::size_t>(p)];
                for (std::size_t w = 0; w < words; ++w) inter[w] &= pd[w];
            }
            inter[static_cast<std::size_t>(b) / 64] |= bit(b);
            if (inter != dom[bi]) {
                dom[bi] = std::move(inter);
                changed = true;
            }
        }
    }

    auto dominates = [&](int a, int b) {
        return (dom[static_cast<std::size_t>(b)][static_cast<std::size_t>(a) /
                                                 64] &
                (1ull << (a % 64))) != 0;
    };

    // A use at (block, index) is dominated by its definition. Phi uses count
    // at the end of the incoming predecessor.
    auto check_use = [&](const Name& name, int use_block, int use_index,
                         int report_block, int report_index) {
        auto it = defs.find(name.str());
        if (it == defs.end()) {
            report("use-of-undefined", report_block, report_index,
                   name.str() + " is never defined");
            return;
        }
        auto [def_block, def_index] = it->second;
        bool ok;
        if (def_block == use_block) {
            ok = def_index < use_index;
        } else {
            ok = dominates(def_block, use_block);
        }
        if (!ok)
            report("dominance", report_block, report_index,
                   "use of " + name.str() + " is not dominated by its "
                   "definition");
    };

    auto operand_type = [&](const Operand& op) -> std::optional<TypeTerm> {
        switch (op.kind) {
            case Operand::Kind::Value: {
                auto it = def_types.find(op.name.str());
                if (it == def_types.end()) return std::nullopt;
                return it->second;
            }
            case Operand::Kind::IntConst: return TypeTerm::make_int();
            case Operand::Kind::StrConst: return TypeTerm::make_str();
            case Operand::Kind::UnresolvedPronoun: return std::nullopt;
        }
        return std::nullopt;
    };

    auto type_mismatch = [&](int block, int index, const std::string& what) {
        report("operand-type", block, index, what);
    };

    for (const BasicBlock& b : prog.blocks) {
        std::vector<int> preds = predecessors(prog, b.id);
        for (const PhiNode& phi : b.phis) {
            if (b.id == 0)
                report("phi-in-entry", b.id, -1, phi.dst.str());
            std::set<int> incoming_preds;
            for (const auto& [pred, name] : phi.incoming) {
                incoming_preds.insert(pred);
                check_use(name, pred,
                          static_cast<int>(
                              prog.blocks[static_cast<std::size_t>(pred)]
                                  .insts.size()),
                          b.id, -1);
                auto t = operand_type(Operand::value(name));
                if (t && *t != phi.type)
                    type_mismatch(b.id, -1,
                                  "phi " + phi.dst.str() +
                                      " incoming type disagrees");
            }
            std::set<int> pred_set(preds.begin(), preds.end());
            if (incoming_preds != pred_set)
                report("phi-arity", b.id, -1,
                       "phi " + phi.dst.str() +
                           " does not cover the predecessors exactly");
        }

        for (std::size_t i = 0; i < b.insts.size(); ++i) {
            const Instruction& inst = b.insts[i];
            int index = static_cast<int>(i);
            for (const Operand& op : inst.operands) {
                if (op.kind == Operand::Kind::Value)
                    check_use(op.name, b.id, index, b.id, index);
            }
            auto expect = [&](std::size_t operand_index, const TypeTerm& t,
                              const char* what) {
                if (operand_index >= inst.operands.size()) return;
                auto actual = operand_type(inst.operands[operand_index]);
                if (actual && *actual != t)
                    type_mismatch(b.id, index,
                                  std::string(what) + ": expected " +
                                      type_name(t) + ", found " +
                                      type_name(*actual));
            };
            switch (inst.op) {
                case Opcode::BinOp:
                    expect(0, TypeTerm::make_int(), "binop lhs");
                    expect(1, TypeTerm::make_int(), "binop rhs");
                    if (inst.type != TypeTerm::make_int())
                        type_mismatch(b.id, index, "binop result must be Int");
                    break;
                case Opcode::RelOp: {
                    auto lhs = operand_type(inst.operands[0]);
                    auto rhs = operand_type(inst.operands[1]);
                    if (lhs && rhs && *lhs != *rhs)
                        type_mismatch(b.id, index,
                                      "relop operands disagree");
                    if (inst.type != TypeTerm::make_bool())
                        type_mismatch(b.id, index, "relop result must be Bool");
                    break;
                }
                case Opcode::Reduce:
                    expect(0, TypeTerm::make_int(), "reduce init");
                    expect(1, TypeTerm::make_list(TypeTerm::make_int()),
                           "reduce list");
                    break;
                case Opcode::Builtin: {
                    auto arg = operand_type(inst.operands[0]);
                    if (inst.builtin == BuiltinOp::Len) {
                        if (arg && arg->kind != TypeTerm::Kind::List &&
                            arg->kind != TypeTerm::Kind::Str)
                            type_mismatch(b.id, index,
                                          "len argument must be List or Str");
                    } else if (inst.builtin == BuiltinOp::Rev) {
                        if (arg && *arg != inst.type)
                            type_mismatch(b.id, index,
                                          "rev preserves the operand type");
                    } else {
                        if (arg && arg->kind != TypeTerm::Kind::List)
                            type_mismatch(b.id, index,
                                          "index argument must be a list");
                        expect(1, TypeTerm::make_int(), "index position");
                    }
                    break;
                }
                case Opcode::Append: {
                    auto list = operand_type(inst.operands[0]);
                    if (list && *list != inst.type)
                        type_mismatch(b.id, index,
                                      "append result type must match its "
                                      "list operand");
                    auto elem = operand_type(inst.operands[1]);
                    if (list && elem &&
                        list->kind == TypeTerm::Kind::List &&
                        *list->elem != *elem)
                        type_mismatch(b.id, index,
                                      "append element type disagrees");
                    break;
                }
                case Opcode::Br: {
                    auto cond = operand_type(inst.operands[0]);
                    if (cond && cond->kind != TypeTerm::Kind::Bool)
                        type_mismatch(b.id, index, "branch condition must be "
                                      "Bool");
                    break;
                }
                case Opcode::Const:
                case Opcode::Copy: {
                    auto src = operand_type(inst.operands[0]);
                    if (src && *src != inst.type)
                        type_mismatch(b.id, index,
                                      "copy source type disagrees");
                    break;
                }
                default:
                    break;
            }
        }
    }
    return errors;
}

}  // namespace linguine::ssa
