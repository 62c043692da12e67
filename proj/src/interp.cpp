#include "linguine/interp.hpp"

#include <sstream>

namespace linguine {

bool operator==(const Value& a, const Value& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Value::Kind::Int: return a.int_value == b.int_value;
        case Value::Kind::Bool: return a.bool_value == b.bool_value;
        case Value::Kind::Str: return a.str_value == b.str_value;
        case Value::Kind::List: {
            if (a.list_value.size() != b.list_value.size()) return false;
            for (std::size_t i = 0; i < a.list_value.size(); ++i)
                if (!(a.list_value[i] == b.list_value[i])) return false;
            return true;
        }
    }
    return false;
}

namespace {

// Python's repr() for str: single quotes unless the text contains a single
// quote and no double quote.
std::string repr_str(const std::string& s) {
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
        } else if (c == '\n') {
            out += "\\n";
        } else if (c == '\r') {
            out += "\\r";
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

[[noreturn]] void runtime_fault(std::string message, Span span) {
    Diagnostic d;
    d.category = DiagCategory::Runtime;
    d.message = std::move(message);
    d.span = span;
    throw CompileError(std::move(d));
}

std::int64_t checked_arith(ast::BinOp op, std::int64_t a, std::int64_t b,
                           Span span) {
    std::int64_t result = 0;
    switch (op) {
        case ast::BinOp::Plus:
            if (__builtin_add_overflow(a, b, &result))
                runtime_fault("integer overflow in 'plus'", span);
            return result;
        case ast::BinOp::Minus:
            if (__builtin_sub_overflow(a, b, &result))
                runtime_fault("integer overflow in 'minus'", span);
            return result;
        case ast::BinOp::Times:
            if (__builtin_mul_overflow(a, b, &result))
                runtime_fault("integer overflow in 'times'", span);
            return result;
        case ast::BinOp::DividedBy: {
            if (b == 0) runtime_fault("division by zero", span);
            // Floor division, matching the target's // operator.
            std::int64_t q = a / b;
            if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
            return q;
        }
        case ast::BinOp::Modulo: {
            if (b == 0) runtime_fault("modulo by zero", span);
            std::int64_t q = a / b;
            if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
            return a - q * b;
        }
    }
    internal_error("unhandled arithmetic operator");
}

bool compare(ast::RelOp op, const Value& a, const Value& b, Span span) {
    switch (op) {
        case ast::RelOp::Is:
        case ast::RelOp::IsEqualTo:
            return a == b;
        case ast::RelOp::GreaterThan:
            if (a.kind != Value::Kind::Int) break;
            return a.int_value > b.int_value;
        case ast::RelOp::LessThan:
            if (a.kind != Value::Kind::Int) break;
            return a.int_value < b.int_value;
    }
    (void)span;
    internal_error("ordering comparison on a non-Int value");
}

class CoreEval {
public:
    explicit CoreEval(Config& config) : config_(config) {}

    Value eval(const core::Expr& e) {
        Value v = eval_inner(e);
        if (config_.check_types && e.type && !value_matches_type(v, *e.type)) {
            internal_error("dynamic tag disagrees with static type " +
                           type_name(*e.type) + " at " +
                           std::to_string(e.span.line) + ":" +
                           std::to_string(e.span.col));
        }
        return v;
    }

private:
    Config& config_;

    Value read(const std::string& name, Span span, bool from_pronoun) {
        auto it = config_.store.find(name);
        if (it == config_.store.end()) {
            internal_error(std::string(from_pronoun ? "pronoun referent '"
                                                    : "variable '") +
                           name + "' read before definition at line " +
                           std::to_string(span.line));
        }
        return it->second;
    }

    Value eval_inner(const core::Expr& e) {
        using K = core::Expr::Kind;
        switch (e.kind) {
            case K::IntLit: return Value::of_int(e.int_value);
            case K::StrLit: return Value::of_str(e.text);
            case K::ListLit: {
                std::vector<Value> elems;
                elems.reserve(e.args.size());
                for (const core::ExprPtr& a : e.args) elems.push_back(eval(*a));
                return Value::of_list(std::move(elems));
            }
            case K::Var: return read(e.text, e.span, false);
            case K::Pronoun:
                // E-Pronoun: statically resolved, so this is a plain read of
                // the referent plus the definedness assertion above.
                return read(e.referent, e.span, true);
            case K::BinOp: {
                Value a = eval(*e.args[0]);
                Value b = eval(*e.args[1]);
                return Value::of_int(checked_arith(e.bin_op, a.int_value,
                                                   b.int_value, e.span));
            }
            case K::RelOp: {
                Value a = eval(*e.args[0]);
                Value b = eval(*e.args[1]);
                return Value::of_bool(compare(e.rel_op, a, b, e.span));
            }
            case K::Reduce: {
                Value acc = eval(*e.args[0]);
                Value list = eval(*e.args[1]);
                for (const Value& v : list.list_value) {
                    acc = Value::of_int(checked_arith(
                        e.bin_op, acc.int_value, v.int_value, e.span));
                }
                return acc;
            }
            case K::Builtin: {
                Value arg = eval(*e.args[0]);
                if (e.builtin == core::BuiltinFn::Len) {
                    std::int64_t n =
                        arg.kind == Value::Kind::Str
                            ? static_cast<std::int64_t>(arg.str_value.size())
                            : static_cast<std::int64_t>(arg.list_value.size());
                    return Value::of_int(n);
                }
                if (arg.kind == Value::Kind::Str) {
                    std::string r(arg.str_value.rbegin(), arg.str_value.rend());
                    return Value::of_str(std::move(r));
                }
                std::vector<Value> r(arg.list_value.rbegin(),
                                     arg.list_value.rend());
                return Value::of_list(std::move(r));
            }
        }
        internal_error("unhandled core expression in evaluation");
    }
};

}  // namespace

std::string repr_value(const Value& v) {
    switch (v.kind) {
        case Value::Kind::Int: return std::to_string(v.int_value);
        case Value::Kind::Bool: return v.bool_value ? "True" : "False";
        case Value::Kind::Str: return repr_str(v.str_value);
        case Value::Kind::List: {
            std::string out = "[";
            for (std::size_t i = 0; i < v.list_value.size(); ++i) {
                if (i) out += ", ";
                out += repr_value(v.list_value[i]);
            }
            out += "]";
            return out;
        }
    }
    return "?";
}

std::string format_value(const Value& v) {
    if (v.kind == Value::Kind::Str) return v.str_value;  // print() is bare
    return repr_value(v);
}

bool value_matches_type(const Value& v, const TypeTerm& t) {
    switch (t.kind) {
        case TypeTerm::Kind::Int: return v.kind == Value::Kind::Int;
        case TypeTerm::Kind::Bool: return v.kind == Value::Kind::Bool;
        case TypeTerm::Kind::Str: return v.kind == Value::Kind::Str;
        case TypeTerm::Kind::List: {
            if (v.kind != Value::Kind::List) return false;
            for (const Value& e : v.list_value)
                if (!value_matches_type(e, *t.elem)) return false;
            return true;
        }
        case TypeTerm::Kind::Var: return false;
    }
    return false;
}

Config make_config(const core::Program& program, Store store,
                   bool check_types) {
    Config config;
    config.store = std::move(store);
    config.check_types = check_types;
    for (auto it = program.statements.rbegin(); it != program.statements.rend();
         ++it) {
        Config::WorkItem item;
        item.kind = Config::WorkItem::Kind::Stmt;
        item.stmt = it->get();
        config.work.push_back(item);
    }
    return config;
}

bool step(Config& config) {
    if (config.work.empty()) return false;  // terminal: skip
    ++config.steps;

    Config::WorkItem item = std::move(config.work.back());
    config.work.pop_back();
    CoreEval eval(config);

    auto push_block = [&](const core::Block& block) {
        for (auto it = block.stmts.rbegin(); it != block.stmts.rend(); ++it) {
            Config::WorkItem w;
            w.kind = Config::WorkItem::Kind::Stmt;
            w.stmt = it->get();
            config.work.push_back(w);
        }
    };

    if (item.kind == Config::WorkItem::Kind::WhileRetest) {
        const core::Stmt& s = *item.stmt;
        Value cond = eval.eval(*s.expr);
        if (cond.bool_value) {
            config.work.push_back(item);  // retest after the body
            push_block(s.body);
        }
        return true;
    }

    if (item.kind == Config::WorkItem::Kind::ForEachStep) {
        const core::Stmt& s = *item.stmt;
        if (item.next_index < item.list_snapshot.size()) {
            Value elem = item.list_snapshot[item.next_index];
            ++item.next_index;
            config.work.push_back(item);
            config.store.insert_or_assign(s.name, std::move(elem));
            push_block(s.body);
        }
        return true;
    }

    const core::Stmt& s = *item.stmt;
    switch (s.kind) {
        case core::Stmt::Kind::Let: {
            Value v = eval.eval(*s.expr);
            config.store.insert_or_assign(s.name, std::move(v));
            break;
        }
        case core::Stmt::Kind::Print: {
            Value v = eval.eval(*s.expr);
            config.output += format_value(v);
            config.output += '\n';
            break;
        }
        case core::Stmt::Kind::Append: {
            Value elem = eval.eval(*s.expr);
            auto it = config.store.find(s.name);
            if (it == config.store.end())
                internal_error("append to undefined variable '" + s.name + "'");
            Value next = it->second;  // lists are values: copy then extend
            next.list_value.push_back(std::move(elem));
            it->second = std::move(next);
            break;
        }
        case core::Stmt::Kind::If: {
            Value cond = eval.eval(*s.expr);
            if (cond.bool_value) {
                push_block(s.body);
            } else if (s.else_block) {
                push_block(*s.else_block);
            }
            break;
        }
        case core::Stmt::Kind::While: {
            Config::WorkItem w;
            w.kind = Config::WorkItem::Kind::WhileRetest;
            w.stmt = &s;
            config.work.push_back(w);
            break;
        }
        case core::Stmt::Kind::ForEach: {
            Value list = eval.eval(*s.expr);
            Config::WorkItem w;
            w.kind = Config::WorkItem::Kind::ForEachStep;
            w.stmt = &s;
            w.list_snapshot = std::move(list.list_value);
            w.next_index = 0;
            config.work.push_back(w);
            break;
        }
    }
    return true;
}

RunResult run_core(const core::Program& program, const RunOptions& opts,
                   Store initial) {
    Config config = make_config(program, std::move(initial), opts.check_types);
    while (step(config)) {
        if (config.steps > opts.max_steps) {
            runtime_fault("step budget exhausted: the program did not "
                          "terminate within " +
                              std::to_string(opts.max_steps) + " steps",
                          Span{});
        }
    }
    RunResult result;
    result.output = std::move(config.output);
    result.store = std::move(config.store);
    result.steps = config.steps;
    return result;
}

namespace {

class SsaEval {
public:
    SsaEval(const ssa::SsaProgram& prog, const RunOptions& opts)
        : prog_(prog), opts_(opts) {}

    RunResult run() {
        RunResult result;
        int block = 0;
        int prev = -1;
        std::int64_t steps = 0;
        while (block >= 0) {
            const ssa::BasicBlock& b =
                prog_.blocks[static_cast<std::size_t>(block)];
            apply_phis(b, prev);
            int next = -1;
            for (const ssa::Instruction& inst : b.insts) {
                if (++steps > opts_.max_steps) {
                    runtime_fault("step budget exhausted in SSA execution",
                                  inst.span);
                }
                if (!exec(inst, result.output, next)) break;
            }
            prev = block;
            block = next;
        }
        result.steps = steps;
        for (auto& [name, value] : store_) result.store.emplace(name, value);
        return result;
    }

private:
    const ssa::SsaProgram& prog_;
    const RunOptions& opts_;
    std::map<std::string, Value> store_;  // SSA name -> value

    Value operand_value(const ssa::Operand& op) {
        switch (op.kind) {
            case ssa::Operand::Kind::IntConst:
                return Value::of_int(op.int_value);
            case ssa::Operand::Kind::StrConst:
                return Value::of_str(op.str_value);
            case ssa::Operand::Kind::Value: {
                auto it = store_.find(op.name.str());
                if (it == store_.end()) {
                    internal_error("SSA name " + op.name.str() +
                                   " read before definition" +
                                   (op.pronoun ? " (pronoun '" +
                                                     op.pronoun->word + "')"
                                               : ""));
                }
                return it->second;
            }
            case ssa::Operand::Kind::UnresolvedPronoun:
                internal_error("unresolved pronoun operand reached execution");
        }
        internal_error("unhandled operand kind");
    }

    void define(const ssa::Instruction& inst, Value v) {
        if (opts_.check_types && !value_matches_type(v, inst.type)) {
            internal_error("dynamic tag disagrees with static type " +
                           type_name(inst.type) + " for " + inst.dst->str());
        }
        store_.insert_or_assign(inst.dst->str(), std::move(v));
    }

    void apply_phis(const ssa::BasicBlock& b, int prev) {
        if (b.phis.empty()) return;
        // Parallel evaluation: read all incomings before writing any dst.
        std::vector<Value> values;
        values.reserve(b.phis.size());
        for (const ssa::PhiNode& phi : b.phis) {
            auto it = phi.incoming.find(prev);
            if (it == phi.incoming.end())
                internal_error("phi " + phi.dst.str() +
                               " has no incoming for predecessor " +
                               std::to_string(prev));
            values.push_back(operand_value(ssa::Operand::value(it->second)));
        }
        for (std::size_t i = 0; i < b.phis.size(); ++i) {
            if (opts_.check_types &&
                !value_matches_type(values[i], b.phis[i].type)) {
                internal_error("phi value tag disagrees with type for " +
                               b.phis[i].dst.str());
            }
            store_.insert_or_assign(b.phis[i].dst.str(), std::move(values[i]));
        }
    }

    // Returns false when the instruction ended the block (or program).
    bool exec(const ssa::Instruction& inst, std::string& output, int& next) {
        using ssa::Opcode;
        switch (inst.op) {
            case Opcode::Const:
            case Opcode::Copy:
                define(inst, operand_value(inst.operands[0]));
                return true;
            case Opcode::BinOp: {
                Value a = operand_value(inst.operands[0]);
                Value b = operand_value(inst.operands[1]);
                define(inst, Value::of_int(checked_arith(
                                 inst.bin_op, a.int_value, b.int_value,
                                 inst.span)));
                return true;
            }
            case Opcode::RelOp: {
                Value a = operand_value(inst.operands[0]);
                Value b = operand_value(inst.operands[1]);
                define(inst, Value::of_bool(
                                 compare(inst.rel_op, a, b, inst.span)));
                return true;
            }
            case Opcode::Reduce: {
                Value acc = operand_value(inst.operands[0]);
                Value list = operand_value(inst.operands[1]);
                for (const Value& v : list.list_value) {
                    acc = Value::of_int(checked_arith(
                        inst.bin_op, acc.int_value, v.int_value, inst.span));
                }
                define(inst, std::move(acc));
                return true;
            }
            case Opcode::Builtin: {
                Value a = operand_value(inst.operands[0]);
                switch (inst.builtin) {
                    case ssa::BuiltinOp::Len: {
                        std::int64_t n =
                            a.kind == Value::Kind::Str
                                ? static_cast<std::int64_t>(a.str_value.size())
                                : static_cast<std::int64_t>(
                                      a.list_value.size());
                        define(inst, Value::of_int(n));
                        break;
                    }
                    case ssa::BuiltinOp::Rev: {
                        if (a.kind == Value::Kind::Str) {
                            define(inst, Value::of_str(std::string(
                                             a.str_value.rbegin(),
                                             a.str_value.rend())));
                        } else {
                            define(inst,
                                   Value::of_list(std::vector<Value>(
                                       a.list_value.rbegin(),
                                       a.list_value.rend())));
                        }
                        break;
                    }
                    case ssa::BuiltinOp::Index: {
                        Value idx = operand_value(inst.operands[1]);
                        auto i = static_cast<std::size_t>(idx.int_value);
                        if (i >= a.list_value.size())
                            internal_error("list index out of range in loop "
                                           "lowering");
                        define(inst, a.list_value[i]);
                        break;
                    }
                }
                return true;
            }
            case Opcode::ListNew: {
                std::vector<Value> elems;
                elems.reserve(inst.operands.size());
                for (const ssa::Operand& op : inst.operands)
                    elems.push_back(operand_value(op));
                define(inst, Value::of_list(std::move(elems)));
                return true;
            }
            case Opcode::Append: {
                Value list = operand_value(inst.operands[0]);
                list.list_value.push_back(operand_value(inst.operands[1]));
                define(inst, std::move(list));
                return true;
            }
            case Opcode::Print: {
                output += format_value(operand_value(inst.operands[0]));
                output += '\n';
                return true;
            }
            case Opcode::Br: {
                Value cond = operand_value(inst.operands[0]);
                next = cond.bool_value ? inst.target_then : inst.target_else;
                return false;
            }
            case Opcode::Jmp:
                next = inst.target_then;
                return false;
            case Opcode::Ret:
                next = -1;
                return false;
        }
        internal_error("unhandled opcode in SSA execution");
    }
};

}  // namespace

RunResult run_ssa(const ssa::SsaProgram& prog, const RunOptions& opts) {
    return SsaEval(prog, opts).run();
}

}  // namespace linguine
