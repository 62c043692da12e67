#include "linguine/fuzzgen.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "linguine/driver.hpp"

namespace linguine::fuzz {

namespace {

// Deterministic across platforms; std::uniform_int_distribution is not.
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    int range(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(next() %
                                     static_cast<std::uint64_t>(hi - lo + 1));
    }

    bool chance(int percent) { return range(1, 100) <= percent; }
};

enum class GType { Int, Str, Bool, ListInt, ListStr };

bool is_list(GType t) { return t == GType::ListInt || t == GType::ListStr; }
GType elem_of(GType t) { return t == GType::ListInt ? GType::Int : GType::Str; }

struct VarInfo {
    GType type = GType::Int;
    double bound = 0;       // Int: |value| bound
    double elem_bound = 0;  // lists of Int
    double len_bound = 0;   // lists
    bool protected_counter = false;
};

// Evaluated magnitudes stay far below the 64-bit range so the interpreter's
// checked arithmetic can never diverge from the target's unbounded integers.
constexpr double kLimit = 1e12;
constexpr double kLoopDrift = 2e5;   // additive slack per loop entered
constexpr double kLoopLenDrift = 1e4;

struct Cell {
    enum class Kind { Bottom, Ref, Top } kind = Kind::Bottom;
    std::string name;

    static Cell bottom() { return {}; }
    static Cell ref(std::string n) { return {Kind::Ref, std::move(n)}; }
    static Cell top() { return {Kind::Top, {}}; }
};

Cell join_cells(const Cell& a, const Cell& b) {
    if (a.kind == b.kind && a.kind == Cell::Kind::Ref && a.name == b.name)
        return a;
    if (a.kind == Cell::Kind::Bottom) return b;
    if (b.kind == Cell::Kind::Bottom) return a;
    if (a.kind == b.kind && a.kind != Cell::Kind::Ref) return a;
    return Cell::top();
}

struct IntExpr {
    std::string text;
    double bound = 0;
};

class Generator {
public:
    explicit Generator(const GenConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {}

    std::string run() {
        int count = rng_.range(cfg_.min_stmts, cfg_.max_stmts);
        for (int i = 0; i < count; ++i) gen_stmt();
        if (vars_.empty()) {
            // Guarantee at least one statement of substance.
            gen_let_fresh();
        }
        return out_.str();
    }

private:
    GenConfig cfg_;
    Rng rng_;
    std::ostringstream out_;
    std::map<std::string, VarInfo> env_;
    std::vector<std::string> vars_;  // insertion order
    Cell cell_;
    std::string flat_top_;  // most recent binding in source order
    int indent_ = 0;
    int loop_depth_ = 0;
    int name_counter_ = 0;

    // Environment helpers ----------------------------------------------------

    void line(const std::string& text) {
        for (int i = 0; i < indent_; ++i) out_ << "    ";
        out_ << text << '\n';
    }

    std::string fresh_name(GType type) {
        const char* prefix = "n";
        switch (type) {
            case GType::Int: prefix = "n"; break;
            case GType::Str: prefix = "s"; break;
            case GType::Bool: prefix = "f"; break;
            case GType::ListInt: prefix = "xs"; break;
            case GType::ListStr: prefix = "ws"; break;
        }
        return std::string(prefix) + std::to_string(++name_counter_);
    }

    void define(const std::string& name, VarInfo info) {
        if (!env_.count(name)) vars_.push_back(name);
        env_[name] = std::move(info);
        cell_ = Cell::ref(name);
        flat_top_ = name;
    }

    std::vector<std::string> vars_of(GType type, bool rebindable_only) const {
        std::vector<std::string> out;
        for (const std::string& name : vars_) {
            auto it = env_.find(name);
            if (it == env_.end()) continue;
            if (it->second.type != type) continue;
            if (rebindable_only && it->second.protected_counter) continue;
            out.push_back(name);
        }
        return out;
    }

    std::optional<std::string> pick(const std::vector<std::string>& names) {
        if (names.empty()) return std::nullopt;
        return names[static_cast<std::size_t>(
            rng_.range(0, static_cast<int>(names.size()) - 1))];
    }

    // A pronoun may stand for the current antecedent when it is unique,
    // still bound on every path, textually the most recent binding, and of
    // the wanted type.
    const std::string* pronoun_target(GType type) {
        if (!cfg_.allow_pronouns) return nullptr;
        if (cell_.kind != Cell::Kind::Ref) return nullptr;
        if (cell_.name != flat_top_) return nullptr;
        auto it = env_.find(cell_.name);
        if (it == env_.end() || it->second.type != type) return nullptr;
        return &it->first;
    }

    std::string pronoun_word() {
        switch (rng_.range(0, 5)) {
            case 0: return "them";
            case 1: return "this";
            case 2: return "that";
            default: return "it";  // the common one
        }
    }

    // Expressions -------------------------------------------------------------

    IntExpr int_atom() {
        if (const std::string* p = pronoun_target(GType::Int);
            p && rng_.chance(25)) {
            return {pronoun_word(), env_.at(*p).bound};
        }
        std::vector<std::string> candidates = vars_of(GType::Int, false);
        if (!candidates.empty() && rng_.chance(60)) {
            std::string name = *pick(candidates);
            return {name, env_.at(name).bound};
        }
        int v = rng_.range(0, 20);
        return {std::to_string(v), static_cast<double>(v)};
    }

    IntExpr int_postfix(int depth) {
        if (depth > 0 && loop_depth_ == 0 && rng_.chance(15)) {
            std::vector<std::string> lists = vars_of(GType::ListInt, false);
            if (!lists.empty()) {
                std::string name = *pick(lists);
                const VarInfo& info = env_.at(name);
                double bound = info.len_bound * info.elem_bound;
                if (bound <= kLimit) return {"sum of " + name, bound};
            }
        }
        if (depth > 0 && rng_.chance(12)) {
            std::vector<std::string> lists = vars_of(GType::ListInt, false);
            std::vector<std::string> more = vars_of(GType::ListStr, false);
            lists.insert(lists.end(), more.begin(), more.end());
            std::vector<std::string> strs = vars_of(GType::Str, false);
            lists.insert(lists.end(), strs.begin(), strs.end());
            if (!lists.empty()) {
                std::string name = *pick(lists);
                const VarInfo& info = env_.at(name);
                double bound = info.type == GType::Str
                                   ? 64
                                   : info.len_bound;
                return {"length of " + name, bound};
            }
        }
        return int_atom();
    }

    IntExpr int_mult(int depth) {
        IntExpr lhs = int_postfix(depth);
        if (depth <= 0 || !rng_.chance(35)) return lhs;
        int which = rng_.range(0, 2);
        if (which == 0) {
            IntExpr rhs = int_postfix(depth - 1);
            double bound = lhs.bound * rhs.bound;
            if (bound > kLimit) return lhs;
            return {lhs.text + " times " + rhs.text, bound};
        }
        // Division and modulo keep literal non-zero divisors, so runtime
        // faults are out of generator range.
        int divisor = rng_.range(1, 9);
        const char* op = which == 1 ? " divided by " : " modulo ";
        return {lhs.text + op + std::to_string(divisor),
                lhs.bound + 9};
    }

    IntExpr int_additive(int depth) {
        IntExpr lhs = int_mult(depth);
        int terms = depth > 0 ? rng_.range(0, 2) : 0;
        for (int i = 0; i < terms; ++i) {
            IntExpr rhs = int_mult(depth - 1);
            double bound = lhs.bound + rhs.bound;
            if (bound > kLimit) break;
            lhs = {lhs.text + (rng_.chance(60) ? " plus " : " minus ") +
                       rhs.text,
                   bound};
        }
        return lhs;
    }

    IntExpr int_expr(int depth) { return int_additive(depth); }

    std::string str_literal() {
        static const char alphabet[] =
            "abcdefghijklmnopqrstuvwxyz ABCXYZ 0123456789 '!?,.#";
        int len = rng_.range(0, 12);
        std::string s;
        for (int i = 0; i < len; ++i) {
            if (rng_.chance(2)) {
                s += '\\';
                continue;
            }
            s += alphabet[static_cast<std::size_t>(
                rng_.range(0, static_cast<int>(sizeof alphabet) - 2))];
        }
        return "\"" + s + "\"";
    }

    std::string str_expr(int depth) {
        if (const std::string* p = pronoun_target(GType::Str);
            p && rng_.chance(20)) {
            return pronoun_word();
        }
        std::vector<std::string> candidates = vars_of(GType::Str, false);
        if (!candidates.empty() && rng_.chance(55)) {
            std::string text = *pick(candidates);
            if (depth > 0 && rng_.chance(25)) text += " reversed";
            return text;
        }
        std::string text = str_literal();
        if (depth > 0 && rng_.chance(15)) text += " reversed";
        return text;
    }

    std::string list_literal(GType list_type, int depth, VarInfo& info_out) {
        int n = rng_.range(1, 4);
        std::string text = "[";
        double elem_bound = 0;
        for (int i = 0; i < n; ++i) {
            if (i) text += ", ";
            if (list_type == GType::ListInt) {
                IntExpr e = int_expr(depth > 1 ? 1 : 0);
                text += e.text;
                elem_bound = std::max(elem_bound, e.bound);
            } else {
                text += str_expr(0);
            }
        }
        text += "]";
        info_out.type = list_type;
        info_out.len_bound = n;
        info_out.elem_bound = elem_bound;
        return text;
    }

    std::string list_expr(GType list_type, int depth, VarInfo& info_out) {
        if (const std::string* p = pronoun_target(list_type);
            p && rng_.chance(15)) {
            info_out = env_.at(*p);
            return pronoun_word();
        }
        std::vector<std::string> candidates = vars_of(list_type, false);
        if (!candidates.empty() && rng_.chance(55)) {
            std::string name = *pick(candidates);
            info_out = env_.at(name);
            if (depth > 0 && rng_.chance(20)) return name + " reversed";
            return name;
        }
        return "the list " + list_literal(list_type, depth, info_out);
    }

    std::string bool_expr(int depth) {
        int which = rng_.range(0, 9);
        if (which < 6 || vars_of(GType::Str, false).empty()) {
            IntExpr a = int_expr(depth > 1 ? depth - 1 : 0);
            IntExpr b = int_expr(depth > 1 ? depth - 1 : 0);
            static const char* ops[] = {" is ", " is equal to ",
                                        " greater than ", " is greater than ",
                                        " less than ", " is less than "};
            return a.text + ops[rng_.range(0, 5)] + b.text;
        }
        std::string a = str_expr(0);
        std::string b = str_expr(0);
        return a + (rng_.chance(50) ? " is " : " is equal to ") + b;
    }

    // Statements --------------------------------------------------------------

    void gen_stmt() {
        int roll = rng_.range(1, 100);
        if (roll <= 34) {
            gen_let_fresh();
        } else if (roll <= 48) {
            if (!gen_let_rebind()) gen_let_fresh();
        } else if (roll <= 68) {
            gen_print();
        } else if (roll <= 78) {
            if (!gen_add_to()) gen_print();
        } else if (roll <= 88) {
            if (cfg_.allow_branches) gen_if();
            else gen_print();
        } else if (roll <= 95) {
            if (cfg_.allow_loops && loop_depth_ < 2) gen_while();
            else gen_print();
        } else {
            if (cfg_.allow_loops && loop_depth_ < 2) gen_for_each();
            else gen_print();
        }
    }

    GType pick_type() {
        switch (rng_.range(0, 9)) {
            case 0: case 1: case 2: case 3: case 4: return GType::Int;
            case 5: case 6: return GType::Str;
            case 7: return GType::Bool;
            case 8: return GType::ListInt;
            default: return GType::ListStr;
        }
    }

    void gen_let_fresh() {
        GType type = pick_type();
        std::string name = fresh_name(type);
        VarInfo info;
        info.type = type;
        std::string rhs;
        switch (type) {
            case GType::Int: {
                IntExpr e = int_expr(loop_depth_ > 0 ? 2 : cfg_.max_depth - 1);
                info.bound = e.bound;
                rhs = e.text;
                break;
            }
            case GType::Str:
                rhs = str_expr(2);
                break;
            case GType::Bool:
                rhs = bool_expr(3);
                break;
            default:
                rhs = list_expr(type, 2, info);
                break;
        }
        line("Let " + name + " be " + rhs + ".");
        define(name, info);
    }

    // Rebinding keeps the type; inside loops only drift-bounded forms appear
    // so magnitudes stay linear in the iteration count.
    bool gen_let_rebind() {
        std::vector<GType> order = {GType::Int, GType::Str, GType::ListInt,
                                    GType::ListStr, GType::Bool};
        GType type = order[static_cast<std::size_t>(rng_.range(0, 4))];
        std::vector<std::string> candidates = vars_of(type, true);
        std::optional<std::string> picked = pick(candidates);
        if (!picked) return false;
        std::string name = *picked;
        VarInfo info = env_.at(name);
        std::string rhs;
        switch (type) {
            case GType::Int: {
                if (loop_depth_ > 0) {
                    std::vector<std::string> ints = vars_of(GType::Int, false);
                    std::string src = *pick(ints);
                    int c = rng_.range(0, 20);
                    bool plus = rng_.chance(60);
                    rhs = src + (plus ? " plus " : " minus ") +
                          std::to_string(c);
                    info.bound = env_.at(src).bound + c;
                } else {
                    IntExpr e = int_expr(cfg_.max_depth - 1);
                    info.bound = e.bound;
                    rhs = e.text;
                }
                if (info.bound > kLimit) {
                    rhs = "0";
                    info.bound = 0;
                }
                break;
            }
            case GType::Str:
                rhs = str_expr(loop_depth_ > 0 ? 1 : 2);
                break;
            case GType::Bool:
                rhs = bool_expr(2);
                break;
            default: {
                if (loop_depth_ > 0) {
                    rhs = name + (rng_.chance(50) ? " reversed" : "");
                } else {
                    VarInfo fresh_info;
                    rhs = list_expr(type, 2, fresh_info);
                    info.len_bound = std::max(info.len_bound,
                                              fresh_info.len_bound);
                    info.elem_bound = std::max(info.elem_bound,
                                               fresh_info.elem_bound);
                }
                break;
            }
        }
        line("Let " + name + " be " + rhs + ".");
        define(name, info);
        return true;
    }

    void gen_print() {
        GType type = pick_type();
        std::string expr;
        switch (type) {
            case GType::Int:
                expr = int_expr(3).text;
                break;
            case GType::Str:
                expr = str_expr(2);
                break;
            case GType::Bool:
                expr = bool_expr(2);
                break;
            default: {
                VarInfo ignored;
                expr = list_expr(type, 1, ignored);
                break;
            }
        }
        line("Print " + expr + ".");
    }

    bool gen_add_to() {
        std::vector<std::string> lists = vars_of(GType::ListInt, true);
        std::vector<std::string> more = vars_of(GType::ListStr, true);
        lists.insert(lists.end(), more.begin(), more.end());
        std::optional<std::string> picked = pick(lists);
        if (!picked) return false;
        std::string name = *picked;
        VarInfo& info = env_.at(name);
        std::string elem;
        if (info.type == GType::ListInt) {
            IntExpr e = int_expr(2);
            elem = e.text;
            info.elem_bound = std::max(info.elem_bound, e.bound);
        } else {
            elem = str_expr(1);
        }
        info.len_bound += 1;
        line("Add " + elem + " to " + name + ".");
        // Appending is not a binding site; the antecedent is unchanged.
        return true;
    }

    void gen_if() {
        std::string cond = bool_expr(3);
        line("If " + cond + ":");

        std::map<std::string, VarInfo> env_before = env_;
        std::vector<std::string> vars_before = vars_;
        Cell cell_before = cell_;

        ++indent_;
        int then_count = rng_.range(1, 3);
        for (int i = 0; i < then_count; ++i) gen_stmt();
        --indent_;
        std::map<std::string, VarInfo> env_then = env_;
        Cell cell_then = cell_;

        env_ = env_before;
        vars_ = vars_before;
        cell_ = cell_before;
        bool with_else = rng_.chance(55);
        Cell cell_else = cell_before;
        std::map<std::string, VarInfo> env_else = env_before;
        if (with_else) {
            line("Else:");
            ++indent_;
            int else_count = rng_.range(1, 3);
            for (int i = 0; i < else_count; ++i) gen_stmt();
            --indent_;
            env_else = env_;
            cell_else = cell_;
        }
        line("End if.");

        // Mirror of the merge rules: keep names bound on both paths. The
        // generator only rebinds at the same type, so no conflicts arise.
        env_.clear();
        vars_ = vars_before;
        for (const auto& [name, info] : env_then) {
            auto it = env_else.find(name);
            if (it == env_else.end()) continue;
            VarInfo merged = info;
            merged.bound = std::max(info.bound, it->second.bound);
            merged.elem_bound = std::max(info.elem_bound,
                                         it->second.elem_bound);
            merged.len_bound = std::max(info.len_bound, it->second.len_bound);
            env_[name] = merged;
            if (!env_before.count(name)) vars_.push_back(name);
        }
        cell_ = join_cells(cell_then, cell_else);
    }

    void inflate_for_loop() {
        for (auto& [name, info] : env_) {
            if (info.type == GType::Int) info.bound += kLoopDrift;
            if (is_list(info.type)) info.len_bound += kLoopLenDrift;
        }
    }

    void gen_while() {
        std::string counter = "c" + std::to_string(++name_counter_);
        int trips = rng_.range(1, 15);
        line("Let " + counter + " be 0.");
        VarInfo cinfo;
        cinfo.type = GType::Int;
        cinfo.bound = trips;
        cinfo.protected_counter = true;
        define(counter, cinfo);

        inflate_for_loop();
        line("While " + counter +
             (rng_.chance(50) ? " less than " : " is less than ") +
             std::to_string(trips) + ":");
        std::map<std::string, VarInfo> env_before = env_;
        std::vector<std::string> vars_before = vars_;
        Cell cell_before = cell_;

        ++indent_;
        ++loop_depth_;
        cell_ = Cell::top();  // conservative entry over the back edge
        int count = rng_.range(1, 3);
        for (int i = 0; i < count; ++i) gen_stmt();
        line("Let " + counter + " be " + counter + " plus 1.");
        cell_ = Cell::ref(counter);
        flat_top_ = counter;
        --loop_depth_;
        --indent_;
        line("End while.");
        Cell cell_body_end = cell_;

        // Names first bound inside the body do not survive the loop.
        std::map<std::string, VarInfo> merged;
        for (const auto& [name, info] : env_before) {
            auto it = env_.find(name);
            merged[name] = it != env_.end() ? it->second : info;
        }
        env_ = std::move(merged);
        vars_ = vars_before;
        cell_ = join_cells(cell_before, cell_body_end);
        env_.at(counter).protected_counter = false;
    }

    void gen_for_each() {
        VarInfo list_info;
        std::string list_text = list_expr(rng_.chance(70) ? GType::ListInt
                                                          : GType::ListStr,
                                          1, list_info);
        std::string elem = "e" + std::to_string(++name_counter_);
        inflate_for_loop();
        line("For each " + elem + " in " + list_text + ":");

        std::map<std::string, VarInfo> env_before = env_;
        std::vector<std::string> vars_before = vars_;
        Cell cell_before = cell_;

        VarInfo elem_info;
        elem_info.type = elem_of(list_info.type);
        elem_info.bound = list_info.elem_bound;
        define(elem, elem_info);

        ++indent_;
        ++loop_depth_;
        int count = rng_.range(1, 3);
        for (int i = 0; i < count; ++i) gen_stmt();
        --loop_depth_;
        --indent_;
        line("End for.");
        Cell cell_body_end = cell_;

        std::map<std::string, VarInfo> merged;
        for (const auto& [name, info] : env_before) {
            auto it = env_.find(name);
            merged[name] = it != env_.end() ? it->second : info;
        }
        env_ = std::move(merged);
        vars_ = vars_before;
        cell_ = join_cells(cell_before, cell_body_end);
        // The loop element may be the last binding; it is out of scope now,
        // so pronouns must not target it.
        if (cell_.kind == Cell::Kind::Ref && !env_.count(cell_.name))
            cell_ = Cell::top();
    }
};

}  // namespace

std::string gen_program(const GenConfig& config) {
    return Generator(config).run();
}

namespace {

DifferentialOutcome differential_shallow(const std::string& source,
                                         const std::string& work_dir,
                                         PipelineResult& pipeline);

}  // namespace

DifferentialOutcome differential_run(const std::string& source,
                                     const std::string& work_dir) {
    DifferentialOutcome outcome;
    outcome.source = source;

    PipelineResult pipeline = run_pipeline(source, "<generated>");
    if (!pipeline.ok) {
        outcome.front_end_rejected = true;
        outcome.reject_message =
            render_diagnostic(pipeline.diagnostic, "<generated>", source);
        return outcome;
    }

    RunOptions opts;
    opts.check_types = true;  // dynamic tags vs static types at every step
    try {
        outcome.interp_output = run_core(pipeline.typed.program, opts).output;
        outcome.ssa_output = run_ssa(pipeline.ssa_program, opts).output;
    } catch (const CompileError& e) {
        outcome.reject_message = e.diagnostic().message;
        return outcome;  // runtime fault counts as a mismatch
    }

    std::string emitted = emit_python(pipeline.ssa_program);
    outcome.python_exit =
        run_python_text(emitted, work_dir, outcome.python_output);

    outcome.match = outcome.python_exit == 0 &&
                    outcome.interp_output == outcome.ssa_output &&
                    outcome.interp_output == outcome.python_output;
    if (!outcome.match) {
        outcome.minimized_source = [&] {
            // Greedy statement pruning while the mismatch persists.
            std::string best = source;
            bool shrunk = true;
            while (shrunk) {
                shrunk = false;
                PipelineResult p = run_pipeline(best, "<shrink>");
                if (!p.ok) break;
                std::vector<int> starts;
                for (const ast::StmtPtr& s : p.surface.statements)
                    starts.push_back(s->span.line);
                for (std::size_t i = 0; i < starts.size(); ++i) {
                    int from = starts[i];
                    int to = i + 1 < starts.size() ? starts[i + 1] - 1
                                                   : 1 << 30;
                    std::ostringstream candidate;
                    std::istringstream in(best);
                    std::string text;
                    int lineno = 0;
                    while (std::getline(in, text)) {
                        ++lineno;
                        if (lineno >= from && lineno <= to) continue;
                        candidate << text << '\n';
                    }
                    DifferentialOutcome retry;
                    retry.source = candidate.str();
                    PipelineResult rp = run_pipeline(retry.source, "<shrink>");
                    if (!rp.ok) continue;
                    DifferentialOutcome r =
                        differential_shallow(retry.source, work_dir, rp);
                    if (!r.match && !r.front_end_rejected) {
                        best = retry.source;
                        shrunk = true;
                        break;
                    }
                }
            }
            return best;
        }();
    }
    return outcome;
}

namespace {

DifferentialOutcome differential_shallow(const std::string& source,
                                         const std::string& work_dir,
                                         PipelineResult& pipeline) {
    DifferentialOutcome outcome;
    outcome.source = source;
    RunOptions opts;
    opts.check_types = true;
    try {
        outcome.interp_output = run_core(pipeline.typed.program, opts).output;
        outcome.ssa_output = run_ssa(pipeline.ssa_program, opts).output;
    } catch (const CompileError&) {
        return outcome;
    }
    std::string emitted = emit_python(pipeline.ssa_program);
    outcome.python_exit =
        run_python_text(emitted, work_dir, outcome.python_output);
    outcome.match = outcome.python_exit == 0 &&
                    outcome.interp_output == outcome.ssa_output &&
                    outcome.interp_output == outcome.python_output;
    return outcome;
}

}  // namespace

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) internal_error("cannot read corpus file '" + path + "'");
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

struct MismatchSite {
    const char* name;
    const char* find;
    const char* replace;
};

constexpr MismatchSite kMismatchSites[] = {
    {"average", "divided by count", "divided by \"oops\""},
    {"factorial", "result times i", "result times \"oops\""},
    {"fizzbuzz", "n modulo 3", "n modulo \"three\""},
    {"palindrome", "text reversed", "text plus 1"},
    {"max_of_list", "greater than best", "greater than \"oops\""},
    {"fibonacci", "prev plus curr", "prev plus \"curr\""},
    {"prime_test", "n modulo d", "n modulo \"d\""},
    {"list_comprehension", "x times x", "x times \"x\""},
    {"dictionary_count", "apples plus 1", "apples plus \"one\""},
};

}  // namespace

std::vector<GoldenProgram> golden_corpus(const std::string& dir) {
    std::vector<GoldenProgram> corpus;
    for (const MismatchSite& site : kMismatchSites) {
        GoldenProgram p;
        p.name = site.name;
        p.source = read_file(dir + "/" + p.name + ".ling");
        p.expected_output = read_file(dir + "/" + p.name + ".out");
        p.mismatch_find = site.find;
        p.mismatch_replace = site.replace;
        corpus.push_back(std::move(p));
    }
    return corpus;
}

std::vector<FaultSpec> fault_corpus(const std::string& dir) {
    std::vector<FaultSpec> specs;
    std::vector<GoldenProgram> corpus = golden_corpus(dir);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        const GoldenProgram& base = corpus[i];

        FaultSpec orphan;
        orphan.base_program = static_cast<int>(i);
        orphan.base_name = base.name;
        orphan.kind = FaultKind::OrphanPronoun;
        orphan.source = "Print it.\n" + base.source;
        orphan.expected = DiagCategory::PronounUndefined;
        specs.push_back(std::move(orphan));

        FaultSpec ambiguous;
        ambiguous.base_program = static_cast<int>(i);
        ambiguous.base_name = base.name;
        ambiguous.kind = FaultKind::AmbiguousAntecedent;
        ambiguous.source = base.source;
        if (!ambiguous.source.empty() && ambiguous.source.back() != '\n')
            ambiguous.source += '\n';
        ambiguous.source +=
            "If 1 is 2:\n"
            "    Let pick_one be 1.\n"
            "Else:\n"
            "    Let pick_two be 2.\n"
            "End if.\n"
            "Print it.\n";
        ambiguous.expected = DiagCategory::PronounAmbiguous;
        specs.push_back(std::move(ambiguous));

        FaultSpec mismatch;
        mismatch.base_program = static_cast<int>(i);
        mismatch.base_name = base.name;
        mismatch.kind = FaultKind::TypeMismatch;
        std::size_t at = base.source.find(base.mismatch_find);
        if (at == std::string::npos)
            internal_error("mismatch site '" + base.mismatch_find +
                           "' not found in " + base.name);
        mismatch.source = base.source;
        mismatch.source.replace(at, base.mismatch_find.size(),
                                base.mismatch_replace);
        mismatch.expected = DiagCategory::Type;
        specs.push_back(std::move(mismatch));
    }
    return specs;
}

}  // namespace linguine::fuzz
