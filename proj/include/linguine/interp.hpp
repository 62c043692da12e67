#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "linguine/ssa.hpp"
#include "linguine/typeck.hpp"

namespace linguine {

// Runtime values. Lists are values: binding copies, appending yields a new
// list. The emitted Python preserves this because appends are emitted as
// rebinding concatenations, never in-place mutation.
struct Value {
    enum class Kind { Int, Bool, Str, List };

    Kind kind = Kind::Int;
    std::int64_t int_value = 0;
    bool bool_value = false;
    std::string str_value;
    std::vector<Value> list_value;

    static Value of_int(std::int64_t v) {
        Value x;
        x.kind = Kind::Int;
        x.int_value = v;
        return x;
    }
    static Value of_bool(bool v) {
        Value x;
        x.kind = Kind::Bool;
        x.bool_value = v;
        return x;
    }
    static Value of_str(std::string v) {
        Value x;
        x.kind = Kind::Str;
        x.str_value = std::move(v);
        return x;
    }
    static Value of_list(std::vector<Value> v) {
        Value x;
        x.kind = Kind::List;
        x.list_value = std::move(v);
        return x;
    }
};

bool operator==(const Value& a, const Value& b);

// Exact rendering rules of the Python target: `print` formatting for the
// top level, `repr` formatting for list elements.
std::string format_value(const Value& v);
std::string repr_value(const Value& v);

// Checks a runtime tag against a static type, recursively for lists.
bool value_matches_type(const Value& v, const TypeTerm& t);

using Store = std::map<std::string, Value>;

struct RunOptions {
    // Assert dynamic tags against inferred static types at every binding
    // and every evaluated expression.
    bool check_types = false;
    // Transition budget; exceeding it reports nontermination.
    std::int64_t max_steps = 10'000'000;
};

struct RunResult {
    std::string output;
    Store store;   // final store (the REPL keeps it)
    std::int64_t steps = 0;
};

// Small-step configuration over the core program: a work stack of pending
// statements/loop continuations, the store, and the accumulated output.
struct Config {
    struct WorkItem {
        enum class Kind { Stmt, WhileRetest, ForEachStep };
        Kind kind = Kind::Stmt;
        const core::Stmt* stmt = nullptr;
        // ForEachStep: remaining iteration state over a snapshot.
        std::vector<Value> list_snapshot;
        std::size_t next_index = 0;
    };
    std::vector<WorkItem> work;   // back() executes next
    Store store;
    std::string output;
    std::int64_t steps = 0;
    bool check_types = false;
};

Config make_config(const core::Program& program, Store store = {},
                   bool check_types = false);

// Executes one statement-level transition. Returns false when the
// configuration is terminal. Throws CompileError(Runtime) on runtime faults
// (division by zero, overflow).
bool step(Config& config);

// Runs a core program to termination.
RunResult run_core(const core::Program& program, const RunOptions& opts = {},
                   Store initial = {});

// Executes verified SSA directly; used for the differential checks.
RunResult run_ssa(const ssa::SsaProgram& prog, const RunOptions& opts = {});

}  // namespace linguine
