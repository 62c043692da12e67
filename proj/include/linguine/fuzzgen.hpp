#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "linguine/diagnostics.hpp"

namespace linguine::fuzz {

struct GenConfig {
    std::uint64_t seed = 0;
    int max_depth = 7;        // expression tree depth
    int min_stmts = 1;
    int max_stmts = 15;
    bool allow_loops = true;
    bool allow_branches = true;
    bool allow_pronouns = true;
};

// Renders a random well-typed program as surface text. Identical configs
// produce identical text; every generated program passes the full front end
// by construction (type-directed generation, pronouns only where a unique
// referent is live, loop counters bounded, arithmetic magnitude-tracked so
// 64-bit evaluation matches the target's unbounded integers).
std::string gen_program(const GenConfig& config);

struct DifferentialOutcome {
    bool match = false;
    bool front_end_rejected = false;   // would be a generator bug
    std::string reject_message;
    std::string source;
    std::string interp_output;         // core interpreter
    std::string ssa_output;            // SSA execution
    std::string python_output;         // external interpreter on emitted code
    int python_exit = 0;
    // Statement-pruned reproducer, populated on mismatch.
    std::string minimized_source;
};

// Compiles, interprets (core + SSA, with dynamic-tag checking on), emits
// Python, executes it externally, and compares all outputs byte for byte.
// `work_dir` receives the transient .py files.
DifferentialOutcome differential_run(const std::string& source,
                                     const std::string& work_dir);

enum class FaultKind { OrphanPronoun, AmbiguousAntecedent, TypeMismatch };

struct FaultSpec {
    int base_program = 0;       // index into the golden corpus, 0-based
    std::string base_name;
    FaultKind kind = FaultKind::OrphanPronoun;
    std::string source;         // faulty variant text
    DiagCategory expected;      // category the compiler must report
};

struct GoldenProgram {
    std::string name;           // corpus file stem
    std::string source;
    std::string expected_output;
    // Type-mismatch injection: first occurrence of `find` is replaced with
    // `replace` to turn one arithmetic operand into a string literal.
    std::string mismatch_find;
    std::string mismatch_replace;
};

// Loads the nine corpus programs (name.ling / name.out) from a directory.
std::vector<GoldenProgram> golden_corpus(const std::string& dir);

// The 27 faulty variants: 3 fault kinds injected into each of the 9 corpus
// programs.
std::vector<FaultSpec> fault_corpus(const std::string& dir);

}  // namespace linguine::fuzz
