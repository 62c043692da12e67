#pragma once

#include <optional>
#include <string>
#include <vector>

#include "linguine/codegen.hpp"
#include "linguine/interp.hpp"
#include "linguine/refanalysis.hpp"
#include "linguine/token.hpp"

namespace linguine {

struct StageTiming {
    std::string stage;
    double milliseconds = 0.0;
};

struct PipelineOptions {
    bool check_types = false;   // thread dynamic-tag assertions through runs
};

// Everything the front end produces for one source text. The pipeline stops
// at the first diagnostic.
struct PipelineResult {
    bool ok = false;
    Diagnostic diagnostic;                 // when !ok
    TokenStream tokens;
    ast::Program surface;
    TypedProgram typed;
    ssa::SsaProgram ssa_program;
    RefReport refs;
    std::vector<StageTiming> timings;
    double total_ms = 0.0;
};

// lex -> parse -> desugar -> typeck -> ssa (verified) -> referent analysis.
PipelineResult run_pipeline(const std::string& source,
                            const std::string& source_id,
                            const PipelineOptions& opts = {});

// Fixed rendering used by the CLI and asserted by tests:
//   error[<category>] <message>
//    --> file:line:col
//     N | <source line>
//       |      ^^^^
//   referent trace: ...
std::string render_diagnostic(const Diagnostic& diag,
                              const std::string& source_id,
                              const std::string& source);

struct CompileOptions {
    enum class Mode { RunPython, EmitOnly, Interpret };
    Mode mode = Mode::RunPython;
    bool annotate = false;
    bool time_stages = false;
    bool emit_tokens = false;
    bool emit_ast = false;
    bool emit_core = false;
    bool emit_types = false;
    bool emit_ir = false;
    bool emit_refs = false;

    bool any_dump() const {
        return emit_tokens || emit_ast || emit_core || emit_types || emit_ir ||
               emit_refs;
    }
};

struct CompileOutcome {
    int exit_code = 0;
    std::string stdout_text;   // program output and dumps
    std::string stderr_text;   // diagnostics and timing report
    std::string emitted_path;  // written .py file, if any
};

// Batch compilation of one file. Exit codes: 0 success, 1 diagnostic,
// 2 unreadable input file. The LINGUINE_PY environment variable overrides
// the python executable used to run emitted code.
CompileOutcome compile_file(const std::string& path,
                            const CompileOptions& opts);

// Same pipeline over an in-memory source, used by tests and the fuzz
// harness.
CompileOutcome compile_source(const std::string& source,
                              const std::string& source_id,
                              const CompileOptions& opts,
                              const std::string& py_output_path = "");

// Runs `text` as a Python program, capturing stdout. Returns the exit code.
int run_python_text(const std::string& text, const std::string& work_dir,
                    std::string& stdout_out);

// Interactive state: accepted statements plus the persistent store. Each
// accepted line leaves the state identical to batch-compiling every accepted
// line at once.
struct ReplState {
    std::string accepted_source;
    std::size_t accepted_stmts = 0;
    Store store;
};

struct ReplResult {
    bool accepted = false;
    bool need_more_input = false;  // open block: keep buffering
    std::string output;
    Diagnostic diagnostic;         // when rejected
};

ReplResult repl_eval(ReplState& state, const std::string& line);

// Interactive loop over stdin/stdout; prompts only when stdin is a TTY.
int run_repl();

}  // namespace linguine
