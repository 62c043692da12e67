#include "linguine/driver.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "linguine/desugar.hpp"
#include "linguine/lexer.hpp"
#include "linguine/parser.hpp"

namespace linguine {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start)
        .count();
}

std::string source_line(const std::string& source, int line) {
    std::istringstream in(source);
    std::string text;
    for (int i = 0; i < line && std::getline(in, text); ++i) {
    }
    return text;
}

}  // namespace

PipelineResult run_pipeline(const std::string& source,
                            const std::string& source_id,
                            const PipelineOptions& opts) {
    (void)opts;
    PipelineResult result;
    Clock::time_point total_start = Clock::now();
    auto stage = [&](const char* name, auto&& fn) {
        Clock::time_point start = Clock::now();
        fn();
        result.timings.push_back({name, ms_since(start)});
    };

    try {
        stage("lex", [&] { result.tokens = tokenize(source, source_id); });
        stage("parse", [&] { result.surface = parse(result.tokens); });
        core::Program core_prog;
        stage("desugar", [&] { core_prog = desugar(result.surface); });
        stage("typeck",
              [&] { result.typed = infer(std::move(core_prog)); });
        stage("ssa", [&] {
            result.ssa_program = ssa::lower(result.typed);
            result.ssa_program.source_id = source_id;
            std::vector<ssa::VerifyError> errors =
                ssa::verify_ssa(result.ssa_program);
            if (!errors.empty()) {
                internal_error("SSA verification failed: " +
                               errors.front().invariant + " (" +
                               errors.front().detail + ")");
            }
        });
        stage("refanalysis",
              [&] { result.refs = analyze(result.ssa_program); });
        result.ok = true;
    } catch (const CompileError& e) {
        result.ok = false;
        result.diagnostic = e.diagnostic();
        if (result.diagnostic.sentence.empty() &&
            result.diagnostic.span.valid()) {
            result.diagnostic.sentence =
                source_line(source, result.diagnostic.span.line);
        }
    }
    result.total_ms = ms_since(total_start);
    return result;
}

std::string render_diagnostic(const Diagnostic& diag,
                              const std::string& source_id,
                              const std::string& source) {
    std::ostringstream out;
    out << "error[" << category_name(diag.category) << "] " << diag.message
        << '\n';
    if (diag.span.valid()) {
        out << " --> " << source_id << ':' << diag.span.line << ':'
            << diag.span.col << '\n';
        std::string text = diag.sentence.empty()
                               ? source_line(source, diag.span.line)
                               : diag.sentence;
        std::string number = std::to_string(diag.span.line);
        out << "  " << number << " | " << text << '\n';
        out << "  " << std::string(number.size(), ' ') << " | ";
        int width = diag.span.end_line == diag.span.line
                        ? diag.span.end_col - diag.span.col + 1
                        : 1;
        if (width < 1) width = 1;
        out << std::string(static_cast<std::size_t>(diag.span.col - 1), ' ')
            << std::string(static_cast<std::size_t>(width), '^') << '\n';
    }
    for (const std::string& note : diag.notes) {
        out << "  note: " << note << '\n';
    }
    if (diag.category == DiagCategory::PronounUndefined ||
        diag.category == DiagCategory::PronounAmbiguous) {
        if (diag.trace.empty()) {
            out << "referent trace: none bound\n";
        } else {
            out << "referent trace:\n";
            for (const TraceEntry& e : diag.trace) {
                out << "  - " << e.name << " bound at " << source_id << ':'
                    << e.bound_at.line << ':' << e.bound_at.col << '\n';
            }
        }
    }
    return out.str();
}

int run_python_text(const std::string& text, const std::string& work_dir,
                    std::string& stdout_out) {
    static int counter = 0;
    std::string path = work_dir + "/linguine_run_" +
                       std::to_string(::getpid()) + "_" +
                       std::to_string(++counter) + ".py";
    {
        std::ofstream out(path, std::ios::binary);
        out << text;
    }
    const char* py = std::getenv("LINGUINE_PY");
    std::string interpreter = py && *py ? py : "python3";
    std::string command = interpreter + " \"" + path + "\"";
    FILE* pipe = ::popen(command.c_str(), "r");
    if (!pipe) {
        std::remove(path.c_str());
        return -1;
    }
    stdout_out.clear();
    char buffer[4096];
    std::size_t n;
    while ((n = std::fread(buffer, 1, sizeof buffer, pipe)) > 0) {
        stdout_out.append(buffer, n);
    }
    int status = ::pclose(pipe);
    std::remove(path.c_str());
    if (status < 0) return -1;
    return WIFEXITED(status) ? WEXITSTATUS(status) : 128;
}

namespace {

std::string timing_report(const PipelineResult& pipeline, double codegen_ms,
                          bool had_codegen) {
    std::ostringstream out;
    for (const StageTiming& t : pipeline.timings) {
        out << t.stage << ": " << t.milliseconds << " ms\n";
    }
    if (had_codegen) out << "codegen: " << codegen_ms << " ms\n";
    out << "total: " << pipeline.total_ms + (had_codegen ? codegen_ms : 0.0)
        << " ms\n";
    return out.str();
}

std::string python_path_for(const std::string& input_path) {
    std::string path = input_path;
    std::size_t dot = path.rfind(".ling");
    if (dot != std::string::npos && dot == path.size() - 5) {
        path.resize(dot);
    }
    return path + ".py";
}

}  // namespace

CompileOutcome compile_source(const std::string& source,
                              const std::string& source_id,
                              const CompileOptions& opts,
                              const std::string& py_output_path) {
    CompileOutcome outcome;
    PipelineResult pipeline = run_pipeline(source, source_id);

    std::ostringstream dumps;
    if (opts.emit_tokens && !pipeline.tokens.tokens.empty())
        dumps << dump_tokens(pipeline.tokens);
    if (pipeline.ok) {
        if (opts.emit_ast) dumps << ast::dump_program(pipeline.surface);
        if (opts.emit_core) dumps << core::dump_program(pipeline.typed.program);
        if (opts.emit_types) dumps << dump_types(pipeline.typed);
        if (opts.emit_ir) dumps << ssa::dump_ir(pipeline.ssa_program);
        if (opts.emit_refs) dumps << dump_refs(pipeline.refs);
    }
    outcome.stdout_text = dumps.str();

    if (!pipeline.ok) {
        outcome.exit_code = 1;
        outcome.stderr_text =
            render_diagnostic(pipeline.diagnostic, source_id, source);
        return outcome;
    }

    double codegen_ms = 0.0;
    bool had_codegen = false;

    if (!opts.any_dump()) {
        if (opts.mode == CompileOptions::Mode::Interpret) {
            try {
                RunResult run = run_core(pipeline.typed.program);
                outcome.stdout_text += run.output;
            } catch (const CompileError& e) {
                outcome.exit_code = 1;
                outcome.stderr_text =
                    render_diagnostic(e.diagnostic(), source_id, source);
                return outcome;
            }
        } else {
            Clock::time_point start = Clock::now();
            EmitOptions emit_opts;
            emit_opts.annotate = opts.annotate;
            std::string text = emit_python(pipeline.ssa_program, emit_opts);
            codegen_ms = ms_since(start);
            had_codegen = true;

            if (!py_output_path.empty()) {
                std::ofstream out(py_output_path, std::ios::binary);
                if (!out) {
                    outcome.exit_code = 2;
                    outcome.stderr_text = "error: cannot write '" +
                                          py_output_path + "'\n";
                    return outcome;
                }
                out << text;
                outcome.emitted_path = py_output_path;
            }
            if (opts.mode == CompileOptions::Mode::RunPython) {
                std::string captured;
                int code = run_python_text(text, "/tmp", captured);
                outcome.stdout_text += captured;
                if (code != 0) {
                    outcome.exit_code = code < 0 ? 1 : code;
                }
            }
        }
    }

    if (opts.time_stages) {
        outcome.stderr_text += timing_report(pipeline, codegen_ms, had_codegen);
    }
    return outcome;
}

CompileOutcome compile_file(const std::string& path,
                            const CompileOptions& opts) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        CompileOutcome outcome;
        outcome.exit_code = 2;
        outcome.stderr_text = "error: cannot read '" + path + "'\n";
        return outcome;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    std::string py_path;
    if (!opts.any_dump() && opts.mode != CompileOptions::Mode::Interpret) {
        py_path = python_path_for(path);
    }
    return compile_source(buffer.str(), path, opts, py_path);
}

ReplResult repl_eval(ReplState& state, const std::string& line) {
    ReplResult result;
    std::string candidate = state.accepted_source;
    if (!candidate.empty() && candidate.back() != '\n') candidate += '\n';
    candidate += line;

    PipelineResult pipeline = run_pipeline(candidate, "<repl>");
    if (!pipeline.ok) {
        if (pipeline.diagnostic.category == DiagCategory::Parse &&
            pipeline.diagnostic.incomplete_input) {
            result.need_more_input = true;
            return result;
        }
        result.diagnostic = pipeline.diagnostic;
        return result;
    }

    // Execute only the newly accepted statements against the running store.
    core::Program delta;
    auto& stmts = pipeline.typed.program.statements;
    for (std::size_t i = state.accepted_stmts; i < stmts.size(); ++i) {
        delta.statements.push_back(std::move(stmts[i]));
    }
    try {
        RunResult run = run_core(delta, RunOptions{}, state.store);
        result.accepted = true;
        result.output = run.output;
        state.store = std::move(run.store);
        state.accepted_source = candidate;
        state.accepted_stmts += delta.statements.size();
    } catch (const CompileError& e) {
        // Runtime fault: the store may be partially updated; keep the
        // statements out of the accepted program.
        result.diagnostic = e.diagnostic();
    }
    return result;
}

int run_repl() {
    bool tty = ::isatty(0) != 0;
    ReplState state;
    std::string buffered;
    std::string line;
    if (tty) std::cout << "linguine REPL; end statements with '.'\n";
    while (true) {
        if (tty) std::cout << (buffered.empty() ? ">> " : ".. ") << std::flush;
        if (!std::getline(std::cin, line)) break;
        if (!buffered.empty()) buffered += '\n';
        buffered += line;
        if (buffered.find_first_not_of(" \t\r\n") == std::string::npos) {
            buffered.clear();
            continue;
        }
        ReplResult result = repl_eval(state, buffered);
        if (result.need_more_input) continue;
        buffered.clear();
        if (result.accepted) {
            std::cout << result.output << std::flush;
        } else {
            std::cerr << render_diagnostic(result.diagnostic, "<repl>",
                                           state.accepted_source + line);
        }
    }
    return 0;
}

}  // namespace linguine
