#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "linguine/driver.hpp"

int main(int argc, char** argv) {
    CLI::App app{"linguinec - compiler and REPL for the Linguine language"};

    std::string input;
    std::string target;
    bool repl = false;
    linguine::CompileOptions opts;

    app.add_option("file", input, "source file (.ling)");
    app.add_flag("-i", repl, "interactive REPL");
    app.add_option("-t", target,
                   "compile to the given target without executing (py)");
    bool interpret = false;
    app.add_flag("--interpret", interpret,
                 "run the reference interpreter instead of generating code");
    app.add_flag("--emit-tokens", opts.emit_tokens, "dump the token stream");
    app.add_flag("--emit-ast", opts.emit_ast, "dump the surface AST");
    app.add_flag("--emit-core", opts.emit_core, "dump the desugared core AST");
    app.add_flag("--emit-types", opts.emit_types, "dump inferred binding types");
    app.add_flag("--emit-ir", opts.emit_ir, "dump the SSA program");
    app.add_flag("--emit-refs", opts.emit_refs, "dump resolved pronoun sites");
    app.add_flag("--time", opts.time_stages, "report per-stage compile times");
    app.add_flag("--annotate", opts.annotate,
                 "add source-line comments to emitted code");

    CLI11_PARSE(app, argc, argv);

    if (repl) {
        if (!input.empty()) {
            std::cerr << "error: -i does not take an input file\n";
            return 1;
        }
        return linguine::run_repl();
    }
    if (input.empty()) {
        std::cerr << "error: no input file (try --help)\n";
        return 1;
    }

    if (!target.empty()) {
        if (target != "py") {
            std::cerr << "error: unsupported target '" << target
                      << "' (only 'py' is available)\n";
            return 3;
        }
        opts.mode = linguine::CompileOptions::Mode::EmitOnly;
    }
    if (interpret) {
        opts.mode = linguine::CompileOptions::Mode::Interpret;
    }

    linguine::CompileOutcome outcome = linguine::compile_file(input, opts);
    std::cout << outcome.stdout_text << std::flush;
    std::cerr << outcome.stderr_text << std::flush;
    return outcome.exit_code;
}
