#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "linguine/desugar.hpp"
#include "linguine/driver.hpp"
#include "linguine/fuzzgen.hpp"
#include "linguine/interp.hpp"
#include "linguine/lexer.hpp"
#include "linguine/parser.hpp"
#include "linguine/refanalysis.hpp"

using namespace linguine;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void report(int criterion, const std::string& name, bool pass) {
    std::cout << "ACCEPTANCE " << criterion << " (" << name
              << "): " << (pass ? "PASS" : "FAIL") << std::endl;
    CHECK_MESSAGE(pass, "criterion ", criterion, " ", name);
}

std::string golden_dir() { return LINGUINE_GOLDEN_DIR; }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

// Runs the installed compiler binary, returning its exit code and combined
// output.
int run_cli(const std::string& args, std::string& output) {
    std::string command = std::string(LINGUINEC_BIN) + " " + args + " 2>&1";
    FILE* pipe = ::popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    output.clear();
    char buffer[4096];
    std::size_t n;
    while ((n = std::fread(buffer, 1, sizeof buffer, pipe)) > 0)
        output.append(buffer, n);
    int status = ::pclose(pipe);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("criterion 1: all 27 faulty variants are rejected by category") {
    Clock::time_point start = Clock::now();
    std::vector<fuzz::FaultSpec> specs = fuzz::fault_corpus(golden_dir());
    REQUIRE(specs.size() == 27);

    int rejected_correctly = 0;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        const fuzz::FaultSpec& spec = specs[i];
        std::string path = "/tmp/fault_" + std::to_string(i) + ".ling";
        {
            std::ofstream out(path, std::ios::binary);
            out << spec.source;
        }
        std::string output;
        int code = run_cli("\"" + path + "\"", output);
        std::string marker =
            std::string("error[") + category_name(spec.expected) + "]";
        bool ok = code == 1 && output.find(marker) != std::string::npos;
        if (ok) ++rejected_correctly;
        CAPTURE(spec.base_name);
        CAPTURE(static_cast<int>(spec.kind));
        CHECK_MESSAGE(ok, "expected exit 1 with ", marker, ", got exit ",
                      code, " and: ", output);
        std::remove(path.c_str());
    }
    double elapsed = seconds_since(start);
    bool pass = rejected_correctly == 27 && elapsed < 5.0;
    CHECK_MESSAGE(elapsed < 5.0, "fault corpus took ", elapsed, " s");
    report(1, "fault rejection 27/27 under 5 s", pass);
}

TEST_CASE("criterion 2 and 6: 500-program differential stress test") {
    Clock::time_point start = Clock::now();
    int matched = 0;
    std::string first_failure;
    for (int i = 0; i < 500; ++i) {
        fuzz::GenConfig config;
        config.seed = static_cast<std::uint64_t>(i);
        config.max_depth = 7;
        std::string source = fuzz::gen_program(config);
        // differential_run interprets with dynamic-tag checking enabled, so
        // every run also exercises the progress/preservation properties.
        fuzz::DifferentialOutcome outcome =
            fuzz::differential_run(source, "/tmp");
        if (outcome.match) {
            ++matched;
        } else if (first_failure.empty()) {
            first_failure = "seed " + std::to_string(i) + ": " +
                            (outcome.front_end_rejected
                                 ? outcome.reject_message
                                 : "output mismatch");
        }
    }
    double elapsed = seconds_since(start);
    CHECK_MESSAGE(matched == 500, first_failure);
    CHECK_MESSAGE(elapsed < 120.0, "stress test took ", elapsed, " s");
    report(2, "differential stress 500/500 under 2 min",
           matched == 500 && elapsed < 120.0);
    report(6, "no stuck states or tag/type disagreements in 500 runs",
           matched == 500);
}

TEST_CASE("criterion 3: the golden corpus agrees across all paths") {
    std::vector<fuzz::GoldenProgram> corpus = fuzz::golden_corpus(golden_dir());
    REQUIRE(corpus.size() == 9);
    // The compile-latency workload is corpus-shaped too; include it.
    fuzz::GoldenProgram stress;
    stress.name = "stress_39";
    stress.source = read_file(golden_dir() + "/stress_39.ling");
    stress.expected_output = read_file(golden_dir() + "/stress_39.out");
    corpus.push_back(stress);

    bool all_ok = true;
    for (const fuzz::GoldenProgram& program : corpus) {
        CAPTURE(program.name);
        PipelineResult pipeline =
            run_pipeline(program.source, program.name + ".ling");
        REQUIRE_MESSAGE(pipeline.ok, program.name, ": ",
                        pipeline.diagnostic.message);
        CHECK(ssa::verify_ssa(pipeline.ssa_program).empty());

        RunOptions opts;
        opts.check_types = true;
        std::string interp_out = run_core(pipeline.typed.program, opts).output;
        std::string ssa_out = run_ssa(pipeline.ssa_program, opts).output;
        std::string emitted = emit_python(pipeline.ssa_program);
        std::string python_out;
        int code = run_python_text(emitted, "/tmp", python_out);

        bool ok = code == 0 && interp_out == program.expected_output &&
                  ssa_out == program.expected_output &&
                  python_out == program.expected_output;
        CHECK_MESSAGE(ok, program.name, ": interp=", interp_out,
                      " ssa=", ssa_out, " python=", python_out,
                      " expected=", program.expected_output);
        all_ok = all_ok && ok;
    }
    report(3, "golden corpus identical across interpreter and codegen",
           all_ok);
}

TEST_CASE("criterion 4: compile latency of the 39-line script") {
    std::string source = read_file(golden_dir() + "/stress_39.ling");
    {
        std::istringstream in(source);
        std::string line;
        int lines = 0;
        while (std::getline(in, line)) ++lines;
        REQUIRE(lines == 39);
    }

    // End-to-end compilation, no execution; warm once then measure.
    run_pipeline(source, "stress_39.ling");
    Clock::time_point start = Clock::now();
    PipelineResult pipeline = run_pipeline(source, "stress_39.ling");
    emit_python(pipeline.ssa_program);
    double elapsed_ms = seconds_since(start) * 1000.0;
    REQUIRE(pipeline.ok);
    CHECK_MESSAGE(elapsed_ms < 200.0, "compiled in ", elapsed_ms, " ms");

    // The CLI timing report: stages non-negative and summing to the total
    // within ten percent.
    std::string path = "/tmp/stress_39_copy.ling";
    {
        std::ofstream out(path, std::ios::binary);
        out << source;
    }
    std::string output;
    int code = run_cli("-t py --time \"" + path + "\"", output);
    CHECK(code == 0);
    double sum = 0.0, total = -1.0;
    int stages = 0;
    std::istringstream lines(output);
    std::string line;
    while (std::getline(lines, line)) {
        std::size_t colon = line.find(": ");
        std::size_t ms = line.rfind(" ms");
        if (colon == std::string::npos || ms == std::string::npos) continue;
        double value = std::atof(line.substr(colon + 2).c_str());
        CHECK(value >= 0.0);
        if (line.rfind("total:", 0) == 0) {
            total = value;
        } else {
            sum += value;
            ++stages;
        }
    }
    std::remove(path.c_str());
    std::remove("/tmp/stress_39_copy.py");
    CHECK(stages >= 6);
    REQUIRE(total > 0.0);
    bool sums = std::abs(sum - total) <= 0.10 * total;
    CHECK_MESSAGE(sums, "stage sum ", sum, " vs total ", total);
    report(4, "39-line compile under 200 ms with consistent stage timing",
           elapsed_ms < 200.0 && sums);
}

TEST_CASE("criterion 5: referent lattice algebra, exhaustively") {
    RefValue bottom = RefValue::bottom();
    RefValue top = RefValue::top();
    RefValue a = RefValue::ref("a", Span::at(1, 1, 1, 0, 1));
    RefValue b = RefValue::ref("b", Span::at(2, 1, 1, 4, 5));
    std::vector<RefValue> points = {bottom, top, a, b};

    bool ok = true;
    auto expect = [&](bool cond) { ok = ok && cond; CHECK(cond); };

    // The published join table, case by case.
    expect(join(a, a) == a);             // a if a = b
    expect(join(bottom, a) == a);        // b if a is undefined
    expect(join(a, bottom) == a);        // a if b is undefined
    expect(join(a, b) == top);           // ambiguous otherwise
    expect(join(top, a) == top);
    expect(join(a, top) == top);
    expect(join(bottom, bottom) == bottom);
    expect(join(top, top) == top);

    for (const RefValue& x : points) {
        expect(join(x, x) == x);
        expect(join(bottom, x) == x);
        expect(join(x, top) == top);
        expect(meet(x, top) == x);
        expect(meet(top, x) == x);
        for (const RefValue& y : points) {
            expect(join(x, y) == join(y, x));
            for (const RefValue& z : points) {
                expect(join(join(x, y), z) == join(x, join(y, z)));
            }
        }
    }
    report(5, "lattice algebra verbatim", ok);
}

TEST_CASE("criterion 7: claims out of reach at desk scale are excluded") {
    std::cout << "ACCEPTANCE 7 (excluded): native-code speedups, "
                 "interpreter run-time parity, model-assisted error "
                 "reduction, and implementation line counts are not "
                 "reproduced here\n";
    CHECK(true);
}
