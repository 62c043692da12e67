#include <cstdlib>
#include <fstream>

#include "doctest.h"
#include "linguine/driver.hpp"
#include "linguine/fuzzgen.hpp"

using namespace linguine;

TEST_CASE("identical seeds generate identical source text") {
    fuzz::GenConfig config;
    config.seed = 424242;
    CHECK(fuzz::gen_program(config) == fuzz::gen_program(config));
    config.seed = 424243;
    CHECK(fuzz::gen_program(config) != fuzz::gen_program(fuzz::GenConfig{
                                           424242, 7, 1, 15, true, true,
                                           true}));
}

TEST_CASE("a minimal construct set still yields an accepted program") {
    fuzz::GenConfig config;
    config.seed = 0;
    config.max_depth = 1;
    config.max_stmts = 2;
    config.allow_loops = false;
    config.allow_branches = false;
    config.allow_pronouns = false;
    std::string source = fuzz::gen_program(config);
    CHECK(!source.empty());
    CHECK(run_pipeline(source, "<gen>").ok);
}

TEST_CASE("every generated program passes the full front end") {
    for (std::uint64_t seed = 1000; seed < 1080; ++seed) {
        fuzz::GenConfig config;
        config.seed = seed;
        std::string source = fuzz::gen_program(config);
        PipelineResult result = run_pipeline(source, "<gen>");
        CAPTURE(source);
        CHECK_MESSAGE(result.ok, "seed ", seed, ": ",
                      result.diagnostic.message);
    }
}

TEST_CASE("differential runs agree on a sample of seeds") {
    for (std::uint64_t seed : {7u, 77u, 777u}) {
        fuzz::GenConfig config;
        config.seed = seed;
        std::string source = fuzz::gen_program(config);
        fuzz::DifferentialOutcome outcome =
            fuzz::differential_run(source, "/tmp");
        CAPTURE(source);
        CHECK_MESSAGE(outcome.match, "seed ", seed);
        CHECK(!outcome.front_end_rejected);
    }
}

TEST_CASE("the harness detects a corrupted execution path") {
    // Routing the external interpreter through a script that garbles output
    // simulates a code-generation bug end to end.
    std::string fake = "/tmp/linguine_fake_py.sh";
    {
        std::ofstream out(fake);
        out << "#!/bin/sh\necho tampered\nexit 0\n";
    }
    REQUIRE(std::system(("chmod +x " + fake).c_str()) == 0);
    ::setenv("LINGUINE_PY", fake.c_str(), 1);
    fuzz::DifferentialOutcome outcome =
        fuzz::differential_run("Print 2 plus 3.\n", "/tmp");
    ::unsetenv("LINGUINE_PY");
    CHECK(!outcome.match);
    CHECK(outcome.interp_output == "5\n");
    CHECK(outcome.python_output == "tampered\n");
    // The shrinker reports a reproducer no larger than the input; with a
    // broken external interpreter even the empty program mismatches.
    CHECK(outcome.minimized_source.size() <= outcome.source.size());
}

TEST_CASE("the fault corpus holds twenty-seven variants, three per program") {
    std::vector<fuzz::FaultSpec> specs =
        fuzz::fault_corpus(LINGUINE_GOLDEN_DIR);
    REQUIRE(specs.size() == 27);
    int orphans = 0, ambiguous = 0, mismatches = 0;
    for (const fuzz::FaultSpec& spec : specs) {
        switch (spec.kind) {
            case fuzz::FaultKind::OrphanPronoun: ++orphans; break;
            case fuzz::FaultKind::AmbiguousAntecedent: ++ambiguous; break;
            case fuzz::FaultKind::TypeMismatch: ++mismatches; break;
        }
    }
    CHECK(orphans == 9);
    CHECK(ambiguous == 9);
    CHECK(mismatches == 9);
}

TEST_CASE("every faulty variant is rejected with the expected category") {
    for (const fuzz::FaultSpec& spec :
         fuzz::fault_corpus(LINGUINE_GOLDEN_DIR)) {
        PipelineResult result = run_pipeline(spec.source, spec.base_name);
        CAPTURE(spec.base_name);
        CAPTURE(static_cast<int>(spec.kind));
        REQUIRE(!result.ok);
        CHECK(result.diagnostic.category == spec.expected);
        if (spec.kind == fuzz::FaultKind::AmbiguousAntecedent) {
            CHECK(result.diagnostic.trace.size() >= 2);
        }
    }
}

TEST_CASE("the golden corpus loads all nine programs with outputs") {
    std::vector<fuzz::GoldenProgram> corpus =
        fuzz::golden_corpus(LINGUINE_GOLDEN_DIR);
    REQUIRE(corpus.size() == 9);
    for (const fuzz::GoldenProgram& p : corpus) {
        CHECK(!p.source.empty());
        CHECK(p.source.find(p.mismatch_find) != std::string::npos);
    }
}
