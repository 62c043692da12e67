#include <sys/stat.h>

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "linguine/fuzzgen.hpp"

int main(int argc, char** argv) {
    CLI::App app{"linguine-fuzz - differential stress test harness"};

    int count = 500;
    int max_depth = 7;
    std::uint64_t seed_base = 0;
    std::string failure_dir = "fuzz-failures";

    app.add_option("--count", count, "number of programs to generate");
    app.add_option("--max-depth", max_depth, "maximum expression depth");
    app.add_option("--seed-base", seed_base, "first seed");
    app.add_option("--failure-dir", failure_dir,
                   "directory for mismatch reproducers");

    CLI11_PARSE(app, argc, argv);

    int matched = 0;
    int failed = 0;
    for (int i = 0; i < count; ++i) {
        std::uint64_t seed = seed_base + static_cast<std::uint64_t>(i);
        linguine::fuzz::GenConfig config;
        config.seed = seed;
        config.max_depth = max_depth;
        std::string source = linguine::fuzz::gen_program(config);
        linguine::fuzz::DifferentialOutcome outcome =
            linguine::fuzz::differential_run(source, "/tmp");
        if (outcome.match) {
            ++matched;
            continue;
        }
        ++failed;
        ::mkdir(failure_dir.c_str(), 0755);
        std::string path = failure_dir + "/" + std::to_string(seed) + ".ling";
        std::ofstream out(path, std::ios::binary);
        out << "# seed " << seed << "\n";
        if (outcome.front_end_rejected) {
            out << "# front end rejected the generated program:\n";
            std::istringstream msg(outcome.reject_message);
            std::string line;
            while (std::getline(msg, line)) out << "# " << line << "\n";
        } else {
            out << "# interpreter and generated-code outputs diverge\n";
        }
        out << outcome.source;
        if (!outcome.minimized_source.empty() &&
            outcome.minimized_source != outcome.source) {
            out << "\n# minimized reproducer:\n" << outcome.minimized_source;
        }
        std::cerr << "seed " << seed << ": "
                  << (outcome.front_end_rejected ? "rejected" : "mismatch")
                  << " (reproducer: " << path << ")\n";
    }

    std::cout << matched << "/" << count << " matched\n";
    return failed == 0 ? 0 : 1;
}
