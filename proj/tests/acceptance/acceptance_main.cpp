// Verification suite runner: one pass/fail line per criterion, exit 0 only
// when every criterion passes.

#include <cstring>
#include <iostream>
#include <string>

#include "pvshort/acceptance.hpp"

int main(int argc, char** argv) {
    pvshort::AcceptanceOptions opt;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--output-dir" && i + 1 < argc) {
            opt.outputDir = argv[++i];
        } else if (arg == "--workers" && i + 1 < argc) {
            opt.workerCount = static_cast<unsigned>(std::stoul(argv[++i]));
        } else {
            std::cerr << "usage: pvshort_acceptance [--output-dir DIR] [--workers N]\n";
            return 2;
        }
    }
    try {
        const auto results = pvshort::run_acceptance(opt, std::cout);
        const bool ok = pvshort::all_passed(results);
        std::cout << (ok ? "ALL CRITERIA PASSED" : "VERIFICATION FAILED") << "\n";
        return ok ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "acceptance suite aborted: " << e.what() << "\n";
        return 1;
    }
}
