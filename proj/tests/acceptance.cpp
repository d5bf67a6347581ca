// Acceptance gate: runs the ten criteria, prints one line per criterion, and
// writes verify.json next to the binary. Nonzero exit if any criterion fails.
#include "tadpole/verify.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

int main() {
    std::filesystem::create_directories("acceptance_scratch");
    auto results = tadpole::run_acceptance("acceptance_scratch");

    bool all = true;
    for (const auto& r : results) {
        std::printf("criterion %2d [%s] %s (%.1fs)\n", r.id, r.passed ? "PASS" : "FAIL",
                    r.name.c_str(), r.runtime_s);
        if (!r.passed) {
            all = false;
            std::printf("             measured: %s\n", r.measured.dump().c_str());
        }
    }
    std::ofstream os("verify.json");
    os << tadpole::acceptance_to_json(results).dump(2) << "\n";
    std::printf("%s\n", all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
    return all ? 0 : 1;
}
