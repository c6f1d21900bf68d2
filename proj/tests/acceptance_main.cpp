// Acceptance suite runner: one pass/fail line per criterion, nonzero exit
// on any failure.
#include <cstdio>
#include <cstring>

#include "arl/acceptance.hpp"

int main(int argc, char** argv) {
    arl::acceptance::Options opt;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--quick") == 0) opt.quick = true;
        if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc) opt.seed = std::strtoull(argv[++i], nullptr, 10);
    }
    auto results = arl::acceptance::run_all(opt);
    bool ok = true;
    for (const auto& r : results) {
        std::printf("[%s] %-4s %-32s (%.2fs) %s\n", r.pass ? "PASS" : "FAIL", r.id.c_str(), r.name.c_str(),
                    r.seconds, r.detail.c_str());
        ok = ok && r.pass;
    }
    std::printf("%s: %zu criteria\n", ok ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED", results.size());
    return ok ? 0 : 2;
}
