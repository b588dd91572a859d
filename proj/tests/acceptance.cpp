// Integration gate: runs every checklist criterion at its pinned scope and
// prints one pass/fail line each. Exit code 0 iff everything passed.
//
// Usage: acceptance [--jobs N] [id...]

#include "virblocks/acceptance.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

int main(int argc, char** argv)
{
    int jobs = 2;
    std::vector<int> ids;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--jobs") == 0 && i + 1 < argc) {
            jobs = std::atoi(argv[++i]);
        } else {
            ids.push_back(std::atoi(argv[i]));
        }
    }

    const auto results = virblocks::run_acceptance(ids, jobs);
    bool all = true;
    for (const auto& r : results) {
        std::printf("[%2d/%zu] %s  %-55s (%.1fs)  %s\n", r.id,
                    virblocks::acceptance_criteria().size(), r.pass ? "PASS" : "FAIL",
                    r.name.c_str(), r.seconds, r.detail.c_str());
        std::fflush(stdout);
        all = all && r.pass;
    }
    if (results.empty()) {
        std::fprintf(stderr, "no criteria selected\n");
        return 2;
    }
    std::printf("%s\n", all ? "ACCEPTANCE: all criteria passed" : "ACCEPTANCE: FAILURES PRESENT");
    return all ? 0 : 1;
}
