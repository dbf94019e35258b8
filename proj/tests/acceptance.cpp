// Acceptance gate: runs every release criterion and prints one line per
// criterion.  Exit code 0 only if all of them pass.
#include <cstdio>
#include <exception>
#include <vector>

#include "hml/verification.hpp"

int main() {
    std::vector<hml::CriterionResult> results;
    try {
        results = hml::run_acceptance_criteria();
    } catch (const std::exception& e) {
        std::fprintf(stderr, "acceptance run aborted: %s\n", e.what());
        return 1;
    }

    int failed = 0;
    for (const hml::CriterionResult& c : results) {
        std::puts(hml::format_criterion_line(c).c_str());
        if (!c.pass()) ++failed;
    }
    if (failed == 0)
        std::printf("all %zu acceptance criteria passed\n", results.size());
    else
        std::printf("%d of %zu acceptance criteria failed\n", failed,
                    results.size());
    return failed == 0 ? 0 : 1;
}
