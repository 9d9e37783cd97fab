// Runs every acceptance criterion and prints one line each; exit status 1 if any fails.
#include <cstdio>
#include <cstring>

#include "qtheta/acceptance.hpp"

int main(int argc, char** argv)
{
    qtheta::AcceptanceOptions opts;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--fast") == 0)
            opts.fast = true;
    bool ok = true;
    for (int id = 1; id <= qtheta::kCriterionCount; ++id) {
        const auto r = qtheta::run_criterion(id, opts);
        std::printf("%s\n", qtheta::format_result(r).c_str());
        std::fflush(stdout);
        ok = ok && r.pass;
    }
    std::printf("%s\n", ok ? "acceptance: all criteria passed" : "acceptance: FAILED");
    return ok ? 0 : 1;
}
