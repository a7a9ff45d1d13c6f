// Acceptance run: one PASS/FAIL line per criterion, exit 0 iff all pass.
// Criteria 1-9 run in process; criterion 10 times `isokit selftest`.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include <sys/wait.h>

#include "isokit/acceptance.hpp"

namespace {

constexpr double kSelftestBudgetSeconds = 10.0;

isokit::CriterionResult selftest_criterion(const std::string& binary)
{
    isokit::CriterionResult r;
    r.id = 10;
    r.name = "isokit selftest end to end";
    const std::string command = "\"" + binary + "\" selftest > /dev/null 2>&1";
    const auto start = std::chrono::steady_clock::now();
    const int status = std::system(command.c_str());
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const int code = (status != -1 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    r.passed = code == 0 && r.seconds < kSelftestBudgetSeconds;
    char buffer[128];
    std::snprintf(buffer, sizeof buffer, "exit %d, %.3f s of %.0f s budget", code, r.seconds,
                  kSelftestBudgetSeconds);
    r.detail = buffer;
    return r;
}

} // namespace

int main(int argc, char** argv)
{
    const std::string binary = argc > 1 ? argv[1] : ISOKIT_BINARY;
    bool ok = true;
    const auto results = isokit::run_acceptance([&](const isokit::CriterionResult& r) {
        std::cout << isokit::format_criterion(r) << '\n' << std::flush;
    });
    for (const auto& r : results) {
        ok = ok && r.passed;
    }
    const auto last = selftest_criterion(binary);
    std::cout << isokit::format_criterion(last) << '\n';
    ok = ok && last.passed;
    std::cout << (ok ? "acceptance: all 10 criteria passed" : "acceptance: FAILED") << '\n';
    return ok ? 0 : 1;
}
