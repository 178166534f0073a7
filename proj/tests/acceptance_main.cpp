// Acceptance battery: runs every verification criterion at its stated
// tolerance and prints one pass/fail line each. The final criterion checks
// the CLI `verify` subcommand end to end (deterministic table, exit status,
// runtime budget); pass the CLI binary path as argv[1] to enable it.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "relwave/verify.hpp"

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

relwave::CriterionResult check_cli_verify(const std::string& cli) {
    relwave::CriterionResult r;
    r.id = 17;
    r.name = "verify-subcommand";
    if (cli.empty()) {
        r.pass = false;
        r.detail = "no CLI binary path supplied";
        return r;
    }
    const auto dir = std::filesystem::temp_directory_path() / "relwave_accept";
    std::filesystem::create_directories(dir);
    const auto out1 = dir / "verify1.txt", out2 = dir / "verify2.txt";

    const auto start = std::chrono::steady_clock::now();
    const int rc1 = std::system((cli + " verify > " + out1.string()).c_str());
    const int rc2 = std::system((cli + " verify > " + out2.string()).c_str());
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const std::string a = slurp(out1), b = slurp(out2);
    const bool deterministic = !a.empty() && a == b;
    const bool clean_exit = rc1 == 0 && rc2 == 0;
    const bool on_time = elapsed < 300.0;  // two full runs inside the 5-minute budget
    r.pass = deterministic && clean_exit && on_time;
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "two runs: byte-identical=%s exit=(%d,%d) elapsed=%.1fs (budget 300s)",
                  deterministic ? "yes" : "no", rc1, rc2, elapsed);
    r.detail = buf;
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    auto results = relwave::run_acceptance_criteria();
    results.push_back(check_cli_verify(argc > 1 ? argv[1] : ""));

    relwave::print_acceptance_table(std::cout, results, true);
    std::size_t passed = 0;
    for (const auto& r : results) passed += r.pass ? 1 : 0;
    std::cout << "acceptance: " << passed << "/" << results.size() << " criteria passed\n";
    return passed == results.size() ? EXIT_SUCCESS : EXIT_FAILURE;
}
