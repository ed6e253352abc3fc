#include <cstdio>
#include <string>

#include "CLI11.hpp"

#include "lapspec/acceptance.hpp"
#include "lapspec/defaults.hpp"

// Dedicated acceptance runner: one pass/fail line per criterion, exit 0 iff
// every selected criterion passes.
int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria runner"};
    std::string profile = "full";
    int criterion = 0; // 0 = all
    std::uint64_t seed = lapspec::defaults::kAcceptanceMasterSeed;
    int threads = 0;
    app.add_option("--profile", profile, "quick or full")
        ->check(CLI::IsMember({"quick", "full"}));
    app.add_option("--criterion", criterion, "criterion id (0 = all)")
        ->check(CLI::Range(0, 8));
    app.add_option("--seed", seed, "master seed");
    app.add_option("--threads", threads, "worker threads (0 = auto)");
    CLI11_PARSE(app, argc, argv);

    const auto prof = profile == "full" ? lapspec::AcceptanceProfile::Full
                                        : lapspec::AcceptanceProfile::Quick;
    try {
        std::vector<lapspec::CriterionResult> results;
        if (criterion == 0) {
            results = lapspec::acceptance_all(prof, seed, threads);
        } else {
            results.push_back(
                lapspec::acceptance_criterion(criterion, prof, seed, threads));
        }
        return lapspec::print_acceptance(results) ? 0 : 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
