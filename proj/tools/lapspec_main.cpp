#include <cstdio>
#include <string>

#include "CLI11.hpp"

#include "lapspec/acceptance.hpp"
#include "lapspec/defaults.hpp"
#include "lapspec/harness.hpp"

namespace {

void print_run(const lapspec::RunResult& r) {
    std::printf("%s %s (statistic=%.6g, threshold=%.6g, samples=%zu)\n",
                r.overall.pass ? "PASS" : "FAIL", r.overall.description.c_str(),
                r.overall.statistic, r.overall.threshold,
                r.overall.sampleSizes.empty() ? 0 : r.overall.sampleSizes[0]);
    for (const auto& p : r.parts)
        std::printf("    [%s] %s (statistic=%.6g, threshold=%.6g)\n",
                    p.pass ? "ok" : "FAIL", p.description.c_str(), p.statistic,
                    p.threshold);
    for (const auto& f : r.extraFiles) std::printf("    wrote %s\n", f.c_str());
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Extreme-eigenvalue statistics of Laplacian random matrices"};
    app.require_subcommand(1);

    lapspec::ExperimentConfig cfg;
    cfg.masterSeed = 1;
    auto addCommon = [&](CLI::App* sub) {
        sub->add_option("--n", cfg.n, "matrix dimension");
        sub->add_option("--trials", cfg.trials, "number of Monte Carlo trials");
        sub->add_option("--k", cfg.k, "order-statistic depth");
        sub->add_option("--delta", cfg.delta, "spectral-domain delta");
        sub->add_option("--seed", cfg.masterSeed, "master seed");
        sub->add_option("--threads", cfg.threads, "worker threads (0 = auto)");
        sub->add_option("--out", cfg.outPath, "JSONL output path");
    };
    for (lapspec::Experiment e : lapspec::all_experiments()) {
        CLI::App* sub = app.add_subcommand(lapspec::experiment_name(e),
                                           "run this experiment");
        addCommon(sub);
        sub->callback([&cfg, e]() { cfg.experiment = e; });
    }

    std::string profile = "quick";
    std::uint64_t verifySeed = lapspec::defaults::kAcceptanceMasterSeed;
    int verifyThreads = 0;
    CLI::App* verify = app.add_subcommand("verify-all", "run the acceptance suites");
    verify->add_option("--profile", profile, "quick or full")
        ->check(CLI::IsMember({"quick", "full"}));
    verify->add_option("--seed", verifySeed, "master seed");
    verify->add_option("--threads", verifyThreads, "worker threads (0 = auto)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) {
            const auto prof = profile == "full" ? lapspec::AcceptanceProfile::Full
                                                : lapspec::AcceptanceProfile::Quick;
            const auto results = lapspec::acceptance_all(prof, verifySeed, verifyThreads);
            return lapspec::print_acceptance(results) ? 0 : 1;
        }
        const lapspec::RunResult r = lapspec::run_experiment(cfg);
        print_run(r);
        return r.overall.pass ? 0 : 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
