#include "lapspec/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "lapspec/defaults.hpp"
#include "lapspec/eigensolve.hpp"
#include "lapspec/evt.hpp"
#include "lapspec/freeconv.hpp"
#include "lapspec/harness.hpp"
#include "lapspec/locallaw.hpp"
#include "lapspec/rand_models.hpp"
#include "lapspec/seed.hpp"

namespace lapspec {

namespace {

using detail::format_double;
using detail::parallel_for;

TestReport check(double statistic, double threshold, const std::string& what) {
    TestReport t;
    t.statistic = statistic;
    t.threshold = threshold;
    t.pass = statistic <= threshold;
    t.description = what;
    return t;
}

// two-sided window: statistic is the distance outside [lo, hi], 0 if inside
TestReport window_check(double value, double lo, double hi, const std::string& what) {
    const double outside = std::max({lo - value, value - hi, 0.0});
    return check(outside, 0.0,
                 what + ": value " + format_double(value) + " vs window [" +
                     format_double(lo) + ", " + format_double(hi) + "]");
}

TestReport informational(TestReport t) {
    t.description += " (informational at smoke size)";
    t.pass = true;
    return t;
}

double mean_of(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// ------------------------------------------------------------ criterion 1 ---

CriterionResult criterion1(std::uint64_t seed) {
    CriterionResult r{1, "deterministic algebra", false, {}};

    {
        const std::size_t n = defaults::kC1LaplacianN;
        const SymmetricMatrix LA = laplacian_of(sample_goe(n, SeedPath(seed).child(1)));
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            worst = std::max(worst, std::fabs(LA.row_sum(i)));
        r.checks.push_back(check(worst, defaults::kC1RowSumTolPerN * n,
                                 "Laplacian annihilates the all-ones vector"));
    }
    {
        const std::size_t n = defaults::kC1SpectrumN;
        const SymmetricMatrix LA = laplacian_of(sample_goe(n, SeedPath(seed).child(2)));
        const OrthogonalReducer red(n);
        const Spectrum full = eigenvalues(LA);
        const Spectrum conj = eigenvalues(red.conjugate(LA));
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            worst = std::max(worst, std::fabs(full[i] - conj[i]));
        r.checks.push_back(check(worst, defaults::kC1SpectrumTol,
                                 "orthogonal conjugation preserves the spectrum"));

        const Spectrum reduced = eigenvalues(red.reduce(LA));
        std::vector<double> merged(reduced.values);
        merged.push_back(0.0);
        std::sort(merged.begin(), merged.end(), std::greater<double>());
        worst = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            worst = std::max(worst, std::fabs(full[i] - merged[i]));
        r.checks.push_back(check(worst, defaults::kC1SpectrumTol,
                                 "reduced spectrum plus zero equals full spectrum"));
    }
    {
        const std::size_t n = defaults::kC1SigmaN;
        const SigmaPair sp = sigma_and_sqrt(n);
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j <= i; ++j) {
                double acc = 0.0;
                for (std::size_t l = 0; l < n; ++l)
                    acc += sp.SigmaHalf(i, l) * sp.SigmaHalf(l, j);
                worst = std::max(worst, std::fabs(acc - sp.Sigma(i, j)));
            }
        r.checks.push_back(check(worst, defaults::kC1SigmaTol,
                                 "covariance square root squares to the covariance"));

        const Spectrum ev = eigenvalues(sp.Sigma);
        double worstEv = std::fabs(ev[0] - (2.0 * n - 2.0) / n);
        for (std::size_t i = 1; i < n; ++i)
            worstEv = std::max(worstEv, std::fabs(ev[i] - (n - 2.0) / n));
        r.checks.push_back(check(worstEv, defaults::kC1SigmaTol,
                                 "covariance eigenvalues are {(2n-2)/n, (n-2)/n x (n-1)}"));
    }

    r.pass = std::all_of(r.checks.begin(), r.checks.end(),
                         [](const TestReport& t) { return t.pass; });
    return r;
}

// ------------------------------------------------------------ criterion 2 ---

CriterionResult criterion2(std::uint64_t seed) {
    CriterionResult r{2, "analytic layer", false, {}};

    {
        Rng rng(SeedPath(seed).child(21));
        double worstRes = 0.0;
        double worstIm = 1.0; // min Im m encountered
        for (std::size_t i = 0; i < defaults::kC2RandomPoints; ++i) {
            const double E = -8.0 + 16.0 * rng.uniform();
            const double eta = std::pow(10.0, -3.0 + 4.0 * rng.uniform());
            const Complex z(E, eta);
            const Complex m = solve_m(z);
            worstRes = std::max(worstRes, std::abs(m - gaussian_stieltjes(z + m)));
            worstIm = std::min(worstIm, m.imag());
        }
        r.checks.push_back(check(worstRes, defaults::kC2ResidualTol,
                                 "fixed-point residual on 200 random upper-half-plane points"));
        r.checks.push_back(check(worstIm > 0.0 ? 0.0 : 1.0, 0.0,
                                 "Im m > 0 at every sampled point"));
    }
    {
        double worst = 0.0;
        for (double rad : {10.0, 20.0, 50.0, 100.0})
            for (double frac : {0.1, 0.3, 0.5, 0.7, 0.9}) {
                const Complex z = std::polar(rad, frac * M_PI);
                const Complex m = solve_m(z);
                worst = std::max(worst,
                                 std::abs(m + 1.0 / z) * std::norm(z) / 2.0);
            }
        r.checks.push_back(check(worst, 1.0,
                                 "|m(z) + 1/z| <= 2/|z|^2 for |z| >= 10 (normalized)"));
    }

    const DensityGrid grid = density_grid(-8.0, 8.0, defaults::kC2GridCount);
    r.checks.push_back(check(std::fabs(density_grid_mass(grid) - 1.0),
                             defaults::kC2MassTol, "density integrates to 1"));
    {
        double worst = 0.0;
        for (std::size_t i = 0; i < grid.x_nodes.size(); i += 2) {
            const double x = grid.x_nodes[i];
            if (x < -4.0 || x > 4.0) continue;
            const Complex m = solve_m(Complex(x, defaults::kC2InversionEta));
            worst = std::max(worst,
                             std::fabs(grid.p_values[i] - m.imag() / M_PI));
        }
        r.checks.push_back(check(worst, defaults::kC2InversionTol,
                                 "Stieltjes inversion at eta = 1e-3 matches the density on [-4, 4]"));
    }
    {
        double worstEven = 0.0;
        for (double u : {0.5, 1.3, 2.7})
            worstEven = std::max(worstEven, std::fabs(biane_v(u) - biane_v(-u)));
        r.checks.push_back(check(worstEven, 1e-9, "subordination height is even in u"));

        double worstDecay = 0.0;
        for (double u : {3.0, 4.0, 5.0}) {
            const double v = biane_v(u);
            const double envelope = defaults::kBianeVEnvelope * std::exp(-0.5 * u * u);
            worstDecay = std::max(worstDecay, v / envelope);
            if (v <= 0.0) worstDecay = 2.0;
        }
        r.checks.push_back(check(worstDecay, 1.0,
                                 "sub-Gaussian decay of the subordination height at u in {3,4,5}"));
    }

    r.pass = std::all_of(r.checks.begin(), r.checks.end(),
                         [](const TestReport& t) { return t.pass; });
    return r;
}

// ------------------------------------------------------------ criterion 3 ---

CriterionResult criterion3(AcceptanceProfile profile, std::uint64_t seed, int threads) {
    const bool quick = profile == AcceptanceProfile::Quick;
    const std::size_t n = quick ? defaults::kSmokeN : defaults::kC3N;
    const std::size_t trials = quick ? defaults::kSmokeTrials : defaults::kC3Trials;
    CriterionResult r{3, "limit-law oracle equivalence", false, {}};

    const auto cc = constants(n);
    const SeedPath root = SeedPath(seed).child(3);

    std::vector<std::vector<double>> lam(3, std::vector<double>(trials));
    std::vector<std::vector<double>> xi(3, std::vector<double>(trials));
    std::vector<double> gapL(trials), gapX(trials), md(trials), mdXi(trials);
    std::size_t misordered = 0, negGaps = 0;

    parallel_for(trials, threads, [&](std::size_t i) {
        const SeedPath trial = root.child(i);
        const Surrogate s = sample_surrogate(n, trial);
        const Spectrum top = top_k_eigenvalues(s.L, 3);
        const OrderStatSample os = sample_gaussian_topk(n, 3, trial.child(2));
        for (int j = 0; j < 3; ++j) {
            lam[j][i] = cc.a_n * (top[j] - cc.b_n);
            xi[j][i] = cc.a_n * (os.values[j] - cc.b_n_prime);
        }
        gapL[i] = cc.a_n * (top[0] - top[1]);
        gapX[i] = cc.a_n * (os.values[0] - os.values[1]);

        const SymmetricMatrix A = sample_goe(n, trial.child(3));
        md[i] = cc.a_n * (max_diagonal(laplacian_of(A)) - cc.b_n_prime);
        mdXi[i] = cc.a_n *
                  (sample_gaussian_topk(n, 1, trial.child(4)).values[0] - cc.b_n_prime);
    });
    for (std::size_t i = 0; i < trials; ++i) {
        if (!(lam[0][i] >= lam[1][i] && lam[1][i] >= lam[2][i])) ++misordered;
        if (gapL[i] < 0.0 || gapX[i] < 0.0) ++negGaps;
    }

    TestReport ksTop = ks_two_sample(lam[0], xi[0], kKsCritical1pc,
                                     "rescaled lambda1 vs iid-maximum oracle");
    TestReport ksJ2 = ks_two_sample(lam[1], xi[1], kKsCritical1pc,
                                    "rescaled lambda2 vs second order statistic");
    TestReport ksJ3 = ks_two_sample(lam[2], xi[2], kKsCritical1pc,
                                    "rescaled lambda3 vs third order statistic");
    TestReport ksGap = ks_two_sample(gapL, gapX, kKsCritical1pc,
                                     "rescaled first gap vs oracle order-stat gap");
    TestReport ksMd = ks_two_sample(md, mdXi, kKsCritical1pc,
                                    "rescaled max Laplacian diagonal vs oracle");

    // centering swap: recentre lambda1 with the iid constant instead; the
    // detected mean shift equals a_n*(b_n - b'_n) = 1 and the swapped
    // comparison must fail the same KS test
    std::vector<double> lamSwap(trials);
    for (std::size_t i = 0; i < trials; ++i)
        lamSwap[i] = cc.a_n *
                     ((lam[0][i] / cc.a_n + cc.b_n) - cc.b_n_prime);
    const double shift = mean_of(lamSwap) - mean_of(lam[0]);
    TestReport ksSwap = ks_two_sample(lamSwap, xi[0], kKsCritical1pc,
                                      "swapped-centering lambda1 vs oracle");

    if (quick) {
        r.checks.push_back(check(std::fabs(shift - defaults::kC3SwapShiftCenter), 1e-9,
                                 "centering-swap mean shift equals a_n*(b_n - b'_n) = 1"));
        r.checks.push_back(check(static_cast<double>(misordered), 0.0,
                                 "top-3 rescaled coordinates descending in every trial"));
        r.checks.push_back(check(static_cast<double>(negGaps), 0.0,
                                 "all rescaled gaps nonnegative"));
        r.checks.push_back(informational(ksTop));
        r.checks.push_back(informational(ksGap));
        r.checks.push_back(informational(ksMd));
    } else {
        r.checks.push_back(ksTop);
        r.checks.push_back(ksJ2);
        r.checks.push_back(ksJ3);
        r.checks.push_back(ksGap);
        r.checks.push_back(ksMd);
        r.checks.push_back(window_check(
            shift, defaults::kC3SwapShiftCenter - defaults::kC3SwapShiftSlack,
            defaults::kC3SwapShiftCenter + defaults::kC3SwapShiftSlack,
            "centering-swap detected mean shift"));
        r.checks.push_back(check(ksSwap.pass ? 1.0 : 0.0, 0.0,
                                 "swapped-centering KS must fail (statistic " +
                                     format_double(ksSwap.statistic) + " vs threshold " +
                                     format_double(ksSwap.threshold) + ")"));
        r.checks.push_back(check(static_cast<double>(misordered), 0.0,
                                 "top-3 rescaled coordinates descending in every trial"));
    }

    r.pass = std::all_of(r.checks.begin(), r.checks.end(),
                         [](const TestReport& t) { return t.pass; });
    return r;
}

// ------------------------------------------------------------ criterion 4 ---

CriterionResult criterion4(AcceptanceProfile profile, std::uint64_t seed, int threads) {
    const bool quick = profile == AcceptanceProfile::Quick;
    const std::size_t n = quick ? defaults::kSmokeN : defaults::kC4N;
    const std::size_t trials = quick ? 50 : defaults::kC4Trials;
    CriterionResult r{4, "Poisson count process", false, {}};

    const auto cc = constants(n);
    const SeedPath root = SeedPath(seed).child(4);
    std::vector<std::vector<long>> counts(3, std::vector<long>(trials));
    std::size_t nonMonotone = 0;
    double defMismatch = 0.0;

    parallel_for(trials, threads, [&](std::size_t i) {
        const SeedPath trial = root.child(i);
        const Surrogate s = sample_surrogate(n, trial);
        const Tridiagonal T = tridiagonalize(s.L);
        for (int a = 0; a < 3; ++a)
            counts[a][i] = static_cast<long>(
                tri_count_at_least(T, cc.b_n + a / cc.a_n));
        if (i == 0) {
            // definition unwinding: Sturm count equals counting eigenvalues
            const Spectrum spec = tri_eigenvalues(T);
            for (int a = 0; a < 3; ++a) {
                const double cut = cc.b_n + a / cc.a_n;
                long direct = 0;
                for (double l : spec.values) direct += l >= cut;
                defMismatch =
                    std::max(defMismatch, std::fabs(double(direct - counts[a][0])));
            }
        }
    });
    for (std::size_t i = 0; i < trials; ++i)
        if (counts[0][i] < counts[1][i] || counts[1][i] < counts[2][i])
            ++nonMonotone;

    r.checks.push_back(check(defMismatch, 0.0,
                             "interval count equals number of eigenvalues above the cut"));
    r.checks.push_back(check(static_cast<double>(nonMonotone), 0.0,
                             "counts monotone in the interval level a"));
    for (int a = 0; a < 3; ++a) {
        const double mean = std::accumulate(counts[a].begin(), counts[a].end(), 0.0) /
                            static_cast<double>(trials);
        const double ref = std::exp(-a);
        TestReport meanCheck = window_check(
            mean, ref * (1.0 - defaults::kC4MeanRelWindow),
            ref * (1.0 + defaults::kC4MeanRelWindow),
            "mean count in [" + std::to_string(a) + ", inf) vs e^{-a}");
        TestReport dist = poisson_count_test(counts[a], ref);
        dist.description = "a=" + std::to_string(a) + ": " + dist.description;
        if (quick) {
            r.checks.push_back(informational(meanCheck));
            r.checks.push_back(informational(dist));
        } else {
            r.checks.push_back(meanCheck);
            r.checks.push_back(dist);
        }
    }

    r.pass = std::all_of(r.checks.begin(), r.checks.end(),
                         [](const TestReport& t) { return t.pass; });
    return r;
}

// ------------------------------------------------------------ criterion 5 ---

CriterionResult criterion5(AcceptanceProfile profile, std::uint64_t seed, int threads) {
    const bool quick = profile == AcceptanceProfile::Quick;
    CriterionResult r{5, "eigenvalue location prediction", false, {}};

    ExperimentConfig cfg;
    cfg.experiment = Experiment::PredictLocation;
    cfg.n = quick ? 300 : defaults::kC5N;
    cfg.trials = quick ? 20 : defaults::kC5Trials;
    cfg.k = quick ? 2 : 1;
    cfg.masterSeed = seed;
    cfg.threads = threads;
    const RunResult run = run_predict_location(cfg);

    if (quick) {
        r.checks.push_back(informational(run.overall));
        r.checks.push_back(run.parts[1]); // ordering is deterministic
    } else {
        r.checks.push_back(run.overall);  // median |lambda1 - E_(1)| <= eta
        r.checks.push_back(run.parts[0]); // mean(E_(1) - D_(1)) window
    }

    r.pass = std::all_of(r.checks.begin(), r.checks.end(),
                         [](const TestReport& t) { return t.pass; });
    return r;
}

// ------------------------------------------------------------ criterion 6 ---

CriterionResult criterion6(AcceptanceProfile profile, std::uint64_t seed, int threads) {
    const bool quick = profile == AcceptanceProfile::Quick;
    CriterionResult r{6, "local-law and concentration decay trend", false, {}};

    ExperimentConfig cfg;
    cfg.experiment = Experiment::LocalLaw;
    cfg.n = quick ? 200 : defaults::kC6Sizes[2];
    cfg.trials = quick ? 2 : defaults::kC6SeedReps;
    cfg.masterSeed = seed;
    cfg.threads = threads;
    const TrendSweepResult sweep = run_trend_sweep(cfg);

    const std::size_t expectedRows = 3 * 3 * 2 * cfg.trials;
    r.checks.push_back(check(
        std::fabs(double(sweep.locallaw.jsonlLines.size()) - double(expectedRows)),
        0.0, "diagnostic row count equals sweep gridpoints times repetitions"));

    auto add = [&](const RunResult& run, const char* name) {
        TestReport o = run.overall;
        o.description = std::string(name) + ": " + o.description;
        if (quick) o = informational(o);
        r.checks.push_back(o);
        for (const auto& p : run.parts) {
            TestReport t = p;
            t.description = std::string(name) + ": " + t.description;
            if (quick) t = informational(t);
            r.checks.push_back(t);
        }
    };
    add(sweep.locallaw, "local law");
    add(sweep.concentration, "concentration");

    r.pass = std::all_of(r.checks.begin(), r.checks.end(),
                         [](const TestReport& t) { return t.pass; });
    return r;
}

// ------------------------------------------------------------ criterion 7 ---

CriterionResult criterion7(AcceptanceProfile profile, std::uint64_t seed, int threads) {
    const bool quick = profile == AcceptanceProfile::Quick;
    CriterionResult r{7, "reduction-chain equivalence", false, {}};

    ExperimentConfig cfg;
    cfg.experiment = Experiment::ReductionEquivalence;
    cfg.n = quick ? defaults::kSmokeN : defaults::kC7N;
    cfg.trials = quick ? 20 : defaults::kC7Trials;
    cfg.k = 3;
    cfg.masterSeed = seed;
    cfg.threads = threads;
    const RunResult run = run_reduction_equivalence(cfg);

    r.checks.push_back(run.parts[0]); // exact identity, deterministic
    if (quick) {
        r.checks.push_back(informational(run.parts[1]));
        r.checks.push_back(informational(run.parts[2]));
    } else {
        r.checks.push_back(run.parts[1]);
        r.checks.push_back(run.parts[2]);
    }

    r.pass = std::all_of(r.checks.begin(), r.checks.end(),
                         [](const TestReport& t) { return t.pass; });
    return r;
}

// ------------------------------------------------------------ criterion 8 ---

CriterionResult criterion8(std::uint64_t seed, int threads) {
    CriterionResult r{8, "large-diagonal count", false, {}};
    const std::size_t n = defaults::kC8N;
    const double delta = defaults::kC8Delta;
    const std::size_t reps = defaults::kC8Seeds;
    const SeedPath root = SeedPath(seed).child(8);

    std::vector<double> cnts(reps);
    parallel_for(reps, threads, [&](std::size_t s) {
        Rng rng(root.child(s));
        DiagonalVector D(n);
        for (auto& d : D) d = rng.gaussian();
        cnts[s] = static_cast<double>(count_large_diagonal(D, delta));
    });
    std::sort(cnts.begin(), cnts.end());
    const double median = cnts[reps / 2];
    const double logn = std::log(static_cast<double>(n));
    const double scale = std::pow(static_cast<double>(n), delta / 2.0);
    r.checks.push_back(window_check(median, scale / (2.0 * logn), 2.0 * scale,
                                    "median count of diagonal entries above "
                                    "sqrt((2-delta) log n) over 100 seeds"));

    r.pass = r.checks.front().pass;
    return r;
}

} // namespace

std::string CriterionResult::one_line() const {
    return std::string(pass ? "PASS" : "FAIL") + " criterion " +
           std::to_string(id) + ": " + title;
}

CriterionResult acceptance_criterion(int id, AcceptanceProfile profile,
                                     std::uint64_t masterSeed, int threads) {
    switch (id) {
        case 1: return criterion1(masterSeed);
        case 2: return criterion2(masterSeed);
        case 3: return criterion3(profile, masterSeed, threads);
        case 4: return criterion4(profile, masterSeed, threads);
        case 5: return criterion5(profile, masterSeed, threads);
        case 6: return criterion6(profile, masterSeed, threads);
        case 7: return criterion7(profile, masterSeed, threads);
        case 8: return criterion8(masterSeed, threads);
        default: throw std::invalid_argument("criterion id must be in [1, 8]");
    }
}

std::vector<CriterionResult> acceptance_all(AcceptanceProfile profile,
                                            std::uint64_t masterSeed, int threads) {
    std::vector<CriterionResult> out;
    for (int id = 1; id <= 8; ++id)
        out.push_back(acceptance_criterion(id, profile, masterSeed, threads));
    return out;
}

bool print_acceptance(const std::vector<CriterionResult>& results) {
    bool all = true;
    for (const auto& r : results) {
        std::printf("%s\n", r.one_line().c_str());
        for (const auto& c : r.checks)
            std::printf("    [%s] %s (statistic=%.6g, threshold=%.6g)\n",
                        c.pass ? "ok" : "FAIL", c.description.c_str(), c.statistic,
                        c.threshold);
        all &= r.pass;
    }
    std::printf("%s\n", all ? "ACCEPTANCE: all criteria passed"
                            : "ACCEPTANCE: some criteria failed");
    return all;
}

} // namespace lapspec
