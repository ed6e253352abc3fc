#include "lapspec/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "lapspec/defaults.hpp"
#include "lapspec/eigensolve.hpp"
#include "lapspec/evt.hpp"
#include "lapspec/freeconv.hpp"
#include "lapspec/locallaw.hpp"
#include "lapspec/rand_models.hpp"

namespace lapspec {

namespace {

const char* kExperimentNames[] = {
    "gumbel",          "joint-k",       "gaps",
    "poisson",         "diag-max",      "predict-location",
    "locallaw",        "concentration", "fc-density",
    "reduction-equivalence",
};

constexpr std::size_t kExperimentCount =
    sizeof(kExperimentNames) / sizeof(kExperimentNames[0]);

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex16(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

SeedPath experiment_root(const ExperimentConfig& cfg) {
    return SeedPath(cfg.masterSeed)
        .child(static_cast<std::uint64_t>(cfg.experiment));
}

void tag_reports(RunResult& r, const std::string& hash) {
    auto tag = [&](TestReport& t) {
        t.description += " [configHash=" + hash + "]";
    };
    tag(r.overall);
    for (auto& p : r.parts) tag(p);
}

void write_outputs(const ExperimentConfig& cfg, const RunResult& r) {
    if (cfg.outPath.empty()) return;
    std::ofstream out(cfg.outPath, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + cfg.outPath);
    for (const auto& line : r.jsonlLines) out << line << '\n';
    if (!out) throw std::runtime_error("write failed: " + cfg.outPath);
}

TestReport make_report(double statistic, double threshold, std::size_t samples,
                       const std::string& description) {
    TestReport t;
    t.statistic = statistic;
    t.threshold = threshold;
    t.pass = statistic <= threshold;
    t.sampleSizes = {samples};
    t.description = description;
    return t;
}

// small-sample guard: below this the KS threshold is meaningless at 1%
constexpr std::size_t kMinConclusiveTrials = 25;

bool check_inconclusive(const ExperimentConfig& cfg, RunResult& r) {
    if (cfg.trials >= kMinConclusiveTrials) return false;
    r.parts.push_back(r.overall);
    r.overall = make_report(0.0, 1.0, cfg.trials,
                            "inconclusive: below minimum sample size (trials < 25); "
                            "measured statistics recorded in parts");
    return true;
}

struct AggregateStats {
    double mean = 0.0;
    double var = 0.0; // unbiased
};

AggregateStats aggregate(const std::vector<double>& xs) {
    AggregateStats a;
    if (xs.empty()) return a;
    a.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
    if (xs.size() > 1) {
        double s = 0.0;
        for (double x : xs) s += (x - a.mean) * (x - a.mean);
        a.var = s / (xs.size() - 1);
    }
    return a;
}

} // namespace

const char* experiment_name(Experiment e) {
    return kExperimentNames[static_cast<std::size_t>(e)];
}

Experiment parse_experiment(const std::string& name) {
    for (std::size_t i = 0; i < kExperimentCount; ++i)
        if (name == kExperimentNames[i]) return static_cast<Experiment>(i);
    throw std::invalid_argument("unknown experiment: " + name);
}

std::vector<Experiment> all_experiments() {
    std::vector<Experiment> v;
    for (std::size_t i = 0; i < kExperimentCount; ++i)
        v.push_back(static_cast<Experiment>(i));
    return v;
}

std::string config_hash(const ExperimentConfig& cfg) {
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "experiment=%s;n=%zu;trials=%zu;k=%zu;delta=%.17g;seed=%llu",
                  experiment_name(cfg.experiment), cfg.n, cfg.trials, cfg.k,
                  cfg.delta, static_cast<unsigned long long>(cfg.masterSeed));
    return hex16(fnv1a(buf));
}

namespace detail {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string jsonl_record(
    const std::string& configHash, std::size_t trialIndex,
    const std::vector<std::pair<std::string, std::vector<double>>>& payload) {
    std::string s = "{\"configHash\":\"" + configHash +
                    "\",\"trialIndex\":" + std::to_string(trialIndex) +
                    ",\"payload\":{";
    bool first = true;
    for (const auto& [key, vals] : payload) {
        if (!first) s += ',';
        first = false;
        s += '"' + key + "\":[";
        for (std::size_t i = 0; i < vals.size(); ++i) {
            if (i) s += ',';
            s += format_double(vals[i]);
        }
        s += ']';
    }
    s += "},\"wallTimeMs\":0}";
    return s;
}

void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& fn) {
    std::size_t nThreads = threads > 0
        ? static_cast<std::size_t>(threads)
        : std::max(1u, std::thread::hardware_concurrency());
    nThreads = std::min(nThreads, std::max<std::size_t>(count, 1));

    if (nThreads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }

    std::mutex errMutex;
    std::string firstError;
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(errMutex);
                if (firstError.empty())
                    firstError = "trial " + std::to_string(i) + ": " + e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < nThreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (!firstError.empty()) throw std::runtime_error(firstError);
}

TestReport chi2_two_sample_counts(const std::vector<std::size_t>& a,
                                  const std::vector<std::size_t>& b,
                                  const std::string& what) {
    // occupancy bins {0, 1, 2, >=3}
    double oa[4] = {0, 0, 0, 0}, ob[4] = {0, 0, 0, 0};
    for (std::size_t c : a) ++oa[std::min<std::size_t>(c, 3)];
    for (std::size_t c : b) ++ob[std::min<std::size_t>(c, 3)];
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    double chi2 = 0.0;
    int usedBins = 0;
    for (int i = 0; i < 4; ++i) {
        const double tot = oa[i] + ob[i];
        if (tot == 0.0) continue;
        ++usedBins;
        // standard two-sample chi-square, valid for unequal sample sizes
        const double k1 = std::sqrt(nb / na), k2 = std::sqrt(na / nb);
        chi2 += (k1 * oa[i] - k2 * ob[i]) * (k1 * oa[i] - k2 * ob[i]) / tot;
    }
    // chi2 critical at 1% for df = usedBins - 1 (<= 3 here)
    const double crit[4] = {0.0, 6.635, 9.210, defaults::kChi2Crit3df1pc};
    const int df = std::clamp(usedBins - 1, 1, 3);
    TestReport t;
    t.statistic = chi2;
    t.threshold = crit[df];
    t.pass = t.statistic <= t.threshold;
    t.sampleSizes = {a.size(), b.size()};
    t.description = "two-sample chi-square over count bins {0,1,2,>=3}: " + what;
    return t;
}

} // namespace detail

using detail::jsonl_record;
using detail::parallel_for;

// ---------------------------------------------------------------- gumbel ---

RunResult run_gumbel(const ExperimentConfig& cfg) {
    const auto cc = constants(cfg.n);
    const auto root = experiment_root(cfg);
    const std::string hash = config_hash(cfg);

    std::vector<double> lam(cfg.trials), xi(cfg.trials);
    RunResult r;
    r.jsonlLines.resize(cfg.trials);
    parallel_for(cfg.trials, cfg.threads, [&](std::size_t i) {
        const SeedPath trial = root.child(i);
        const Surrogate s = sample_surrogate(cfg.n, trial);
        const double l1 = top_k_eigenvalues(s.L, 1)[0];
        const double x1 = sample_gaussian_topk(cfg.n, 1, trial.child(2)).values[0];
        lam[i] = cc.a_n * (l1 - cc.b_n);
        xi[i] = cc.a_n * (x1 - cc.b_n_prime);
        r.jsonlLines[i] = jsonl_record(hash, i,
                                       {{"lambda1", {l1}},
                                        {"lambda1Rescaled", {lam[i]}},
                                        {"xi1", {x1}},
                                        {"xi1Rescaled", {xi[i]}}});
    });

    r.overall = ks_two_sample(lam, xi, kKsCritical1pc,
                              "rescaled lambda1 vs same-n iid-maximum oracle");
    r.parts.push_back(ks_one_sample(lam, gumbel_cdf, kKsCritical1pc,
                                    "rescaled lambda1 vs Gumbel (informational)"));
    r.parts.push_back(ks_one_sample(xi, gumbel_cdf, kKsCritical1pc,
                                    "rescaled iid maximum vs Gumbel (informational)"));
    check_inconclusive(cfg, r);
    return r;
}

// --------------------------------------------------------------- joint-k ---

RunResult run_joint_k(const ExperimentConfig& cfg) {
    const std::size_t k = std::max<std::size_t>(cfg.k, 1);
    const auto cc = constants(cfg.n);
    const auto root = experiment_root(cfg);
    const std::string hash = config_hash(cfg);

    std::vector<std::vector<double>> lam(k, std::vector<double>(cfg.trials));
    std::vector<std::vector<double>> xi(k, std::vector<double>(cfg.trials));
    RunResult r;
    r.jsonlLines.resize(cfg.trials);
    parallel_for(cfg.trials, cfg.threads, [&](std::size_t i) {
        const SeedPath trial = root.child(i);
        const Surrogate s = sample_surrogate(cfg.n, trial);
        const Spectrum top = top_k_eigenvalues(s.L, k);
        const OrderStatSample os = sample_gaussian_topk(cfg.n, k, trial.child(2));
        std::vector<double> lr(k), xr(k);
        for (std::size_t j = 0; j < k; ++j) {
            lr[j] = cc.a_n * (top[j] - cc.b_n);
            xr[j] = cc.a_n * (os.values[j] - cc.b_n_prime);
            lam[j][i] = lr[j];
            xi[j][i] = xr[j];
        }
        r.jsonlLines[i] =
            jsonl_record(hash, i, {{"lambdaRescaled", lr}, {"xiRescaled", xr}});
    });

    double worst = 0.0, thr = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        TestReport t = ks_two_sample(
            lam[j], xi[j], kKsCritical1pc,
            "coordinate " + std::to_string(j + 1) + " rescaled eigenvalue vs oracle");
        worst = std::max(worst, t.statistic);
        thr = t.threshold;
        r.parts.push_back(std::move(t));
    }
    r.overall = make_report(worst, thr, cfg.trials,
                            "joint top-" + std::to_string(k) +
                                ": maximum of coordinatewise two-sample KS statistics");
    check_inconclusive(cfg, r);
    return r;
}

// ------------------------------------------------------------------ gaps ---

RunResult run_gaps(const ExperimentConfig& cfg) {
    const auto cc = constants(cfg.n);
    const auto root = experiment_root(cfg);
    const std::string hash = config_hash(cfg);

    std::vector<double> gapL(cfg.trials), gapX(cfg.trials);
    RunResult r;
    r.jsonlLines.resize(cfg.trials);
    parallel_for(cfg.trials, cfg.threads, [&](std::size_t i) {
        const SeedPath trial = root.child(i);
        const Surrogate s = sample_surrogate(cfg.n, trial);
        const Spectrum top = top_k_eigenvalues(s.L, 2);
        const OrderStatSample os = sample_gaussian_topk(cfg.n, 2, trial.child(2));
        gapL[i] = cc.a_n * (top[0] - top[1]);
        gapX[i] = cc.a_n * (os.values[0] - os.values[1]);
        r.jsonlLines[i] =
            jsonl_record(hash, i, {{"gapLambda", {gapL[i]}}, {"gapXi", {gapX[i]}}});
    });

    r.overall = ks_two_sample(gapL, gapX, kKsCritical1pc,
                              "rescaled first spectral gap vs oracle order-stat gap");
    TestReport tl = exponential_tail_test(gapL);
    tl.description += " (rescaled eigenvalue gap, informational)";
    TestReport tx = exponential_tail_test(gapX);
    tx.description += " (oracle gap, informational)";
    r.parts.push_back(std::move(tl));
    r.parts.push_back(std::move(tx));
    const AggregateStats a = aggregate(gapL);
    r.parts.push_back(make_report(std::fabs(a.mean - 1.05), 0.35, cfg.trials,
                                  "mean rescaled gap " + detail::format_double(a.mean) +
                                      " inside [0.7, 1.4]"));
    check_inconclusive(cfg, r);
    return r;
}

// --------------------------------------------------------------- poisson ---

RunResult run_poisson(const ExperimentConfig& cfg) {
    const auto cc = constants(cfg.n);
    const auto root = experiment_root(cfg);
    const std::string hash = config_hash(cfg);
    constexpr int kLevels = 3; // a = 0, 1, 2
    constexpr std::size_t kOracleDepth = 64;

    std::vector<std::vector<std::size_t>> cntL(kLevels), cntX(kLevels);
    for (int a = 0; a < kLevels; ++a) {
        cntL[a].resize(cfg.trials);
        cntX[a].resize(cfg.trials);
    }
    RunResult r;
    r.jsonlLines.resize(cfg.trials);
    parallel_for(cfg.trials, cfg.threads, [&](std::size_t i) {
        const SeedPath trial = root.child(i);
        const Surrogate s = sample_surrogate(cfg.n, trial);
        const Tridiagonal T = tridiagonalize(s.L);
        const OrderStatSample os =
            sample_gaussian_topk(cfg.n, kOracleDepth, trial.child(2));
        std::vector<double> pl(kLevels), px(kLevels);
        for (int a = 0; a < kLevels; ++a) {
            cntL[a][i] = tri_count_at_least(T, cc.b_n + a / cc.a_n);
            const double cut = cc.b_n_prime + a / cc.a_n;
            std::size_t c = 0;
            while (c < os.values.size() && os.values[c] >= cut) ++c;
            cntX[a][i] = c;
            pl[a] = static_cast<double>(cntL[a][i]);
            px[a] = static_cast<double>(cntX[a][i]);
        }
        r.jsonlLines[i] =
            jsonl_record(hash, i, {{"countLambda", pl}, {"countXi", px}});
    });

    bool allPass = true;
    double worstRatio = 0.0;
    for (int a = 0; a < kLevels; ++a) {
        std::vector<long> counts(cntL[a].begin(), cntL[a].end());
        TestReport t = poisson_count_test(counts, std::exp(-a));
        t.description = "a=" + std::to_string(a) + " eigenvalue counts: " + t.description;
        allPass &= t.pass;
        worstRatio = std::max(worstRatio, t.statistic / t.threshold);
        r.parts.push_back(std::move(t));

        TestReport x = detail::chi2_two_sample_counts(
            cntL[a], cntX[a], "eigenvalue counts vs oracle counts, a=" + std::to_string(a));
        allPass &= x.pass;
        worstRatio = std::max(worstRatio, x.statistic / x.threshold);
        r.parts.push_back(std::move(x));
    }
    r.overall = make_report(worstRatio, 1.0, cfg.trials,
                            "worst normalized component over per-a Poisson tests "
                            "and oracle chi-square cross-checks");
    r.overall.pass = allPass;
    check_inconclusive(cfg, r);
    return r;
}

// -------------------------------------------------------------- diag-max ---

namespace {

// direct reconstruction check of the diagonal covariance square root:
// v = Sigma^{1/2} g must have per-coordinate variance (n-1)/n
TestReport sigma_reconstruction_check(const SeedPath& seed) {
    constexpr std::size_t n0 = 40;
    constexpr std::size_t draws = 10000;
    const SigmaPair sp = sigma_and_sqrt(n0);
    // Sigma^{1/2} = aI + bJ, so v = a*g + b*sum(g)
    const double a = sp.SigmaHalf(0, 1) == sp.SigmaHalf(0, 0)
                         ? sp.SigmaHalf(0, 0)
                         : sp.SigmaHalf(0, 0) - sp.SigmaHalf(0, 1);
    const double b = sp.SigmaHalf(0, 1);
    Rng rng(seed);
    std::vector<double> sum(n0, 0.0), sumsq(n0, 0.0), g(n0);
    for (std::size_t d = 0; d < draws; ++d) {
        double tot = 0.0;
        for (std::size_t i = 0; i < n0; ++i) {
            g[i] = rng.gaussian();
            tot += g[i];
        }
        for (std::size_t i = 0; i < n0; ++i) {
            const double v = a * g[i] + b * tot;
            sum[i] += v;
            sumsq[i] += v * v;
        }
    }
    const double target = static_cast<double>(n0 - 1) / n0;
    const double se = target * std::sqrt(2.0 / (draws - 1));
    double worst = 0.0;
    for (std::size_t i = 0; i < n0; ++i) {
        const double mean = sum[i] / draws;
        const double var = (sumsq[i] - draws * mean * mean) / (draws - 1);
        worst = std::max(worst, std::fabs(var - target));
    }
    return make_report(worst / (3.0 * se), 1.0, draws,
                       "covariance square-root reconstruction: per-coordinate "
                       "variance of Sigma^{1/2} g within 3 SE of (n-1)/n at n=40");
}

} // namespace

RunResult run_diag_max(const ExperimentConfig& cfg) {
    const auto cc = constants(cfg.n);
    const auto root = experiment_root(cfg);
    const std::string hash = config_hash(cfg);

    std::vector<double> md(cfg.trials), xi(cfg.trials);
    RunResult r;
    r.jsonlLines.resize(cfg.trials);
    parallel_for(cfg.trials, cfg.threads, [&](std::size_t i) {
        const SeedPath trial = root.child(i);
        const SymmetricMatrix A = sample_goe(cfg.n, trial.child(0));
        const SymmetricMatrix LA = laplacian_of(A);
        const double m = max_diagonal(LA);
        const double x = sample_gaussian_topk(cfg.n, 1, trial.child(1)).values[0];
        md[i] = cc.a_n * (m - cc.b_n_prime);
        xi[i] = cc.a_n * (x - cc.b_n_prime);
        r.jsonlLines[i] = jsonl_record(
            hash, i, {{"maxDiagRescaled", {md[i]}}, {"xi1Rescaled", {xi[i]}}});
    });

    r.overall = ks_two_sample(md, xi, kKsCritical1pc,
                              "rescaled max Laplacian diagonal vs iid-maximum oracle");
    r.parts.push_back(ks_one_sample(md, gumbel_cdf, kKsCritical1pc,
                                    "rescaled max diagonal vs Gumbel (informational)"));
    r.parts.push_back(sigma_reconstruction_check(root.child(1000001)));
    check_inconclusive(cfg, r);
    return r;
}

// ------------------------------------------------------ predict-location ---

RunResult run_predict_location(const ExperimentConfig& cfg) {
    const std::size_t k = std::max<std::size_t>(cfg.k, 1);
    const auto root = experiment_root(cfg);
    const std::string hash = config_hash(cfg);
    const double eta = std::pow(static_cast<double>(cfg.n), -0.25);

    std::vector<double> err(cfg.trials), shift(cfg.trials);
    std::vector<int> misordered(cfg.trials, 0);
    RunResult r;
    r.jsonlLines.resize(cfg.trials);
    parallel_for(cfg.trials, cfg.threads, [&](std::size_t i) {
        const SeedPath trial = root.child(i);
        const Surrogate s = sample_surrogate(cfg.n, trial);
        const Spectrum top = top_k_eigenvalues(s.L, k);
        std::vector<double> D = s.D;
        std::partial_sort(D.begin(), D.begin() + static_cast<long>(k), D.end(),
                          std::greater<double>());
        std::vector<double> E(k);
        for (std::size_t j = 0; j < k; ++j) E[j] = predict_location(D[j], eta);
        for (std::size_t j = 1; j < k; ++j)
            if (!(E[j - 1] > E[j])) misordered[i] = 1;
        err[i] = std::fabs(top[k - 1] - E[k - 1]);
        shift[i] = E[0] - D[0];
        r.jsonlLines[i] = jsonl_record(hash, i,
                                       {{"lambdaK", {top[k - 1]}},
                                        {"dK", {D[k - 1]}},
                                        {"eK", {E[k - 1]}},
                                        {"absError", {err[i]}}});
    });

    std::vector<double> sortedErr = err;
    std::sort(sortedErr.begin(), sortedErr.end());
    const double median = sortedErr[sortedErr.size() / 2];
    const double frac =
        static_cast<double>(std::count_if(err.begin(), err.end(),
                                          [&](double e) { return e < eta; })) /
        cfg.trials;
    r.overall = make_report(median / eta, 1.0, cfg.trials,
                            "median |lambda_k - predicted location| relative to eta = n^{-1/4}; "
                            "fraction below eta = " + detail::format_double(frac));
    const double refShift = 1.0 / std::sqrt(2.0 * std::log(static_cast<double>(cfg.n)));
    const AggregateStats a = aggregate(shift);
    r.parts.push_back(make_report(
        std::fabs(a.mean - refShift) / refShift, defaults::kC5MeanShiftRelWindow,
        cfg.trials,
        "mean(E_(1) - D_(1)) = " + detail::format_double(a.mean) +
            " within 15% of 1/sqrt(2 log n) = " + detail::format_double(refShift)));
    const long bad = std::accumulate(misordered.begin(), misordered.end(), 0L);
    r.parts.push_back(make_report(static_cast<double>(bad), 0.0, cfg.trials,
                                  "predicted locations strictly ordered in every trial"));
    return r;
}

// ------------------------------------------- locallaw / concentration ------

namespace {

RunResult assemble_trend_result(DiagnosticKind which, const std::size_t sizes[3],
                                std::size_t reps, std::size_t aSamples,
                                std::size_t gridSize,
                                const std::vector<double>& sups) {
    auto supAt = [&](std::size_t s, std::size_t r, std::size_t d,
                     std::size_t k) -> double {
        return sups[((s * reps + r) * 3 + d) * 2 + k];
    };

    RunResult r;
    // one JSONL row per sweep gridpoint (size x delta x kind) per repetition
    for (std::size_t sIdx = 0; sIdx < 3; ++sIdx)
        for (std::size_t dIdx = 0; dIdx < 3; ++dIdx)
            for (std::size_t kIdx = 0; kIdx < 2; ++kIdx)
                for (std::size_t rep = 0; rep < reps; ++rep) {
                    LocalLawDiagnostic diag;
                    diag.n = sizes[sIdx];
                    diag.delta = defaults::kC6Deltas[dIdx];
                    diag.supValue = supAt(sIdx, rep, dIdx, kIdx);
                    diag.resamples = aSamples - 1;
                    diag.gridSize = gridSize;
                    diag.kind = domain_kind_name(kIdx == 0 ? DomainKind::STilde
                                                           : DomainKind::SHat);
                    diag.seed = rep;
                    r.jsonlLines.push_back(diag.to_json());
                }

    const bool degenerateSweep = sizes[0] == sizes[2];
    bool allPass = true;
    double worst = 0.0;
    for (std::size_t dIdx = 0; dIdx < 3; ++dIdx) {
        // per-repetition functional: worst of the two domain kinds
        auto repSup = [&](std::size_t sIdx, std::size_t rep) {
            return std::max(supAt(sIdx, rep, dIdx, 0), supAt(sIdx, rep, dIdx, 1));
        };
        // (i) median over seed repetitions strictly decreasing across the sizes
        double med[3];
        for (std::size_t sIdx = 0; sIdx < 3; ++sIdx) {
            std::vector<double> v(reps);
            for (std::size_t rep = 0; rep < reps; ++rep) v[rep] = repSup(sIdx, rep);
            std::sort(v.begin(), v.end());
            med[sIdx] = reps % 2 ? v[reps / 2]
                                 : 0.5 * (v[reps / 2 - 1] + v[reps / 2]);
        }
        const double medianViolations =
            (med[0] > med[1] ? 0.0 : 1.0) + (med[1] > med[2] ? 0.0 : 1.0);
        // (ii) endpoint comparison per repetition: smaller at the largest size
        std::size_t trendCount = 0;
        for (std::size_t rep = 0; rep < reps; ++rep)
            if (repSup(0, rep) > repSup(2, rep)) ++trendCount;
        const double failCount = static_cast<double>(reps - trendCount);
        const double allowed =
            reps >= defaults::kC6MinTrendSeeds
                ? static_cast<double>(reps - defaults::kC6MinTrendSeeds)
                : 0.0;
        const std::string label =
            "delta=" + detail::format_double(defaults::kC6Deltas[dIdx]);
        TestReport tm = make_report(
            medianViolations, 0.0, reps,
            label + ": median supValue strictly decreasing across n (" +
                detail::format_double(med[0]) + " > " +
                detail::format_double(med[1]) + " > " +
                detail::format_double(med[2]) + ")");
        TestReport te = make_report(
            failCount, allowed, reps,
            label + ": supValue smaller at the largest size than the smallest in " +
                std::to_string(trendCount) + "/" + std::to_string(reps) +
                " seed repetitions");
        if (degenerateSweep) {
            tm.description += " (degenerate sweep: no trend assertion)";
            te.description += " (degenerate sweep: no trend assertion)";
            tm.pass = te.pass = true;
        }
        allPass &= tm.pass && te.pass;
        worst = std::max(worst, medianViolations);
        worst = std::max(worst, allowed > 0 ? failCount / allowed : failCount);
        r.parts.push_back(std::move(tm));
        r.parts.push_back(std::move(te));
    }
    r.overall = make_report(worst, 1.0, reps,
                            std::string(which == DiagnosticKind::LocalLaw
                                            ? "local-law"
                                            : "concentration") +
                                " diagnostic decreasing-trend sweep over "
                                "n/4, n/2, n and delta in {0.05, 0.1, 0.2}");
    r.overall.pass = allPass;
    return r;
}

} // namespace

TrendSweepResult run_trend_sweep(const ExperimentConfig& cfg) {
    const auto root = experiment_root(cfg);
    const std::size_t sizes[3] = {std::max<std::size_t>(cfg.n / 4, 50),
                                  std::max<std::size_t>(cfg.n / 2, 50), cfg.n};
    const std::size_t reps = cfg.trials;
    const std::size_t aSamples = defaults::kResamplesDefault + 1;
    const std::size_t gridSize = defaults::kGridEPoints;

    // sup[sizeIdx][rep][deltaIdx][kindIdx] per diagnostic; the spectra (the
    // expensive part) are computed once and shared across deltas, kinds and
    // both diagnostic functionals
    std::vector<double> supsLL(3 * reps * 3 * 2, 0.0);
    std::vector<double> supsCC(3 * reps * 3 * 2, 0.0);

    parallel_for(3 * reps, cfg.threads, [&](std::size_t flat) {
        const std::size_t sIdx = flat / reps;
        const std::size_t rep = flat % reps;
        const std::size_t n = sizes[sIdx];
        const SeedPath lane = root.child(sIdx).child(rep);

        DiagonalVector D(n);
        {
            Rng rng(lane.child(0));
            for (auto& d : D) d = rng.gaussian();
        }
        std::vector<Spectrum> spectra(aSamples);
        for (std::size_t d = 0; d < aSamples; ++d) {
            // L = diag(D) - A
            SymmetricMatrix L = sample_goe(n, lane.child(1 + d));
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j <= i; ++j) L.set(i, j, -L(i, j));
                L.add(i, i, D[i]);
            }
            spectra[d] = tri_eigenvalues(tridiagonalize(L));
        }
        for (std::size_t dIdx = 0; dIdx < 3; ++dIdx) {
            for (std::size_t kIdx = 0; kIdx < 2; ++kIdx) {
                const DomainKind kind = kIdx == 0 ? DomainKind::STilde : DomainKind::SHat;
                const SpectralDomain dom =
                    build_domain(defaults::kC6Deltas[dIdx], n, kind, gridSize);
                const auto pts = domain_points(dom);
                std::vector<std::vector<Complex>> mPerDraw(
                    aSamples, std::vector<Complex>(pts.size()));
                for (std::size_t d = 0; d < aSamples; ++d)
                    for (std::size_t p = 0; p < pts.size(); ++p)
                        mPerDraw[d][p] = empirical_m(spectra[d], pts[p]);
                const std::size_t slot = ((sIdx * reps + rep) * 3 + dIdx) * 2 + kIdx;
                supsLL[slot] = diagnostic_sup_from_m(DiagnosticKind::LocalLaw,
                                                     mPerDraw, D, dom);
                supsCC[slot] = diagnostic_sup_from_m(DiagnosticKind::Concentration,
                                                     mPerDraw, D, dom);
            }
        }
    });

    TrendSweepResult out;
    out.locallaw = assemble_trend_result(DiagnosticKind::LocalLaw, sizes, reps,
                                         aSamples, gridSize, supsLL);
    out.concentration = assemble_trend_result(DiagnosticKind::Concentration, sizes,
                                              reps, aSamples, gridSize, supsCC);
    return out;
}

RunResult run_locallaw(const ExperimentConfig& cfg) {
    return run_trend_sweep(cfg).locallaw;
}

RunResult run_concentration(const ExperimentConfig& cfg) {
    return run_trend_sweep(cfg).concentration;
}

// ------------------------------------------------------------ fc-density ---

RunResult run_fc_density(const ExperimentConfig& cfg) {
    const auto root = experiment_root(cfg);
    const std::string hash = config_hash(cfg);

    const DensityGrid grid = density_grid(-8.0, 8.0, 801);

    constexpr double kBinWidth = 0.1;
    constexpr double kLo = -3.0, kHi = 3.0;
    const std::size_t nBins = static_cast<std::size_t>((kHi - kLo) / kBinWidth + 0.5);
    std::vector<std::vector<double>> trialBins(cfg.trials,
                                               std::vector<double>(nBins, 0.0));
    RunResult r;
    r.jsonlLines.resize(cfg.trials);
    parallel_for(cfg.trials, cfg.threads, [&](std::size_t i) {
        const SeedPath trial = root.child(i);
        const Surrogate s = sample_surrogate(cfg.n, trial);
        const Spectrum spec = eigenvalues(s.L);
        double sumsq = 0.0;
        for (double lam : spec.values) {
            sumsq += lam * lam;
            if (lam >= kLo && lam < kHi) {
                const std::size_t b =
                    std::min<std::size_t>(static_cast<std::size_t>((lam - kLo) / kBinWidth),
                                          nBins - 1);
                trialBins[i][b] += 1.0;
            }
        }
        r.jsonlLines[i] = jsonl_record(hash, i,
                                       {{"lambdaMin", {spec.values.back()}},
                                        {"lambdaMax", {spec.values.front()}},
                                        {"meanSquare", {sumsq / cfg.n}}});
    });

    std::vector<double> hist(nBins, 0.0);
    for (const auto& tb : trialBins)
        for (std::size_t b = 0; b < nBins; ++b) hist[b] += tb[b];
    const double totalMass = static_cast<double>(cfg.trials) *
                             static_cast<double>(cfg.n) * kBinWidth;
    for (auto& h : hist) h /= totalMass;

    auto histAt = [&](double x) -> double {
        if (x < kLo || x >= kHi) return 0.0;
        return hist[std::min<std::size_t>(
            static_cast<std::size_t>((x - kLo) / kBinWidth), nBins - 1)];
    };

    double supMismatch = 0.0;
    std::string csv = "u,x,v,p,hist\n";
    for (std::size_t i = 0; i < grid.x_nodes.size(); ++i) {
        const double x = grid.x_nodes[i];
        const double h = histAt(x);
        if (x >= kLo && x < kHi)
            supMismatch = std::max(supMismatch, std::fabs(grid.p_values[i] - h));
        csv += detail::format_double(grid.u_nodes[i]) + "," +
               detail::format_double(x) + "," +
               detail::format_double(grid.v_values[i]) + "," +
               detail::format_double(grid.p_values[i]) + "," +
               detail::format_double(h) + "\n";
    }

    if (!cfg.outPath.empty()) {
        const std::string csvPath = cfg.outPath + ".csv";
        std::ofstream out(csvPath, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open output file: " + csvPath);
        out << csv;
        r.extraFiles.push_back(csvPath);
    }

    r.overall = make_report(supMismatch, 0.02, cfg.trials,
                            "sup |density - empirical histogram| on [-3, 3], bin width 0.1");
    const double mass = density_grid_mass(grid);
    r.parts.push_back(make_report(std::fabs(mass - 1.0), 1e-3, grid.x_nodes.size(),
                                  "density grid mass " + detail::format_double(mass) +
                                      " within 1e-3 of 1"));
    return r;
}

// ------------------------------------------------- reduction-equivalence ---

RunResult run_reduction_equivalence(const ExperimentConfig& cfg) {
    const std::size_t n = cfg.n;
    const std::size_t k = std::max<std::size_t>(cfg.k, 1);
    const auto root = experiment_root(cfg);
    const std::string hash = config_hash(cfg);
    const double logn = std::log(static_cast<double>(n));
    const double lemmaWindow = 2.0 * std::sqrt(logn / n);
    const double propWindow = std::log(logn) / logn;
    const OrthogonalReducer red(n);

    std::vector<int> lemmaOk(cfg.trials), propOk(cfg.trials);
    RunResult r;
    r.jsonlLines.resize(cfg.trials);
    parallel_for(cfg.trials, cfg.threads, [&](std::size_t i) {
        const SeedPath trial = root.child(i);
        const ReductionSample rs = sample_reduction_chain(n, trial);

        const Spectrum topW = top_k_eigenvalues(rs.W(red), k);
        const Spectrum topWp = top_k_eigenvalues(rs.Wprime(red), k);

        // (n-1)-dim reduced model R^T D R + A' vs n-dim conjugated model
        const DiagonalVector D = rs.D();
        SymmetricMatrix M1 = red.reduce_diag(D);
        const SymmetricMatrix& Ap = rs.Ap;
        for (std::size_t a = 0; a < n - 1; ++a)
            for (std::size_t b = 0; b <= a; ++b) M1.add(a, b, Ap(a, b));
        SymmetricMatrix M2 = red.conjugate_diag(D);
        const SymmetricMatrix A = rs.A();
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b <= a; ++b) M2.add(a, b, A(a, b));
        const Spectrum topM1 = top_k_eigenvalues(M1, k);
        const Spectrum topM2 = top_k_eigenvalues(M2, k);

        double dLemma = 0.0, dProp = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            dLemma = std::max(dLemma, std::fabs(topW[j] - topWp[j]));
            dProp = std::max(dProp, std::fabs(topM1[j] - topM2[j]));
        }
        lemmaOk[i] = dLemma < lemmaWindow;
        propOk[i] = dProp < propWindow;
        r.jsonlLines[i] = jsonl_record(
            hash, i, {{"maxDiffWvsWprime", {dLemma}}, {"maxDiffFullVsReduced", {dProp}}});
    });

    // (i) exact spectral identity, once, on an independent draw
    double identityErr = 0.0;
    {
        const std::size_t ni = std::min<std::size_t>(n, defaults::kC7IdentityN);
        const OrthogonalReducer redI(ni);
        const SymmetricMatrix A = sample_goe(ni, root.child(900001));
        const SymmetricMatrix LA = laplacian_of(A);
        const Spectrum full = eigenvalues(LA);
        const Spectrum reducedSpec = eigenvalues(redI.reduce(LA));
        std::vector<double> merged(reducedSpec.values);
        merged.push_back(0.0);
        std::sort(merged.begin(), merged.end(), std::greater<double>());
        for (std::size_t j = 0; j < full.size(); ++j)
            identityErr = std::max(identityErr, std::fabs(full[j] - merged[j]));
    }

    const double fracLemma =
        static_cast<double>(std::accumulate(lemmaOk.begin(), lemmaOk.end(), 0)) /
        cfg.trials;
    const double fracProp =
        static_cast<double>(std::accumulate(propOk.begin(), propOk.end(), 0)) /
        cfg.trials;

    r.parts.push_back(make_report(identityErr, defaults::kC7IdentityTol, 1,
                                  "spectrum(reduced Laplacian) + {0} matches "
                                  "spectrum(Laplacian) exactly"));
    r.parts.push_back(make_report(
        1.0 - fracLemma, 1.0 - defaults::kC7FracLemma, cfg.trials,
        "|lam_k(W) - lam_k(W')| < 2 sqrt(log n / n) in " +
            detail::format_double(100 * fracLemma) + "% of trials (need >= 99%)"));
    r.parts.push_back(make_report(
        1.0 - fracProp, 1.0 - defaults::kC7FracProp, cfg.trials,
        "|lam_k(full) - lam_k(reduced)| < log log n / log n in " +
            detail::format_double(100 * fracProp) + "% of trials (need >= 90%)"));
    bool allPass = true;
    double worst = 0.0;
    for (const auto& p : r.parts) {
        allPass &= p.pass;
        worst = std::max(worst, p.threshold > 0 ? p.statistic / p.threshold
                                                : p.statistic);
    }
    r.overall = make_report(worst, 1.0, cfg.trials,
                            "reduction-chain identity plus coupled-sample "
                            "eigenvalue-difference windows");
    r.overall.pass = allPass;
    return r;
}

// ------------------------------------------------------------- dispatch ---

RunResult run_experiment(const ExperimentConfig& cfg) {
    if (cfg.trials < 1 || cfg.n < 3 || cfg.k < 1)
        throw std::invalid_argument("config requires trials >= 1, n >= 3, k >= 1");
    RunResult r;
    switch (cfg.experiment) {
        case Experiment::Gumbel: r = run_gumbel(cfg); break;
        case Experiment::JointK: r = run_joint_k(cfg); break;
        case Experiment::Gaps: r = run_gaps(cfg); break;
        case Experiment::Poisson: r = run_poisson(cfg); break;
        case Experiment::DiagMax: r = run_diag_max(cfg); break;
        case Experiment::PredictLocation: r = run_predict_location(cfg); break;
        case Experiment::LocalLaw: r = run_locallaw(cfg); break;
        case Experiment::Concentration: r = run_concentration(cfg); break;
        case Experiment::FcDensity: r = run_fc_density(cfg); break;
        case Experiment::ReductionEquivalence: r = run_reduction_equivalence(cfg); break;
    }
    tag_reports(r, config_hash(cfg));
    write_outputs(cfg, r);
    return r;
}

} // namespace lapspec
