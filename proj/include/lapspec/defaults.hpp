#pragma once

#include <cstddef>
#include <cstdint>

// Single versioned defaults file: every threshold, trial count and acceptance
// window lives here so tightening any of them is a one-line change.
namespace lapspec::defaults {

inline constexpr int kDefaultsVersion = 1;

// --- generic statistical thresholds ---
inline constexpr double kKsCritical1pc = 1.628;   // asymptotic KS, alpha = 0.01
inline constexpr double kChi2Crit3df1pc = 11.345; // chi-square, 3 df, alpha = 0.01

// --- solver defaults ---
inline constexpr double kSolverTol = 1e-12;
inline constexpr int kSolverMaxIter = 500;
inline constexpr double kSolverDamping = 1.0;

// --- spectral-domain / diagnostic defaults ---
inline constexpr double kDeltaDefault = 0.1; // the paper-existential delta
inline constexpr std::size_t kGridEPoints = 64;
inline constexpr std::size_t kResamplesDefault = 20;

// --- calibrated envelope constants (empirical; see README) ---
// v(u) <= Cv * e^{-u^2/2}: the exact ratio tends to sqrt(pi/2) ~ 1.2533 as
// u -> inf and peaks at 1.526 for u = 3 among the checked points
inline constexpr double kBianeVEnvelope = 1.6;
// p(x) <= Cp * e^{-x^2/2}; the ratio peaks at 2.09 near the bulk edge
inline constexpr double kDensityEnvelope = 2.5;

// --- acceptance criterion 1: deterministic algebra ---
inline constexpr std::size_t kC1LaplacianN = 500;
inline constexpr std::size_t kC1SpectrumN = 60;
inline constexpr std::size_t kC1SigmaN = 50;
inline constexpr double kC1RowSumTolPerN = 1e-13;  // * n
inline constexpr double kC1SpectrumTol = 1e-10;
inline constexpr double kC1SigmaTol = 1e-12;

// --- acceptance criterion 2: analytic layer ---
inline constexpr std::size_t kC2RandomPoints = 200;
inline constexpr double kC2ResidualTol = 1e-12;
inline constexpr double kC2MassTol = 1e-4;
inline constexpr double kC2InversionTol = 2e-3;
inline constexpr double kC2InversionEta = 1e-3;
inline constexpr std::size_t kC2GridCount = 2001;

// --- acceptance criterion 3: limit-law oracle equivalence ---
inline constexpr std::size_t kC3N = 1000;
inline constexpr std::size_t kC3Trials = 500;
inline constexpr double kC3SwapShiftCenter = 1.0;
inline constexpr double kC3SwapShiftSlack = 0.15;

// --- acceptance criterion 4: Poisson counts ---
inline constexpr std::size_t kC4N = 1000;
inline constexpr std::size_t kC4Trials = 2000;
inline constexpr double kC4MeanRelWindow = 0.15;

// --- acceptance criterion 5: eigenvalue location ---
inline constexpr std::size_t kC5N = 2000;
inline constexpr std::size_t kC5Trials = 300;
inline constexpr double kC5MeanShiftRelWindow = 0.15;

// --- acceptance criterion 6: local law / concentration trend ---
inline constexpr std::size_t kC6Sizes[3] = {500, 1000, 2000};
inline constexpr double kC6Deltas[3] = {0.05, 0.1, 0.2};
inline constexpr std::size_t kC6SeedReps = 10;
inline constexpr std::size_t kC6MinTrendSeeds = 8;
inline constexpr std::size_t kC6Resamples = kResamplesDefault;

// --- acceptance criterion 7: reduction chain ---
inline constexpr std::size_t kC7N = 1000;
inline constexpr std::size_t kC7Trials = 200;
inline constexpr std::size_t kC7IdentityN = 300;
inline constexpr double kC7IdentityTol = 1e-10;
inline constexpr double kC7FracLemma = 0.99;   // |lam_k(W) - lam_k(W')| window
inline constexpr double kC7FracProp = 0.90;    // full-vs-reduced window

// --- acceptance criterion 8: diagonal count ---
inline constexpr std::size_t kC8N = 100000;
inline constexpr double kC8Delta = 0.5;
inline constexpr std::size_t kC8Seeds = 100;

// --- quick-profile smoke sizes ---
inline constexpr std::size_t kSmokeN = 200;
inline constexpr std::size_t kSmokeTrials = 40;

inline constexpr std::uint64_t kAcceptanceMasterSeed = 20260826ULL;

} // namespace lapspec::defaults
