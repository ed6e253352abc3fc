#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lapspec/stats.hpp"

namespace lapspec {

enum class Experiment {
  Gumbel,
  JointK,
  Gaps,
  Poisson,
  DiagMax,
  PredictLocation,
  LocalLaw,
  Concentration,
  FcDensity,
  ReductionEquivalence,
};

// Canonical CLI names: "gumbel", "joint-k", "gaps", "poisson", "diag-max",
// "predict-location", "locallaw", "concentration", "fc-density",
// "reduction-equivalence".
const char* experiment_name(Experiment e);
Experiment parse_experiment(const std::string& name); // throws invalid_argument
std::vector<Experiment> all_experiments();

struct ExperimentConfig {
  Experiment experiment = Experiment::Gumbel;
  std::size_t n = 1000;
  std::size_t trials = 100;
  std::size_t k = 3;        // order-statistic depth where applicable
  double delta = 0.1;
  std::uint64_t masterSeed = 1;
  std::string outPath;      // empty: no file output
  int threads = 0;          // 0: hardware concurrency
};

// Hash of the statistically meaningful fields only (threads and outPath are
// excluded so output bytes do not depend on them). 16 lowercase hex chars.
std::string config_hash(const ExperimentConfig& cfg);

struct RunResult {
  TestReport overall;                  // headline verdict for the experiment
  std::vector<TestReport> parts;       // sub-tests, each self-describing
  std::vector<std::string> jsonlLines; // one record per trial, trial order
  std::vector<std::string> extraFiles; // paths written besides outPath
};

// Dispatches on cfg.experiment; writes JSONL to cfg.outPath when set.
RunResult run_experiment(const ExperimentConfig& cfg);

RunResult run_gumbel(const ExperimentConfig& cfg);
RunResult run_joint_k(const ExperimentConfig& cfg);
RunResult run_gaps(const ExperimentConfig& cfg);
RunResult run_poisson(const ExperimentConfig& cfg);
RunResult run_diag_max(const ExperimentConfig& cfg);
RunResult run_predict_location(const ExperimentConfig& cfg);
RunResult run_locallaw(const ExperimentConfig& cfg);
RunResult run_concentration(const ExperimentConfig& cfg);

// Both diagnostics evaluated from one shared set of spectra (the eigensolves
// dominate the cost; the two functionals reuse the same per-draw transforms).
struct TrendSweepResult {
  RunResult locallaw;
  RunResult concentration;
};
TrendSweepResult run_trend_sweep(const ExperimentConfig& cfg);
RunResult run_fc_density(const ExperimentConfig& cfg);
RunResult run_reduction_equivalence(const ExperimentConfig& cfg);

namespace detail {

// Static round-robin split of [0, count) over the thread pool; every trial's
// output depends only on its own seed lane, so results are order-independent.
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& fn);

// One JSONL record: {"configHash":..,"trialIndex":..,"payload":{..},"wallTimeMs":0}
// Doubles use 17 significant digits; wallTimeMs is serialized as 0 so records
// are byte-identical across machines and thread counts.
std::string jsonl_record(
    const std::string& configHash, std::size_t trialIndex,
    const std::vector<std::pair<std::string, std::vector<double>>>& payload);

std::string format_double(double x); // %.17g

// Two-sample chi-square over occupancy bins {0,1,2,>=3} at alpha = 0.01.
TestReport chi2_two_sample_counts(const std::vector<std::size_t>& a,
                                  const std::vector<std::size_t>& b,
                                  const std::string& what);

} // namespace detail

} // namespace lapspec
