#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lapspec/stats.hpp"

namespace lapspec {

enum class AcceptanceProfile { Quick, Full };

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::vector<TestReport> checks; // every sub-assertion, self-describing

  std::string one_line() const; // "PASS criterion 3: <title>"
};

// id in [1, 8]. Quick profile runs criteria 1, 2, 8 in full and reduced-size
// mechanics-only smoke versions of 3-7.
CriterionResult acceptance_criterion(int id, AcceptanceProfile profile,
                                     std::uint64_t masterSeed, int threads);

std::vector<CriterionResult> acceptance_all(AcceptanceProfile profile,
                                            std::uint64_t masterSeed, int threads);

// one_line() per criterion plus indented check lines; returns overall pass
bool print_acceptance(const std::vector<CriterionResult>& results);

} // namespace lapspec
