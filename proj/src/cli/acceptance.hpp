#pragma once

#include <string>
#include <vector>

namespace flowlab {
namespace cli {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

int criterion_count();  // the battery is criteria 1..criterion_count()

// Runs one acceptance criterion; exceptions are caught and reported as
// failures so a battery always completes.
CriterionResult run_criterion(int id);

// kernels | mild | maxprinciple | axisym | blowup | all.
std::vector<int> suite_criteria(const std::string& suite);

}  // namespace cli
}  // namespace flowlab
