// Runs the full acceptance battery, one line per criterion.

#include <cstdio>

#include "cli/acceptance.hpp"

int main() {
  using namespace flowlab::cli;
  bool all_pass = true;
  for (int id = 1; id <= criterion_count(); ++id) {
    CriterionResult r = run_criterion(id);
    all_pass = all_pass && r.pass;
    std::printf("criterion %2d [%s] %s: %s\n", r.id, r.pass ? "PASS" : "FAIL",
                r.name.c_str(), r.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("battery: %s\n", all_pass ? "PASS" : "FAIL");
  return all_pass ? 0 : 1;
}
