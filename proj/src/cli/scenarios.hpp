#pragma once

#include <string>
#include <vector>

#include "cli/config.hpp"

namespace flowlab {
namespace cli {

struct RunOutcome {
  std::vector<std::string> artifacts;  // paths written, in emit order
  nlohmann::ordered_json report;       // report body, also written when asked
};

// Executes the configured scenario and writes its artifacts. Deterministic:
// rerunning the same resolved config produces byte-identical files.
RunOutcome run_scenario(const Config& cfg, bool quiet);

}  // namespace cli
}  // namespace flowlab
