#include "cli/runner.hpp"

int main(int argc, char** argv) {
  return flowlab::cli::run_main(argc, argv);
}
