// Acceptance suite: evaluates the listed criteria (all when none are given)
// and prints one line per measured quantity. Exit status 1 if any
// non-advisory check fails.

#include <iostream>
#include <string>
#include <vector>

#include "ghostsim/validation.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> ids(argv + 1, argv + argc);
  try {
    const ghostsim::ValidationReport report = ghostsim::run_validation(ids);
    ghostsim::print_report(std::cout, report, false);
    return report.passed() ? 0 : 1;
  } catch (const ghostsim::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
