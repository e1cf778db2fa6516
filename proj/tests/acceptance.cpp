// Acceptance battery: runs every criterion at full scale and prints one
// pass/fail line each. Pass --fast for the desk-scale variant.
#include <cstdio>
#include <cstring>

#include "nsf1d/harness.hpp"

int main(int argc, char** argv) {
  bool fast = false;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--fast") == 0) fast = true;
  }
  const auto report = nsf1d::harness::run_acceptance(fast);
  int passed = 0;
  for (const auto& c : report.criteria) {
    std::printf("[%s] %s: %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
    if (c.pass) ++passed;
  }
  std::printf("acceptance: %d/%zu criteria passed%s\n", passed, report.criteria.size(),
              fast ? " (fast mode)" : "");
  return report.all_pass ? 0 : 1;
}
