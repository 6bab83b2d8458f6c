// One line per criterion; exit status is nonzero if any criterion fails.
#include <cstdio>

#include "qfl/acceptance.hpp"

int main() {
  int failed = 0;
  for (const auto& r : qfl::run_acceptance()) {
    std::printf("%s %d %s (%.2f s)\n    %s\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                r.detail.c_str());
    if (!r.passed) ++failed;
  }
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
