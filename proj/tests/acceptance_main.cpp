// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <cstdlib>
#include <iostream>

#include "gfred/acceptance.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = gfred::acceptance::kDefaultSeed;
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
  std::cout << "acceptance seed " << seed << std::endl;
  bool ok = true;
  for (const auto& c : gfred::acceptance::criteria()) {
    const auto r = c.run(seed);
    std::cout << gfred::acceptance::format_line(r) << std::endl;
    ok = ok && r.passed;
  }
  std::cout << (ok ? "all criteria passed" : "some criteria failed") << std::endl;
  return ok ? 0 : 1;
}
