#include <iomanip>
#include <iostream>

#include "fracam/acceptance.h"

int main() {
  const auto results = fracam::run_acceptance();
  std::cout << fracam::format_acceptance_table(results);
  bool ok = true;
  for (const auto& r : results) {
    std::cout << "  criterion " << r.id << " took " << std::fixed << std::setprecision(3) << r.seconds
              << " s (limit " << r.limit_seconds << " s)\n";
    ok = ok && r.passed;
  }
  return ok ? 0 : 1;
}
