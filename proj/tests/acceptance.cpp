// One line per acceptance criterion; nonzero exit if any criterion fails.
#include <iostream>

#include "qotto/verification.hpp"

int main() {
  const auto results = qotto::run_verification(qotto::VerifyOptions{});
  std::cout << qotto::format_report(results);
  const bool ok = qotto::all_passed(results);
  std::cout << (ok ? "acceptance: PASS\n" : "acceptance: FAIL\n");
  return ok ? 0 : 1;
}
