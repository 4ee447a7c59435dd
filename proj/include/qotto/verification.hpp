#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qotto/ramp_protocol.hpp"

namespace qotto {

struct VerifyOptions {
  double nu_cold = 2000.0;
  double nu_hot = 3600.0;
  double tau = 200e-6;
  std::size_t steps = RampProtocol::default_steps;
  double p_cold_plus = 0.261;
  /// Hot population of the tabulated stroke states.
  double p_hot_plus = 0.813;
  /// Cold population of the tabulated stroke states.
  double table_p_cold_plus = 0.26;
  std::size_t random_samples = 200;
  std::uint64_t seed = 20190101;
};

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  /// Informational lines do not count toward the verdict.
  bool informational = false;
};

/// Runs the reproduction checks (numbered 1-10) in order. Each check
/// catches its own exceptions and reports them as failures.
std::vector<CheckResult> run_verification(const VerifyOptions& options);

bool all_passed(const std::vector<CheckResult>& results);

/// "[PASS]  3  name: detail" lines.
std::string format_report(const std::vector<CheckResult>& results);

}  // namespace qotto
