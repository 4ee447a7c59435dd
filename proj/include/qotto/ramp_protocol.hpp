#pragma once

#include <cstddef>

namespace qotto {

enum class RampDirection { expansion, compression };

/// Frequency ramp nu_cold -> nu_hot over tau, with the drive axis rotating
/// from x to y. Frequencies in Hz, tau in seconds.
struct RampProtocol {
  static constexpr std::size_t default_steps = 4096;
  static constexpr std::size_t min_steps = 100;

  double nu_cold = 2000.0;
  double nu_hot = 3600.0;
  double tau = 200e-6;
  std::size_t steps = default_steps;

  /// Throws domain_error on bad frequencies/duration, accuracy_error when
  /// steps < min_steps.
  void validate() const;

  /// nu(t) = nu_cold (1 - t/tau) + nu_hot t/tau
  double frequency_at(double t) const;
};

}  // namespace qotto
