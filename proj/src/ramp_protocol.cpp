#include "qotto/ramp_protocol.hpp"

#include <cmath>

#include "qotto/errors.hpp"

namespace qotto {

void RampProtocol::validate() const {
  if (!(nu_cold > 0.0) || !std::isfinite(nu_cold))
    throw domain_error("RampProtocol: nu_cold must be positive");
  if (!(nu_hot > nu_cold) || !std::isfinite(nu_hot))
    throw domain_error("RampProtocol: nu_hot must exceed nu_cold");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw domain_error("RampProtocol: tau must be positive");
  if (steps < min_steps) throw accuracy_error("RampProtocol: steps must be at least 100");
}

double RampProtocol::frequency_at(double t) const {
  const double s = t / tau;
  return nu_cold * (1.0 - s) + nu_hot * s;
}

}  // namespace qotto
