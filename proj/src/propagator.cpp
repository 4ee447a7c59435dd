#include "qotto/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qotto/errors.hpp"
#include "qotto/qspin.hpp"

namespace qotto {

double Propagator::unitarity_defect() const {
  return max_abs_diff(U.adjoint() * U, ComplexMat2::identity());
}

Propagator propagate(const RampProtocol& proto, RampDirection direction) {
  proto.validate();
  const double dt = proto.tau / static_cast<double>(proto.steps);
  const complex gen{0.0, -2.0 * std::numbers::pi};
  // dU/dt = -i 2pi H(t) U; t clamped so round-off cannot leave [0, tau].
  auto rhs = [&](double t, const ComplexMat2& U) {
    return gen * (ramp_hamiltonian(proto, std::min(t, proto.tau), direction) * U);
  };

  ComplexMat2 U = ComplexMat2::identity();
  for (std::size_t n = 0; n < proto.steps; ++n) {
    const double t = static_cast<double>(n) * dt;
    const double t_next = (n + 1 == proto.steps) ? proto.tau : t + dt;
    const double h = t_next - t;
    const ComplexMat2 k1 = rhs(t, U);
    const ComplexMat2 k2 = rhs(t + 0.5 * h, U + (0.5 * h) * k1);
    const ComplexMat2 k3 = rhs(t + 0.5 * h, U + (0.5 * h) * k2);
    const ComplexMat2 k4 = rhs(t_next, U + h * k3);
    const ComplexMat2 next = U + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const double defect = max_abs_diff(next.adjoint() * next, ComplexMat2::identity());
    if (!(defect <= max_step_unitarity_defect))
      throw accuracy_error("propagate: step count too small, single-step unitarity defect " +
                           std::to_string(defect));
    U = polar_unitary(next);
  }
  return {U, proto, direction};
}

std::size_t required_steps(const RampProtocol& proto, std::size_t floor) {
  // RK4 unitarity defect per step ~ x^6/72 with x = 2 pi nu dt; x <= 0.01
  // keeps it near 1e-14.
  const double nu_max = std::max(proto.nu_cold, proto.nu_hot);
  const double needed = 2.0 * std::numbers::pi * nu_max * proto.tau / 0.01;
  std::size_t steps = std::max<std::size_t>(floor, RampProtocol::min_steps);
  while (static_cast<double>(steps) < needed) steps *= 2;
  return steps;
}

double xi(const Propagator& expansion) {
  const auto cold = eigenbasis(stroke_hamiltonian(Stroke::cold, expansion.protocol.nu_cold));
  const auto hot = eigenbasis(stroke_hamiltonian(Stroke::hot, expansion.protocol.nu_hot));
  return std::norm(matrix_element(hot.plus, expansion.U, cold.minus));
}

double xi(const RampProtocol& proto) { return xi(propagate(proto, RampDirection::expansion)); }

double XiSymmetryReport::max_pairwise_difference() const {
  const auto [lo, hi] = std::minmax_element(probabilities.begin(), probabilities.end());
  return *hi - *lo;
}

XiSymmetryReport xi_symmetry_check(const Propagator& expansion, const Propagator& compression) {
  const auto cold = eigenbasis(stroke_hamiltonian(Stroke::cold, expansion.protocol.nu_cold));
  const auto hot = eigenbasis(stroke_hamiltonian(Stroke::hot, expansion.protocol.nu_hot));
  const ComplexMat2& U = expansion.U;
  const ComplexMat2& V = compression.U;
  return {{std::norm(matrix_element(hot.plus, U, cold.minus)),
           std::norm(matrix_element(hot.minus, U, cold.plus)),
           std::norm(matrix_element(cold.plus, V, hot.minus)),
           std::norm(matrix_element(cold.minus, V, hot.plus))}};
}

XiSymmetryReport xi_symmetry_check(const RampProtocol& proto) {
  return xi_symmetry_check(propagate(proto, RampDirection::expansion),
                           propagate(proto, RampDirection::compression));
}

}  // namespace qotto
