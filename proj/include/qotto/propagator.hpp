#pragma once

#include <array>

#include "qotto/complex_mat2.hpp"
#include "qotto/ramp_protocol.hpp"

namespace qotto {

struct Propagator {
  ComplexMat2 U;
  RampProtocol protocol;
  RampDirection direction = RampDirection::expansion;

  /// max |U^dag U - I|
  double unitarity_defect() const;
};

/// Largest single-step departure from unitarity of the raw RK4 update
/// (before re-projection) that propagate() accepts.
inline constexpr double max_step_unitarity_defect = 1e-10;

/// Solves dU/dt = -i 2 pi H(t) U, U(0) = I, with fixed-step RK4 and a
/// polar re-projection onto the unitary group after every step.
/// Throws accuracy_error if the step is too coarse.
Propagator propagate(const RampProtocol& proto, RampDirection direction);

/// Smallest power-of-two step count that propagate() accepts for this
/// ramp duration and frequency range, never below `floor`.
std::size_t required_steps(const RampProtocol& proto,
                           std::size_t floor = RampProtocol::default_steps);

/// Transition probability |<+_hot| U |-_cold>|^2 of the expansion ramp.
double xi(const RampProtocol& proto);
double xi(const Propagator& expansion);

/// The four transition probabilities that coincide for this cycle:
/// |<+h|U|-c>|^2, |<-h|U|+c>|^2, |<+c|V|-h>|^2, |<-c|V|+h>|^2.
struct XiSymmetryReport {
  std::array<double, 4> probabilities{};
  double max_pairwise_difference() const;
};

XiSymmetryReport xi_symmetry_check(const RampProtocol& proto);
XiSymmetryReport xi_symmetry_check(const Propagator& expansion, const Propagator& compression);

}  // namespace qotto
