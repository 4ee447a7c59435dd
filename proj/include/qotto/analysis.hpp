#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qotto/otto.hpp"
#include "qotto/sweep_table.hpp"

namespace qotto {

/// Columns: tau_s, xi. One row per tau, in the given order.
SweepTable sweep_xi_vs_tau(const RampProtocol& base, std::span<const double> tau_grid);

/// Columns: p_hot_plus, xi, regime, eta. Rows ordered by p_hot then xi;
/// eta is null where the point is not an engine.
SweepTable region_map(double p_cold_plus, double nu_cold, double nu_hot,
                      std::span<const double> p_hot_grid, std::span<const double> xi_grid);

/// Efficiency versus hot population for several ramp durations (xi is
/// computed once per duration). Columns:
/// p_hot_plus, xi_tau_<i>..., eta_tau_<i>..., eta_otto, regime_tau_<i>...
SweepTable sweep_efficiency_vs_phot(double p_cold_plus, double nu_cold, double nu_hot,
                                    std::span<const double> tau_list,
                                    std::span<const double> p_hot_grid,
                                    std::size_t steps = RampProtocol::default_steps);

/// Efficiency versus hot population for several ratios nu_cold/nu_hot at
/// fixed nu_cold and tau. Columns:
/// p_hot_plus, xi_ratio_<i>..., eta_ratio_<i>..., eta_otto_ratio_<i>..., regime_ratio_<i>...
SweepTable sweep_efficiency_vs_ratio(double p_cold_plus, double nu_cold,
                                     std::span<const double> ratio_list, double tau,
                                     std::span<const double> p_hot_grid,
                                     std::size_t steps = RampProtocol::default_steps);

/// Normalized Hilbert-Schmidt overlap |Tr(a b^dag)| / sqrt(Tr a^2 Tr b^2).
double fidelity(const DensityMatrix& a, const DensityMatrix& b);

struct StrokeStateFixture {
  std::string label;
  ComplexMat2 measured;
  ComplexMat2 theory;
  double reported_fidelity;
};

/// The four tabulated stroke states (measured and theory) with their
/// reported fidelities.
const std::vector<StrokeStateFixture>& stroke_state_fixtures();

inline constexpr double stroke_state_entry_tolerance = 0.005;
inline constexpr double stroke_state_fidelity_tolerance = 0.002;

struct FidelityPair {
  std::string label;
  DensityMatrix experimental;
  DensityMatrix theoretical;  // regenerated by this library
  double fidelity;
  double reported_fidelity;
  double max_entry_deviation;  // regenerated vs tabulated theory
  bool entries_ok;
  bool fidelity_ok;
};

struct FidelityReport {
  std::vector<FidelityPair> pairs;
  bool passed() const;
};

/// Regenerates rho1..rho4 and compares them with the tabulated theory
/// (entrywise) and with the tabulated measurements (fidelity).
FidelityReport stroke_state_check(const RampProtocol& proto, double p_cold_plus, double p_hot_plus);

/// Hot population in (1/2, 1) where tanh(|beta_hot| nu_hot / 2) equals
/// tanh(beta_cold nu_cold / 2), by bisection. Empty if no such point is
/// representable.
std::optional<double> find_crossing(double p_cold_plus, double nu_cold, double nu_hot);

/// lo, lo + d, ..., hi with n points (n >= 2), or {lo} when n == 1.
std::vector<double> linspace(double lo, double hi, std::size_t n);

}  // namespace qotto
