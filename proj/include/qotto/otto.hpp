#pragma once

#include <optional>
#include <string_view>

#include "qotto/propagator.hpp"
#include "qotto/qspin.hpp"

// Closed-form thermodynamics of the two-level Otto cycle with a cold
// (beta > 0) and a population-inverted hot (beta < 0) reservoir.
// Energies in units of h*Hz; negative work is work extracted.
namespace qotto {

enum class Regime { NotEngine, EngineSubOtto, EngineSuperOtto };

std::string_view to_string(Regime r);
std::optional<Regime> regime_from_string(std::string_view s);

/// Reservoir pair plus transition probability. Constructor enforces
/// cold.beta > 0, hot.beta < 0, hot.nu > cold.nu, xi in [0, 1/2].
class CyclePoint {
 public:
  CyclePoint(ReservoirSpec cold, ReservoirSpec hot, double xi);

  const ReservoirSpec& cold() const { return cold_; }
  const ReservoirSpec& hot() const { return hot_; }
  double xi() const { return xi_; }

  /// tanh(beta_cold nu_cold / 2), positive.
  double tanh_cold() const { return cold_.tanh_half(); }
  /// tanh(|beta_hot| nu_hot / 2), positive.
  double tanh_hot() const { return -hot_.tanh_half(); }

  CyclePoint with_xi(double xi) const { return {cold_, hot_, xi}; }

 private:
  ReservoirSpec cold_;
  ReservoirSpec hot_;
  double xi_;
};

struct CycleResult {
  double xi = 0.0;
  double work = 0.0;
  double q_hot = 0.0;
  double q_cold = 0.0;
  std::optional<double> efficiency;  // empty outside the engine regime
  double eta_otto = 0.0;
  double work_adiabatic = 0.0;
  double inner_friction = 0.0;
  Regime regime = Regime::NotEngine;
};

double net_work(const CyclePoint& p);
double heat_hot(const CyclePoint& p);
double heat_cold(const CyclePoint& p);

// Same quantities written with the signed tanh(beta_hot nu_hot / 2).
double net_work_signed(const CyclePoint& p);
double heat_hot_signed(const CyclePoint& p);
double heat_cold_signed(const CyclePoint& p);

double otto_efficiency(double nu_cold, double nu_hot);

struct EfficiencyFactors {
  double F;  // tanh_hot / (tanh_cold + tanh_hot)
  double G;  // tanh_cold / (tanh_cold + tanh_hot)
};
EfficiencyFactors efficiency_factors(const CyclePoint& p);

/// -W / Q_hot. Throws regime_error unless W < 0 and Q_hot > 0.
double efficiency(const CyclePoint& p);

/// 1 - (nu_c/nu_h)(1 - 2 xi F)/(1 - 2 xi G). Same regime requirement.
double efficiency_closed_form(const CyclePoint& p);

struct EngineCondition {
  bool is_engine = false;
  /// Largest admissible xi (exclusive); +inf when work is extracted for
  /// every xi.
  double xi_bound = 0.0;
};
EngineCondition engine_condition(const CyclePoint& p);

/// NotEngine outside the engine condition, otherwise SuperOtto when
/// tanh_hot >= tanh_cold (there finite xi raises eta above eta_Otto).
Regime regime(const CyclePoint& p);

/// Work of the quasi-static cycle (xi = 0).
double adiabatic_work(const CyclePoint& p);
/// net_work - adiabatic_work = xi [nu_h tanh_cold - nu_c tanh_hot]
double inner_friction(const CyclePoint& p);

CycleResult evaluate_cycle(const CyclePoint& p);

/// Cycle evaluated stroke by stroke from states and traces: rho1 Gibbs at
/// the cold reservoir, rho2 = U rho1 U^dag, rho3 Gibbs at the hot
/// reservoir, rho4 = V rho3 V^dag with U and V integrated independently.
struct StrokeTrace {
  DensityMatrix rho1, rho2, rho3, rho4;
  Propagator expansion, compression;
  CycleResult result;
};

/// Throws domain_error if the protocol frequencies differ from the
/// reservoir frequencies, or if either reservoir has infinite |beta|.
StrokeTrace stroke_oracle(const ReservoirSpec& cold, const ReservoirSpec& hot,
                          const RampProtocol& proto);

}  // namespace qotto
