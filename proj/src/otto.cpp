#include "qotto/otto.hpp"

#include <cmath>
#include <limits>

#include "qotto/errors.hpp"

namespace qotto {

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::NotEngine:
      return "NotEngine";
    case Regime::EngineSubOtto:
      return "EngineSubOtto";
    case Regime::EngineSuperOtto:
      return "EngineSuperOtto";
  }
  return "";
}

std::optional<Regime> regime_from_string(std::string_view s) {
  for (auto r : {Regime::NotEngine, Regime::EngineSubOtto, Regime::EngineSuperOtto})
    if (to_string(r) == s) return r;
  return std::nullopt;
}

CyclePoint::CyclePoint(ReservoirSpec cold, ReservoirSpec hot, double xi)
    : cold_(cold), hot_(hot), xi_(xi) {
  if (!(cold_.tanh_half() > 0.0))
    throw domain_error("CyclePoint: cold reservoir must have beta > 0 (p_plus < 1/2)");
  if (!(hot_.tanh_half() < 0.0))
    throw domain_error("CyclePoint: hot reservoir must have beta < 0 (p_plus > 1/2)");
  if (!(hot_.nu() > cold_.nu())) throw domain_error("CyclePoint: nu_hot must exceed nu_cold");
  if (!(xi_ >= 0.0 && xi_ <= 0.5)) throw domain_error("CyclePoint: xi outside [0, 1/2]");
}

namespace {

struct Terms {
  double nu_c, nu_h, tc, th, xi;
};

Terms terms(const CyclePoint& p) {
  return {p.cold().nu(), p.hot().nu(), p.tanh_cold(), p.tanh_hot(), p.xi()};
}

void require_engine(const CyclePoint& p, const char* what) {
  if (!(net_work(p) < 0.0 && heat_hot(p) > 0.0))
    throw regime_error(std::string(what) + ": point is not in the heat-engine regime");
}

}  // namespace

double net_work(const CyclePoint& p) {
  const auto [nc, nh, tc, th, xi] = terms(p);
  return -0.5 * (nh - nc) * (tc + th) + xi * (nh * tc - nc * th);
}

double heat_hot(const CyclePoint& p) {
  const auto [nc, nh, tc, th, xi] = terms(p);
  return 0.5 * nh * (tc + th) - xi * nh * tc;
}

double heat_cold(const CyclePoint& p) {
  const auto [nc, nh, tc, th, xi] = terms(p);
  return -0.5 * nc * (tc + th) + xi * nc * th;
}

double net_work_signed(const CyclePoint& p) {
  const double nc = p.cold().nu(), nh = p.hot().nu();
  const double tc = p.cold().tanh_half(), ts = p.hot().tanh_half(), xi = p.xi();
  return -0.5 * (nh - nc) * (tc - ts) + xi * (nh * tc + nc * ts);
}

double heat_hot_signed(const CyclePoint& p) {
  const double nh = p.hot().nu();
  const double tc = p.cold().tanh_half(), ts = p.hot().tanh_half(), xi = p.xi();
  return 0.5 * nh * (tc - ts) - xi * nh * tc;
}

double heat_cold_signed(const CyclePoint& p) {
  const double nc = p.cold().nu();
  const double tc = p.cold().tanh_half(), ts = p.hot().tanh_half(), xi = p.xi();
  return -0.5 * nc * (tc - ts) - xi * nc * ts;
}

double otto_efficiency(double nu_cold, double nu_hot) { return 1.0 - nu_cold / nu_hot; }

EfficiencyFactors efficiency_factors(const CyclePoint& p) {
  const double tc = p.tanh_cold(), th = p.tanh_hot();
  return {th / (tc + th), tc / (tc + th)};
}

double efficiency(const CyclePoint& p) {
  require_engine(p, "efficiency");
  return -net_work(p) / heat_hot(p);
}

double efficiency_closed_form(const CyclePoint& p) {
  require_engine(p, "efficiency_closed_form");
  const auto [F, G] = efficiency_factors(p);
  const double xi = p.xi();
  return 1.0 - (p.cold().nu() / p.hot().nu()) * (1.0 - 2.0 * xi * F) / (1.0 - 2.0 * xi * G);
}

EngineCondition engine_condition(const CyclePoint& p) {
  const auto [nc, nh, tc, th, xi] = terms(p);
  // W < 0  <=>  xi * slope < (nh - nc)(tc + th) / 2, with slope the xi
  // coefficient of W. A non-positive slope (or one lost in round-off)
  // never spoils extraction.
  const double slope = nh * tc - nc * th;
  EngineCondition ec;
  ec.xi_bound = slope > 1e-12 * nh * (tc + th) ? (nh - nc) * (tc + th) / (2.0 * slope)
                            : std::numeric_limits<double>::infinity();
  ec.is_engine = xi < ec.xi_bound;
  return ec;
}

Regime regime(const CyclePoint& p) {
  if (!engine_condition(p).is_engine) return Regime::NotEngine;
  const double tc = p.tanh_cold(), th = p.tanh_hot();
  // Equality (to round-off) is the eta = eta_Otto boundary, labelled super.
  const bool super = th >= tc || std::abs(th - tc) <= 1e-12 * std::max(tc, th);
  return super ? Regime::EngineSuperOtto : Regime::EngineSubOtto;
}

double adiabatic_work(const CyclePoint& p) {
  const auto [nc, nh, tc, th, xi] = terms(p);
  return -0.5 * (nh - nc) * (tc + th);
}

double inner_friction(const CyclePoint& p) {
  const auto [nc, nh, tc, th, xi] = terms(p);
  return xi * (nh * tc - nc * th);
}

CycleResult evaluate_cycle(const CyclePoint& p) {
  CycleResult r;
  r.xi = p.xi();
  r.work = net_work(p);
  r.q_hot = heat_hot(p);
  r.q_cold = heat_cold(p);
  r.eta_otto = otto_efficiency(p.cold().nu(), p.hot().nu());
  r.work_adiabatic = adiabatic_work(p);
  r.inner_friction = inner_friction(p);
  r.regime = regime(p);
  if (r.regime != Regime::NotEngine) r.efficiency = -r.work / r.q_hot;
  return r;
}

StrokeTrace stroke_oracle(const ReservoirSpec& cold, const ReservoirSpec& hot,
                          const RampProtocol& proto) {
  if (proto.nu_cold != cold.nu() || proto.nu_hot != hot.nu())
    throw domain_error("stroke_oracle: protocol frequencies differ from reservoir frequencies");
  const double beta_c = cold.beta();
  const double beta_h = hot.beta();
  const ComplexMat2 Hc = stroke_hamiltonian(Stroke::cold, cold.nu());
  const ComplexMat2 Hh = stroke_hamiltonian(Stroke::hot, hot.nu());

  Propagator U = propagate(proto, RampDirection::expansion);
  Propagator V = propagate(proto, RampDirection::compression);

  const DensityMatrix rho1 = gibbs_state(Hc, beta_c);
  const DensityMatrix rho2 = conjugate(U.U, rho1);
  const DensityMatrix rho3 = gibbs_state(Hh, beta_h);
  const DensityMatrix rho4 = conjugate(V.U, rho3);

  auto energy = [](const DensityMatrix& rho, const ComplexMat2& H) {
    return trace_product(rho.mat(), H).real();
  };

  CycleResult r;
  r.xi = xi(U);
  r.work = energy(rho2, Hh) - energy(rho1, Hc) + energy(rho4, Hc) - energy(rho3, Hh);
  r.q_hot = energy(rho3, Hh) - energy(rho2, Hh);
  r.q_cold = energy(rho1, Hc) - energy(rho4, Hc);
  r.eta_otto = otto_efficiency(cold.nu(), hot.nu());

  // Quasi-static endpoints keep the eigen-populations: beta nu is
  // carried across each ramp.
  const DensityMatrix rho2_ad = gibbs_state(Hh, beta_c * cold.nu() / hot.nu());
  const DensityMatrix rho4_ad = gibbs_state(Hc, beta_h * hot.nu() / cold.nu());
  r.work_adiabatic =
      energy(rho2_ad, Hh) - energy(rho1, Hc) + energy(rho4_ad, Hc) - energy(rho3, Hh);
  r.inner_friction = r.work - r.work_adiabatic;

  if (r.work < 0.0 && r.q_hot > 0.0 && r.q_cold < 0.0) {
    const double eta = -r.work / r.q_hot;
    r.efficiency = eta;
    r.regime = eta >= r.eta_otto - 1e-12 ? Regime::EngineSuperOtto : Regime::EngineSubOtto;
  } else {
    r.regime = Regime::NotEngine;
  }
  return {rho1, rho2, rho3, rho4, std::move(U), std::move(V), r};
}

}  // namespace qotto
