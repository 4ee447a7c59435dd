#include "qotto/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "qotto/errors.hpp"

namespace qotto {

namespace {

std::string indexed(const char* prefix, std::size_t i) { return prefix + std::to_string(i); }

std::string join(std::span<const double> values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ' ';
    s += format_number(values[i]);
  }
  return s;
}

CyclePoint make_point(double p_cold, double nu_cold, double p_hot, double nu_hot, double xi) {
  return {ReservoirSpec::from_population(nu_cold, p_cold),
          ReservoirSpec::from_population(nu_hot, p_hot), xi};
}

Cell eta_cell(const CycleResult& r) {
  if (r.efficiency) return *r.efficiency;
  return std::monostate{};
}

Cell regime_cell(const CycleResult& r) { return std::string(to_string(r.regime)); }

}  // namespace

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n == 0) return {};
  if (n == 1) return {lo};
  std::vector<double> v(n);
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) v[i] = lo + step * static_cast<double>(i);
  v.back() = hi;
  return v;
}

SweepTable sweep_xi_vs_tau(const RampProtocol& base, std::span<const double> tau_grid) {
  SweepTable t({"tau_s", "xi"});
  t.add_metadata("nu_cold_hz", format_number(base.nu_cold));
  t.add_metadata("nu_hot_hz", format_number(base.nu_hot));
  t.add_metadata("steps", std::to_string(base.steps));
  for (double tau : tau_grid) {
    if (!(tau > 0.0 && tau <= 1.0)) throw domain_error("sweep_xi_vs_tau: tau outside (0, 1 s]");
    RampProtocol proto = base;
    proto.tau = tau;
    t.add_row({tau, xi(proto)});
  }
  return t;
}

SweepTable region_map(double p_cold_plus, double nu_cold, double nu_hot,
                      std::span<const double> p_hot_grid, std::span<const double> xi_grid) {
  SweepTable t({"p_hot_plus", "xi", "regime", "eta"});
  t.add_metadata("p_cold_plus", format_number(p_cold_plus));
  t.add_metadata("nu_cold_hz", format_number(nu_cold));
  t.add_metadata("nu_hot_hz", format_number(nu_hot));
  for (double p_hot : p_hot_grid) {
    if (!(p_hot > 0.5 && p_hot <= 1.0)) throw domain_error("region_map: p_hot outside (0.5, 1]");
    for (double x : xi_grid) {
      const auto r = evaluate_cycle(make_point(p_cold_plus, nu_cold, p_hot, nu_hot, x));
      t.add_row({p_hot, x, regime_cell(r), eta_cell(r)});
    }
  }
  return t;
}

SweepTable sweep_efficiency_vs_phot(double p_cold_plus, double nu_cold, double nu_hot,
                                    std::span<const double> tau_list,
                                    std::span<const double> p_hot_grid, std::size_t steps) {
  if (tau_list.empty()) throw domain_error("sweep_efficiency_vs_phot: empty tau list");
  const std::size_t n = tau_list.size();
  std::vector<std::string> cols{"p_hot_plus"};
  for (std::size_t i = 0; i < n; ++i) cols.push_back(indexed("xi_tau_", i));
  for (std::size_t i = 0; i < n; ++i) cols.push_back(indexed("eta_tau_", i));
  cols.push_back("eta_otto");
  for (std::size_t i = 0; i < n; ++i) cols.push_back(indexed("regime_tau_", i));
  SweepTable t(std::move(cols));
  t.add_metadata("p_cold_plus", format_number(p_cold_plus));
  t.add_metadata("nu_cold_hz", format_number(nu_cold));
  t.add_metadata("nu_hot_hz", format_number(nu_hot));
  t.add_metadata("tau_list_s", join(tau_list));
  t.add_metadata("steps", std::to_string(steps));

  std::vector<double> xis;
  for (double tau : tau_list) xis.push_back(xi(RampProtocol{nu_cold, nu_hot, tau, steps}));

  for (double p_hot : p_hot_grid) {
    std::vector<Cell> row{p_hot};
    std::vector<CycleResult> results;
    for (double x : xis) results.push_back(evaluate_cycle(make_point(p_cold_plus, nu_cold, p_hot, nu_hot, x)));
    for (double x : xis) row.emplace_back(x);
    for (const auto& r : results) row.push_back(eta_cell(r));
    row.emplace_back(otto_efficiency(nu_cold, nu_hot));
    for (const auto& r : results) row.push_back(regime_cell(r));
    t.add_row(std::move(row));
  }
  return t;
}

SweepTable sweep_efficiency_vs_ratio(double p_cold_plus, double nu_cold,
                                     std::span<const double> ratio_list, double tau,
                                     std::span<const double> p_hot_grid, std::size_t steps) {
  if (ratio_list.empty()) throw domain_error("sweep_efficiency_vs_ratio: empty ratio list");
  const std::size_t n = ratio_list.size();
  std::vector<double> nu_hots, xis;
  for (double ratio : ratio_list) {
    if (!(ratio > 0.0 && ratio < 1.0))
      throw domain_error("sweep_efficiency_vs_ratio: ratio outside (0, 1)");
    nu_hots.push_back(nu_cold / ratio);
    xis.push_back(xi(RampProtocol{nu_cold, nu_hots.back(), tau, steps}));
  }
  std::vector<std::string> cols{"p_hot_plus"};
  for (std::size_t i = 0; i < n; ++i) cols.push_back(indexed("xi_ratio_", i));
  for (std::size_t i = 0; i < n; ++i) cols.push_back(indexed("eta_ratio_", i));
  for (std::size_t i = 0; i < n; ++i) cols.push_back(indexed("eta_otto_ratio_", i));
  for (std::size_t i = 0; i < n; ++i) cols.push_back(indexed("regime_ratio_", i));
  SweepTable t(std::move(cols));
  t.add_metadata("p_cold_plus", format_number(p_cold_plus));
  t.add_metadata("nu_cold_hz", format_number(nu_cold));
  t.add_metadata("ratio_list", join(ratio_list));
  t.add_metadata("tau_s", format_number(tau));
  t.add_metadata("steps", std::to_string(steps));

  for (double p_hot : p_hot_grid) {
    std::vector<Cell> row{p_hot};
    std::vector<CycleResult> results;
    for (std::size_t i = 0; i < n; ++i)
      results.push_back(evaluate_cycle(make_point(p_cold_plus, nu_cold, p_hot, nu_hots[i], xis[i])));
    for (double x : xis) row.emplace_back(x);
    for (const auto& r : results) row.push_back(eta_cell(r));
    for (const auto& r : results) row.emplace_back(r.eta_otto);
    for (const auto& r : results) row.push_back(regime_cell(r));
    t.add_row(std::move(row));
  }
  return t;
}

double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  const double pa = a.purity();
  const double pb = b.purity();
  if (!(pa > 0.0 && pb > 0.0)) throw domain_error("fidelity: zero purity");
  const double overlap = std::abs(trace_product(a.mat(), b.mat().adjoint()));
  return overlap / (std::sqrt(pa) * std::sqrt(pb));
}

const std::vector<StrokeStateFixture>& stroke_state_fixtures() {
  static const std::vector<StrokeStateFixture> fixtures = [] {
    struct Raw {
      const char* label;
      complex measured[4];
      complex theory[4];
      double fidelity;
    };
    static const Raw raw[] = {
#include "stroke_state_fixtures.inc"
    };
    std::vector<StrokeStateFixture> out;
    for (const auto& r : raw)
      out.push_back({r.label,
                     {r.measured[0], r.measured[1], r.measured[2], r.measured[3]},
                     {r.theory[0], r.theory[1], r.theory[2], r.theory[3]},
                     r.fidelity});
    return out;
  }();
  return fixtures;
}

bool FidelityReport::passed() const {
  return !pairs.empty() && std::all_of(pairs.begin(), pairs.end(), [](const FidelityPair& p) {
    return p.entries_ok && p.fidelity_ok;
  });
}

FidelityReport stroke_state_check(const RampProtocol& proto, double p_cold_plus, double p_hot_plus) {
  const auto cold = ReservoirSpec::from_population(proto.nu_cold, p_cold_plus);
  const auto hot = ReservoirSpec::from_population(proto.nu_hot, p_hot_plus);
  const StrokeTrace trace = stroke_oracle(cold, hot, proto);
  const DensityMatrix* regenerated[] = {&trace.rho1, &trace.rho2, &trace.rho3, &trace.rho4};

  FidelityReport report;
  const auto& fixtures = stroke_state_fixtures();
  for (std::size_t i = 0; i < fixtures.size(); ++i) {
    const auto& fx = fixtures[i];
    const DensityMatrix experimental = DensityMatrix::from_measured(fx.measured);
    const DensityMatrix& theory = *regenerated[i];
    const double dev = max_abs_diff(theory.mat(), fx.theory);
    // Fidelity is taken against the Hermitized measurement; the trace
    // rescaling in from_measured does not change it.
    const double f = fidelity(experimental, theory);
    report.pairs.push_back({fx.label, experimental, theory, f, fx.reported_fidelity, dev,
                            dev <= stroke_state_entry_tolerance,
                            std::abs(f - fx.reported_fidelity) <= stroke_state_fidelity_tolerance});
  }
  return report;
}

std::optional<double> find_crossing(double p_cold_plus, double nu_cold, double nu_hot) {
  const double beta_cold = beta_from_population(p_cold_plus, nu_cold);
  const double target = std::tanh(0.5 * beta_cold * nu_cold);
  auto g = [&](double p_hot) {
    const double beta_hot = beta_from_population(p_hot, nu_hot);
    return target - std::tanh(0.5 * std::abs(beta_hot) * nu_hot);
  };
  // g decreases from target (> 0) at p -> 1/2 to target - 1 at p -> 1.
  double lo = std::nextafter(0.5, 1.0);
  double hi = std::nextafter(1.0, 0.0);
  if (!(g(lo) > 0.0) || !(g(hi) < 0.0)) return std::nullopt;
  for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    (gm > 0.0 ? lo : hi) = mid;
  }
  return std::abs(g(lo)) <= std::abs(g(hi)) ? lo : hi;
}

}  // namespace qotto
