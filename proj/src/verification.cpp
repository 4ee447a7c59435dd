#include "qotto/verification.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "qotto/analysis.hpp"
#include "qotto/otto.hpp"
#include "qotto/propagator.hpp"

namespace qotto {

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point start) {
  return std::chrono::duration<double>(clock_type::now() - start).count();
}

std::string fmt(double v, int precision = 6) {
  std::ostringstream os;
  os.precision(precision);
  os << v;
  return os.str();
}

double rel_diff(double a, double b, double floor) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), floor});
}

// Two tanh-matched reservoirs at the given frequencies.
CyclePoint otto_limit_point(const VerifyOptions& o, double xi) {
  return {ReservoirSpec::from_population(o.nu_cold, o.p_cold_plus),
          ReservoirSpec::from_population(o.nu_hot, 1.0 - o.p_cold_plus), xi};
}

struct Sample {
  ReservoirSpec cold, hot;
  RampProtocol proto;
};

std::vector<Sample> random_samples(const VerifyOptions& o) {
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> pc(0.05, 0.45), ph(0.55, 0.95), nu(1000.0, 10000.0),
      tau(50e-6, 500e-6);
  std::vector<Sample> out;
  while (out.size() < o.random_samples) {
    double a = nu(rng), b = nu(rng);
    if (a > b) std::swap(a, b);
    const double p_c = pc(rng), p_h = ph(rng), t = tau(rng);
    if (!(b - a > 1.0)) continue;
    out.push_back({ReservoirSpec::from_population(a, p_c), ReservoirSpec::from_population(b, p_h),
                   RampProtocol{a, b, t, o.steps}});
  }
  return out;
}

struct OracleComparison {
  double max_rel_work = 0, max_rel_qhot = 0, max_rel_qcold = 0, max_rel_wad = 0;
  double max_eta_diff = 0;
  double max_first_law_closed = 0, max_first_law_oracle = 0;
  std::size_t engines = 0, points = 0;
};

double first_law_residual(double w, double qh, double qc) {
  return std::abs(w + qh + qc) / (std::abs(qh) + std::abs(qc));
}

OracleComparison compare_with_oracle(const std::vector<Sample>& samples) {
  OracleComparison c;
  for (const auto& s : samples) {
    const StrokeTrace tr = stroke_oracle(s.cold, s.hot, s.proto);
    const CyclePoint p(s.cold, s.hot, tr.result.xi);
    const CycleResult cf = evaluate_cycle(p);
    const double scale = std::abs(cf.q_hot) + std::abs(cf.q_cold);
    c.max_rel_work = std::max(c.max_rel_work, rel_diff(cf.work, tr.result.work, 1e-6 * scale));
    c.max_rel_qhot = std::max(c.max_rel_qhot, rel_diff(cf.q_hot, tr.result.q_hot, 1e-6 * scale));
    c.max_rel_qcold = std::max(c.max_rel_qcold, rel_diff(cf.q_cold, tr.result.q_cold, 1e-6 * scale));
    c.max_rel_wad = std::max(
        c.max_rel_wad, rel_diff(cf.work_adiabatic, tr.result.work_adiabatic, 1e-6 * scale));
    if (tr.result.efficiency && cf.regime != Regime::NotEngine) {
      c.max_eta_diff =
          std::max(c.max_eta_diff, std::abs(*tr.result.efficiency - efficiency_closed_form(p)));
      ++c.engines;
    }
    c.max_first_law_closed =
        std::max(c.max_first_law_closed, first_law_residual(cf.work, cf.q_hot, cf.q_cold));
    c.max_first_law_oracle = std::max(
        c.max_first_law_oracle,
        first_law_residual(tr.result.work, tr.result.q_hot, tr.result.q_cold));
    ++c.points;
  }
  return c;
}

CheckResult guarded(int id, std::string name, const std::function<CheckResult()>& body) {
  try {
    CheckResult r = body();
    r.id = id;
    r.name = std::move(name);
    return r;
  } catch (const std::exception& e) {
    return {id, std::move(name), false, std::string("error: ") + e.what()};
  }
}

CheckResult check_stroke_state_entries(const VerifyOptions& o) {
  const auto start = clock_type::now();
  const RampProtocol proto{o.nu_cold, o.nu_hot, o.tau, o.steps};
  const FidelityReport rep = stroke_state_check(proto, o.table_p_cold_plus, o.p_hot_plus);
  const double elapsed = seconds_since(start);
  bool ok = elapsed < 1.0;
  std::string detail;
  for (const auto& p : rep.pairs) {
    ok = ok && p.entries_ok;
    detail += p.label + " dev=" + fmt(p.max_entry_deviation, 3) + (p.entries_ok ? " " : "(!) ");
  }
  detail += "tol=0.005 runtime=" + fmt(elapsed, 3) + "s";
  return {0, {}, ok, detail};
}

CheckResult check_stroke_state_fidelity(const VerifyOptions& o) {
  const RampProtocol proto{o.nu_cold, o.nu_hot, o.tau, o.steps};
  const FidelityReport rep = stroke_state_check(proto, o.table_p_cold_plus, o.p_hot_plus);
  bool ok = true;
  std::string detail;
  for (const auto& p : rep.pairs) {
    ok = ok && p.fidelity_ok;
    detail += p.label + " F=" + fmt(p.fidelity, 5) + " (reported " + fmt(p.reported_fidelity, 5) +
              (p.fidelity_ok ? ") " : ", outside +-0.002) ");
  }
  return {0, {}, ok, detail};
}

CheckResult check_oracle(const VerifyOptions& o) {
  const auto start = clock_type::now();
  const auto c = compare_with_oracle(random_samples(o));
  const double elapsed = seconds_since(start);
  const double worst = std::max({c.max_rel_work, c.max_rel_qhot, c.max_rel_qcold});
  const bool ok = c.points >= 200 && worst <= 1e-8 && c.max_eta_diff <= 1e-10 && elapsed < 30.0;
  return {0,
          {},
          ok,
          std::to_string(c.points) + " points (" + std::to_string(c.engines) +
              " engines): max rel W=" + fmt(c.max_rel_work, 2) + " Qh=" + fmt(c.max_rel_qhot, 2) +
              " Qc=" + fmt(c.max_rel_qcold, 2) + " Wad=" + fmt(c.max_rel_wad, 2) +
              " (tol 1e-8); max |eta - closed form|=" + fmt(c.max_eta_diff, 2) +
              " (tol 1e-10); runtime=" + fmt(elapsed, 3) + "s"};
}

CheckResult check_limits(const VerifyOptions& o) {
  RampProtocol quench{o.nu_cold, o.nu_hot, 1e-12, o.steps};
  const double xi_quench = xi(quench);
  RampProtocol slow{o.nu_cold, o.nu_hot, 1.0, 0};
  slow.steps = required_steps(slow, o.steps);
  const double xi_slow = xi(slow);
  const auto grid = linspace(100e-6, 400e-6, 13);
  const auto table = sweep_xi_vs_tau(RampProtocol{o.nu_cold, o.nu_hot, o.tau, o.steps}, grid);
  double xi_max = 0.0;
  for (std::size_t i = 0; i < table.rows().size(); ++i)
    xi_max = std::max(xi_max, table.number(i, "xi"));
  const double xi_100 = table.number(0, "xi");
  const double xi_400 = table.number(table.rows().size() - 1, "xi");
  const bool ok = std::abs(xi_quench - 0.5) <= 1e-6 && xi_slow < 1e-3 && xi_max <= 0.5 + 1e-9 &&
                  xi_100 > xi_400;
  return {0,
          {},
          ok,
          "xi(1e-12 s)=" + fmt(xi_quench, 12) + " xi(1 s)=" + fmt(xi_slow, 3) + " [" +
              std::to_string(slow.steps) + " steps] max xi(100..400us)=" + fmt(xi_max, 6) +
              " xi(100us)=" + fmt(xi_100, 6) + " xi(400us)=" + fmt(xi_400, 6)};
}

CheckResult check_otto_limit(const VerifyOptions& o) {
  double worst = 0.0;
  for (double x : {0.0, 0.1, 0.25, 0.49}) {
    const CyclePoint p = otto_limit_point(o, x);
    worst = std::max(worst, std::abs(efficiency(p) - otto_efficiency(o.nu_cold, o.nu_hot)));
  }
  return {0, {}, worst <= 1e-12, "max |eta - eta_Otto|=" + fmt(worst, 3) + " (tol 1e-12)"};
}

CheckResult check_crossing(const VerifyOptions& o) {
  const auto crossing = find_crossing(o.p_cold_plus, o.nu_cold, o.nu_hot);
  if (!crossing) return {0, {}, false, "no crossing found"};
  const double pstar = *crossing;
  bool ok = std::abs(pstar - 0.739) <= 0.002;
  const double lo = 0.51, hi = 0.99;
  const std::size_t n = 97;
  const double cell = (hi - lo) / static_cast<double>(n - 1);
  const std::vector<double> taus{100e-6, 200e-6, 300e-6, 400e-6};
  const auto table =
      sweep_efficiency_vs_phot(o.p_cold_plus, o.nu_cold, o.nu_hot, taus, linspace(lo, hi, n), o.steps);
  std::string detail = "p* = " + fmt(pstar, 10) + " (expect 0.739 +- 0.002);";
  for (std::size_t k = 0; k < taus.size(); ++k) {
    const std::string col = "eta_tau_" + std::to_string(k);
    // consecutive defined cells where eta - eta_Otto changes sign
    std::optional<std::pair<double, double>> bracket;
    std::optional<std::pair<double, double>> prev;
    for (std::size_t i = 0; i < table.rows().size(); ++i) {
      if (table.is_null(i, col)) continue;
      const double p = table.number(i, "p_hot_plus");
      const double d = table.number(i, col) - table.number(i, "eta_otto");
      if (prev && ((prev->second < 0.0) != (d < 0.0))) {
        bracket = std::make_pair(prev->first, p);
        break;
      }
      prev = std::make_pair(p, d);
    }
    const bool near =
        bracket && pstar >= bracket->first - cell && pstar <= bracket->second + cell;
    ok = ok && near;
    detail += " tau" + fmt(taus[k] * 1e6, 3) + "us:" +
              (bracket ? "[" + fmt(bracket->first, 4) + "," + fmt(bracket->second, 4) + "]"
                       : std::string("none")) +
              (near ? "" : "(!)");
  }
  return {0, {}, ok, detail};
}

std::vector<std::optional<double>> etas_at(const VerifyOptions& o, double p_hot,
                                           const std::vector<double>& taus) {
  std::vector<std::optional<double>> out;
  for (double tau : taus) {
    const double x = xi(RampProtocol{o.nu_cold, o.nu_hot, tau, o.steps});
    out.push_back(evaluate_cycle(CyclePoint(ReservoirSpec::from_population(o.nu_cold, o.p_cold_plus),
                                            ReservoirSpec::from_population(o.nu_hot, p_hot), x))
                      .efficiency);
  }
  return out;
}

std::string describe(const std::vector<std::optional<double>>& etas) {
  std::string s;
  for (const auto& e : etas) s += (e ? fmt(*e, 5) : std::string("NotEngine")) + " ";
  return s;
}

bool strictly_decreasing(const std::vector<std::optional<double>>& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i] || (i > 0 && !(*v[i - 1] > *v[i]))) return false;
  return true;
}

bool strictly_increasing(const std::vector<std::optional<double>>& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i] || (i > 0 && !(*v[i - 1] < *v[i]))) return false;
  return true;
}

CheckResult check_faster_is_better(const VerifyOptions& o) {
  const std::vector<double> taus{100e-6, 200e-6, 400e-6};
  const auto low = etas_at(o, 0.55, taus);
  const auto high = etas_at(o, 0.95, taus);
  const bool low_ok = strictly_decreasing(low);
  const bool high_ok = strictly_increasing(high);
  return {0,
          {},
          low_ok && high_ok,
          "p_hot=0.55 eta(100,200,400us)=" + describe(low) + (low_ok ? "" : "(expected decreasing) ") +
              "p_hot=0.95 eta=" + describe(high) + (high_ok ? "" : "(expected increasing)")};
}

// Same claim stated on whichever side of the crossing eta exceeds eta_Otto.
CheckResult note_faster_is_better(const VerifyOptions& o) {
  const std::vector<double> taus{100e-6, 200e-6, 400e-6};
  const auto high = etas_at(o, 0.95, taus);
  const auto low = etas_at(o, 0.55, taus);
  const bool ok = strictly_decreasing(high) && !strictly_decreasing(low);
  CheckResult r{7,
                "note: ordering on the eta > eta_Otto side",
                ok,
                "p_hot=0.95 (tanh_hot > tanh_cold, super-Otto) eta(100,200,400us)=" + describe(high) +
                    "; p_hot=0.55 (sub-Otto) eta=" + describe(low),
                true};
  return r;
}

CheckResult check_blank_region(const VerifyOptions& o) {
  const auto p_grid = linspace(0.51, 0.99, 49);
  const auto xi_grid = linspace(0.0, 0.5, 51);
  const auto table = region_map(o.p_cold_plus, o.nu_cold, o.nu_hot, p_grid, xi_grid);
  const double tc = 1.0 - 2.0 * o.p_cold_plus;
  std::size_t sub_blank = 0, super_blank = 0, sub_cells = 0, super_cells = 0;
  for (std::size_t i = 0; i < table.rows().size(); ++i) {
    const double th = 2.0 * table.number(i, "p_hot_plus") - 1.0;
    const bool blank = std::get<std::string>(table.at(i, "regime")) == "NotEngine";
    if (th >= tc) {
      ++super_cells;
      super_blank += blank;
    } else {
      ++sub_cells;
      sub_blank += blank;
    }
  }
  return {0,
          {},
          sub_blank >= 1 && super_blank == 0,
          "sub-Otto band: " + std::to_string(sub_blank) + "/" + std::to_string(sub_cells) +
              " NotEngine; super-Otto band: " + std::to_string(super_blank) + "/" +
              std::to_string(super_cells) + " NotEngine"};
}

CheckResult check_first_law(const VerifyOptions& o) {
  const auto c = compare_with_oracle(random_samples(o));
  double worst_grid = 0.0;
  std::size_t grid_points = 0;
  for (double p_hot : linspace(0.51, 0.99, 49))
    for (double x : linspace(0.0, 0.5, 51)) {
      const CyclePoint p(ReservoirSpec::from_population(o.nu_cold, o.p_cold_plus),
                         ReservoirSpec::from_population(o.nu_hot, p_hot), x);
      worst_grid = std::max(worst_grid, first_law_residual(net_work(p), heat_hot(p), heat_cold(p)));
      ++grid_points;
    }
  const double worst = std::max({c.max_first_law_closed, c.max_first_law_oracle, worst_grid});
  return {0,
          {},
          worst <= 1e-10,
          "max |W+Qh+Qc|/(|Qh|+|Qc|): closed=" + fmt(c.max_first_law_closed, 2) +
              " oracle=" + fmt(c.max_first_law_oracle, 2) + " grid(" + std::to_string(grid_points) +
              ")=" + fmt(worst_grid, 2) + " (tol 1e-10)"};
}

CheckResult check_hygiene(const VerifyOptions& o) {
  RampProtocol proto{o.nu_cold, o.nu_hot, o.tau, o.steps};
  const Propagator U = propagate(proto, RampDirection::expansion);
  const Propagator V = propagate(proto, RampDirection::compression);
  RampProtocol doubled = proto;
  doubled.steps *= 2;
  const double drift = std::max(U.unitarity_defect(), V.unitarity_defect());
  const double dxi = std::abs(xi(U) - xi(doubled));
  const double v_vs_udag = max_abs_diff(V.U, U.U.adjoint());
  const double sym = xi_symmetry_check(U, V).max_pairwise_difference();
  const bool ok = drift <= 1e-9 && dxi < 1e-8 && v_vs_udag <= 1e-8 && sym <= 1e-8;
  return {0,
          {},
          ok,
          "unitarity drift=" + fmt(drift, 2) + " |dxi| on step doubling=" + fmt(dxi, 2) +
              " max|V - U^dag|=" + fmt(v_vs_udag, 2) + " symmetry spread=" + fmt(sym, 2)};
}

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& o) {
  std::vector<CheckResult> out;
  out.push_back(guarded(1, "Stroke-state regeneration", [&] { return check_stroke_state_entries(o); }));
  out.push_back(guarded(2, "Fidelity regression", [&] { return check_stroke_state_fidelity(o); }));
  out.push_back(guarded(3, "Oracle equivalence", [&] { return check_oracle(o); }));
  out.push_back(guarded(4, "Sudden-quench and adiabatic limits", [&] { return check_limits(o); }));
  out.push_back(guarded(5, "Otto-limit invariance", [&] { return check_otto_limit(o); }));
  out.push_back(guarded(6, "Crossing point", [&] { return check_crossing(o); }));
  out.push_back(guarded(7, "Faster-is-better ordering", [&] { return check_faster_is_better(o); }));
  try {
    out.push_back(note_faster_is_better(o));
  } catch (const std::exception&) {
  }
  out.push_back(guarded(8, "Blank-region existence", [&] { return check_blank_region(o); }));
  out.push_back(guarded(9, "First law", [&] { return check_first_law(o); }));
  out.push_back(guarded(10, "Numerical hygiene", [&] { return check_hygiene(o); }));
  return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CheckResult& r) { return r.informational || r.passed; });
}

std::string format_report(const std::vector<CheckResult>& results) {
  std::string s;
  for (const auto& r : results) {
    s += r.informational ? "[INFO] " : (r.passed ? "[PASS] " : "[FAIL] ");
    s += (r.id < 10 ? " " : "") + std::to_string(r.id) + "  " + r.name + ": " + r.detail + "\n";
  }
  return s;
}

}  // namespace qotto
