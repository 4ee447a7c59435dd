#include <cmath>
#include <limits>

#include "doctest.h"
#include "qotto/errors.hpp"
#include "qotto/otto.hpp"
#include "test_util.hpp"

using namespace qotto;
using qotto::test::uniform;

namespace {

constexpr double nu_c = 2000.0;
constexpr double nu_h = 3600.0;

CyclePoint point(double p_cold, double p_hot, double x, double nc = nu_c, double nh = nu_h) {
  return {ReservoirSpec::from_population(nc, p_cold), ReservoirSpec::from_population(nh, p_hot), x};
}

CyclePoint random_point() {
  const double nc = uniform(500.0, 5000.0);
  return point(uniform(0.02, 0.48), uniform(0.52, 0.98), uniform(0.0, 0.5), nc,
               nc * uniform(1.05, 3.0));
}

}  // namespace

TEST_CASE("cycle point invariants") {
  CHECK_NOTHROW(point(0.261, 0.813, 0.0));
  CHECK_NOTHROW(point(0.261, 0.813, 0.5));
  CHECK_THROWS_AS(point(0.261, 0.813, 0.6), domain_error);
  CHECK_THROWS_AS(point(0.261, 0.813, -0.01), domain_error);
  CHECK_THROWS_AS(point(0.7, 0.813, 0.1), domain_error);   // cold reservoir inverted
  CHECK_THROWS_AS(point(0.261, 0.3, 0.1), domain_error);   // hot reservoir not inverted
  CHECK_THROWS_AS(point(0.261, 0.5, 0.1), domain_error);
  CHECK_THROWS_AS(point(0.261, 0.813, 0.1, 3600.0, 2000.0), domain_error);
  CHECK_THROWS_AS(point(0.261, 0.813, 0.1, 2000.0, 2000.0), domain_error);
  CHECK_THROWS_AS(point(0.261, 0.813, NAN), domain_error);
}

TEST_CASE("closed forms at the quasi-static limit") {
  const auto p = point(0.261, 0.813, 0.0);
  const double tc = 1.0 - 2.0 * 0.261, th = 2.0 * 0.813 - 1.0;
  CHECK(net_work(p) == doctest::Approx(-0.5 * (nu_h - nu_c) * (tc + th)));
  CHECK(net_work(p) < 0.0);
  CHECK(heat_hot(p) == doctest::Approx(0.5 * nu_h * (tc + th)));
  CHECK(heat_cold(p) == doctest::Approx(-0.5 * nu_c * (tc + th)));
  CHECK(efficiency(p) == doctest::Approx(1.0 - nu_c / nu_h).epsilon(1e-13));
  CHECK(otto_efficiency(nu_c, nu_h) == doctest::Approx(0.4444444444444444));
  CHECK(inner_friction(p) == 0.0);
  CHECK(adiabatic_work(p) == net_work(p));
}

TEST_CASE("work is independent of xi when nu_h tanh_c = nu_c tanh_h") {
  // tanh_c = 0.3, tanh_h = 1.8 * 0.3 = 0.54
  const double w0 = net_work(point(0.35, 0.77, 0.0));
  for (double x : {0.1, 0.25, 0.4, 0.5}) CHECK(net_work(point(0.35, 0.77, x)) == doctest::Approx(w0).epsilon(1e-12));
}

TEST_CASE("signed and magnitude forms agree") {
  for (int k = 0; k < 1000; ++k) {
    const auto p = random_point();
    const double scale = p.hot().nu();
    CHECK(std::abs(net_work(p) - net_work_signed(p)) <= 1e-12 * scale);
    CHECK(std::abs(heat_hot(p) - heat_hot_signed(p)) <= 1e-12 * scale);
    CHECK(std::abs(heat_cold(p) - heat_cold_signed(p)) <= 1e-12 * scale);
  }
}

TEST_CASE("first law and heat signs") {
  for (int k = 0; k < 1000; ++k) {
    auto p = random_point();
    if (p.xi() >= 0.5) p = p.with_xi(0.49);
    const double scale = p.hot().nu();
    CHECK(std::abs(net_work(p) + heat_hot(p) + heat_cold(p)) <= 1e-12 * scale);
    CHECK(heat_hot(p) > 0.0);
    CHECK(heat_cold(p) < 0.0);
    CHECK(std::abs(inner_friction(p) - (net_work(p) - adiabatic_work(p))) <= 1e-12 * scale);
    CHECK(std::abs(inner_friction(p) -
                   p.xi() * (p.hot().nu() * p.tanh_cold() - p.cold().nu() * p.tanh_hot())) <=
          1e-12 * scale);
  }
}

TEST_CASE("engine condition") {
  for (int k = 0; k < 2000; ++k) {
    const auto p = random_point();
    const auto ec = engine_condition(p);
    CHECK(ec.is_engine == (net_work(p) < 0.0));
    if (p.xi() < ec.xi_bound * (1 - 1e-9)) CHECK(ec.is_engine);
    if (p.xi() > ec.xi_bound * (1 + 1e-9)) CHECK_FALSE(ec.is_engine);
    if (p.tanh_hot() >= p.tanh_cold()) CHECK(ec.xi_bound >= 0.5);
  }

  SUBCASE("xi-independent work means no bound") {
    CHECK(engine_condition(point(0.35, 0.77, 0.5)).xi_bound == std::numeric_limits<double>::infinity());
  }

  SUBCASE("weak inversion bounds xi") {
    const auto ec = engine_condition(point(0.261, 0.55, 0.1));
    const double tc = 0.478, th = 0.1;
    CHECK(ec.xi_bound == doctest::Approx(0.5 * (nu_h - nu_c) * (tc + th) / (nu_h * tc - nu_c * th)));
    CHECK(ec.xi_bound < 0.5);
    CHECK(ec.is_engine);
    CHECK_FALSE(engine_condition(point(0.261, 0.55, 0.4)).is_engine);
  }
}

TEST_CASE("efficiency") {
  SUBCASE("closed form equals -W/Q_hot") {
    for (int k = 0; k < 2000; ++k) {
      const auto p = random_point();
      if (!engine_condition(p).is_engine) {
        CHECK_THROWS_AS(efficiency(p), regime_error);
        CHECK_THROWS_AS(efficiency_closed_form(p), regime_error);
        continue;
      }
      CHECK(std::abs(efficiency(p) - efficiency_closed_form(p)) <= 1e-12);
      CHECK(efficiency(p) > 0.0);
      CHECK(efficiency(p) < 1.0);
    }
  }

  SUBCASE("equal tanh terms keep the Otto value for every xi") {
    // p_h = 1 - p_c gives tanh_h = tanh_c, so F = G = 1/2
    for (double x : {0.0, 0.1, 0.3, 0.45})
      CHECK(efficiency(point(0.261, 0.739, x)) == doctest::Approx(otto_efficiency(nu_c, nu_h)).epsilon(1e-12));
  }

  SUBCASE("colder-than-inverted side falls below the Otto value") {
    const auto p = point(0.261, 0.6, 0.3);
    REQUIRE(engine_condition(p).is_engine);
    CHECK(efficiency(p) < otto_efficiency(nu_c, nu_h));
  }

  SUBCASE("monotone in xi on each side of the boundary") {
    for (double ph : {0.6, 0.7, 0.8, 0.9, 0.95}) {
      const bool super = 2.0 * ph - 1.0 > 1.0 - 2.0 * 0.261;
      double prev = efficiency(point(0.261, ph, 0.0));
      for (double x = 0.02; x < 0.5; x += 0.02) {
        const auto p = point(0.261, ph, x);
        if (!engine_condition(p).is_engine) break;
        const double eta = efficiency(p);
        if (super)
          CHECK(eta > prev);
        else
          CHECK(eta < prev);
        prev = eta;
      }
    }
  }

  CHECK_THROWS_AS(efficiency(point(0.261, 0.55, 0.4)), regime_error);
}

TEST_CASE("regime labels") {
  // Boundary tanh_h = tanh_c sits at p_hot = 1 - p_cold.
  CHECK(regime(point(0.261, 0.739, 0.2)) == Regime::EngineSuperOtto);
  CHECK(regime(point(0.261, 0.95, 0.2)) == Regime::EngineSuperOtto);
  CHECK(regime(point(0.261, 0.99, 0.5)) == Regime::EngineSuperOtto);
  CHECK(regime(point(0.261, 0.55, 0.1)) == Regime::EngineSubOtto);
  CHECK(regime(point(0.261, 0.55, 0.4)) == Regime::NotEngine);
  CHECK(regime(point(0.261, 0.7, 0.0)) == Regime::EngineSubOtto);

  for (int k = 0; k < 2000; ++k) {
    const auto p = random_point();
    const auto r = regime(p);
    CHECK((r != Regime::NotEngine) == engine_condition(p).is_engine);
    if (r == Regime::EngineSuperOtto && p.xi() > 0.01)
      CHECK(efficiency(p) >= otto_efficiency(p.cold().nu(), p.hot().nu()) - 1e-12);
    if (r == Regime::EngineSubOtto && p.xi() > 0.01)
      CHECK(efficiency(p) < otto_efficiency(p.cold().nu(), p.hot().nu()));
  }

  for (auto r : {Regime::NotEngine, Regime::EngineSubOtto, Regime::EngineSuperOtto})
    CHECK(regime_from_string(to_string(r)) == r);
  CHECK(to_string(Regime::EngineSuperOtto) == "EngineSuperOtto");
  CHECK_FALSE(regime_from_string("Engine").has_value());
}

TEST_CASE("inner friction can be negative") {
  const auto p = point(0.261, 0.95, 0.2);
  CHECK(inner_friction(p) < 0.0);
  CHECK(regime(p) == Regime::EngineSuperOtto);
  CHECK(inner_friction(point(0.261, 0.6, 0.2)) > 0.0);
}

TEST_CASE("faster ramps help a strongly inverted reservoir") {
  const double x100 = 0.3789, x200 = 0.1463, x400 = 0.0151;
  const double e100 = efficiency(point(0.261, 0.95, x100));
  const double e200 = efficiency(point(0.261, 0.95, x200));
  const double e400 = efficiency(point(0.261, 0.95, x400));
  CHECK(e100 > e200);
  CHECK(e200 > e400);
}

TEST_CASE("evaluate_cycle") {
  const auto p = point(0.261, 0.813, 0.14632);
  const auto r = evaluate_cycle(p);
  CHECK(r.xi == p.xi());
  CHECK(r.work == net_work(p));
  CHECK(r.q_hot == heat_hot(p));
  CHECK(r.q_cold == heat_cold(p));
  REQUIRE(r.efficiency.has_value());
  CHECK(*r.efficiency == doctest::Approx(efficiency(p)));
  CHECK(r.eta_otto == doctest::Approx(4.0 / 9.0));
  CHECK(r.regime == Regime::EngineSuperOtto);
  CHECK(r.work_adiabatic == adiabatic_work(p));
  CHECK(r.inner_friction == doctest::Approx(inner_friction(p)));

  const auto off = evaluate_cycle(point(0.261, 0.55, 0.45));
  CHECK_FALSE(off.efficiency.has_value());
  CHECK(off.regime == Regime::NotEngine);
  CHECK(off.work >= 0.0);
}

TEST_CASE("stroke-by-stroke oracle") {
  const RampProtocol proto{nu_c, nu_h, 200e-6, 4096};
  const auto cold = ReservoirSpec::from_population(nu_c, 0.261);
  const auto hot = ReservoirSpec::from_population(nu_h, 0.813);
  const auto trace = stroke_oracle(cold, hot, proto);
  const double x = xi(proto);
  const auto closed = evaluate_cycle(CyclePoint(cold, hot, x));

  CHECK(trace.result.xi == doctest::Approx(x).epsilon(1e-10));
  for (auto [a, b] : {std::pair{trace.result.work, closed.work},
                      std::pair{trace.result.q_hot, closed.q_hot},
                      std::pair{trace.result.q_cold, closed.q_cold},
                      std::pair{trace.result.work_adiabatic, closed.work_adiabatic}})
    CHECK(std::abs(a - b) <= 1e-8 * std::abs(b));
  REQUIRE(trace.result.efficiency.has_value());
  CHECK(*trace.result.efficiency == doctest::Approx(*closed.efficiency).epsilon(1e-8));
  CHECK(trace.result.regime == closed.regime);

  SUBCASE("mixing identity after the expansion") {
    const auto hb = eigenbasis(stroke_hamiltonian(Stroke::hot, nu_h));
    const double p_plus = matrix_element(hb.plus, trace.rho2.mat(), hb.plus).real();
    CHECK(p_plus == doctest::Approx(0.261 * (1 - x) + (1 - 0.261) * x).epsilon(1e-10));
  }

  SUBCASE("states stay physical") {
    for (const auto* rho : {&trace.rho1, &trace.rho2, &trace.rho3, &trace.rho4}) {
      CHECK(std::abs(rho->mat().trace() - 1.0) <= 1e-12);
      CHECK(hermiticity_defect(rho->mat()) <= 1e-12);
      CHECK(rho->purity() <= 1.0 + 1e-12);
    }
    CHECK(trace.rho2.purity() == doctest::Approx(trace.rho1.purity()).epsilon(1e-10));
  }

  SUBCASE("random reservoirs") {
    for (int k = 0; k < 10; ++k) {
      const auto c = ReservoirSpec::from_population(nu_c, uniform(0.05, 0.45));
      const auto h = ReservoirSpec::from_population(nu_h, uniform(0.55, 0.95));
      const auto t = stroke_oracle(c, h, proto);
      const auto ref = evaluate_cycle(CyclePoint(c, h, x));
      CHECK(std::abs(t.result.work - ref.work) <= 1e-8 * nu_h);
      CHECK(t.result.regime == ref.regime);
    }
  }

  CHECK_THROWS_AS(stroke_oracle(cold, hot, {nu_c, 4000.0, 200e-6, 4096}), domain_error);
  CHECK_THROWS_AS(stroke_oracle(cold, ReservoirSpec::from_population(nu_h, 1.0), proto),
                  infinite_temperature_error);
}
