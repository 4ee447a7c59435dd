#include <cmath>
#include <set>

#include "doctest.h"
#include "qotto/analysis.hpp"
#include "qotto/errors.hpp"
#include "test_util.hpp"

using namespace qotto;
using qotto::test::uniform;

namespace {

const RampProtocol base{2000.0, 3600.0, 200e-6, 4096};

const std::vector<double> tau_list{100e-6, 200e-6, 300e-6, 400e-6};

const SweepTable& phot_sweep() {
  static const SweepTable t = [] {
    auto grid = linspace(0.51, 0.99, 97);
    grid.push_back(*find_crossing(0.261, 2000.0, 3600.0));
    return sweep_efficiency_vs_phot(0.261, 2000.0, 3600.0, tau_list, grid);
  }();
  return t;
}

DensityMatrix dm(const ComplexMat2& m) { return DensityMatrix::from_measured(m); }

}  // namespace

TEST_CASE("linspace") {
  const auto g = linspace(0.0, 1.0, 5);
  CHECK(g == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  CHECK(linspace(3.0, 7.0, 1) == std::vector<double>{3.0});
  CHECK(linspace(0.51, 0.99, 49).back() == 0.99);
  CHECK(linspace(0.0, 1.0, 0).empty());
}

TEST_CASE("xi versus tau") {
  const auto grid = linspace(100e-6, 400e-6, 13);
  const auto t = sweep_xi_vs_tau(base, grid);
  CHECK(t.columns() == std::vector<std::string>{"tau_s", "xi"});
  REQUIRE(t.rows().size() == 13);
  for (std::size_t i = 0; i < 13; ++i) {
    CHECK(t.number(i, "tau_s") == grid[i]);
    CHECK(t.number(i, "xi") >= 0.0);
    CHECK(t.number(i, "xi") <= 0.5);
  }
  CHECK(t.number(0, "xi") > t.number(12, "xi"));

  const std::vector<double> sudden{1e-12};
  CHECK(sweep_xi_vs_tau(base, sudden).number(0, "xi") == doctest::Approx(0.5).epsilon(1e-6));
  const std::vector<double> bad{-1e-6};
  CHECK_THROWS_AS(sweep_xi_vs_tau(base, bad), domain_error);
}

TEST_CASE("region map") {
  const auto ph = linspace(0.51, 0.99, 49);
  const auto xs = linspace(0.0, 0.5, 51);
  const auto t = region_map(0.261, 2000.0, 3600.0, ph, xs);
  CHECK(t.columns() == std::vector<std::string>{"p_hot_plus", "xi", "regime", "eta"});
  REQUIRE(t.rows().size() == ph.size() * xs.size());

  bool saw_not_engine_below = false;
  for (std::size_t i = 0; i < t.rows().size(); ++i) {
    const double p = t.number(i, "p_hot_plus"), x = t.number(i, "xi");
    CHECK(p == ph[i / xs.size()]);
    CHECK(x == xs[i % xs.size()]);
    const CyclePoint cp(ReservoirSpec::from_population(2000.0, 0.261),
                        ReservoirSpec::from_population(3600.0, p), x);
    const auto ec = engine_condition(cp);
    const auto label = std::get<std::string>(t.at(i, "regime"));
    CHECK(label == to_string(regime(cp)));
    CHECK((label == "NotEngine") == (x >= ec.xi_bound));
    CHECK(t.is_null(i, "eta") == (label == "NotEngine"));
    if (p > 0.739 + 1e-9) CHECK(label == "EngineSuperOtto");
    if (p < 0.739 - 1e-9 && label != "NotEngine") CHECK(label == "EngineSubOtto");
    if (p < 0.739 && label == "NotEngine") saw_not_engine_below = true;
  }
  CHECK(saw_not_engine_below);
}

TEST_CASE("efficiency versus hot population") {
  const auto& t = phot_sweep();
  const std::vector<std::string> expected{
      "p_hot_plus", "xi_tau_0",  "xi_tau_1",  "xi_tau_2",    "xi_tau_3",    "eta_tau_0",    "eta_tau_1",
      "eta_tau_2",  "eta_tau_3", "eta_otto",  "regime_tau_0", "regime_tau_1", "regime_tau_2", "regime_tau_3"};
  CHECK(t.columns() == expected);
  REQUIRE(t.rows().size() == 98);

  const double eta_otto = 1.0 - 2000.0 / 3600.0;
  for (std::size_t i = 0; i < t.rows().size(); ++i) CHECK(t.number(i, "eta_otto") == doctest::Approx(eta_otto));

  SUBCASE("all curves meet at the crossing") {
    const std::size_t last = t.rows().size() - 1;
    for (int k = 0; k < 4; ++k)
      CHECK(std::abs(t.number(last, "eta_tau_" + std::to_string(k)) - eta_otto) <= 1e-6);
  }

  SUBCASE("ordering right of the crossing") {
    for (std::size_t i = 0; i + 1 < t.rows().size(); ++i) {
      if (t.number(i, "p_hot_plus") < 0.75) continue;
      CHECK(t.number(i, "eta_tau_0") > t.number(i, "eta_tau_1"));
      CHECK(t.number(i, "eta_tau_1") > t.number(i, "eta_tau_3"));
      for (int k = 0; k < 4; ++k) CHECK(t.number(i, "eta_tau_" + std::to_string(k)) > eta_otto);
    }
  }

  SUBCASE("ordering left of the crossing where defined") {
    for (std::size_t i = 0; i + 1 < t.rows().size(); ++i) {
      if (t.number(i, "p_hot_plus") > 0.73) continue;
      if (t.is_null(i, "eta_tau_1")) continue;
      CHECK(t.number(i, "eta_tau_1") < t.number(i, "eta_tau_3"));
    }
  }

  SUBCASE("sign change brackets find_crossing") {
    const double star = *find_crossing(0.261, 2000.0, 3600.0);
    for (std::size_t i = 0; i + 1 < 97; ++i) {
      if (t.is_null(i, "eta_tau_0") || t.is_null(i + 1, "eta_tau_0")) continue;
      const double a = t.number(i, "eta_tau_0") - eta_otto, b = t.number(i + 1, "eta_tau_0") - eta_otto;
      if (a < 0.0 && b > 0.0) {
        CHECK(star >= t.number(i, "p_hot_plus"));
        CHECK(star <= t.number(i + 1, "p_hot_plus"));
      }
    }
  }
}

TEST_CASE("efficiency versus frequency ratio") {
  const auto grid = linspace(0.51, 0.99, 97);
  const std::vector<double> ratios{0.4, 2000.0 / 3600.0, 0.7};
  const auto t = sweep_efficiency_vs_ratio(0.261, 2000.0, ratios, 200e-6, grid);
  REQUIRE(t.rows().size() == 97);
  CHECK(t.column_index("eta_otto_ratio_2") < t.columns().size());

  const auto& ref = phot_sweep();
  for (std::size_t i = 0; i < 97; ++i) {
    CHECK(t.number(i, "xi_ratio_1") == doctest::Approx(ref.number(i, "xi_tau_1")).epsilon(1e-12));
    CHECK(t.is_null(i, "eta_ratio_1") == ref.is_null(i, "eta_tau_1"));
    if (!t.is_null(i, "eta_ratio_1"))
      CHECK(t.number(i, "eta_ratio_1") == doctest::Approx(ref.number(i, "eta_tau_1")).epsilon(1e-12));
    CHECK(t.number(i, "eta_otto_ratio_0") == doctest::Approx(0.6));
    if (!t.is_null(i, "eta_ratio_0") && !t.is_null(i, "eta_ratio_2"))
      CHECK(t.number(i, "eta_ratio_0") > t.number(i, "eta_ratio_2"));
  }

  const std::vector<double> bad{1.2};
  CHECK_THROWS_AS(sweep_efficiency_vs_ratio(0.261, 2000.0, bad, 200e-6, grid), domain_error);
}

TEST_CASE("fidelity") {
  for (int k = 0; k < 200; ++k) {
    const auto a = gibbs_state(test::random_hermitian(), uniform(-0.01, 0.01));
    const auto b = gibbs_state(test::random_hermitian(), uniform(-0.01, 0.01));
    CHECK(fidelity(a, a) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(fidelity(a, b) == fidelity(b, a));
    CHECK(fidelity(a, b) >= 0.0);
    CHECK(fidelity(a, b) <= 1.0 + 1e-14);
  }
  // orthogonal pure states
  CHECK(fidelity(dm({1.0, 0.0, 0.0, 0.0}), dm({0.0, 0.0, 0.0, 1.0})) == 0.0);
}

TEST_CASE("tabulated stroke states") {
  const auto& fx = stroke_state_fixtures();
  REQUIRE(fx.size() == 4);
  // rho4's reported value is tracked by the acceptance suite.
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(std::abs(fidelity(dm(fx[i].measured), dm(fx[i].theory)) - fx[i].reported_fidelity) <= 0.002);

  const auto report = stroke_state_check(base, 0.26, 0.813);
  REQUIRE(report.pairs.size() == 4);
  for (const auto& pair : report.pairs) {
    CHECK(pair.max_entry_deviation <= 0.005);
    CHECK(pair.entries_ok);
  }
  CHECK(report.pairs[0].label == "rho1");
  CHECK(report.pairs[3].label == "rho4");
}

TEST_CASE("find_crossing") {
  CHECK(std::abs(*find_crossing(0.261, 2000.0, 3600.0) - 0.739) <= 1e-9);
  for (int k = 0; k < 200; ++k) {
    const double pc = uniform(0.01, 0.49);
    const double nc = uniform(100.0, 5000.0);
    const auto a = find_crossing(pc, nc, nc * uniform(1.1, 3.0));
    const auto b = find_crossing(pc, 7.0 * nc, 7.0 * nc * 2.0);
    REQUIRE(a.has_value());
    REQUIRE(b.has_value());
    CHECK(std::abs(*a - (1.0 - pc)) <= 1e-9);
    CHECK(std::abs(*a - *b) <= 1e-9);
  }
  const auto near_half = find_crossing(0.5 - 1e-9, 2000.0, 3600.0);
  REQUIRE(near_half.has_value());
  CHECK(std::abs(*near_half - 0.5) <= 1e-8);
  CHECK_FALSE(find_crossing(0.5, 2000.0, 3600.0).has_value());
}

TEST_CASE("sweep table") {
  SweepTable t({"a", "b", "c"});
  t.add_row({1.0, std::string("x"), std::monostate{}});
  t.add_row({0.1, std::string("EngineSubOtto"), -2.5e-300});
  CHECK_THROWS_AS(t.add_row({1.0}), std::invalid_argument);
  CHECK(t.to_csv() == "a,b,c\n1,x,\n0.1,EngineSubOtto,-2.5e-300\n");
  CHECK(SweepTable::from_csv(t.to_csv()) == t);
  CHECK(t.is_null(0, "c"));
  CHECK_THROWS(t.column_index("zz"));

  SUBCASE("numbers round-trip exactly") {
    SweepTable r({"v", "w"});
    for (int k = 0; k < 500; ++k) {
      const double v = uniform(-1.0, 1.0) * std::pow(10.0, uniform(-20.0, 20.0));
      r.add_row({v, k % 7 == 0 ? Cell{} : Cell{1.0 / (k + 1)}});
    }
    const auto back = SweepTable::from_csv(r.to_csv());
    CHECK(back == r);
  }

  SUBCASE("json") {
    t.add_metadata("nu_cold", "2000");
    const auto j = t.to_json();
    CHECK(j.find("\"metadata\"") != std::string::npos);
    CHECK(j.find("null") != std::string::npos);
  }

  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(2000.0) == "2000");
}

TEST_CASE("sweeps are deterministic") {
  const auto g = linspace(0.51, 0.99, 7);
  const auto a = sweep_efficiency_vs_phot(0.261, 2000.0, 3600.0, tau_list, g);
  const auto b = sweep_efficiency_vs_phot(0.261, 2000.0, 3600.0, tau_list, g);
  CHECK(a.to_csv() == b.to_csv());
  CHECK(a.to_json() == b.to_json());
}
