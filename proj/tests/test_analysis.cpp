#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "quenchbat/analysis.hpp"
#include "quenchbat/model_zoo.hpp"

namespace {

using namespace quenchbat;

TEST_SUITE("analysis") {
  TEST_CASE("uniform axis is inclusive of both ends") {
    auto ax = SweepAxis::uniform(0.0, 1.0, 0.25);
    REQUIRE(ax.values.size() == 5);
    CHECK(ax.values.front() == 0.0);
    CHECK(ax.values.back() == doctest::Approx(1.0).epsilon(1e-12));
    ax = SweepAxis::uniform(-2.0, 2.0, 0.01);
    CHECK(ax.values.size() == 401);
    CHECK_THROWS_AS((void)SweepAxis::uniform(0.0, 1.0, 0.0), SpecError);
    CHECK_THROWS_AS((void)SweepAxis::uniform(1.0, 0.0, 0.1), SpecError);
  }

  TEST_CASE("sweep evaluation order does not change values") {
    ThermalSpec t;
    auto at = [](double v) {
      return QuenchSpec<NambuModel>{build_ising({1.0}), build_ising({v}), 2.0};
    };
    std::vector<double> vals{0.2, 0.5, 0.9, 1.4, 2.2};
    std::vector<double> rev(vals.rbegin(), vals.rend());
    auto grid = BzGrid::finite(32);
    auto fwd = sweep_stored_energy(at, vals, grid, t);
    auto bwd = sweep_stored_energy(at, rev, grid, t);
    REQUIRE(fwd.param == vals);
    for (std::size_t i = 0; i < vals.size(); ++i) {
      CHECK(fwd.energy[i] == bwd.energy[vals.size() - 1 - i]);
    }
  }

  TEST_CASE("kink detection flags the closed-form transitions and nothing else") {
    std::vector<double> h, e;
    for (int i = 0; i <= 600; ++i) {
      double x = -3.0 + 0.01 * i;
      h.push_back(x);
      e.push_back(ising_plateau_closed_form(x));
    }
    auto kinks = detect_kinks(e);
    REQUIRE(kinks.size() == 2);
    CHECK(kinks[0] == 200);  // h = -1
    CHECK(kinks[1] == 400);  // h = +1

    std::vector<double> g;
    e.clear();
    for (int i = 0; i <= 600; ++i) {
      double x = -3.0 + 0.01 * i;
      g.push_back(x);
      e.push_back(xy_plateau_closed_form(x));
    }
    kinks = detect_kinks(e);
    REQUIRE(kinks.size() == 1);
    CHECK(kinks[0] == 300);  // gamma1 = 0

    std::vector<double> smooth;
    for (int i = 0; i <= 400; ++i) smooth.push_back(std::sin(0.01 * i));
    CHECK(detect_kinks(smooth).empty());
  }

  TEST_CASE("kink detection rejects nonsense thresholds") {
    std::vector<double> v{0.0, 1.0, 0.0, 1.0, 0.0};
    CHECK_THROWS_AS((void)detect_kinks(v, 0.0), SpecError);
  }

  TEST_CASE("plateau regions are maximal flat runs") {
    std::vector<double> x, y;
    for (int i = 0; i < 30; ++i) {
      x.push_back(double(i));
      // Flat at 1.0 through i = 9, unit-slope ramp to 12.0 at i = 20,
      // flat afterwards. Flat segments: 0..8 and 20..28.
      y.push_back(i <= 9 ? 1.0 : (i <= 20 ? 1.0 + (i - 9) : 12.0));
    }
    auto regions = plateau_regions(x, y, 1e-3, 5);
    REQUIRE(regions.size() == 2);
    // end is one past the last flat sample.
    CHECK(regions[0].begin == 0);
    CHECK(regions[0].end == 10);
    CHECK(regions[1].begin == 20);
    CHECK(regions[1].end == 30);
  }

  TEST_CASE("line fit recovers exact affine data") {
    std::vector<double> x{1.0, 2.0, 3.0, 4.0, 5.0};
    std::vector<double> y;
    for (double v : x) y.push_back(3.0 * v - 2.0);
    auto fit = fit_line(x, y);
    CHECK(fit.slope == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(fit.max_residual <= 1e-12);
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));

    std::vector<double> flat(x.size(), 4.0);
    CHECK(fit_line(x, flat).r_squared == 1.0);
  }

  TEST_CASE("power scaling needs at least four sizes") {
    ThermalSpec t;
    QuenchSpec<NambuModel> spec{build_ising({0.5}), build_ising({2.0})};
    CHECK_THROWS_AS((void)power_scaling(spec, {50, 100, 200}, t), SpecError);
  }

  TEST_CASE("flat dispersions make total power exactly extensive") {
    // Every mode is identical, so per-mode power is size-independent and
    // total power is a perfect line through the origin.
    NambuModel a([](const Momentum&) { return NambuCoeffs{0.0, 1.0}; }, 1, "flat-a");
    NambuModel b([](const Momentum&) { return NambuCoeffs{1.0, 0.0}; }, 1, "flat-b");
    QuenchSpec<NambuModel> spec{a, b};
    ThermalSpec t;
    auto ps = power_scaling(spec, {8, 16, 32, 64, 128}, t);
    REQUIRE(ps.n.size() == 5);
    CHECK(ps.fit.r_squared >= 1.0 - 1e-10);
    CHECK(std::abs(ps.fit.intercept) <= 1e-9);
    // Slope equals the per-mode power of any single size.
    CHECK(ps.total_power[0] == doctest::Approx(8.0 * ps.fit.slope).epsilon(1e-9));
  }

  TEST_CASE("recurrence profile reports plateau, onset and post-plateau maximum") {
    ThermalSpec t;
    t.beta = 10.0;
    QuenchSpec<DVectorModel> spec{build_ssh(SshParams::nearest(-7.5)),
                                  build_ssh(SshParams::nearest(-0.5)), 0.0};
    auto rep = recurrence_profile(spec, 50, t, 100.0, 0.05, 50, 5.0);
    REQUIRE(rep.curve.tau.size() == rep.curve.energy.size());
    CHECK(rep.curve.tau.front() == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(rep.plateau_variance >= 0.0);
    CHECK(rep.plateau_begin + 50 <= rep.curve.tau.size());
    CHECK(rep.e_max >= rep.plateau_value);
    CHECK(rep.tau_at_max > 0.0);
    // The long-time average is the plateau's center of mass; the largest
    // recurrence must reach above it.
    QuenchSpec<DVectorModel> lta_spec = spec;
    lta_spec.tau = std::numeric_limits<double>::infinity();
    double lta = stored_energy(lta_spec, BzGrid::finite(50), t);
    CHECK(rep.e_max >= lta - 1e-12);
    CHECK(std::abs(rep.plateau_value - lta) <= 0.2 * lta);

    REQUIRE(rep.onset_tau.has_value());
    // Recurrences arrive later on larger chains.
    auto rep2 = recurrence_profile(spec, 100, t, 200.0, 0.05, 50, 5.0);
    REQUIRE(rep2.onset_tau.has_value());
    CHECK(*rep2.onset_tau > *rep.onset_tau);
  }

  TEST_CASE("recurrence profile validates its window arithmetic") {
    ThermalSpec t;
    QuenchSpec<DVectorModel> spec{build_ssh(SshParams::nearest(-0.5)),
                                  build_ssh(SshParams::nearest(0.5)), 0.0};
    CHECK_THROWS_AS((void)recurrence_profile(spec, 16, t, 10.0, 0.0, 50, 5.0), SpecError);
    CHECK_THROWS_AS((void)recurrence_profile(spec, 16, t, 0.02, 0.05, 50, 5.0), SpecError);
    CHECK_THROWS_AS((void)recurrence_profile(spec, 16, t, 10.0, 0.05, 1, 5.0), SpecError);
    CHECK_THROWS_AS((void)recurrence_profile(spec, 16, t, 10.0, 0.05, 50, 1.0), SpecError);
    // 3 windows of 50 samples need tau_max >= 7.5 at dt = 0.05.
    CHECK_THROWS_AS((void)recurrence_profile(spec, 16, t, 5.0, 0.05, 50, 5.0), SpecError);
  }
}

}  // namespace
