#include <cmath>
#include <numbers>

#include "doctest.h"
#include "quenchbat/bz_grid.hpp"
#include "quenchbat/errors.hpp"

namespace {

using quenchbat::BzGrid;
using quenchbat::GridOffset;
using quenchbat::SpecError;

constexpr double kPi = std::numbers::pi;

TEST_SUITE("grid") {
  TEST_CASE("half-integer momenta lie strictly inside the zone, symmetrically") {
    BzGrid g = BzGrid::finite(8);
    REQUIRE(g.modes() == 8);
    CHECK(g.offset() == GridOffset::kHalfInteger);
    auto ks = g.momenta();
    REQUIRE(ks.size() == 8);
    for (int j = 0; j < 8; ++j) {
      CHECK(ks[std::size_t(j)] == g.momentum(j));
      CHECK(ks[std::size_t(j)] > -kPi);
      CHECK(ks[std::size_t(j)] < kPi);
      // k -> -k maps the grid onto itself.
      CHECK(std::abs(ks[std::size_t(j)] + ks[std::size_t(7 - j)]) <= 1e-15);
    }
    for (int j = 1; j < 8; ++j) CHECK(ks[std::size_t(j)] > ks[std::size_t(j - 1)]);
  }

  TEST_CASE("half-integer N=4 spot value") {
    CHECK(BzGrid::finite(4).momentum(0) == -3.0 * kPi / 4.0);
  }

  TEST_CASE("integer offset contains the zone boundary") {
    BzGrid g = BzGrid::finite(4, GridOffset::kInteger);
    CHECK(g.momentum(0) == -kPi);
    CHECK(g.momentum(2) == 0.0);
    CHECK(g.convention() == "integer");
  }

  TEST_CASE("convention strings") {
    CHECK(BzGrid::finite(16).convention() == "half_integer");
    CHECK(BzGrid::thermodynamic().convention() == "thermodynamic");
  }

  TEST_CASE("thermodynamic grid carries tolerance, not momenta") {
    BzGrid g = BzGrid::thermodynamic();
    CHECK_FALSE(g.is_finite());
    CHECK(g.rel_tol() == 1e-9);
    CHECK(g.initial_panels() == 8);
    CHECK_THROWS_AS((void)g.modes(), SpecError);
    CHECK_THROWS_AS((void)g.offset(), SpecError);
    CHECK_THROWS_AS((void)g.momentum(0), SpecError);
    CHECK_THROWS_AS((void)g.momenta(), SpecError);
  }

  TEST_CASE("finite grid rejects limit-only accessors") {
    BzGrid g = BzGrid::finite(8);
    CHECK(g.is_finite());
    CHECK_THROWS_AS((void)g.rel_tol(), SpecError);
    CHECK_THROWS_AS((void)g.initial_panels(), SpecError);
    CHECK_THROWS_AS((void)g.momentum(8), SpecError);
    CHECK_THROWS_AS((void)g.momentum(-1), SpecError);
  }

  TEST_CASE("constructor preconditions") {
    CHECK_THROWS_AS((void)BzGrid::finite(0), SpecError);
    CHECK_THROWS_AS((void)BzGrid::finite(-4), SpecError);
    CHECK_THROWS_AS((void)BzGrid::thermodynamic(0.0), SpecError);
    CHECK_THROWS_AS((void)BzGrid::thermodynamic(1e-9, 0), SpecError);
  }
}

}  // namespace
