#include <cmath>

#include "doctest.h"
#include "lusin/grid.hpp"
#include "lusin/maximal.hpp"

using namespace lusin;

TEST_CASE("maximal function dominates |g| and is bounded by its sup") {
  GridFunction g(Box(0.0, 1.0), 128);
  Rng rng(3);
  for (int i = 0; i < g.nx; ++i) g.at(i) = rng.uniform(-1.0, 1.0);
  GridFunction mg = maximal_function(g);
  double sup = 0;
  for (int i = 0; i < g.nx; ++i) sup = std::max(sup, std::fabs(g.at(i)));
  for (int i = 0; i < g.nx; ++i) {
    // Prefix-sum rounding perturbs the window averages by a few ulps.
    CHECK(mg.at(i) >= std::fabs(g.at(i)) - 1e-12);
    CHECK(mg.at(i) <= sup + 1e-12);
  }
}

TEST_CASE("indicator of [0,1] on [0,4]: Mg at x = 2 equals 1/4") {
  int n = 512;
  GridFunction g(Box(0.0, 4.0), n);
  for (int i = 0; i < n; ++i) g.at(i) = g.node(i)[0] <= 1.0 ? 1.0 : 0.0;
  GridFunction mg = maximal_function(g);
  // The best window at x = 2 is [0, 4]: average 1/4. The window that just
  // reaches the indicator, [1, 3] grown to [0, 4], is optimal because the
  // average (r - 1) / 2r increases with the radius r up to the box.
  int mid = n / 2;
  double h = g.h(0);
  CHECK(std::fabs(mg.at(mid) - 0.25) <= 2.0 * h);
}

TEST_CASE("weak type (1,1) bound holds on random data") {
  Rng rng(11);
  for (int rep = 0; rep < 10; ++rep) {
    GridFunction g(Box(-1.0, 1.0), 256);
    for (int i = 0; i < g.nx; ++i) g.at(i) = rng.uniform();
    GridFunction mg = maximal_function(g);
    for (double t : {0.25, 0.5, 0.9}) {
      WeakTypeReport w = weak_type_check(g, mg, t);
      CHECK(w.pass);
      CHECK(w.level_set_measure <= w.bound + 1e-12);
    }
  }
}

TEST_CASE("2-D maximal function dominates |g|") {
  GridFunction g(Box(Point(0.0, 0.0), Point(1.0, 1.0)), 24, 24);
  Rng rng(5);
  for (int i = 0; i < g.size(); ++i) g.values[i] = rng.uniform(-2.0, 2.0);
  GridFunction mg = maximal_function(g);
  for (int i = 0; i < g.size(); ++i) {
    CHECK(mg.values[i] >= std::fabs(g.values[i]) - 1e-15);
  }
}
