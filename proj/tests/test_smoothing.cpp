#include <cmath>
#include <limits>

#include "doctest.h"
#include "lusin/catalog.hpp"
#include "lusin/smoothing.hpp"
#include "lusin/verify.hpp"

using namespace lusin;

TEST_CASE("perturbation budget formula and validation") {
  CHECK(perturbation_budget(2.0, 1.0, 1) == doctest::Approx(1.0));
  CHECK(perturbation_budget(2.0, 1.0, 2) == doctest::Approx(0.5));
  CHECK_THROWS_AS(perturbation_budget(1.0, 2.0, 1), Error);
}

TEST_CASE("patched smoothing meets the norm budget and keeps the modulus") {
  CatalogEntry e = make_abs_plus_quad();
  Box box(-4.0, 4.0);
  PatchedOptions opt;
  opt.resolution = 2048;
  double eps = 1e-2;
  PatchedResult r = patched_smooth(e.oracle, 2.0, 1.0, eps, 1.0, box, opt);
  CHECK(!r.annuli.empty());
  double total = 0;
  for (const auto& a : r.annuli) {
    total += a.norm_contribution;
    CHECK(a.delta > 0);
  }
  CHECK(total < eps);

  GridFunction gu = sample_grid(e.oracle, box, 2048);
  GridFunction gv = sample_grid(r.v, box, 2048);
  GridFunction diff = gu;
  for (int i = 0; i < diff.size(); ++i) diff.values[i] -= gv.values[i];
  CHECK(sobolev_norm(diff, 2, 1.0) < eps);

  // The output stays 1-strongly convex on the grid.
  CHECK(hessian_floor_grid(gv, {}) >= 1.0 - 1e-3);
}

TEST_CASE("patched smoothing output is differentiable (FD check)") {
  CatalogEntry e = make_quad();
  PatchedOptions opt;
  opt.resolution = 512;
  PatchedResult r = patched_smooth(e.oracle, 2.0, 1.5, 1e-2, 1.0, Box(-2.0, 2.0), opt);
  REQUIRE(r.v.has_gradient());
  double h = 1e-6;
  for (double x : {-1.2, 0.31, 0.9}) {
    double fd = (r.v.value(Point(x + h)) - r.v.value(Point(x - h))) / (2.0 * h);
    CHECK(r.v.gradient(Point(x))[0] == doctest::Approx(fd).epsilon(1e-5));
  }
}
