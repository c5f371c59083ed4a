#include <cmath>

#include "doctest.h"
#include "lusin/catalog.hpp"
#include "lusin/verify.hpp"

using namespace lusin;

TEST_CASE("hessian floor of the parabola is 2") {
  CatalogEntry quad = make_quad();
  CHECK(hessian_floor(quad.oracle, quad.box, 512) == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("kink exclusion keeps the floor finite and honest") {
  CatalogEntry e = make_abs_plus_quad();
  // With the 2h exclusion around the kink the floor is the smooth value 2;
  // without any exclusion the kink inflates the second difference.
  GridFunction g = sample_grid(e.oracle, e.box, 512);
  CHECK(hessian_floor_grid(g, e.oracle.kinks) == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("discrete C^2 modulus: plateau at a kink, decay when smooth") {
  CatalogEntry kinked = make_abs_plus_quad();
  std::vector<C2ModulusRow> rows = c2_modulus_table(kinked.oracle, kinked.box, 256, 3);
  for (const auto& r : rows) {
    CHECK(r.modulus >= 1.0 - 1e-9);  // |x| contributes a jump of ~2/h
  }
  CatalogEntry smooth = make_quad();
  std::vector<C2ModulusRow> srows = c2_modulus_table(smooth.oracle, smooth.box, 256, 3);
  for (const auto& r : srows) {
    CHECK(r.modulus <= 1e-8);
  }
}

TEST_CASE("envelope ratio and disagreement sweep") {
  GridFunction u(Box(-1.0, 1.0), 100), v(Box(-1.0, 1.0), 100);
  for (int i = 0; i < 100; ++i) {
    u.at(i) = 1.0;
    v.at(i) = (i == 50) ? 1.05 : 1.0;
  }
  ValueOracle env;
  env.dim = 1;
  env.value = [](const Point&) { return 0.1; };
  CHECK(sup_error_envelope(u, v, env) == doctest::Approx(0.5));
  auto sweep = disagreement_sweep(u, v);
  CHECK(sweep.size() == 3);
  CHECK(sweep[1].measure == doctest::Approx(0.02));  // one node of width 2/100
}

TEST_CASE("graph symmetric difference integrates both graph areas") {
  GridFunction u(Box(0.0, 1.0), 100), v(Box(0.0, 1.0), 100);
  for (int i = 0; i < 100; ++i) {
    u.at(i) = 0.0;
    v.at(i) = (i >= 40 && i < 60) ? 1.0 : 0.0;
  }
  double area = graph_symmetric_difference(u, v, 1e-9);
  // Two flat graphs over a set of measure ~0.2 contribute ~0.4 plus the
  // steep transition cells of v.
  CHECK(area >= 0.4);
  CHECK(area <= 1.5);
}

TEST_CASE("full report passes for a function against itself") {
  CatalogEntry quad = make_quad();
  VerifyOptions opt;
  opt.resolution = 512;
  opt.eta = 2.0;
  opt.certify.trials = 1000;
  ApproxReport rep = verify_approximation(quad.oracle, quad.oracle, quad.box, opt);
  CHECK(rep.pass);
  CHECK(rep.disagreement == 0.0);
  std::string js = rep.to_json();
  CHECK(js.find("\"convexity\"") != std::string::npos);
  CHECK(js.find("\"worst_violation\"") != std::string::npos);
}
