#include <cmath>

#include "doctest.h"
#include "lusin/grid.hpp"

using namespace lusin;

TEST_CASE("cell-centered nodes and measures") {
  GridFunction g(Box(0.0, 1.0), 4);
  CHECK(g.h(0) == doctest::Approx(0.25));
  CHECK(g.node(0)[0] == doctest::Approx(0.125));
  CHECK(g.node(3)[0] == doctest::Approx(0.875));
  CHECK(g.cell_measure() == doctest::Approx(0.25));
}

TEST_CASE("finite differences are exact on quadratics") {
  auto f = [](const Point& p) { return 3.0 * p[0] * p[0] - 2.0 * p[0] + 1.0; };
  GridFunction g = sample_grid(f, Box(-1.0, 2.0), 64);
  GridFunction d1 = fd_derivative(g, 1);
  GridFunction d2 = fd_derivative(g, 2);
  for (int i = 0; i < g.nx; ++i) {
    double x = g.node(i)[0];
    CHECK(d1.at(i) == doctest::Approx(6.0 * x - 2.0).epsilon(1e-9));
    CHECK(d2.at(i) == doctest::Approx(6.0).epsilon(1e-8));
  }
}

TEST_CASE("2-D mixed derivative on a bilinear function") {
  auto f = [](const Point& p) { return 2.0 * p[0] * p[1] + p[0]; };
  GridFunction g = sample_grid(f, Box(Point(0.0, 0.0), Point(1.0, 1.0)), 32, 32);
  GridFunction dxy = fd_derivative(g, 1, 1);
  CHECK(dxy.at(16, 16) == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("Lp and Sobolev norms as Riemann sums") {
  // f = x on [0,1]: ||f||_1 = 1/2, ||f||_inf -> 1, ||f'||_1 = 1.
  auto f = [](const Point& p) { return p[0]; };
  GridFunction g = sample_grid(f, Box(0.0, 1.0), 1000);
  CHECK(lp_norm(g, 1.0) == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(lp_norm(g, std::numeric_limits<double>::infinity()) ==
        doctest::Approx(1.0).epsilon(1e-3));
  // W^{1,1} norm = ||f||_1 + ||f'||_1 = 1.5.
  CHECK(sobolev_norm(g, 1, 1.0) == doctest::Approx(1.5).epsilon(1e-6));
}

TEST_CASE("disagreement measure counts cells") {
  GridFunction a(Box(0.0, 1.0), 10), b(Box(0.0, 1.0), 10);
  for (int i = 0; i < 10; ++i) {
    a.at(i) = 0.0;
    b.at(i) = (i < 3) ? 1.0 : 0.0;
  }
  CHECK(disagreement(a, b, 1e-9) == doctest::Approx(0.3));
  CHECK(disagreement(a, b, 2.0) == doctest::Approx(0.0));
}

TEST_CASE("rng streams are deterministic and seed-dependent") {
  Rng r1(42), r2(42), r3(43);
  for (int i = 0; i < 16; ++i) {
    double a = r1.uniform();
    CHECK(a == r2.uniform());
    CHECK(a >= 0.0);
    CHECK(a < 1.0);
  }
  bool differs = false;
  Rng r4(42);
  for (int i = 0; i < 16; ++i) {
    if (r4.uniform() != r3.uniform()) differs = true;
  }
  CHECK(differs);
}
