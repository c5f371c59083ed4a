#include <cmath>

#include "doctest.h"
#include "lusin/bundle.hpp"
#include "lusin/grid.hpp"

using namespace lusin;

namespace {

QuadraticBundle three_atom_bundle() {
  std::vector<BundleAtom> atoms = {
      {Point(-1.0), 2.0, Point(-4.0)},
      {Point(0.0), 0.0, Point(0.0)},
      {Point(1.0), 2.0, Point(4.0)},
  };
  return QuadraticBundle(2.0, std::move(atoms));
}

double naive_eval(const QuadraticBundle& b, double x) {
  double best = -1e300;
  for (const auto& a : b.atoms()) {
    double d = x - a.z[0];
    best = std::max(best, a.u + a.xi[0] * d + 0.5 * b.eta() * d * d);
  }
  return best;
}

}  // namespace

TEST_CASE("envelope evaluation matches the naive maximum") {
  QuadraticBundle b = three_atom_bundle();
  for (int i = 0; i <= 200; ++i) {
    double x = -3.0 + 6.0 * i / 200.0;
    CHECK(b.eval(Point(x)) == doctest::Approx(naive_eval(b, x)).epsilon(1e-14));
  }
}

TEST_CASE("bundle reproduces its samples at the atoms") {
  QuadraticBundle b = three_atom_bundle();
  for (const auto& a : b.atoms()) {
    CHECK(b.eval(a.z) == doctest::Approx(a.u).epsilon(1e-15));
  }
}

TEST_CASE("kink loci sit between the atoms") {
  QuadraticBundle b = three_atom_bundle();
  std::vector<double> kinks = b.kink_loci();
  REQUIRE(kinks.size() == 2);
  // Atoms sample u = 2x^2; the eta = 2 envelope is
  // x^2 + max(-2x - 1, 0, 2x - 1), which switches pieces at x = -+1/2.
  CHECK(kinks[0] == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(kinks[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("subgradient follows the active atom; ties pick the lowest index") {
  QuadraticBundle b = three_atom_bundle();
  CHECK(b.subgradient(Point(0.8))[0] == doctest::Approx(4.0 + 2.0 * (0.8 - 1.0)));
  CHECK(b.subgradient(Point(0.1))[0] == doctest::Approx(2.0 * 0.1));
  // At the kink both atoms are active; the lowest input index wins.
  CHECK(b.active_atom(Point(0.5)) == 1);
  CHECK(b.active_atom(Point(-0.5)) == 0);
}

TEST_CASE("JSON round trip preserves the bundle") {
  QuadraticBundle b = three_atom_bundle();
  QuadraticBundle c = QuadraticBundle::from_json(b.to_json());
  CHECK(c.eta() == b.eta());
  REQUIRE(c.atoms().size() == b.atoms().size());
  for (int i = 0; i <= 50; ++i) {
    double x = -2.0 + 4.0 * i / 50.0;
    CHECK(c.eval(Point(x)) == b.eval(Point(x)));
  }
}

TEST_CASE("oracle carries the kinks for exact quadrature") {
  QuadraticBundle b = three_atom_bundle();
  ValueOracle o = b.as_oracle();
  REQUIRE(o.kinks.size() == 2);
  CHECK(o.modulus == 2.0);
  CHECK(o.value(Point(0.25)) == b.eval(Point(0.25)));
}
