#include <cmath>

#include "doctest.h"
#include "lusin/catalog.hpp"
#include "lusin/convexity.hpp"

using namespace lusin;

TEST_CASE("certification passes at the true modulus and fails above it") {
  CatalogEntry quad = make_quad();
  CertifyOptions opt;
  opt.trials = 2000;
  ConvexityCertificate ok = certify_strong_convexity(quad.oracle, quad.box, 2.0, opt);
  CHECK(ok.pass);
  CHECK(ok.worst_violation >= -1e-9);
  ConvexityCertificate bad = certify_strong_convexity(quad.oracle, quad.box, 2.5, opt);
  CHECK(!bad.pass);
  CHECK(bad.worst_violation < -1e-9);
}

TEST_CASE("kink neighborhoods are skipped and counted when FD gradients are used") {
  CatalogEntry e = make_abs_plus_quad();
  ValueOracle no_grad = e.oracle;
  no_grad.gradient = nullptr;
  CertifyOptions opt;
  opt.trials = 2000;
  ConvexityCertificate c = certify_strong_convexity(no_grad, Box(-0.001, 0.001), 2.0, opt);
  CHECK(c.skipped > 0);
}

TEST_CASE("lipschitz bound dominates the true constant") {
  CatalogEntry quad = make_quad();
  Body a(Point(0.0), 1.0), b(Point(0.0), 2.0);
  LipschitzEstimate est = lipschitz_bound(quad.oracle, a, b, 2048);
  // Lip(x^2 on [-1,1]) = 2; the oscillation quotient gives (4 - 0) / 1 = 4.
  CHECK(est.value >= 2.0);
  CHECK(est.value == doctest::Approx(4.0).epsilon(1e-2));
}

TEST_CASE("extension reproduces samples and stays below the source") {
  CatalogEntry e = make_abs_plus_quad();
  ExtendOptions opt;
  opt.samples = 128;
  QuadraticBundle b = extend_strongly_convex(e.oracle, Box(-1.0, 1.0), 2.0, opt);
  for (const auto& a : b.atoms()) {
    CHECK(std::fabs(b.eval(a.z) - a.u) <= 1e-12);
  }
  // Minimality: the extension of |x| + x^2 with the sharp modulus never
  // exceeds the function itself.
  for (int i = 0; i <= 300; ++i) {
    double x = -3.0 + 6.0 * i / 300.0;
    CHECK(b.eval(Point(x)) <= e.oracle.value(Point(x)) + 1e-9);
  }
}

TEST_CASE("extension rejects a modulus above the declared one") {
  CatalogEntry e = make_abs_plus_quad();
  CHECK_THROWS_AS(extend_strongly_convex(e.oracle, Box(-1.0, 1.0), 3.0), Error);
}
