#include <cmath>

#include "doctest.h"
#include "lusin/catalog.hpp"
#include "lusin/expr.hpp"
#include "lusin/gluing.hpp"

using namespace lusin;

namespace {

AnnulusSchedule small_schedule(const CatalogEntry& e, int levels, int resolution) {
  Expression env = Expression::parse("min(0.05, 0.2 * (1 - x * x))");
  return build_schedule(e.oracle, e.box, env.as_oracle(1), 0.05, [&] {
    ScheduleOptions opt;
    opt.levels = levels;
    opt.resolution = resolution;
    return opt;
  }());
}

}  // namespace

TEST_CASE("schedule invariants: nesting, decay, budgets") {
  CatalogEntry e = make_neglog1mx2();
  AnnulusSchedule s = small_schedule(e, 3, 1024);
  REQUIRE(static_cast<int>(s.bodies.size()) == 5);      // K + 2
  REQUIRE(static_cast<int>(s.moduli.size()) == 12);     // K + 9
  REQUIRE(static_cast<int>(s.extensions.size()) == 4);  // K + 1
  for (std::size_t i = 1; i < s.bodies.size(); ++i) {
    CHECK(s.bodies[i].radius > s.bodies[i - 1].radius);
  }
  for (std::size_t i = 1; i < s.moduli.size(); ++i) {
    CHECK(s.moduli[i] < s.moduli[i - 1]);
  }
  double sum = 0, prev = 1e300;
  for (const auto& lv : s.levels) {
    CHECK(lv.eps > 0);
    CHECK(lv.eps <= prev);
    CHECK(lv.beta >= 3.0 * lv.eps);
    CHECK(lv.delta >= 3.0 * lv.eps);
    CHECK(lv.a > 0);
    CHECK(lv.collar.radius == doctest::Approx(lv.body.radius + lv.a));
    prev = lv.eps;
    sum += lv.eps;
  }
  CHECK(sum < 0.5 * s.eps_o);
}

TEST_CASE("local extensions agree with u at their atoms") {
  CatalogEntry e = make_neglog1mx2();
  AnnulusSchedule s = small_schedule(e, 3, 1024);
  for (const auto& b : s.extensions) {
    for (const auto& a : b.atoms()) {
      CHECK(b.eval(a.z) == doctest::Approx(e.oracle.value(a.z)).epsilon(1e-13));
    }
  }
}

TEST_CASE("glue assembles a function matching u at covered grid nodes") {
  CatalogEntry e = make_neglog1mx2();
  AnnulusSchedule s = small_schedule(e, 3, 1024);
  GlueResult r = glue(e.oracle, s);
  CHECK(r.branch_margin >= 0.0);
  CHECK(r.exactness <= 1e-12);
  // The per-level approximations are grid exact, so at every schedule grid
  // node covered by the outermost body the glued function tracks u to the
  // per-level budgets.
  const Body& bk = s.bodies[s.levels_count - 1];
  double eps_max = s.levels[0].eps;
  GridFunction layout(s.domain, s.resolution);
  for (int i = 0; i < layout.nx; ++i) {
    Point x = layout.node(i);
    if (!bk.contains(x)) continue;
    CHECK(std::fabs(r.v.value(x) - e.oracle.value(x)) <= 3.0 * eps_max + 1e-9);
  }
}

TEST_CASE("dimension and budget validation") {
  CatalogEntry p = make_planar_abs();
  Expression env = Expression::parse("0.1");
  CHECK_THROWS_AS(build_schedule(p.oracle, p.box, env.as_oracle(2), 0.1, {}), Error);
  CatalogEntry e = make_neglog1mx2();
  CHECK_THROWS_AS(build_schedule(e.oracle, e.box, env.as_oracle(1), -1.0, {}), Error);
}
