#include <cmath>

#include "doctest.h"
#include "lusin/partition.hpp"

using namespace lusin;

TEST_CASE("smoothstep endpoints and pinned derivative bounds") {
  CHECK(smoothstep(0.0) == 0.0);
  CHECK(smoothstep(1.0) == 1.0);
  CHECK(smoothstep_d1(0.0) == 0.0);
  CHECK(smoothstep_d1(1.0) == 0.0);
  CHECK(smoothstep_d2(0.0) == 0.0);
  CHECK(smoothstep_d2(1.0) == 0.0);
  // max |s'| = 15/8 at t = 1/2; max |s''| = 10/sqrt(3).
  CHECK(smoothstep_d1(0.5) == doctest::Approx(15.0 / 8.0).epsilon(1e-14));
  double d2max = 0;
  for (int i = 0; i <= 10000; ++i) {
    d2max = std::max(d2max, std::fabs(smoothstep_d2(i / 10000.0)));
  }
  CHECK(d2max <= kSmoothstepD2Max + 1e-12);
  CHECK(d2max == doctest::Approx(kSmoothstepD2Max).epsilon(1e-6));
}

TEST_CASE("partition sums to one with at most two active annuli") {
  PartitionOfUnity pou(6, 1);
  for (int i = 0; i <= 500; ++i) {
    Point x(-5.0 + 10.0 * i / 500.0);
    double sum = 0;
    for (int j = 0; j < pou.count(); ++j) sum += pou.theta(j, x);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(pou.active(x).size() <= 2);
    for (int j : pou.active(x)) CHECK(pou.theta(j, x) > 0.0);
  }
}

TEST_CASE("partition covers a box with enough annuli") {
  PartitionOfUnity pou = build_partition(Box(Point(-3.0, -3.0), Point(3.0, 3.0)));
  Point corner(2.9, 2.9);
  double sum = 0;
  for (int j = 0; j < pou.count(); ++j) sum += pou.theta(j, corner);
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
}
