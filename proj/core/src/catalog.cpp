#include "lusin/catalog.hpp"

#include <cmath>

#include "lusin/bundle.hpp"

namespace lusin {

CatalogEntry make_quad() {
  CatalogEntry e;
  e.name = "quad";
  e.description = "x^2; smooth, 2-strongly convex";
  e.box = Box(-4.0, 4.0);
  e.eta = 2.0;
  e.oracle.dim = 1;
  e.oracle.modulus = 2.0;
  e.oracle.smoothness = Smoothness::CInf;
  e.oracle.value = [](const Point& p) { return p[0] * p[0]; };
  e.oracle.gradient = [](const Point& p) { return Point(2.0 * p[0]); };
  return e;
}

CatalogEntry make_abs_plus_quad() {
  CatalogEntry e;
  e.name = "abs_plus_quad";
  e.description = "|x| + x^2; one kink at the origin, 2-strongly convex";
  e.box = Box(-4.0, 4.0);
  e.eta = 2.0;
  e.oracle.dim = 1;
  e.oracle.modulus = 2.0;
  e.oracle.smoothness = Smoothness::C0;
  e.oracle.kinks = {0.0};
  e.oracle.value = [](const Point& p) { return std::fabs(p[0]) + p[0] * p[0]; };
  // At the kink we return the subgradient element 0 + 2x = 0.
  e.oracle.gradient = [](const Point& p) {
    double s = p[0] > 0 ? 1.0 : (p[0] < 0 ? -1.0 : 0.0);
    return Point(s + 2.0 * p[0]);
  };
  return e;
}

CatalogEntry make_huber_abs_plus_quad(double mu) {
  if (!(mu > 0)) throw config_error("huber parameter mu must be positive");
  CatalogEntry e;
  e.name = "huber_abs_plus_quad";
  e.description = "huber_mu(x) + x^2; C^{1,1} rounding of |x| + x^2";
  e.box = Box(-4.0, 4.0);
  e.eta = 2.0;
  e.oracle.dim = 1;
  e.oracle.modulus = 2.0;
  e.oracle.smoothness = Smoothness::C11;
  // C^2 fails exactly where the quadratic cap meets the linear wings.
  e.oracle.kinks = {-mu, mu};
  e.oracle.value = [mu](const Point& p) {
    double x = p[0];
    double h = std::fabs(x) <= mu ? x * x / (2.0 * mu) : std::fabs(x) - mu / 2.0;
    return h + x * x;
  };
  e.oracle.gradient = [mu](const Point& p) {
    double x = p[0];
    double hp = std::fabs(x) <= mu ? x / mu : (x > 0 ? 1.0 : -1.0);
    return Point(hp + 2.0 * x);
  };
  return e;
}

CatalogEntry make_neglog1mx2() {
  CatalogEntry e;
  e.name = "neglog1mx2";
  e.description = "-log(1 - x^2) on (-1, 1); smooth, blows up at the ends";
  e.box = Box(-0.99, 0.99);
  e.eta = 2.0;  // u'' = 2 (1 + x^2) / (1 - x^2)^2 >= 2
  e.oracle.dim = 1;
  e.oracle.modulus = 2.0;
  e.oracle.smoothness = Smoothness::CInf;
  e.oracle.value = [](const Point& p) {
    double x = p[0];
    if (std::fabs(x) >= 1.0) throw numeric_error("neglog1mx2 evaluated outside (-1, 1)");
    return -std::log(1.0 - x * x);
  };
  e.oracle.gradient = [](const Point& p) {
    double x = p[0];
    if (std::fabs(x) >= 1.0) throw numeric_error("neglog1mx2 evaluated outside (-1, 1)");
    return Point(2.0 * x / (1.0 - x * x));
  };
  return e;
}

CatalogEntry make_planar_abs() {
  CatalogEntry e;
  e.name = "planar_abs";
  e.description = "|x_1| in the plane; convex but not strongly convex (negative control)";
  e.box = Box(Point(-2.0, -2.0), Point(2.0, 2.0));
  e.eta = 0.0;
  e.oracle.dim = 2;
  e.oracle.modulus = 0.0;
  e.oracle.smoothness = Smoothness::C0;
  e.oracle.kinks = {0.0};  // the line {x_1 = 0}
  e.oracle.value = [](const Point& p) { return std::fabs(p[0]); };
  e.oracle.gradient = [](const Point& p) {
    double s = p[0] > 0 ? 1.0 : (p[0] < 0 ? -1.0 : 0.0);
    return Point(s, 0.0);
  };
  return e;
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = {
      make_quad(), make_abs_plus_quad(), make_huber_abs_plus_quad(0.01),
      make_neglog1mx2(), make_planar_abs()};
  return entries;
}

CatalogEntry catalog_lookup(const std::string& name) {
  const std::string prefix = "bundle:";
  if (name.rfind(prefix, 0) == 0) {
    QuadraticBundle b = QuadraticBundle::load(name.substr(prefix.size()));
    CatalogEntry e;
    e.name = name;
    e.description = "quadratic bundle loaded from file";
    e.oracle = b.as_oracle();
    e.eta = b.eta();
    // Natural box: atom span widened by one.
    double lo = b.atoms().front().z[0], hi = lo;
    for (const auto& a : b.atoms()) {
      lo = std::min(lo, a.z[0]);
      hi = std::max(hi, a.z[0]);
    }
    e.box = Box(lo - 1.0, hi + 1.0);
    return e;
  }
  for (const auto& e : catalog()) {
    if (e.name == name) return e;
  }
  throw config_error("unknown catalog entry '" + name + "'");
}

}  // namespace lusin
