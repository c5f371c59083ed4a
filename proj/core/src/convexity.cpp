#include "lusin/convexity.hpp"

#include <algorithm>
#include <cmath>

namespace lusin {

namespace {

bool near_kink(const ValueOracle& u, const Point& x, double radius) {
  for (double k : u.kinks)
    if (std::fabs(x[0] - k) < radius) return true;
  return false;
}

Point fd_gradient(const ValueOracle& u, const Point& x, double s) {
  Point g = Point::zero(x.dim());
  for (int i = 0; i < x.dim(); ++i) {
    Point a = x, b = x;
    a[i] -= s;
    b[i] += s;
    g[i] = (u.value(b) - u.value(a)) / (2 * s);
  }
  return g;
}

}  // namespace

ConvexityCertificate certify_strong_convexity(const ValueOracle& u, const Box& domain,
                                              double eta, const CertifyOptions& opt) {
  if (u.dim != domain.dim()) throw config_error("certify: oracle/domain dimension mismatch");
  if (!(eta > 0)) throw config_error("certify: eta must be positive");
  Rng rng(opt.seed);
  ConvexityCertificate cert;
  cert.eta = eta;
  bool use_fd = !u.has_gradient();
  double guard = opt.kink_exclusion + 2 * opt.fd_step;
  for (int t = 0; t < opt.trials; ++t) {
    Point x = rng.uniform_point(domain);
    Point y = rng.uniform_point(domain);
    if (use_fd && near_kink(u, x, guard)) {
      ++cert.skipped;
      continue;
    }
    Point xi = use_fd ? fd_gradient(u, x, opt.fd_step) : u.gradient(x);
    double ux = u.value(x), uy = u.value(y);
    Point d = y - x;
    double residual = uy - ux - xi.dot(d) - 0.5 * eta * d.norm2();
    double scale = 1.0 + std::fabs(ux) + std::fabs(uy);
    double rel = residual / scale;
    require_finite(rel, "convexity certification residual");
    ++cert.trials;
    if (rel < cert.worst_violation) {
      cert.worst_violation = rel;
      cert.worst_x = x;
      cert.worst_y = y;
    }
  }
  if (cert.trials == 0) throw numeric_error("certify: every sampled pair was skipped");
  cert.pass = cert.worst_violation >= -opt.tol;
  return cert;
}

LipschitzEstimate lipschitz_bound(const ValueOracle& u, const Body& a, const Body& b,
                                  int resolution) {
  if (a.dim() != b.dim() || u.dim != a.dim())
    throw config_error("lipschitz_bound: dimension mismatch");
  LipschitzEstimate est;
  est.separation = boundary_distance(a, b);

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  auto visit = [&](const Point& p) {
    double v = u.value(p);
    require_finite(v, "lipschitz_bound sample");
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  };
  if (b.dim() == 1) {
    double c = b.center[0], r = b.radius;
    for (int i = 0; i < resolution; ++i)
      visit(Point(c - r + (i + 0.5) * (2 * r / resolution)));
    // boundary refinement: a convex function peaks at the ends of an interval
    visit(Point(c - r));
    visit(Point(c + r));
  } else {
    int res = std::max(32, static_cast<int>(std::sqrt((double)resolution)));
    Box bb = b.bounding_box();
    for (int j = 0; j < res; ++j)
      for (int i = 0; i < res; ++i) {
        Point p(bb.lo[0] + (i + 0.5) * bb.side(0) / res,
                bb.lo[1] + (j + 0.5) * bb.side(1) / res);
        if (b.contains(p)) visit(p);
      }
    int m = 4 * res;
    for (int i = 0; i < m; ++i) {
      double t = 2 * M_PI * i / m;
      visit(Point(b.center[0] + b.radius * std::cos(t),
                  b.center[1] + b.radius * std::sin(t)));
    }
  }
  est.max_b = hi;
  est.min_b = lo;
  est.value = (hi - lo) / est.separation;
  return est;
}

double subdiff_norm_bound(const ValueOracle& u, const Body& a, const Body& b, int resolution) {
  return lipschitz_bound(u, a, b, resolution).value;
}

QuadraticBundle extend_strongly_convex(const ValueOracle& u, const Box& K, double eta,
                                       const ExtendOptions& opt) {
  if (u.dim != K.dim()) throw config_error("extend: oracle/domain dimension mismatch");
  if (eta > u.modulus + opt.modulus_tol)
    throw config_error("extend: requested modulus exceeds the modulus carried by u");
  if (!(eta > 0)) throw config_error("extend: eta must be positive");

  std::vector<BundleAtom> atoms;
  double guard = 2 * opt.fd_step;
  auto add_atom = [&](const Point& z, const Point& xi) {
    atoms.push_back({z, u.value(z), xi});
  };
  auto grad_at = [&](const Point& z) {
    return u.has_gradient() ? u.gradient(z) : fd_gradient(u, z, opt.fd_step);
  };

  if (K.dim() == 1) {
    double h = K.side(0) / opt.samples;
    for (int i = 0; i < opt.samples; ++i) {
      Point z(K.lo[0] + (i + 0.5) * h);
      if (!u.has_gradient() && near_kink(u, z, guard)) continue;
      add_atom(z, grad_at(z));
    }
    // One-sided slopes at declared kinks keep the extension exact there.
    for (double k : u.kinks) {
      if (k < K.lo[0] || k > K.hi[0]) continue;
      double s = opt.fd_step;
      Point z(k);
      double left = (3 * u.value(z) - 4 * u.value(Point(k - s)) + u.value(Point(k - 2 * s))) /
                    (2 * s);
      double right = (-3 * u.value(z) + 4 * u.value(Point(k + s)) - u.value(Point(k + 2 * s))) /
                     (2 * s);
      add_atom(z, Point(left));
      add_atom(z, Point(right));
    }
  } else {
    int res = std::max(8, static_cast<int>(std::sqrt((double)opt.samples)));
    for (int j = 0; j < res; ++j)
      for (int i = 0; i < res; ++i) {
        Point z(K.lo[0] + (i + 0.5) * K.side(0) / res,
                K.lo[1] + (j + 0.5) * K.side(1) / res);
        if (!u.has_gradient() && near_kink(u, z, guard)) continue;
        add_atom(z, grad_at(z));
      }
  }
  if (atoms.empty()) throw numeric_error("extend: no usable atoms in K");
  return QuadraticBundle(eta, std::move(atoms));
}

}  // namespace lusin
