#include "lusin/smoothmax.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

namespace lusin {

ThetaKernel::ThetaKernel(double delta) : delta_(delta) {
  if (!(delta > 0)) throw config_error("theta kernel width must be positive");
}

ThetaKernel build_theta(double delta) { return ThetaKernel(delta); }

double ThetaKernel::value(double t) const {
  double a = std::fabs(t);
  if (a >= delta_) return a;
  double tau = t / delta_;
  double t2 = tau * tau;
  return delta_ * (5.0 / 16.0 + (15.0 / 8.0) * t2 * (0.5 + t2 * (-1.0 / 6.0 + t2 / 30.0)));
}

double ThetaKernel::d1(double t) const {
  if (t >= delta_) return 1.0;
  if (t <= -delta_) return -1.0;
  double tau = t / delta_;
  double t2 = tau * tau;
  return (15.0 / 8.0) * tau * (1.0 + t2 * (-2.0 / 3.0 + t2 / 5.0));
}

double ThetaKernel::d2(double t) const {
  if (std::fabs(t) >= delta_) return 0.0;
  double tau = t / delta_;
  double w = 1.0 - tau * tau;
  return (15.0 / 8.0) * w * w / delta_;
}

double smooth_max(const ThetaKernel& theta, double a, double b) {
  if (std::fabs(a - b) >= theta.delta()) return std::max(a, b);
  return 0.5 * (a + b + theta.value(a - b));
}

ValueOracle smooth_max(const ThetaKernel& theta, const ValueOracle& u, const ValueOracle& v) {
  if (u.dim != v.dim) throw config_error("smooth_max: dimension mismatch");
  ValueOracle o;
  o.dim = u.dim;
  o.modulus = std::min(u.modulus, v.modulus);
  o.smoothness = (u.smoothness == Smoothness::CInf && v.smoothness == Smoothness::CInf)
                     ? Smoothness::C2
                     : std::min(u.smoothness, v.smoothness);
  o.value = [theta, uf = u.value, vf = v.value](const Point& p) {
    return smooth_max(theta, uf(p), vf(p));
  };
  if (u.has_gradient() && v.has_gradient()) {
    o.gradient = [theta, uf = u.value, vf = v.value, ug = u.gradient,
                  vg = v.gradient](const Point& p) {
      double a = uf(p), b = vf(p);
      if (a - b >= theta.delta()) return ug(p);
      if (b - a >= theta.delta()) return vg(p);
      double w = theta.d1(a - b);
      Point ga = ug(p), gb = vg(p);
      return (ga + gb + (ga - gb) * w) * 0.5;
    };
  }
  // kinks of either argument may survive outside the blending band
  o.kinks = u.kinks;
  o.kinks.insert(o.kinks.end(), v.kinks.begin(), v.kinks.end());
  return o;
}

namespace {

// One-sided quadratic model q(x) = u0 + s (x - z) + 0.5 c (x - z)^2.
struct Jet {
  double z = 0, u0 = 0, s = 0, c = 0;
  double value(double x) const {
    double d = x - z;
    return u0 + s * d + 0.5 * c * d * d;
  }
  double d1(double x) const { return s + c * (x - z); }
};

Jet jet_at(const ValueOracle& u, double z, double step) {
  // Central differences; exact when u is quadratic around z.
  double um = u.value(Point(z - step)), u0 = u.value(Point(z)), up = u.value(Point(z + step));
  Jet j;
  j.z = z;
  j.u0 = u0;
  j.s = (up - um) / (2.0 * step);
  j.c = (up - 2.0 * u0 + um) / (step * step);
  return j;
}

struct KinkWindow {
  double lo = 0, hi = 0;
  Jet left, right;
  ThetaKernel theta{1.0};
};

}  // namespace

ValueOracle smooth_kinks(const ValueOracle& u, const Box& box, double width_budget,
                         double min_width) {
  if (u.dim != 1 || box.dim() != 1 || u.kinks.empty() || !(width_budget > 0)) return u;

  // Kinks inside the box, sorted, finite, with a genuine one-sided slope jump.
  std::vector<double> ks;
  for (double k : u.kinks) {
    if (std::isfinite(k) && box.contains(Point(k), 0.0)) ks.push_back(k);
  }
  std::sort(ks.begin(), ks.end());

  double scale = 1.0;
  {
    Point mid = box.lo * 0.5 + box.hi * 0.5;
    scale += std::fabs(u.value(mid));
  }

  // Merge kinks closer than the window scale into clusters.
  struct Cluster {
    double lo, hi;
  };
  std::vector<Cluster> clusters;
  for (double k : ks) {
    if (!clusters.empty() && k - clusters.back().hi < width_budget) {
      clusters.back().hi = k;
    } else {
      clusters.push_back({k, k});
    }
  }

  auto windows = std::make_shared<std::vector<KinkWindow>>();
  double budget_left = width_budget;
  for (std::size_t ci = 0; ci < clusters.size(); ++ci) {
    double zc = 0.5 * (clusters[ci].lo + clusters[ci].hi);
    double extent = 0.5 * (clusters[ci].hi - clusters[ci].lo);
    double neighbor = std::min(zc - box.lo[0], box.hi[0] - zc);
    if (ci > 0) neighbor = std::min(neighbor, zc - clusters[ci - 1].hi);
    if (ci + 1 < clusters.size()) neighbor = std::min(neighbor, clusters[ci + 1].lo - zc);

    double s = std::min(0.45 * neighbor, width_budget);
    double floor = std::max(min_width, 4.0 * extent);
    bool placed = false;
    while (s >= floor) {
      Jet ql = jet_at(u, zc - s, s / 16.0);
      Jet qr = jet_at(u, zc + s, s / 16.0);
      double jump = qr.d1(zc) - ql.d1(zc);
      if (!(jump > 1e-9 * (1.0 + std::fabs(ql.s) + std::fabs(qr.s)))) break;

      // The window is usable only where u coincides with its one-sided
      // quadratic models; otherwise shrink and retry.
      bool quadratic = true;
      for (double f : {0.35, 0.6, 0.85, 1.0}) {
        for (double side : {-1.0, 1.0}) {
          double x = zc + side * f * s;
          double model = std::max(ql.value(x), qr.value(x));
          if (std::fabs(u.value(Point(x)) - model) > 1e-9 * scale) {
            quadratic = false;
            break;
          }
        }
        if (!quadratic) break;
      }
      if (!quadratic) {
        s *= 0.5;
        continue;
      }

      // Transition band |ql - qr| < delta must close strictly inside the
      // window so the exact branch takes over before the splice point.
      double delta = 0.5 * jump * std::min(0.5 * s, budget_left);
      while (delta > 0 &&
             (std::fabs(ql.value(zc - s) - qr.value(zc - s)) < delta ||
              std::fabs(ql.value(zc + s) - qr.value(zc + s)) < delta)) {
        delta *= 0.5;
      }
      if (!(delta > 0.25 * jump * min_width)) break;

      budget_left -= 2.0 * delta / jump;
      windows->push_back({zc - s, zc + s, ql, qr, ThetaKernel(delta)});
      placed = true;
      break;
    }
    (void)placed;
  }
  if (windows->empty()) return u;

  ValueOracle out;
  out.dim = 1;
  out.modulus = u.modulus;
  out.smoothness = u.smoothness;
  out.kinks = u.kinks;
  out.breakpoints = u.breakpoints;
  for (const auto& w : *windows) {
    out.breakpoints.push_back(w.lo);
    out.breakpoints.push_back(w.hi);
  }
  auto find = [windows](double x) -> const KinkWindow* {
    for (const auto& w : *windows)
      if (x >= w.lo && x <= w.hi) return &w;
    return nullptr;
  };
  out.value = [uf = u.value, find](const Point& p) {
    if (const KinkWindow* w = find(p[0]))
      return smooth_max(w->theta, w->left.value(p[0]), w->right.value(p[0]));
    return uf(p);
  };
  out.gradient = [u, find](const Point& p) {
    if (const KinkWindow* w = find(p[0])) {
      double a = w->left.value(p[0]), b = w->right.value(p[0]);
      if (a - b >= w->theta.delta()) return Point(w->left.d1(p[0]));
      if (b - a >= w->theta.delta()) return Point(w->right.d1(p[0]));
      double t = w->theta.d1(a - b);
      double ga = w->left.d1(p[0]), gb = w->right.d1(p[0]);
      return Point(0.5 * (ga + gb + (ga - gb) * t));
    }
    if (u.has_gradient()) return u.gradient(p);
    throw numeric_error("smooth_kinks: base function has no gradient");
  };
  if (!u.has_gradient()) out.gradient = nullptr;
  return out;
}

}  // namespace lusin
