#include "lusin/mollify.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

namespace lusin {

namespace {

constexpr int kOrder = 16;

struct GaussRule {
  std::array<double, kOrder> node, weight;  // on [-1, 1]
};

GaussRule make_rule() {
  GaussRule r;
  for (int i = 0; i < kOrder; ++i) {
    // Newton iteration on P_16 from the Chebyshev initial guess.
    double x = std::cos(M_PI * (i + 0.75) / (kOrder + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= kOrder; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = kOrder * (x * p1 - p0) / (x * x - 1);
      double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    r.node[i] = x;
    r.weight[i] = 2.0 / ((1 - x * x) * dp * dp);
  }
  return r;
}

const GaussRule& rule() {
  static const GaussRule r = make_rule();
  return r;
}

// Split points of f inside (x0 - eps, x0 + eps) along axis 0, as s-values.
std::vector<double> split_points(const ValueOracle& f, double x0, double eps, int cap) {
  std::vector<double> s;
  auto scan = [&](const std::vector<double>& loci) {
    // loci are sorted by construction everywhere they are produced; a binary
    // search keeps this cheap when there are thousands of them.
    auto lo = std::lower_bound(loci.begin(), loci.end(), x0 - eps);
    auto hi = std::upper_bound(loci.begin(), loci.end(), x0 + eps);
    for (auto it = lo; it != hi; ++it) {
      double sv = (x0 - *it) / eps;
      if (sv > -1 && sv < 1) s.push_back(sv);
    }
  };
  scan(f.kinks);
  scan(f.breakpoints);
  std::sort(s.begin(), s.end());
  if (static_cast<int>(s.size()) > cap) {
    // Too many joints to honor individually (only happens for very wide
    // averaging balls, where the candidate is rejected downstream anyway):
    // keep a uniform subset.
    std::vector<double> thin;
    double stride = static_cast<double>(s.size()) / cap;
    for (int i = 0; i < cap; ++i) thin.push_back(s[static_cast<size_t>(i * stride)]);
    s = thin;
  }
  return s;
}

}  // namespace

double MollifierKernel::normalizer() const { return dim == 1 ? 35.0 / 32.0 : 4.0 / M_PI; }

double MollifierKernel::second_moment() const { return dim == 1 ? 1.0 / 9.0 : 1.0 / 10.0; }

double MollifierKernel::value(double r2) const {
  if (r2 >= 1) return 0;
  double w = 1 - r2;
  return normalizer() * w * w * w;
}

double mollifier_second_moment(int dim) { return MollifierKernel{dim}.second_moment(); }

ValueOracle mollify(const ValueOracle& f, double eps, const MollifyOptions& opt) {
  if (!(eps > 0)) throw config_error("mollify: eps must be positive");
  const int dim = f.dim;
  MollifierKernel ker{dim};
  const double cnorm = ker.normalizer();
  auto fval = f.value;
  auto fgrad = f.gradient;
  auto kinks = std::make_shared<std::vector<double>>(f.kinks);
  auto breaks = std::make_shared<std::vector<double>>(f.breakpoints);
  std::sort(kinks->begin(), kinks->end());
  std::sort(breaks->begin(), breaks->end());
  ValueOracle fsorted = f;
  fsorted.kinks = *kinks;
  fsorted.breakpoints = *breaks;
  int cap = opt.max_splits;

  // Integration in s over the unit ball of g(x - eps s) phi(s), split along
  // axis 0 at the joints of f. In 2-D the inner integral runs over the exact
  // chord of the ball, so polynomial integrands stay exact.
  auto integrate = [fsorted, eps, dim, cnorm, cap](const Point& x,
                                                   const std::function<double(const Point&)>& g) {
    const GaussRule& R = rule();
    std::vector<double> cuts = split_points(fsorted, x[0], eps, cap);
    cuts.insert(cuts.begin(), -1.0);
    cuts.push_back(1.0);
    double total = 0;
    for (size_t seg = 0; seg + 1 < cuts.size(); ++seg) {
      double a = cuts[seg], b = cuts[seg + 1];
      if (!(b > a)) continue;
      double mid = 0.5 * (a + b), half = 0.5 * (b - a);
      for (int i = 0; i < kOrder; ++i) {
        double s0 = mid + half * R.node[i];
        double w0 = half * R.weight[i];
        if (dim == 1) {
          double r2 = s0 * s0;
          if (r2 >= 1) continue;
          double w = 1 - r2;
          total += w0 * cnorm * w * w * w * g(Point(x[0] - eps * s0));
        } else {
          double chord2 = 1 - s0 * s0;
          if (chord2 <= 0) continue;
          double chord = std::sqrt(chord2);
          for (int j = 0; j < kOrder; ++j) {
            double s1 = chord * R.node[j];
            double w1 = chord * R.weight[j];
            double w = chord2 - s1 * s1;  // 1 - |s|^2 on the chord
            total += w0 * w1 * cnorm * w * w * w *
                     g(Point(x[0] - eps * s0, x[1] - eps * s1));
          }
        }
      }
    }
    return total;
  };

  ValueOracle out;
  out.dim = dim;
  out.modulus = f.modulus;
  out.smoothness = f.smoothness == Smoothness::CInf ? Smoothness::CInf : Smoothness::C2;
  out.value = [integrate, fval](const Point& x) {
    return integrate(x, fval);
  };
  if (f.has_gradient()) {
    out.gradient = [integrate, fgrad, dim](const Point& x) {
      Point g = Point::zero(dim);
      for (int i = 0; i < dim; ++i)
        g[i] = integrate(x, [fgrad, i](const Point& p) { return fgrad(p)[i]; });
      return g;
    };
  }
  // The mollified function is smooth; its remaining piecewise-polynomial
  // joints sit at (joint of f) +/- eps.
  std::vector<double> joints;
  for (double k : *kinks) {
    joints.push_back(k - eps);
    joints.push_back(k + eps);
  }
  for (double k : *breaks) {
    joints.push_back(k - eps);
    joints.push_back(k + eps);
  }
  std::sort(joints.begin(), joints.end());
  if (joints.size() <= 4096) out.breakpoints = joints;
  return out;
}

}  // namespace lusin
