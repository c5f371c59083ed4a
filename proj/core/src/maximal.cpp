#include "lusin/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace lusin {

GridFunction maximal_function(const GridFunction& g) {
  GridFunction out = g;
  if (g.dim() == 1) {
    const int n = g.nx;
    std::vector<double> prefix(n + 1, 0.0);
    for (int i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + std::fabs(g.values[i]);
    for (int i = 0; i < n; ++i) {
      double best = 0;
      int wmax = std::max(i, n - 1 - i);
      for (int w = 0; w <= wmax; ++w) {
        int lo = std::max(0, i - w), hi = std::min(n - 1, i + w);
        double avg = (prefix[hi + 1] - prefix[lo]) / (hi - lo + 1);
        best = std::max(best, avg);
      }
      out.values[i] = best;
    }
    return out;
  }

  const int nx = g.nx, ny = g.ny;
  const double hx = g.h(0), hy = g.h(1);
  // Per-row prefix sums of |g|.
  std::vector<double> prefix(static_cast<size_t>(ny) * (nx + 1), 0.0);
  for (int j = 0; j < ny; ++j) {
    double* p = prefix.data() + static_cast<size_t>(j) * (nx + 1);
    const double* v = g.values.data() + static_cast<size_t>(j) * nx;
    for (int i = 0; i < nx; ++i) p[i + 1] = p[i] + std::fabs(v[i]);
  }
  double diam = std::hypot(nx * hx, ny * hy);
  int rsteps = static_cast<int>(std::ceil(diam / std::min(hx, hy)));
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      double cx = (i + 0.5) * hx, cy = (j + 0.5) * hy;
      double best = std::fabs(g.at(i, j));
      for (int m = 1; m <= rsteps; ++m) {
        double r = m * std::min(hx, hy);
        double sum = 0;
        long count = 0;
        int jlo = std::max(0, static_cast<int>(std::floor((cy - r) / hy - 0.5)));
        int jhi = std::min(ny - 1, static_cast<int>(std::ceil((cy + r) / hy - 0.5)));
        for (int jj = jlo; jj <= jhi; ++jj) {
          double dy = (jj + 0.5) * hy - cy;
          double span2 = r * r - dy * dy;
          if (span2 < 0) continue;
          double span = std::sqrt(span2);
          int ilo = std::max(0, static_cast<int>(std::ceil((cx - span) / hx - 0.5)));
          int ihi = std::min(nx - 1, static_cast<int>(std::floor((cx + span) / hx - 0.5)));
          if (ihi < ilo) continue;
          const double* p = prefix.data() + static_cast<size_t>(jj) * (nx + 1);
          sum += p[ihi + 1] - p[ilo];
          count += ihi - ilo + 1;
        }
        if (count > 0) best = std::max(best, sum / count);
        if (r > diam) break;
      }
      out.at(i, j) = best;
    }
  }
  return out;
}

WeakTypeReport weak_type_check(const GridFunction& g, const GridFunction& mg, double t) {
  if (!(t > 0)) throw config_error("weak_type_check: t must be positive");
  if (g.size() != mg.size()) throw config_error("weak_type_check: grid mismatch");
  WeakTypeReport r;
  r.t = t;
  r.level_set_measure = measure_where(mg, [t](double v) { return v > t; });
  double l1 = lp_norm(g, 1.0);
  r.bound = std::pow(5.0, g.dim()) / t * l1;
  r.pass = r.level_set_measure <= r.bound;
  return r;
}

}  // namespace lusin
