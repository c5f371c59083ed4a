#include "lusin/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lusin {

GridFunction::GridFunction(const Box& b, int rx, int ry) : box(b), nx(rx) {
  if (b.dim() == 1) {
    if (ry != 0) throw config_error("1-D grid cannot have a y resolution");
    ny = 1;
  } else {
    if (ry <= 0) throw config_error("2-D grid needs a positive y resolution");
    ny = ry;
  }
  if (nx <= 0) throw config_error("grid resolution must be positive");
  values.assign(static_cast<size_t>(nx) * ny, 0.0);
}

Point GridFunction::node(int i) const { return Point(box.lo[0] + (i + 0.5) * h(0)); }

Point GridFunction::node2(int i, int j) const {
  return Point(box.lo[0] + (i + 0.5) * h(0), box.lo[1] + (j + 0.5) * h(1));
}

Point GridFunction::node_flat(int idx) const {
  if (dim() == 1) return node(idx);
  return node2(idx % nx, idx / nx);
}

double GridFunction::max_abs() const {
  double m = 0;
  for (double v : values) m = std::max(m, std::fabs(v));
  return m;
}
double GridFunction::min_value() const {
  double m = std::numeric_limits<double>::infinity();
  for (double v : values) m = std::min(m, v);
  return m;
}
double GridFunction::max_value() const {
  double m = -std::numeric_limits<double>::infinity();
  for (double v : values) m = std::max(m, v);
  return m;
}

GridFunction sample_grid(const std::function<double(const Point&)>& f, const Box& box, int rx,
                         int ry) {
  GridFunction g(box, rx, ry);
  for (int idx = 0; idx < g.size(); ++idx) {
    double v = f(g.node_flat(idx));
    if (!std::isfinite(v)) throw numeric_error("sample_grid: non-finite value at node");
    g.values[idx] = v;
  }
  return g;
}

GridFunction sample_grid(const ValueOracle& f, const Box& box, int rx, int ry) {
  if (f.dim != box.dim()) throw config_error("sample_grid: oracle/box dimension mismatch");
  return sample_grid(f.value, box, rx, ry);
}

namespace {

// 1-D pass along one axis of the flat array.
void fd_axis(const std::vector<double>& in, std::vector<double>& out, int n, int stride,
             int lines, int line_stride, double h, int order) {
  for (int l = 0; l < lines; ++l) {
    const double* f = in.data() + static_cast<size_t>(l) * line_stride;
    double* d = out.data() + static_cast<size_t>(l) * line_stride;
    auto F = [&](int i) { return f[static_cast<size_t>(i) * stride]; };
    auto D = [&](int i) -> double& { return d[static_cast<size_t>(i) * stride]; };
    if (order == 1) {
      if (n < 3) throw config_error("fd_derivative needs at least 3 nodes per axis");
      D(0) = (-3 * F(0) + 4 * F(1) - F(2)) / (2 * h);
      D(n - 1) = (3 * F(n - 1) - 4 * F(n - 2) + F(n - 3)) / (2 * h);
      for (int i = 1; i < n - 1; ++i) D(i) = (F(i + 1) - F(i - 1)) / (2 * h);
    } else {
      if (n < 4) throw config_error("fd second derivative needs at least 4 nodes per axis");
      double h2 = h * h;
      D(0) = (2 * F(0) - 5 * F(1) + 4 * F(2) - F(3)) / h2;
      D(n - 1) = (2 * F(n - 1) - 5 * F(n - 2) + 4 * F(n - 3) - F(n - 4)) / h2;
      for (int i = 1; i < n - 1; ++i) D(i) = (F(i + 1) - 2 * F(i) + F(i - 1)) / h2;
    }
  }
}

}  // namespace

GridFunction fd_derivative(const GridFunction& g, int order_x, int order_y) {
  if (order_x < 0 || order_y < 0 || order_x + order_y > 2)
    throw config_error("fd_derivative supports total order <= 2");
  if (g.dim() == 1 && order_y > 0) throw config_error("no y derivative on a 1-D grid");
  GridFunction out = g;
  if (order_x == 2) {
    fd_axis(g.values, out.values, g.nx, 1, g.ny, g.nx, g.h(0), 2);
  } else if (order_x == 1) {
    fd_axis(g.values, out.values, g.nx, 1, g.ny, g.nx, g.h(0), 1);
  }
  if (order_y > 0) {
    std::vector<double> tmp = out.values;
    if (order_y == 2) {
      // column pass: stride nx, lines nx, line stride 1
      fd_axis(tmp, out.values, g.ny, g.nx, g.nx, 1, g.h(1), 2);
    } else {
      fd_axis(tmp, out.values, g.ny, g.nx, g.nx, 1, g.h(1), 1);
    }
  }
  if (order_x == 0 && order_y == 0) out = g;
  return out;
}

const GridFunction& DerivativeSet::get(int ox, int oy) const {
  for (const auto& [key, grid] : parts)
    if (key.first == ox && key.second == oy) return grid;
  throw config_error("derivative not present in set");
}

DerivativeSet fd_derivatives(const GridFunction& g, int m) {
  if (m < 0 || m > 2) throw config_error("fd_derivatives supports m <= 2");
  DerivativeSet s;
  for (int total = 0; total <= m; ++total) {
    for (int ox = total; ox >= 0; --ox) {
      int oy = total - ox;
      if (g.dim() == 1 && oy > 0) continue;
      s.parts.push_back({{ox, oy}, fd_derivative(g, ox, oy)});
    }
  }
  return s;
}

double lp_norm(const GridFunction& g, double p) {
  if (std::isinf(p)) return g.max_abs();
  if (p < 1) throw config_error("lp_norm requires p >= 1");
  double cell = g.cell_measure();
  double s = 0;
  for (double v : g.values) s += std::pow(std::fabs(v), p);
  return std::pow(s * cell, 1.0 / p);
}

double sobolev_norm(const DerivativeSet& d, double p) {
  double s = 0;
  for (const auto& [key, grid] : d.parts) s += lp_norm(grid, p);
  return s;
}

double sobolev_norm(const GridFunction& g, int m, double p) {
  return sobolev_norm(fd_derivatives(g, m), p);
}

double measure_where(const GridFunction& g, const std::function<bool(double)>& pred) {
  long count = 0;
  for (double v : g.values) count += pred(v) ? 1 : 0;
  return count * g.cell_measure();
}

double disagreement(const GridFunction& a, const GridFunction& b, double tau) {
  if (a.size() != b.size()) throw config_error("disagreement: grid size mismatch");
  long count = 0;
  for (int i = 0; i < a.size(); ++i)
    if (std::fabs(a.values[i] - b.values[i]) > tau) ++count;
  return count * a.cell_measure();
}

unsigned long long Rng::next_u64() {
  state_ += 0x9E3779B97F4A7C15ull;
  unsigned long long z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double Rng::uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

double Rng::uniform(double a, double b) { return a + (b - a) * uniform(); }

Point Rng::uniform_point(const Box& box) {
  if (box.dim() == 1) return Point(uniform(box.lo[0], box.hi[0]));
  double x = uniform(box.lo[0], box.hi[0]);
  double y = uniform(box.lo[1], box.hi[1]);
  return Point(x, y);
}

}  // namespace lusin
