#pragma once

#include <vector>

#include "lusin/types.hpp"

namespace lusin {

// Uniform cell-centered grid over a box. Node i sits at lo + (i + 1/2) h.
// Measures of node sets are (#nodes) * h^n.
struct GridFunction {
  Box box;
  int nx = 0;
  int ny = 1;  // 1 for 1-D grids
  std::vector<double> values;

  GridFunction() = default;
  GridFunction(const Box& b, int rx, int ry = 0);

  int dim() const { return box.dim(); }
  int size() const { return nx * ny; }
  double h(int axis = 0) const { return box.side(axis) / (axis == 0 ? nx : ny); }
  double cell_measure() const { return dim() == 1 ? h(0) : h(0) * h(1); }

  Point node(int i) const;                  // 1-D
  Point node2(int i, int j) const;          // 2-D
  Point node_flat(int idx) const;           // either
  double& at(int i, int j = 0) { return values[j * nx + i]; }
  double at(int i, int j = 0) const { return values[j * nx + i]; }

  double max_abs() const;
  double min_value() const;
  double max_value() const;
};

// Evaluate f at every node; errors on non-finite values.
GridFunction sample_grid(const ValueOracle& f, const Box& box, int rx, int ry = 0);
GridFunction sample_grid(const std::function<double(const Point&)>& f, const Box& box, int rx,
                         int ry = 0);

// Finite-difference partial derivative, O(h^2): central in the interior,
// one-sided (second order) at the boundary. order_x + order_y <= 2.
GridFunction fd_derivative(const GridFunction& g, int order_x, int order_y = 0);

// All FD derivatives through total order m (m <= 2), keyed by (ox, oy).
struct DerivativeSet {
  std::vector<std::pair<std::pair<int, int>, GridFunction>> parts;
  const GridFunction& get(int ox, int oy = 0) const;
};
DerivativeSet fd_derivatives(const GridFunction& g, int m);

// Lp norm of a single grid (Riemann sum); p = infinity() gives the sup norm.
double lp_norm(const GridFunction& g, double p);

// Grid Sobolev norm: sum over multi-indices |alpha| <= m of ||D^alpha g||_p.
double sobolev_norm(const GridFunction& g, int m, double p);
double sobolev_norm(const DerivativeSet& d, double p);

// Measure of the node set where pred holds.
double measure_where(const GridFunction& g, const std::function<bool(double)>& pred);

// Measure of {|a - b| > tau} on a shared grid.
double disagreement(const GridFunction& a, const GridFunction& b, double tau);

// Deterministic RNG (splitmix64); identical streams across platforms.
class Rng {
 public:
  explicit Rng(unsigned long long seed) : state_(seed) {}
  unsigned long long next_u64();
  double uniform();                       // [0, 1)
  double uniform(double a, double b);     // [a, b)
  Point uniform_point(const Box& box);

 private:
  unsigned long long state_;
};

}  // namespace lusin
