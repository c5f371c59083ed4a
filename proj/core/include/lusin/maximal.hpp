#pragma once

#include "lusin/grid.hpp"

namespace lusin {

// Discrete Hardy-Littlewood maximal function: at each node, the maximum over
// ball radii (from a single node up to the grid diameter) of the average of
// |g| over the nodes in ball(x, r) intersected with the box. Mg >= |g|
// pointwise by the zero-radius window.
GridFunction maximal_function(const GridFunction& g);

// Weak type (1,1) inequality |{Mg > t}| <= 5^n / t * ||g||_1 on the grid.
struct WeakTypeReport {
  double t = 0;
  double level_set_measure = 0;
  double bound = 0;
  bool pass = false;
};
WeakTypeReport weak_type_check(const GridFunction& g, const GridFunction& mg, double t);

}  // namespace lusin
