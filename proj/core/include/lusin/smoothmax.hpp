#pragma once

#include "lusin/types.hpp"

namespace lusin {

// Even convex C^2 regularization of |t| that agrees with |t| exactly for
// |t| >= delta. Built as |.| convolved with the quartic profile
// phi(s) = (15/16)(1 - s^2)^2 scaled to width delta, which gives the closed
// forms below (tau = t/delta):
//   theta(t)  = delta * (5/16 + (15/8)(tau^2/2 - tau^4/6 + tau^6/30))
//   theta'(t) = (15/8)(tau - (2/3) tau^3 + (1/5) tau^5)
//   theta''(t)= (15/8)(1 - tau^2)^2 / delta
class ThetaKernel {
 public:
  explicit ThetaKernel(double delta);
  double delta() const { return delta_; }
  double value(double t) const;
  double d1(double t) const;
  double d2(double t) const;

 private:
  double delta_;
};

ThetaKernel build_theta(double delta);

// Smooth maximum M_delta(a, b) = (a + b + theta(a - b)) / 2. Equal to
// max(a, b) whenever |a - b| >= delta, never below the max, and never more
// than delta/2 above it. Preserves a shared modulus of strong convexity of
// the two arguments.
double smooth_max(const ThetaKernel& theta, double a, double b);

// Smooth maximum of two functions, with gradient by the chain rule when both
// arguments supply one.
ValueOracle smooth_max(const ThetaKernel& theta, const ValueOracle& u, const ValueOracle& v);

// Replaces each isolated kink (or tight cluster of kinks) of a 1-D function
// by the smooth maximum of its two one-sided second-order jets over a window
// around the kink. The result agrees with u exactly outside transition bands
// of total width at most width_budget and is C^2 across every smoothed kink.
// A kink is smoothed only when u matches its one-sided quadratic models on
// the whole window; clusters that are too wide, too close to a neighbor, or
// below min_width are left untouched. Convexity is preserved: the jets of a
// convex function meet in an upward kink, and the smooth maximum of two
// quadratics with curvature >= eta stays eta-strongly convex.
ValueOracle smooth_kinks(const ValueOracle& u, const Box& box, double width_budget,
                         double min_width);

}  // namespace lusin
