#pragma once

#include "lusin/types.hpp"

namespace lusin {

// Compactly supported C^2 mollifier profile phi(s) = c_n (1 - |s|^2)^3 on the
// unit ball, normalized so the integral is 1 (c_1 = 35/32, c_2 = 4/pi).
// The per-axis second moment drives the leading mollification error:
// in 1-D it is 1/9, so mollify(x^2, eps) = x^2 + eps^2/9 exactly.
struct MollifierKernel {
  int dim = 1;
  double normalizer() const;
  double second_moment() const;       // integral of s_1^2 phi(s) ds
  double value(double r2) const;      // phi at |s|^2 = r2 (0 outside the ball)
};

double mollifier_second_moment(int dim);

struct MollifyOptions {
  int max_splits = 64;  // cap on quadrature split points per evaluation
};

// Convolution f * phi_eps by Gauss-Legendre quadrature (order 16 per panel).
// The quadrature panels split at the kinks and breakpoints declared by f
// that fall inside the averaging ball, so the result is exact (to roundoff)
// for piecewise-polynomial f such as bundles. Carries a gradient evaluator
// when f has one. The modulus of strong convexity is preserved.
ValueOracle mollify(const ValueOracle& f, double eps, const MollifyOptions& opt = {});

}  // namespace lusin
