#pragma once

#include "lusin/bundle.hpp"
#include "lusin/grid.hpp"
#include "lusin/types.hpp"

namespace lusin {

// Empirical certificate that u(y) >= u(x) + <xi, y-x> + (eta/2)|y-x|^2
// over sampled pairs, with xi a subgradient at x. Residuals are relative to
// 1 + |u(x)| + |u(y)|.
struct ConvexityCertificate {
  double eta = 0;
  int trials = 0;
  int skipped = 0;  // pairs dropped because x fell in a kink neighborhood
  double worst_violation = 0;  // most negative residual seen (0 if none)
  Point worst_x, worst_y;
  bool pass = false;
};

struct CertifyOptions {
  int trials = 10000;
  unsigned long long seed = 1;
  double tol = 1e-9;              // relative tolerance on residuals
  double fd_step = 1e-5;          // step for FD gradients when none is given
  double kink_exclusion = 2e-4;   // skip-and-count radius around kinks for FD
};

ConvexityCertificate certify_strong_convexity(const ValueOracle& u, const Box& domain,
                                              double eta, const CertifyOptions& opt = {});

// Grid Lipschitz estimate for u restricted to A, from the oscillation of u
// over the enclosing body B: Lip(u|_A) <= (max_B u - min_B u) / dist(dA, dB).
struct LipschitzEstimate {
  double value = 0;     // the bound
  double max_b = 0, min_b = 0;
  double separation = 0;  // dist(dA, dB)
};
LipschitzEstimate lipschitz_bound(const ValueOracle& u, const Body& a, const Body& b,
                                  int resolution = 4096);

// Same oscillation quotient as a bound on sup_A |subgradients|.
double subdiff_norm_bound(const ValueOracle& u, const Body& a, const Body& b,
                          int resolution = 4096);

struct ExtendOptions {
  int samples = 1024;        // atoms per axis over K
  double fd_step = 1e-6;     // FD gradient step when u lacks a gradient
  double modulus_tol = 1e-9;
};

// Minimal eta-strongly convex extension of u|_K: a bundle whose atoms sample
// K (plus one-sided atoms at declared kinks in 1-D). Requires eta <= the
// modulus carried by u.
QuadraticBundle extend_strongly_convex(const ValueOracle& u, const Box& K, double eta,
                                       const ExtendOptions& opt = {});

}  // namespace lusin
