#pragma once

#include <vector>

#include "lusin/grid.hpp"
#include "lusin/mollify.hpp"
#include "lusin/partition.hpp"
#include "lusin/types.hpp"

namespace lusin {

// Largest sup-norm of second derivatives a perturbation f may carry so that
// u + f stays eta_tilde-strongly convex when u is eta-strongly convex:
// n * max_{|alpha|=2} ||D^alpha f||_inf <= eta - eta_tilde.
double perturbation_budget(double eta, double eta_tilde, int dim);

struct AnnulusReport {
  int index = 0;
  double delta = 0;            // accepted mollification width
  int halvings = 0;
  double norm_contribution = 0;  // weighted W^{2,q} contribution on the annulus
  double gradient_gap = 0;       // sup |D(u_delta - u)| on the annulus
  double value_gap = 0;          // sup |u_delta - u| on the annulus
  long nodes = 0;
};

struct PatchedOptions {
  int resolution = 4096;    // per axis
  double delta_start = 0.5;
  int max_halvings = 40;
};

struct PatchedResult {
  ValueOracle v;
  std::vector<AnnulusReport> annuli;
  double eta_in = 0, eta_out = 0;
  double hessian_budget = 0;  // (eta_in - eta_out), consumed by the two
                              // partition perturbation terms (half each)
};

// Annulus-by-annulus smoothing u_Delta = sum_i theta_i * (u * phi_{delta_i}).
// Each width delta_i is halved from delta_start until
//   (a) the annulus W^{2,q} contribution is below eps * 2^{-i-2}, and
//   (b) the two Hessian-perturbation terms driven by |D(u_delta - u)| and
//       |u_delta - u| each stay within their share of (eta_in - eta_out)/2.
// The result is C^2, eta_out-strongly convex, with ||u - u_Delta||_{2,q}
// below eps on the box grid.
PatchedResult patched_smooth(const ValueOracle& u, double eta_in, double eta_out, double eps,
                             double q, const Box& box, const PatchedOptions& opt = {});

}  // namespace lusin
