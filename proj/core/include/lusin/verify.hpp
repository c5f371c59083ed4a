#pragma once

#include <string>
#include <vector>

#include "lusin/convexity.hpp"
#include "lusin/grid.hpp"
#include "lusin/types.hpp"

namespace lusin {

// --- individual checks -----------------------------------------------------

// Measure of {|u - v| > tau} for each tau in `taus` (defaults sweep three
// decades around the working threshold 1e-9).
struct DisagreementRow {
  double tau = 0;
  double measure = 0;
};
std::vector<DisagreementRow> disagreement_sweep(const GridFunction& u, const GridFunction& v,
                                                std::vector<double> taus = {1e-12, 1e-9, 1e-6});

// Worst ratio |u - v| / eps(x) over the grid; requires eps > 0 at every node.
double sup_error_envelope(const GridFunction& u, const GridFunction& v,
                          const ValueOracle& envelope);

// Grid lower bound on the Hessian: the minimum FD second derivative (1-D) or
// minimum FD Hessian eigenvalue (2-D), skipping nodes within `exclusion`
// of a declared kink (default 2h). Nodes too close to the boundary for the
// central stencil are skipped as well.
double hessian_floor(const ValueOracle& f, const Box& box, int resolution,
                     double exclusion = -1.0);
double hessian_floor_grid(const GridFunction& g, const std::vector<double>& kinks,
                          double exclusion = -1.0);

// Area of the two graphs over the disagreement set:
// integral of sqrt(1 + |Du|^2) + sqrt(1 + |Dv|^2) where |u - v| > tau.
double graph_symmetric_difference(const GridFunction& u, const GridFunction& v, double tau);

// Discrete C^2 modulus: h * max over neighboring nodes of the jump in the FD
// second derivative. Bounded away from 0 under refinement at a kink
// (|x|'' contributes a jump ~ 2/h), and O(h^2) for C^3 functions.
double c2_modulus(const GridFunction& g);

struct C2ModulusRow {
  int resolution = 0;
  double modulus = 0;
};
std::vector<C2ModulusRow> c2_modulus_table(const ValueOracle& f, const Box& box,
                                           int base_resolution, int levels);

// Sup errors of a sequence of grids against a common target (all sampled on
// the target's grid); `monotone` means nonincreasing within `slack`.
struct ConvergenceCheck {
  std::vector<double> sup_errors;
  bool monotone = false;
};
ConvergenceCheck uniform_convergence_check(const std::vector<GridFunction>& seq,
                                           const GridFunction& target, double slack = 0.0);

// --- the combined report ----------------------------------------------------

struct VerifyOptions {
  int resolution = 4096;
  double tau = 1e-9;
  double disagreement_budget = 0;  // 0 disables the budget check
  double graph_budget = 0;         // 0 disables
  double eta = 0;                  // required modulus (certificate + floor)
  double hessian_slack = 1e-6;     // floor must exceed eta - slack
  const ValueOracle* envelope = nullptr;  // eps(x); null disables
  CertifyOptions certify;
};

struct ApproxReport {
  std::string name;
  double eta = 0;
  ConvexityCertificate convexity;
  std::vector<DisagreementRow> sweep;
  double disagreement = 0;        // at the working tau
  double disagreement_budget = 0;
  double sup_error_ratio = 0;     // max |u-v| / eps(x) (0 when no envelope)
  bool envelope_checked = false;
  double hessian_floor = 0;
  double hessian_required = 0;
  double graph_difference = 0;
  double graph_budget = 0;
  bool pass = false;

  std::string to_json() const;
};

// Runs every check of the approximation v against the reference u.
ApproxReport verify_approximation(const ValueOracle& u, const ValueOracle& v, const Box& box,
                                  const VerifyOptions& opt);

}  // namespace lusin
