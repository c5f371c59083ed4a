#pragma once

#include <memory>
#include <vector>

#include "lusin/bundle.hpp"
#include "lusin/grid.hpp"
#include "lusin/smoothmax.hpp"
#include "lusin/types.hpp"
#include "lusin/whitney.hpp"

namespace lusin {

// Global approximation of u on an open box U by gluing local C^2 strongly
// convex approximations over an exhaustion by nested bodies B_1 c B_2 c ...
// The schedule fixes, per level k:
//   r_k     grid minimum of the tolerance profile eps(x) over B_{k+1}
//   L_k     slope constant (2 + osc of u over B_{k+1}) / dist(dB_k, dB_{k+1})
//   a_k     collar width, half the tightest of the sup-norm and measure caps
//   C_k     the collar B_k + a_k
//   beta_k  grid infimum over B_k of u - u_{k+1}
//   delta_k grid infimum over B_{k+1} \ int C_k of u - u_k
//   eps_k   per-level budget, (1/3) min of the measure cap, beta_k, delta_k,
//           clamped to be nonincreasing in k
// where u_k is the minimal local extension (a quadratic bundle with atoms at
// every schedule-grid node of B_k \ int C_{k-1}, modulus eta_{k+8}).

struct ScheduleLevel {
  Body body;              // B_k
  Body collar;            // C_k = B_k + a_k
  double a = 0;           // collar width a_k
  double r = 0;           // min eps(x) over B_{k+1}
  double lip = 0;         // Lipschitz bound of u on B_{k+1}
  double slope = 0;       // L_k
  double beta = 0;        // inf_{B_k} (u - u_{k+1})
  double delta = 0;       // inf_{B_{k+1} \ int C_k} (u - u_k)
  double eps = 0;         // eps_k
};

struct ScheduleOptions {
  int levels = 4;            // K
  int resolution = 8192;     // global schedule/verification grid over U
  double coverage = 0.96;    // B_K radius as a fraction of the domain radius
  double first_fraction = 0.3;  // B_1 radius fraction
  double safety = 0.9;       // safety factor on the grid infima beta, delta
};

struct AnnulusSchedule {
  Box domain;                      // U
  std::vector<Body> bodies;        // B_1 .. B_{K+2}
  std::vector<double> moduli;      // eta_1 > ... > eta_{K+9}
  std::vector<ScheduleLevel> levels;  // k = 1..K (index k-1)
  std::vector<QuadraticBundle> extensions;  // u_1 .. u_{K+1}
  int levels_count = 0;            // K
  double eps_o = 0;                // global budget
  int resolution = 0;              // the grid the infima were taken on
  double eta_out() const { return moduli.back(); }  // eta_{K+9}
};

// Builds the schedule for u over `domain` with profile eps(x) and global
// budget eps_o. Checks eps(x) > 0 on the grid and eps_k > 0 per level;
// verifies sum_k eps_k < eps_o / 2.
AnnulusSchedule build_schedule(const ValueOracle& u, const Box& domain,
                               const ValueOracle& envelope, double eps_o,
                               const ScheduleOptions& opt = {});

// Minimal eta-strongly convex extension of u from the region
// outer \ int(inner) (inner may be null), with atoms exactly at the nodes of
// the schedule grid that fall in the region.
QuadraticBundle local_extension(const ValueOracle& u, const Body& outer, const Body* inner,
                                double eta, const Box& domain, int resolution,
                                double fd_step = 1e-6);

enum class GlueStrategy {
  LusinCorrection,  // per-level C^2 approximations that agree with u_k off a small set
  MollifyOnly       // per-level patched smoothing only (uniform error, no exact agreement)
};

struct GlueLevelReport {
  int k = 0;
  double eps_used = 0;       // accepted per-level approximation parameter
  int attempts = 0;
  double sup_mismatch = 0;   // sup |u_k - h_k| over B_{k+1} grid nodes
  double mismatch_measure = 0;  // |{|u_k - h_k| > tau}| on B_{k+1}
  double branch_low = 0;     // min (h_{k-1} - h_k - eps_{k-1}) on B_{k-1} \ C_{k-2}
  double branch_high = 0;    // min (h_k - h_{k-1} - eps_{k-1}) on B_k \ C_{k-1}
  double exactness = 0;      // max |v - h_k| on B_k \ C_{k-1}
};

struct GlueOptions {
  GlueStrategy strategy = GlueStrategy::LusinCorrection;
  int max_attempts = 10;     // per-level shrink-and-retry budget
  double tau = 1e-9;
  LusinOptions lusin;
  PatchedOptions patched;
};

// The glued function: v = h_1 on B_1, and the smooth maximum
// M_{eps_{k-1}}(h_{k-1}, h_k) on B_k \ B_{k-1}.
class GluedFunction {
 public:
  GluedFunction(std::vector<Body> bodies, std::vector<ValueOracle> pieces,
                std::vector<double> eps);

  double value(const Point& p) const;
  Point gradient(const Point& p) const;
  ValueOracle as_oracle(double modulus) const;

  int level_at(const Point& p) const;  // smallest k with p in B_k (1-based)

 private:
  std::vector<Body> bodies_;
  std::vector<ValueOracle> pieces_;   // h_1 .. h_K
  std::vector<ThetaKernel> thetas_;   // kernel for eps_1 .. eps_{K-1}
};

struct GlueResult {
  ValueOracle v;
  AnnulusSchedule schedule;
  std::vector<GlueLevelReport> levels;
  double branch_margin = 0;   // worst slack in the two-branch inequalities
  double exactness = 0;       // worst |v - h_k| where the max must collapse
};

// Runs the per-level approximations and assembles the glued function.
// Throws a Verification error if a level cannot reach its eps_k budget
// within the retry limit, or if a branch inequality fails on the grid.
GlueResult glue(const ValueOracle& u, const AnnulusSchedule& schedule,
                const GlueOptions& opt = {});

}  // namespace lusin
