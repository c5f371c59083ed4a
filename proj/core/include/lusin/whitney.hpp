#pragma once

#include <vector>

#include "lusin/grid.hpp"
#include "lusin/maximal.hpp"
#include "lusin/smoothing.hpp"
#include "lusin/types.hpp"

namespace lusin {

// Empirically calibrated constants of the correction pipeline. c_p scales the
// pointwise Taylor-remainder estimates against the maximal function, c_w the
// amplification of the extension over its jet bound, c_o the measure of the
// discarded set per unit of W^{2,1} mass, and c_star = 4 c_o couples the
// truncation level to the target approximation accuracy.
struct Constants {
  double c_p = 0.25;
  // Calibrated so the truncated Whitney pieces sum to at most the truncation
  // level in the W^{2,inf} norm (measured headroom is about 3x).
  double c_w = 3.2;
  double c_o = 1.2;
  double c_star() const { return 4.0 * c_o; }
};

// First-order jet (value and slope) at a node.
struct WhitneyJet {
  double x = 0, u0 = 0, u1 = 0;
};

// C^2 extension of first-order jets on a finite 1-D node set. Equal to the
// jets at the nodes; across each gap it blends the two Taylor polynomials
// with a quintic smoothstep; beyond the extreme nodes the boundary Taylor
// polynomial is faded out by a C^2 cutoff over two unit-length bands.
class WhitneyExtension {
 public:
  WhitneyExtension() = default;
  explicit WhitneyExtension(std::vector<WhitneyJet> jets);

  double value(double x) const;
  double d1(double x) const;
  double d2(double x) const;

  const std::vector<WhitneyJet>& jets() const { return jets_; }

  // Jet compatibility bound: max of |u0|, |u1| and the first-order Taylor
  // remainder quotients over node pairs (all pairs when the suite is small,
  // consecutive pairs otherwise).
  double jet_bound() const;

  // Grid-sampled ||U||_{2,inf} over a box (analytic derivatives).
  double norm_2inf(const Box& box, int resolution = 4096) const;

  ValueOracle as_oracle() const;

 private:
  std::vector<WhitneyJet> jets_;
  int locate(double x) const;
};

WhitneyExtension whitney_extend_1d(std::vector<WhitneyJet> jets);

// Empirical constant of the pointwise Taylor estimates: the largest ratio of
// remainder to |x-y|^(2-|alpha|) (M(x) + M(y)) over sampled node pairs,
// where M is the maximal function of the FD second derivative.
struct RemainderReport {
  double c_p = 0;       // max ratio observed
  int pairs = 0;
};
RemainderReport taylor_remainder_check(const GridFunction& u, int pairs = 20000,
                                       unsigned long long seed = 1);

// Node partition for the truncation step: G0 collects nodes where the
// function or slope exceeds a/(2 n c_w) (fattened by one cell), G1 where the
// maximal function of the second derivative exceeds a/(4 n c_p c_w); the
// regular set F is the complement.
struct RegularSet {
  std::vector<char> f_mask;   // 1 = node kept
  double measure_g0 = 0, measure_g1 = 0, measure_g = 0, measure_f = 0;
  double threshold_low = 0, threshold_high = 0;
};
RegularSet select_regular_set(const GridFunction& u, double a, const Constants& c = {});

// One truncation: keep u on the regular set, Whitney-extend across the rest.
struct TruncateResult {
  WhitneyExtension w;
  RegularSet region;
};
TruncateResult truncate_correct(const GridFunction& u, double a, const Constants& c = {});

struct IterationRecord {
  int k = 0;
  double level = 0;          // truncation level 2^{-(k+1)} a
  double norm21_u = 0;       // ||u_k||_{2,1} entering the step
  double target21 = 0;       // mollification acceptance target
  double achieved21 = 0;     // ||w - v||_{2,1} reached
  double eps = 0;            // accepted mollification width
  double norm2inf_v = 0;     // grid ||v_k||_{2,inf}
  double measure_e = 0;      // |{u_{k-1} != w_k}|
  bool exhausted = false;    // mollification halvings ran out here
};

struct CorrectionResult {
  ValueOracle v;                      // sum of the mollified truncations
  std::vector<IterationRecord> trace;
  GridFunction mismatch;              // u - v on the grid
  double sup_mismatch = 0;
  double norm21_input = 0;
  double a = 0;
  double changed_measure = 0;         // measure of the union of the E_k
  double measured_c_star = 0;         // changed_measure * a / ||u||_{2,1}
  double norm2inf_v = 0;              // grid ||v||_{2,inf}
};

struct CorrectionOptions {
  double tol = 1e-9;        // stop when ||u_k||_{2,1} <= tol ||u||_{2,1}
  int max_iterations = 40;
  int max_halvings = 40;
  double eps_start = 0.5;
};

// Iterated truncate-and-mollify correction. Stops at the tolerance, the
// iteration cap, or the numeric floor (when the mollification width search
// can no longer meet the geometric target); errors only if no progress is
// possible at all.
CorrectionResult iterate_correction(const GridFunction& u, double a,
                                    const CorrectionOptions& opt = {},
                                    const Constants& c = {});

struct LusinOptions {
  int resolution = 4096;
  CorrectionOptions correction;
  Constants constants;
  // Pre-smooth declared kinks with one-sided-jet smooth maxima before the
  // grid stages. Callers that need node exactness (e.g. the gluing driver,
  // which resolves kinks through its own smooth-max assembly) turn this off.
  bool smooth_kinks = true;
};

struct LusinResult {
  ValueOracle v;                // C^2, eta_out-strongly convex
  PatchedResult patched;
  CorrectionResult correction;
  double eps = 0;
  double a = 0;
  double hessian_budget_used = 0;   // n * max FD |D^2 w|
  double hessian_budget_cap = 0;    // (eta_in - eta_out) / 2
  double sup_mismatch = 0;          // sup |u - v| over grid nodes
  GridFunction mismatch;            // u - v on the grid
};

// C^2 strongly convex approximation agreeing with u outside a small set:
// smooth with patched_smooth to the midpoint modulus, then correct the
// residue back with iterate_correction at truncation level a = c_star * eps.
LusinResult lusin_c2_approx(const ValueOracle& u, double eta_in, double eta_out, double eps,
                            const Box& box, const LusinOptions& opt = {});

}  // namespace lusin
