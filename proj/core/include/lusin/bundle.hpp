#pragma once

#include <string>
#include <vector>

#include "lusin/types.hpp"

namespace lusin {

// One supporting quadratic: x -> u + <xi, x - z> + (eta/2) |x - z|^2.
struct BundleAtom {
  Point z;
  double u = 0;
  Point xi;
};

// Pointwise maximum of supporting quadratics sharing one modulus eta.
// This is the minimal eta-strongly convex function matching the sampled
// data: it reproduces the samples at their own atoms and stays below any
// eta-strongly convex function consistent with them.
class QuadraticBundle {
 public:
  QuadraticBundle() = default;
  QuadraticBundle(double eta, std::vector<BundleAtom> atoms);

  double eta() const { return eta_; }
  int dim() const { return atoms_.empty() ? 1 : atoms_[0].z.dim(); }
  const std::vector<BundleAtom>& atoms() const { return atoms_; }

  double eval(const Point& x) const;
  // Gradient of the active quadratic; ties resolved toward the atom with the
  // lowest index in the input order.
  Point subgradient(const Point& x) const;
  // Index of the active atom at x (lowest index on ties).
  int active_atom(const Point& x) const;

  // 1-D only: the sorted breakpoints of the upper envelope, i.e. the kink
  // loci of the bundle function. Empty for a single atom.
  std::vector<double> kink_loci() const;

  ValueOracle as_oracle() const;

  std::string to_json() const;
  static QuadraticBundle from_json(const std::string& text);
  static QuadraticBundle load(const std::string& path);
  void save(const std::string& path) const;

 private:
  double eta_ = 0;
  std::vector<BundleAtom> atoms_;

  // 1-D fast path: bundle(x) = (eta/2) x^2 + max_j (a_j + b_j x). The upper
  // envelope of the lines is precomputed; queries binary-search it.
  struct Hull {
    std::vector<double> slope, intercept, from;  // envelope pieces, from[i] = left edge
    std::vector<int> atom;                       // original atom index per piece
  };
  Hull hull_;
  void build_hull();
  int hull_piece(double x) const;
};

// Evaluate / differentiate (free-function spellings used throughout).
double eval_bundle(const QuadraticBundle& b, const Point& x);
Point bundle_subgradient(const QuadraticBundle& b, const Point& x);

}  // namespace lusin
