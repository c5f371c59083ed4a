#pragma once

#include <string>
#include <vector>

#include "lusin/types.hpp"

namespace lusin {

// Named test functions with the metadata the pipeline needs. Entries carry
// a natural evaluation box and the best modulus of strong convexity they
// admit (0 for the negative control).
struct CatalogEntry {
  std::string name;
  std::string description;
  ValueOracle oracle;
  Box box;
  double eta = 0;  // modulus actually attained (0 if not strongly convex)
};

// All built-in entries.
const std::vector<CatalogEntry>& catalog();

// Look up by name. Names of the form "bundle:<path>" load a quadratic
// bundle from a JSON file instead. Throws a Config error if unknown.
CatalogEntry catalog_lookup(const std::string& name);

// Individual constructors (exposed for tests and for parameter overrides).
CatalogEntry make_quad();                          // x^2
CatalogEntry make_abs_plus_quad();                 // |x| + x^2, kink at 0
CatalogEntry make_huber_abs_plus_quad(double mu);  // C^{1,1} rounding of the kink
CatalogEntry make_neglog1mx2();                    // -log(1 - x^2) on (-1, 1)
CatalogEntry make_planar_abs();                    // |x_1| in the plane (not strongly convex)

}  // namespace lusin
