#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lusin {

// All errors thrown by the library. Kind maps onto the CLI exit codes:
// Config -> 2, Numeric -> 3, Verification -> 1.
struct Error : std::runtime_error {
  enum class Kind { Config, Numeric, Verification };
  Kind kind;
  Error(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
};

inline Error config_error(const std::string& msg) { return Error(Error::Kind::Config, msg); }
inline Error numeric_error(const std::string& msg) { return Error(Error::Kind::Numeric, msg); }
inline Error verification_error(const std::string& msg) { return Error(Error::Kind::Verification, msg); }

// A point in R^n for n in {1,2}.
class Point {
 public:
  Point() : n_(1) {}
  explicit Point(double x) : n_(1) { c_[0] = x; }
  Point(double x, double y) : n_(2) {
    c_[0] = x;
    c_[1] = y;
  }
  static Point zero(int dim) { return dim == 1 ? Point(0.0) : Point(0.0, 0.0); }

  int dim() const { return n_; }
  double operator[](int i) const { return c_[i]; }
  double& operator[](int i) { return c_[i]; }
  double x() const { return c_[0]; }
  double y() const { return c_[1]; }

  Point operator+(const Point& o) const {
    Point r = *this;
    for (int i = 0; i < n_; ++i) r.c_[i] += o.c_[i];
    return r;
  }
  Point operator-(const Point& o) const {
    Point r = *this;
    for (int i = 0; i < n_; ++i) r.c_[i] -= o.c_[i];
    return r;
  }
  Point operator*(double s) const {
    Point r = *this;
    for (int i = 0; i < n_; ++i) r.c_[i] *= s;
    return r;
  }
  double dot(const Point& o) const {
    double s = 0;
    for (int i = 0; i < n_; ++i) s += c_[i] * o.c_[i];
    return s;
  }
  double norm2() const { return dot(*this); }
  double norm() const { return std::sqrt(norm2()); }

 private:
  std::array<double, 2> c_{0.0, 0.0};
  int n_;
};

// Axis-aligned box; the domain of every grid.
struct Box {
  Point lo, hi;

  Box() = default;
  Box(double a, double b) : lo(a), hi(b) { validate(); }
  Box(const Point& l, const Point& h) : lo(l), hi(h) { validate(); }
  static Box interval(double a, double b) { return Box(a, b); }

  int dim() const { return lo.dim(); }
  double side(int axis) const { return hi[axis] - lo[axis]; }
  double volume() const {
    double v = 1;
    for (int i = 0; i < dim(); ++i) v *= side(i);
    return v;
  }
  bool contains(const Point& p, double tol = 0.0) const {
    for (int i = 0; i < dim(); ++i)
      if (p[i] < lo[i] - tol || p[i] > hi[i] + tol) return false;
    return true;
  }
  Box inflate(double r) const {
    Box b = *this;
    for (int i = 0; i < dim(); ++i) {
      b.lo[i] -= r;
      b.hi[i] += r;
    }
    return b;
  }

 private:
  void validate() const {
    if (lo.dim() != hi.dim()) throw config_error("box endpoints have mismatched dimension");
    for (int i = 0; i < lo.dim(); ++i)
      if (!(lo[i] < hi[i])) throw config_error("box must have lo < hi on every axis");
  }
};

// Closed ball: an interval in 1-D, a disc in 2-D. Used for the nested bodies
// of the gluing schedule and for Lipschitz estimates over concentric regions.
struct Body {
  Point center;
  double radius = 0;

  Body() = default;
  Body(const Point& c, double r) : center(c), radius(r) {
    if (!(r > 0)) throw config_error("body radius must be positive");
  }
  int dim() const { return center.dim(); }
  bool contains(const Point& p, double tol = 0.0) const {
    return (p - center).norm() <= radius + tol;
  }
  // Signed distance from p to the boundary (positive inside).
  double boundary_gap(const Point& p) const { return radius - (p - center).norm(); }
  Box bounding_box() const {
    if (dim() == 1) return Box(center[0] - radius, center[0] + radius);
    return Box(Point(center[0] - radius, center[1] - radius),
               Point(center[0] + radius, center[1] + radius));
  }
};

// Distance between the boundaries of nested bodies A subset B (concentric or not).
inline double boundary_distance(const Body& inner, const Body& outer) {
  double d = outer.radius - inner.radius - (outer.center - inner.center).norm();
  if (!(d > 0)) throw config_error("bodies are not strictly nested");
  return d;
}

enum class Smoothness { Unknown, C0, C11, C2, CInf };

// A function given by evaluators plus the metadata the pipeline needs:
// a known (claimed) modulus of strong convexity, a smoothness tag, and the
// loci where the function fails to be C^2. In 1-D the kinks are points; in
// 2-D they are vertical hyperplanes {x = k} (sufficient for the catalog).
// `breakpoints` lists additional loci where the function is piecewise
// polynomial but still C^2; convolution quadrature splits there to stay exact.
struct ValueOracle {
  std::function<double(const Point&)> value;
  std::function<Point(const Point&)> gradient;  // may be empty
  int dim = 1;
  double modulus = 0.0;
  Smoothness smoothness = Smoothness::Unknown;
  std::vector<double> kinks;        // axis-0 coordinates of C^2 failures
  std::vector<double> breakpoints;  // axis-0 coordinates of smooth piece joints

  bool has_gradient() const { return static_cast<bool>(gradient); }
  double operator()(const Point& p) const { return value(p); }
};

inline void require_finite(double v, const std::string& what) {
  if (!std::isfinite(v)) throw numeric_error("non-finite value in " + what);
}

}  // namespace lusin
