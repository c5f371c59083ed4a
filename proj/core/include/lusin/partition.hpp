#pragma once

#include <vector>

#include "lusin/types.hpp"

namespace lusin {

// C^2 smoothstep on [0,1]: s(t) = 6t^5 - 15t^4 + 10t^3, with s', s'' = 0 at
// both ends. Clamped outside [0,1].
double smoothstep(double t);
double smoothstep_d1(double t);
double smoothstep_d2(double t);

// Sharp bounds used by the smoothing budget: max |s'| = 15/8 at t = 1/2 and
// max |s''| = 10/sqrt(3) at t = (3 -+ sqrt(3))/6.
inline constexpr double kSmoothstepD1Max = 15.0 / 8.0;
inline const double kSmoothstepD2Max = 10.0 / std::sqrt(3.0);

// Radial partition of unity subordinate to the annuli A_i = {i-1 <= |x| <= i+1}:
//   psi_0(t) = 1 - s(t),  psi_i(t) = s(t-(i-1)) - s(t-i)  (i >= 1),
// lifted by theta_i(x) = psi_i(|x|). The terms telescope to 1 everywhere and
// at most two are active at any point.
class PartitionOfUnity {
 public:
  PartitionOfUnity(int count, int dim);

  int count() const { return count_; }
  int dim() const { return dim_; }

  double psi(int i, double t) const;         // 1-D profile
  double psi_d1(int i, double t) const;
  double psi_d2(int i, double t) const;
  double theta(int i, const Point& x) const;  // radial lift
  // Indices with theta_i(x) > 0 (at most two).
  std::vector<int> active(const Point& x) const;

  // Uniform bounds max |D theta_i| and max |D^2 theta_i| (Hilbert-Schmidt),
  // valid for every i.
  double d1_bound() const { return kSmoothstepD1Max; }
  double d2_bound() const;

 private:
  int count_, dim_;
};

// Partition with enough annuli to cover the box around the origin.
PartitionOfUnity build_partition(const Box& box);

}  // namespace lusin
