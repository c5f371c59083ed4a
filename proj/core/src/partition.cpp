#include "lusin/partition.hpp"

#include <algorithm>
#include <cmath>

namespace lusin {

double smoothstep(double t) {
  if (t <= 0) return 0;
  if (t >= 1) return 1;
  return t * t * t * (10 + t * (-15 + 6 * t));
}

double smoothstep_d1(double t) {
  if (t <= 0 || t >= 1) return 0;
  return t * t * (30 + t * (-60 + 30 * t));
}

double smoothstep_d2(double t) {
  if (t <= 0 || t >= 1) return 0;
  return t * (60 + t * (-180 + 120 * t));
}

PartitionOfUnity::PartitionOfUnity(int count, int dim) : count_(count), dim_(dim) {
  if (count < 1) throw config_error("partition needs at least one annulus");
  if (dim != 1 && dim != 2) throw config_error("partition supports dim 1 or 2");
}

double PartitionOfUnity::psi(int i, double t) const {
  if (i == 0) return 1.0 - smoothstep(t);
  return smoothstep(t - (i - 1)) - smoothstep(t - i);
}

double PartitionOfUnity::psi_d1(int i, double t) const {
  if (i == 0) return -smoothstep_d1(t);
  return smoothstep_d1(t - (i - 1)) - smoothstep_d1(t - i);
}

double PartitionOfUnity::psi_d2(int i, double t) const {
  if (i == 0) return -smoothstep_d2(t);
  return smoothstep_d2(t - (i - 1)) - smoothstep_d2(t - i);
}

double PartitionOfUnity::theta(int i, const Point& x) const { return psi(i, x.norm()); }

std::vector<int> PartitionOfUnity::active(const Point& x) const {
  double t = x.norm();
  std::vector<int> idx;
  for (int i = 0; i < count_; ++i) {
    double lo = i - 1.0, hi = i + 1.0;
    if (t > lo && t < hi) idx.push_back(i);
  }
  // t exactly on an integer belongs to the single annulus that is 1 there
  if (idx.empty()) {
    int i = std::min<int>(count_ - 1, std::max(0, static_cast<int>(std::lround(t))));
    idx.push_back(i);
  }
  return idx;
}

double PartitionOfUnity::d2_bound() const {
  // In 2-D the radial lift adds the curvature term psi'(r)/r, which is
  // bounded by max |psi''| because psi' vanishes at integer radii.
  return dim_ == 1 ? kSmoothstepD2Max : kSmoothstepD2Max * std::sqrt(2.0);
}

PartitionOfUnity build_partition(const Box& box) {
  double far = 0;
  for (int i = 0; i < box.dim(); ++i)
    far = std::max(far, std::max(std::fabs(box.lo[i]), std::fabs(box.hi[i])));
  double radius = box.dim() == 1 ? far : std::sqrt(2.0) * far;
  int count = static_cast<int>(std::ceil(radius)) + 2;
  return PartitionOfUnity(count, box.dim());
}

}  // namespace lusin
