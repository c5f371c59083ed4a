#include "lusin/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace lusin {

double perturbation_budget(double eta, double eta_tilde, int dim) {
  if (!(eta > eta_tilde)) throw config_error("perturbation_budget: need eta > eta_tilde");
  if (dim != 1 && dim != 2) throw config_error("perturbation_budget: dim must be 1 or 2");
  return (eta - eta_tilde) / dim;
}

namespace {

struct MaskedNorms {
  double wq = 0;        // sum over |alpha|<=2 of masked Lq norms
  double sup_val = 0;   // masked sup |e|
  double sup_grad = 0;  // masked sup |De|
  long nodes = 0;
};

MaskedNorms masked_norms(const GridFunction& diff, const std::vector<char>& mask, double q) {
  MaskedNorms out;
  DerivativeSet ders = fd_derivatives(diff, 2);
  double cell = diff.cell_measure();
  for (const auto& [key, g] : ders.parts) {
    double acc = 0;
    for (int i = 0; i < g.size(); ++i)
      if (mask[i]) acc += std::pow(std::fabs(g.values[i]), q);
    out.wq += std::pow(acc * cell, 1.0 / q);
  }
  const GridFunction& dx = ders.get(1, 0);
  const GridFunction* dy = diff.dim() == 2 ? &ders.get(0, 1) : nullptr;
  for (int i = 0; i < diff.size(); ++i) {
    if (!mask[i]) continue;
    ++out.nodes;
    out.sup_val = std::max(out.sup_val, std::fabs(diff.values[i]));
    double g2 = dx.values[i] * dx.values[i];
    if (dy) g2 += dy->values[i] * dy->values[i];
    out.sup_grad = std::max(out.sup_grad, std::sqrt(g2));
  }
  return out;
}

}  // namespace

PatchedResult patched_smooth(const ValueOracle& u, double eta_in, double eta_out, double eps,
                             double q, const Box& box, const PatchedOptions& opt) {
  if (u.dim != box.dim()) throw config_error("patched_smooth: dimension mismatch");
  if (!(eta_in > eta_out) || !(eta_out > 0))
    throw config_error("patched_smooth: need eta_in > eta_out > 0");
  if (!(eps > 0)) throw config_error("patched_smooth: eps must be positive");
  if (!(q >= 1)) throw config_error("patched_smooth: q must be >= 1");

  PartitionOfUnity part = build_partition(box);
  const int dim = box.dim();
  const int res = opt.resolution;
  GridFunction base = sample_grid(u, box, res, dim == 2 ? res : 0);

  const double budget = eta_in - eta_out;
  const double grad_cap = budget / 4.0 / (2.0 * part.d1_bound());
  const double val_cap = budget / 4.0 / part.d2_bound();
  const double weight = 1.0 + 2.0 * part.d1_bound() + part.d2_bound();

  PatchedResult result;
  result.eta_in = eta_in;
  result.eta_out = eta_out;
  result.hessian_budget = budget;

  auto mollified = std::make_shared<std::vector<ValueOracle>>();
  double delta = opt.delta_start;

  for (int i = 0; i < part.count(); ++i) {
    // Mask of grid nodes inside annulus i.
    std::vector<char> mask(base.size(), 0);
    long count = 0;
    for (int idx = 0; idx < base.size(); ++idx) {
      double r = base.node_flat(idx).norm();
      if (r >= i - 1.0 && r <= i + 1.0) {
        mask[idx] = 1;
        ++count;
      }
    }
    AnnulusReport rep;
    rep.index = i;
    double target = eps * std::pow(2.0, -(i + 2));

    if (count == 0) {
      // Annulus misses the box: any width works; reuse the current one so the
      // assembled function stays defined slightly past the box edge.
      mollified->push_back(mollify(u, delta));
      rep.delta = delta;
      result.annuli.push_back(rep);
      continue;
    }

    bool accepted = false;
    for (int halve = 0; halve <= opt.max_halvings; ++halve) {
      ValueOracle ud = mollify(u, delta);
      GridFunction diff = sample_grid(ud, box, res, dim == 2 ? res : 0);
      for (int idx = 0; idx < diff.size(); ++idx) diff.values[idx] -= base.values[idx];
      MaskedNorms norms = masked_norms(diff, mask, q);
      rep.delta = delta;
      rep.halvings = halve;
      rep.norm_contribution = weight * norms.wq;
      rep.gradient_gap = norms.sup_grad;
      rep.value_gap = norms.sup_val;
      rep.nodes = norms.nodes;
      if (rep.norm_contribution < target && norms.sup_grad <= grad_cap &&
          norms.sup_val <= val_cap) {
        mollified->push_back(std::move(ud));
        accepted = true;
        break;
      }
      delta *= 0.5;
    }
    if (!accepted)
      throw numeric_error("patched_smooth: delta selection failed on annulus " +
                          std::to_string(i));
    result.annuli.push_back(rep);
  }

  bool with_grad = u.has_gradient();
  ValueOracle v;
  v.dim = dim;
  v.modulus = eta_out;
  v.smoothness = Smoothness::C2;
  v.value = [part, mollified](const Point& x) {
    double t = x.norm();
    double total = 0;
    for (int i : part.active(x)) {
      double w = part.psi(i, t);
      if (w != 0) total += w * (*mollified)[i].value(x);
    }
    return total;
  };
  if (with_grad) {
    v.gradient = [part, mollified, dim](const Point& x) {
      double t = x.norm();
      Point g = Point::zero(dim);
      Point dir = Point::zero(dim);
      if (t > 0) dir = x * (1.0 / t);
      for (int i : part.active(x)) {
        double w = part.psi(i, t);
        double w1 = part.psi_d1(i, t);
        const ValueOracle& m = (*mollified)[i];
        if (w != 0) g = g + m.gradient(x) * w;
        if (w1 != 0 && t > 0) g = g + dir * (w1 * m.value(x));
      }
      return g;
    };
  }
  result.v = std::move(v);
  return result;
}

}  // namespace lusin
