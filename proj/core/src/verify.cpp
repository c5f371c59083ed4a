#include "lusin/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "json.hpp"

namespace lusin {

std::vector<DisagreementRow> disagreement_sweep(const GridFunction& u, const GridFunction& v,
                                                std::vector<double> taus) {
  std::vector<DisagreementRow> rows;
  rows.reserve(taus.size());
  for (double tau : taus) {
    rows.push_back({tau, disagreement(u, v, tau)});
  }
  return rows;
}

double sup_error_envelope(const GridFunction& u, const GridFunction& v,
                          const ValueOracle& envelope) {
  if (u.size() != v.size()) throw config_error("envelope check needs matching grids");
  double worst = 0;
  for (int idx = 0; idx < u.size(); ++idx) {
    Point p = u.node_flat(idx);
    double e = envelope.value(p);
    if (!(e > 0)) throw config_error("tolerance profile eps(x) must be positive on the domain");
    worst = std::max(worst, std::fabs(u.values[idx] - v.values[idx]) / e);
  }
  return worst;
}

namespace {

double floor_1d(const GridFunction& g, const std::vector<double>& kinks, double exclusion) {
  GridFunction d2 = fd_derivative(g, 2);
  double h = g.h(0);
  double excl = exclusion < 0 ? 2.0 * h : exclusion;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 2; i < g.nx - 2; ++i) {
    double x = g.node(i)[0];
    bool skip = false;
    for (double k : kinks) {
      if (std::fabs(x - k) <= excl) {
        skip = true;
        break;
      }
    }
    if (!skip) best = std::min(best, d2.at(i));
  }
  if (!std::isfinite(best)) throw config_error("hessian floor: every node was excluded");
  return best;
}

double floor_2d(const GridFunction& g, const std::vector<double>& kinks, double exclusion) {
  GridFunction dxx = fd_derivative(g, 2, 0);
  GridFunction dyy = fd_derivative(g, 0, 2);
  GridFunction dxy = fd_derivative(g, 1, 1);
  double excl = exclusion < 0 ? 2.0 * std::max(g.h(0), g.h(1)) : exclusion;
  double best = std::numeric_limits<double>::infinity();
  for (int j = 2; j < g.ny - 2; ++j) {
    for (int i = 2; i < g.nx - 2; ++i) {
      double x = g.node2(i, j)[0];
      bool skip = false;
      for (double k : kinks) {
        if (std::fabs(x - k) <= excl) {
          skip = true;
          break;
        }
      }
      if (skip) continue;
      double a = dxx.at(i, j), c = dyy.at(i, j), b = dxy.at(i, j);
      double lmin = 0.5 * ((a + c) - std::sqrt((a - c) * (a - c) + 4.0 * b * b));
      best = std::min(best, lmin);
    }
  }
  if (!std::isfinite(best)) throw config_error("hessian floor: every node was excluded");
  return best;
}

}  // namespace

double hessian_floor_grid(const GridFunction& g, const std::vector<double>& kinks,
                          double exclusion) {
  return g.dim() == 1 ? floor_1d(g, kinks, exclusion) : floor_2d(g, kinks, exclusion);
}

double hessian_floor(const ValueOracle& f, const Box& box, int resolution, double exclusion) {
  GridFunction g = sample_grid(f, box, resolution, f.dim == 2 ? resolution : 0);
  return hessian_floor_grid(g, f.kinks, exclusion);
}

double graph_symmetric_difference(const GridFunction& u, const GridFunction& v, double tau) {
  if (u.size() != v.size()) throw config_error("graph difference needs matching grids");
  DerivativeSet du = fd_derivatives(u, 1);
  DerivativeSet dv = fd_derivatives(v, 1);
  double total = 0;
  double cell = u.cell_measure();
  for (int idx = 0; idx < u.size(); ++idx) {
    if (std::fabs(u.values[idx] - v.values[idx]) <= tau) continue;
    double gu2 = 0, gv2 = 0;
    double gx_u = du.get(1, 0).values[idx];
    double gx_v = dv.get(1, 0).values[idx];
    gu2 += gx_u * gx_u;
    gv2 += gx_v * gx_v;
    if (u.dim() == 2) {
      double gy_u = du.get(0, 1).values[idx];
      double gy_v = dv.get(0, 1).values[idx];
      gu2 += gy_u * gy_u;
      gv2 += gy_v * gy_v;
    }
    total += (std::sqrt(1.0 + gu2) + std::sqrt(1.0 + gv2)) * cell;
  }
  return total;
}

double c2_modulus(const GridFunction& g) {
  double worst = 0;
  if (g.dim() == 1) {
    GridFunction d2 = fd_derivative(g, 2);
    for (int i = 2; i + 3 < g.nx; ++i) {
      worst = std::max(worst, std::fabs(d2.at(i + 1) - d2.at(i)));
    }
    return g.h(0) * worst;
  }
  GridFunction dxx = fd_derivative(g, 2, 0);
  GridFunction dyy = fd_derivative(g, 0, 2);
  double h = std::max(g.h(0), g.h(1));
  for (int j = 2; j + 2 < g.ny; ++j) {
    for (int i = 2; i + 3 < g.nx; ++i) {
      worst = std::max(worst, std::fabs(dxx.at(i + 1, j) - dxx.at(i, j)));
      worst = std::max(worst, std::fabs(dyy.at(i + 1, j) - dyy.at(i, j)));
    }
  }
  return h * worst;
}

std::vector<C2ModulusRow> c2_modulus_table(const ValueOracle& f, const Box& box,
                                           int base_resolution, int levels) {
  if (base_resolution < 8 || levels < 1) throw config_error("c2 modulus table: bad parameters");
  std::vector<C2ModulusRow> rows;
  int r = base_resolution;
  for (int l = 0; l < levels; ++l, r *= 2) {
    GridFunction g = sample_grid(f, box, r, f.dim == 2 ? r : 0);
    rows.push_back({r, c2_modulus(g)});
  }
  return rows;
}

ConvergenceCheck uniform_convergence_check(const std::vector<GridFunction>& seq,
                                           const GridFunction& target, double slack) {
  ConvergenceCheck out;
  for (const auto& g : seq) {
    if (g.size() != target.size()) throw config_error("convergence check needs matching grids");
    double sup = 0;
    for (int idx = 0; idx < g.size(); ++idx) {
      sup = std::max(sup, std::fabs(g.values[idx] - target.values[idx]));
    }
    out.sup_errors.push_back(sup);
  }
  out.monotone = true;
  for (std::size_t i = 1; i < out.sup_errors.size(); ++i) {
    if (out.sup_errors[i] > out.sup_errors[i - 1] + slack) out.monotone = false;
  }
  return out;
}

std::string ApproxReport::to_json() const {
  nlohmann::ordered_json j;
  j["name"] = name;
  j["eta"] = eta;
  j["convexity"] = {{"eta", convexity.eta},
                    {"trials", convexity.trials},
                    {"worst_violation", convexity.worst_violation},
                    {"pass", convexity.pass}};
  nlohmann::ordered_json sw = nlohmann::ordered_json::array();
  for (const auto& row : sweep) {
    sw.push_back({{"tau", row.tau}, {"measure", row.measure}});
  }
  j["disagreement_sweep"] = sw;
  j["disagreement"] = disagreement;
  j["disagreement_budget"] = disagreement_budget;
  j["sup_error_ratio"] = sup_error_ratio;
  j["envelope_checked"] = envelope_checked;
  j["hessian_floor"] = hessian_floor;
  j["hessian_required"] = hessian_required;
  j["graph_difference"] = graph_difference;
  j["graph_budget"] = graph_budget;
  j["pass"] = pass;
  return j.dump(2);
}

ApproxReport verify_approximation(const ValueOracle& u, const ValueOracle& v, const Box& box,
                                  const VerifyOptions& opt) {
  ApproxReport rep;
  rep.eta = opt.eta;
  int ry = box.dim() == 2 ? opt.resolution : 0;
  GridFunction gu = sample_grid(u, box, opt.resolution, ry);
  GridFunction gv = sample_grid(v, box, opt.resolution, ry);

  rep.convexity = certify_strong_convexity(v, box, opt.eta, opt.certify);
  rep.sweep = disagreement_sweep(gu, gv);
  rep.disagreement = disagreement(gu, gv, opt.tau);
  rep.disagreement_budget = opt.disagreement_budget;
  if (opt.envelope != nullptr) {
    rep.sup_error_ratio = sup_error_envelope(gu, gv, *opt.envelope);
    rep.envelope_checked = true;
  }
  rep.hessian_floor = hessian_floor_grid(gv, v.kinks);
  rep.hessian_required = opt.eta - opt.hessian_slack;
  rep.graph_difference = graph_symmetric_difference(gu, gv, opt.tau);
  rep.graph_budget = opt.graph_budget;

  rep.pass = rep.convexity.pass && rep.hessian_floor >= rep.hessian_required;
  if (opt.disagreement_budget > 0 && rep.disagreement >= opt.disagreement_budget) {
    rep.pass = false;
  }
  if (rep.envelope_checked && rep.sup_error_ratio > 1.0) rep.pass = false;
  if (opt.graph_budget > 0 && rep.graph_difference >= opt.graph_budget) rep.pass = false;
  return rep;
}

}  // namespace lusin
