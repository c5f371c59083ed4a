#include "lusin/gluing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lusin/convexity.hpp"

namespace lusin {
namespace {

// Body radii are snapped to integer multiples of the grid step (with the
// domain midpoint on a cell edge), so every body boundary falls halfway
// between two grid nodes. This keeps nodes at distance >= h/2 from every
// boundary and makes the grid infima beta_k, delta_k scale like h^2 rather
// than degenerate with the lattice alignment.
double snap_radius(double r, double h) {
  double m = std::max(1.0, std::round(r / h));
  return m * h;
}

double grad_at(const ValueOracle& u, const Point& x, double fd_step) {
  if (u.has_gradient()) return u.gradient(x)[0];
  double f1 = u.value(Point(x[0] + fd_step));
  double f0 = u.value(Point(x[0] - fd_step));
  return (f1 - f0) / (2.0 * fd_step);
}

}  // namespace

QuadraticBundle local_extension(const ValueOracle& u, const Body& outer, const Body* inner,
                                double eta, const Box& domain, int resolution, double fd_step) {
  if (u.dim != 1) throw config_error("local extension: only 1-D regions are supported");
  if (u.modulus > 0 && eta > u.modulus + 1e-9) {
    throw config_error("local extension: requested modulus exceeds the modulus of u");
  }
  GridFunction layout(domain, resolution);
  std::vector<BundleAtom> atoms;
  for (int i = 0; i < layout.nx; ++i) {
    Point x = layout.node(i);
    if (!outer.contains(x)) continue;
    if (inner != nullptr && inner->boundary_gap(x) > 0) continue;
    if (!u.has_gradient()) {
      bool near_kink = false;
      for (double k : u.kinks) {
        if (std::fabs(x[0] - k) <= 8.0 * fd_step) near_kink = true;
      }
      if (near_kink) continue;
    }
    BundleAtom a;
    a.z = x;
    a.u = u.value(x);
    a.xi = Point(grad_at(u, x, fd_step));
    atoms.push_back(a);
  }
  if (atoms.empty()) throw config_error("local extension: region contains no grid nodes");
  return QuadraticBundle(eta, std::move(atoms));
}

AnnulusSchedule build_schedule(const ValueOracle& u, const Box& domain,
                               const ValueOracle& envelope, double eps_o,
                               const ScheduleOptions& opt) {
  if (u.dim != 1 || domain.dim() != 1) {
    throw config_error("gluing schedule: only 1-D domains are supported");
  }
  if (!(eps_o > 0)) throw config_error("gluing schedule: eps_o must be positive");
  if (opt.levels < 2) throw config_error("gluing schedule: need at least 2 levels");
  if (!(opt.first_fraction > 0 && opt.first_fraction < opt.coverage && opt.coverage < 1)) {
    throw config_error("gluing schedule: need 0 < first_fraction < coverage < 1");
  }
  if (!(u.modulus > 0)) {
    throw config_error("gluing schedule: u must declare a positive modulus");
  }
  int N = opt.resolution;
  if (N < 64) throw config_error("gluing schedule: resolution too small");
  if (N % 2 != 0) ++N;  // midpoint must sit on a cell edge

  const int K = opt.levels;
  AnnulusSchedule s;
  s.domain = domain;
  s.levels_count = K;
  s.eps_o = eps_o;
  s.resolution = N;

  GridFunction ug = sample_grid(u, domain, N);
  GridFunction eg(domain, N);
  for (int i = 0; i < N; ++i) {
    double e = envelope.value(eg.node(i));
    if (!(e > 0)) throw config_error("tolerance profile eps(x) must be positive on the domain");
    eg.at(i) = e;
  }

  // Nested bodies: radii approach the domain radius geometrically, snapped
  // to the grid.
  const double c = 0.5 * (domain.lo[0] + domain.hi[0]);
  const double R = 0.5 * domain.side(0);
  const double h = domain.side(0) / N;
  const double g0 = 1.0 - opt.first_fraction;
  const double shrink = std::pow((1.0 - opt.coverage) / g0, 1.0 / (K - 1));
  double prev = 0;
  for (int k = 1; k <= K + 2; ++k) {
    double frac = 1.0 - g0 * std::pow(shrink, k - 1);
    double rho = snap_radius(frac * R, h);
    if (rho <= prev) rho = prev + h;
    if (rho > R - h) {
      throw config_error("gluing schedule: bodies do not fit strictly inside the domain");
    }
    s.bodies.emplace_back(Point(c), rho);
    prev = rho;
  }

  // Strictly decreasing moduli eta_1 > ... > eta_{K+9}, spanning
  // [0.5, 0.95] of the declared modulus of u.
  const int jmax = K + 9;
  for (int j = 1; j <= jmax; ++j) {
    s.moduli.push_back(u.modulus * (0.95 - 0.45 * double(j - 1) / double(jmax - 1)));
  }

  // Per-body statistics on the shared grid.
  auto body_nodes = [&](const Body& b, const std::function<void(int, const Point&)>& fn) {
    for (int i = 0; i < N; ++i) {
      Point x = ug.node(i);
      if (b.contains(x)) fn(i, x);
    }
  };
  std::vector<double> rmin(K + 3, 0), osc(K + 3, 0);  // index j = body B_j
  for (int j = 1; j <= K + 2; ++j) {
    double emin = std::numeric_limits<double>::infinity();
    double umin = emin, umax = -emin;
    body_nodes(s.bodies[j - 1], [&](int i, const Point&) {
      emin = std::min(emin, eg.at(i));
      umin = std::min(umin, ug.at(i));
      umax = std::max(umax, ug.at(i));
    });
    if (!std::isfinite(emin)) throw config_error("gluing schedule: empty body on the grid");
    rmin[j] = emin;
    osc[j] = umax - umin;
  }
  std::vector<double> lip(K + 2, 0);  // lip[j] = Lip(u | B_j), j = 2..K+1
  for (int j = 2; j <= K + 1; ++j) {
    lip[j] = lipschitz_bound(u, s.bodies[j - 1], s.bodies[j], N).value;
  }
  auto slope_const = [&](int k) {
    double sep = boundary_distance(s.bodies[k - 1], s.bodies[k]);
    return (2.0 + osc[k + 1]) / sep;
  };

  // Levels.
  s.levels.resize(K);
  for (int k = 1; k <= K; ++k) {
    ScheduleLevel& lv = s.levels[k - 1];
    lv.body = s.bodies[k - 1];
    lv.r = rmin[k + 1];
    lv.lip = lip[k + 1];
    lv.slope = slope_const(k);
    double slope_next = slope_const(k + 1);
    double cap_sup = rmin[k + 2] / (6.0 * std::max(lip[k + 1], 1e-12));
    double cap_measure =
        eps_o / (std::pow(2.0, k + 3) * std::sqrt(1.0 + slope_next * slope_next));
    double a = 0.5 * std::min(cap_sup, cap_measure);
    double geom = 0.45 * boundary_distance(s.bodies[k - 1], s.bodies[k]);
    lv.a = std::min(a, geom);
    if (!(lv.a > 0)) throw config_error("gluing schedule: collar width collapsed to zero");
    lv.collar = Body(lv.body.center, lv.body.radius + lv.a);
  }

  // Local extensions u_1 .. u_{K+1} (atoms at grid nodes, modulus eta_{k+8}).
  for (int k = 1; k <= K + 1; ++k) {
    const Body& outer = s.bodies[k - 1];
    const Body* inner = (k >= 2) ? &s.levels[k - 2].collar : nullptr;
    double eta_k = s.moduli[k + 7];
    s.extensions.push_back(local_extension(u, outer, inner, eta_k, domain, N));
  }

  // Grid infima beta_k, delta_k and the per-level budgets eps_k.
  double eps_prev = std::numeric_limits<double>::infinity();
  double eps_sum = 0;
  for (int k = 1; k <= K; ++k) {
    ScheduleLevel& lv = s.levels[k - 1];
    double beta = std::numeric_limits<double>::infinity();
    body_nodes(lv.body, [&](int i, const Point& x) {
      beta = std::min(beta, ug.at(i) - s.extensions[k].eval(x));
    });
    double delta = std::numeric_limits<double>::infinity();
    body_nodes(s.bodies[k], [&](int i, const Point& x) {
      if (lv.collar.boundary_gap(x) > 0) return;
      delta = std::min(delta, ug.at(i) - s.extensions[k - 1].eval(x));
    });
    lv.beta = opt.safety * beta;
    lv.delta = opt.safety * delta;
    if (!(lv.beta > 0) || !(lv.delta > 0)) {
      throw numeric_error("gluing schedule: separation infimum vanished at level " +
                          std::to_string(k));
    }
    double cap = std::min(eps_o, lv.r) /
                 (std::pow(2.0, k + 2) * std::sqrt(1.0 + lv.slope * lv.slope));
    lv.eps = std::min({cap, lv.beta, lv.delta}) / 3.0;
    lv.eps = std::min(lv.eps, eps_prev);
    if (!(lv.eps > 0)) {
      throw numeric_error("gluing schedule: non-positive budget at level " + std::to_string(k));
    }
    eps_prev = lv.eps;
    eps_sum += lv.eps;
  }
  if (!(eps_sum < 0.5 * eps_o)) {
    throw verification_error("epsilon schedule too loose: level budgets exceed eps_o / 2");
  }
  return s;
}

// ---------------------------------------------------------------------------

GluedFunction::GluedFunction(std::vector<Body> bodies, std::vector<ValueOracle> pieces,
                             std::vector<double> eps)
    : bodies_(std::move(bodies)), pieces_(std::move(pieces)) {
  if (pieces_.size() != bodies_.size() || eps.size() + 1 != pieces_.size()) {
    throw config_error("glued function: inconsistent piece counts");
  }
  for (double e : eps) thetas_.emplace_back(e);
}

int GluedFunction::level_at(const Point& p) const {
  for (std::size_t k = 0; k < bodies_.size(); ++k) {
    if (bodies_[k].contains(p)) return static_cast<int>(k) + 1;
  }
  throw numeric_error("glued function evaluated outside the outermost body");
}

double GluedFunction::value(const Point& p) const {
  int k = level_at(p);
  if (k == 1) return pieces_[0].value(p);
  return smooth_max(thetas_[k - 2], pieces_[k - 2].value(p), pieces_[k - 1].value(p));
}

Point GluedFunction::gradient(const Point& p) const {
  int k = level_at(p);
  if (k == 1) return pieces_[0].gradient(p);
  const ThetaKernel& th = thetas_[k - 2];
  double a = pieces_[k - 2].value(p), b = pieces_[k - 1].value(p);
  Point ga = pieces_[k - 2].gradient(p), gb = pieces_[k - 1].gradient(p);
  double t = a - b;
  if (t >= th.delta()) return ga;
  if (t <= -th.delta()) return gb;
  double w = th.d1(t);
  return (ga + gb + (ga - gb) * w) * 0.5;
}

ValueOracle GluedFunction::as_oracle(double modulus) const {
  ValueOracle o;
  o.dim = 1;
  o.modulus = modulus;
  o.smoothness = Smoothness::C2;
  GluedFunction self = *this;
  o.value = [self](const Point& p) { return self.value(p); };
  GluedFunction self2 = *this;
  o.gradient = [self2](const Point& p) { return self2.gradient(p); };
  return o;
}

// ---------------------------------------------------------------------------

namespace {

// Bounding box of a body snapped to the schedule grid so that the sub-grid
// nodes coincide with global grid nodes.
Box snapped_box(const Body& b, const Box& domain, int resolution, int* sub_resolution) {
  double h = domain.side(0) / resolution;
  double lo = domain.lo[0], hi = domain.hi[0];
  int i0 = static_cast<int>(std::floor((b.center[0] - b.radius - lo) / h + 1e-9));
  int i1 = static_cast<int>(std::ceil((b.center[0] + b.radius - lo) / h - 1e-9));
  i0 = std::max(i0, 0);
  i1 = std::min(i1, resolution);
  if (i1 - i0 < 4) throw config_error("gluing: body spans too few grid cells");
  *sub_resolution = i1 - i0;
  return Box(lo + i0 * h, lo + i1 * h);
}

}  // namespace

GlueResult glue(const ValueOracle& u, const AnnulusSchedule& s, const GlueOptions& opt) {
  const int K = s.levels_count;
  GlueResult out;
  out.schedule = s;
  out.branch_margin = std::numeric_limits<double>::infinity();
  out.exactness = 0;

  std::vector<ValueOracle> pieces;          // h_1 .. h_K
  std::vector<GridFunction> piece_grids;    // h_k sampled on its own snapped grid
  std::vector<Box> piece_boxes;
  std::vector<int> piece_res;

  for (int k = 1; k <= K; ++k) {
    const QuadraticBundle& uk = s.extensions[k - 1];
    ValueOracle uk_oracle = uk.as_oracle();
    double eta_in = s.moduli[k + 7];   // eta_{k+8}
    double eta_out = s.moduli[k + 8];  // eta_{k+9}
    int res = 0;
    Box box = snapped_box(s.bodies[k], s.domain, s.resolution, &res);

    GlueLevelReport rep;
    rep.k = k;
    double eps_budget = s.levels[k - 1].eps;
    bool accepted = false;

    if (opt.strategy == GlueStrategy::LusinCorrection) {
      double guard = (eta_in - eta_out) / (2.0 * opt.lusin.constants.c_star());
      double eps_try = 0.9 * guard;
      for (int attempt = 1; attempt <= opt.max_attempts && !accepted; ++attempt) {
        rep.attempts = attempt;
        rep.eps_used = eps_try;
        try {
          LusinOptions lopt = opt.lusin;
          lopt.resolution = res;
          // The assembly needs node exactness; the per-level extensions'
          // kinks are resolved by the smooth-max branches instead.
          lopt.smooth_kinks = false;
          LusinResult lr = lusin_c2_approx(uk_oracle, eta_in, eta_out, eps_try, box, lopt);
          rep.sup_mismatch = lr.sup_mismatch;
          rep.mismatch_measure = measure_where(
              lr.mismatch, [&](double v) { return std::fabs(v) > opt.tau; });
          if (lr.sup_mismatch <= eps_budget && rep.mismatch_measure <= eps_budget) {
            accepted = true;
            pieces.push_back(lr.v);
          }
        } catch (const Error& e) {
          if (e.kind == Error::Kind::Config) throw;
          // numeric failure at this width: shrink and retry
        }
        if (!accepted) eps_try *= 0.5;
      }
    } else {
      double eps_try = eps_budget;
      for (int attempt = 1; attempt <= opt.max_attempts && !accepted; ++attempt) {
        rep.attempts = attempt;
        rep.eps_used = eps_try;
        PatchedResult pr = patched_smooth(uk_oracle, eta_in, eta_out, eps_try, 1.0, box,
                                          opt.patched);
        GridFunction gu = sample_grid(uk_oracle, box, res);
        GridFunction gh = sample_grid(pr.v, box, res);
        double sup = 0;
        for (int i = 0; i < gu.size(); ++i) {
          sup = std::max(sup, std::fabs(gu.values[i] - gh.values[i]));
        }
        rep.sup_mismatch = sup;
        GridFunction diff = gu;
        for (int i = 0; i < diff.size(); ++i) diff.values[i] -= gh.values[i];
        rep.mismatch_measure =
            measure_where(diff, [&](double v) { return std::fabs(v) > opt.tau; });
        if (sup <= eps_budget) {
          accepted = true;
          pieces.push_back(pr.v);
        } else {
          eps_try *= 0.5;
        }
      }
    }
    if (!accepted) {
      throw verification_error("epsilon schedule too loose: level " + std::to_string(k) +
                               " could not reach its budget");
    }
    piece_boxes.push_back(box);
    piece_res.push_back(res);
    piece_grids.push_back(sample_grid(pieces.back(), box, res));
    out.levels.push_back(rep);
  }

  // Branch inequalities: on B_{k-1} \ int C_{k-2} the previous piece must
  // dominate by eps_{k-1}; on B_k \ int C_{k-1} the new piece must dominate.
  // In the dominated regions the smooth maximum collapses to the winner
  // exactly, which is the node-exactness property checked below.
  for (int k = 2; k <= K; ++k) {
    const Body& bk = s.bodies[k - 1];
    const Body& bprev = s.bodies[k - 2];
    const Body& cprev = s.levels[k - 2].collar;
    const Body* cprev2 = (k >= 3) ? &s.levels[k - 3].collar : nullptr;
    double eps_glue = s.levels[k - 2].eps;
    GridFunction layout(piece_boxes[k - 1], piece_res[k - 1]);
    double low = std::numeric_limits<double>::infinity();
    double high = low;
    double exact = 0;
    ThetaKernel theta(eps_glue);
    for (int i = 0; i < layout.nx; ++i) {
      Point x = layout.node(i);
      if (!bk.contains(x)) continue;
      double hk = pieces[k - 1].value(x);
      double hp = pieces[k - 2].value(x);
      if (bprev.contains(x) && (cprev2 == nullptr || cprev2->boundary_gap(x) <= 0)) {
        low = std::min(low, hp - hk - eps_glue);
      }
      if (cprev.boundary_gap(x) <= 0) {
        high = std::min(high, hk - hp - eps_glue);
        exact = std::max(exact, std::fabs(smooth_max(theta, hp, hk) - hk));
      }
    }
    GlueLevelReport& rep = out.levels[k - 1];
    rep.branch_low = low;
    rep.branch_high = high;
    rep.exactness = exact;
    out.branch_margin = std::min({out.branch_margin, low, high});
    out.exactness = std::max(out.exactness, exact);
  }
  if (K >= 2 && !(out.branch_margin >= 0)) {
    throw verification_error("gluing: branch inequality violated on the grid");
  }

  std::vector<Body> bodies(s.bodies.begin(), s.bodies.begin() + K);
  std::vector<double> eps;
  for (int k = 1; k <= K - 1; ++k) eps.push_back(s.levels[k - 1].eps);
  GluedFunction gf(std::move(bodies), std::move(pieces), std::move(eps));
  out.v = gf.as_oracle(s.eta_out());
  return out;
}

}  // namespace lusin
