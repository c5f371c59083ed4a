#include "lusin/whitney.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "lusin/mollify.hpp"
#include "lusin/partition.hpp"
#include "lusin/smoothmax.hpp"

namespace lusin {

WhitneyExtension::WhitneyExtension(std::vector<WhitneyJet> jets) : jets_(std::move(jets)) {
  if (jets_.empty()) throw config_error("whitney extension needs at least one jet");
  std::sort(jets_.begin(), jets_.end(),
            [](const WhitneyJet& a, const WhitneyJet& b) { return a.x < b.x; });
  for (size_t i = 1; i < jets_.size(); ++i)
    if (jets_[i].x == jets_[i - 1].x)
      throw config_error("whitney extension: duplicate jet nodes");
}

WhitneyExtension whitney_extend_1d(std::vector<WhitneyJet> jets) {
  return WhitneyExtension(std::move(jets));
}

int WhitneyExtension::locate(double x) const {
  // index of the last jet with jet.x <= x, or -1
  int lo = 0, hi = static_cast<int>(jets_.size()) - 1, ans = -1;
  while (lo <= hi) {
    int mid = (lo + hi) / 2;
    if (jets_[mid].x <= x) {
      ans = mid;
      lo = mid + 1;
    } else {
      hi = mid - 1;
    }
  }
  return ans;
}

namespace {
struct Eval {
  double v, d1, d2;
};

// Taylor polynomial of a jet and its derivatives at x.
inline Eval taylor(const WhitneyJet& j, double x) {
  return {j.u0 + j.u1 * (x - j.x), j.u1, 0.0};
}

// Fade a Taylor polynomial with the C^2 cutoff c(t), t in [0,1].
inline Eval fade(const Eval& T, double t, double dtdx, bool rising) {
  double c = smoothstep(rising ? t : 1 - t);
  double c1 = (rising ? 1 : -1) * smoothstep_d1(rising ? t : 1 - t) * dtdx;
  double c2 = smoothstep_d2(rising ? t : 1 - t) * dtdx * dtdx;
  return {T.v * c, T.d1 * c + T.v * c1, T.d2 * c + 2 * T.d1 * c1 + T.v * c2};
}

}  // namespace

// Single evaluation core shared by value/d1/d2.
static Eval eval_extension(const std::vector<WhitneyJet>& jets, int idx, double x) {
  const int n = static_cast<int>(jets.size());
  if (idx < 0) {  // left of all nodes
    const WhitneyJet& j0 = jets.front();
    double a = j0.x - 2.0, b = j0.x - 1.0;
    Eval T = taylor(j0, x);
    if (x >= b) return T;
    if (x <= a) return {0, 0, 0};
    return fade(T, (x - a) / (b - a), 1.0 / (b - a), true);
  }
  if (idx >= n - 1) {  // right of all nodes
    const WhitneyJet& jn = jets.back();
    double a = jn.x + 1.0, b = jn.x + 2.0;
    Eval T = taylor(jn, x);
    if (x <= a) return T;
    if (x >= b) return {0, 0, 0};
    return fade(T, (x - a) / (b - a), 1.0 / (b - a), false);
  }
  const WhitneyJet& jl = jets[idx];
  const WhitneyJet& jr = jets[idx + 1];
  double L = jr.x - jl.x;
  double t = (x - jl.x) / L;
  Eval Tl = taylor(jl, x), Tr = taylor(jr, x);
  double s = smoothstep(t), s1 = smoothstep_d1(t) / L, s2 = smoothstep_d2(t) / (L * L);
  double D = Tr.v - Tl.v, D1 = Tr.d1 - Tl.d1;
  return {Tl.v + s * D, Tl.d1 + s1 * D + s * D1, s2 * D + 2 * s1 * D1};
}

double WhitneyExtension::value(double x) const {
  return eval_extension(jets_, locate(x), x).v;
}
double WhitneyExtension::d1(double x) const { return eval_extension(jets_, locate(x), x).d1; }
double WhitneyExtension::d2(double x) const { return eval_extension(jets_, locate(x), x).d2; }

double WhitneyExtension::jet_bound() const {
  double m = 0;
  for (const auto& j : jets_) m = std::max({m, std::fabs(j.u0), std::fabs(j.u1)});
  const int n = static_cast<int>(jets_.size());
  auto quotients = [&](int i, int j) {
    double d = std::fabs(jets_[j].x - jets_[i].x);
    if (d == 0) return 0.0;
    double r0 = std::fabs(jets_[j].u0 - jets_[i].u0 - jets_[i].u1 * (jets_[j].x - jets_[i].x)) /
                (d * d);
    double r1 = std::fabs(jets_[j].u1 - jets_[i].u1) / d;
    return std::max(r0, r1);
  };
  if (n <= 512) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) m = std::max(m, quotients(i, j));
  } else {
    for (int i = 0; i + 1 < n; ++i) m = std::max(m, quotients(i, i + 1));
  }
  return m;
}

double WhitneyExtension::norm_2inf(const Box& box, int resolution) const {
  double m0 = 0, m1 = 0, m2 = 0;
  double h = box.side(0) / resolution;
  for (int i = 0; i < resolution; ++i) {
    double x = box.lo[0] + (i + 0.5) * h;
    Eval e = eval_extension(jets_, locate(x), x);
    m0 = std::max(m0, std::fabs(e.v));
    m1 = std::max(m1, std::fabs(e.d1));
    m2 = std::max(m2, std::fabs(e.d2));
  }
  return m0 + m1 + m2;
}

ValueOracle WhitneyExtension::as_oracle() const {
  ValueOracle o;
  o.dim = 1;
  o.smoothness = Smoothness::C2;
  auto self = std::make_shared<WhitneyExtension>(*this);
  o.value = [self](const Point& p) {
    return eval_extension(self->jets(), self->locate(p[0]), p[0]).v;
  };
  o.gradient = [self](const Point& p) {
    return Point(eval_extension(self->jets(), self->locate(p[0]), p[0]).d1);
  };
  // piecewise-polynomial joints: the jet nodes and the cutoff band edges
  std::vector<double> bp;
  bp.push_back(jets_.front().x - 2.0);
  bp.push_back(jets_.front().x - 1.0);
  for (const auto& j : jets_) bp.push_back(j.x);
  bp.push_back(jets_.back().x + 1.0);
  bp.push_back(jets_.back().x + 2.0);
  o.breakpoints = std::move(bp);
  return o;
}

RemainderReport taylor_remainder_check(const GridFunction& u, int pairs,
                                       unsigned long long seed) {
  if (u.dim() != 1) throw config_error("taylor_remainder_check is 1-D only");
  DerivativeSet d = fd_derivatives(u, 2);
  const GridFunction& u1 = d.get(1);
  const GridFunction& u2 = d.get(2);
  GridFunction M = maximal_function(u2);
  Rng rng(seed);
  RemainderReport rep;
  const int n = u.nx;
  for (int t = 0; t < pairs; ++t) {
    int i = static_cast<int>(rng.uniform() * n);
    int j = static_cast<int>(rng.uniform() * n);
    i = std::min(i, n - 1);
    j = std::min(j, n - 1);
    if (i == j) continue;
    double dx = u.node(j)[0] - u.node(i)[0];
    double denom = M.values[i] + M.values[j];
    if (denom <= 0) continue;
    double r0 = std::fabs(u.values[j] - u.values[i] - u1.values[i] * dx) / (dx * dx * denom);
    double r1 = std::fabs(u1.values[j] - u1.values[i]) / (std::fabs(dx) * denom);
    rep.c_p = std::max(rep.c_p, std::max(r0, r1));
    ++rep.pairs;
  }
  return rep;
}

RegularSet select_regular_set(const GridFunction& u, double a, const Constants& c) {
  if (u.dim() != 1) throw config_error("select_regular_set is 1-D only");
  if (!(a > 0)) throw config_error("select_regular_set: a must be positive");
  const int n = u.nx;
  DerivativeSet d = fd_derivatives(u, 2);
  const GridFunction& u1 = d.get(1);
  GridFunction M = maximal_function(d.get(2));

  RegularSet rs;
  rs.threshold_low = a / (2.0 * c.c_w);
  rs.threshold_high = a / (4.0 * c.c_p * c.c_w);
  std::vector<char> g0(n, 0), g1(n, 0);
  for (int i = 0; i < n; ++i) {
    if (std::max(std::fabs(u.values[i]), std::fabs(u1.values[i])) > rs.threshold_low) g0[i] = 1;
    if (M.values[i] > rs.threshold_high) g1[i] = 1;
  }
  // fatten G0 by one cell
  std::vector<char> g0f = g0;
  for (int i = 0; i < n; ++i)
    if (g0[i]) {
      if (i > 0) g0f[i - 1] = 1;
      if (i + 1 < n) g0f[i + 1] = 1;
    }
  rs.f_mask.assign(n, 0);
  long c0 = 0, c1 = 0, cg = 0, cf = 0;
  for (int i = 0; i < n; ++i) {
    bool bad = g0f[i] || g1[i];
    rs.f_mask[i] = bad ? 0 : 1;
    c0 += g0f[i];
    c1 += g1[i];
    cg += bad;
    cf += !bad;
  }
  double cell = u.cell_measure();
  rs.measure_g0 = c0 * cell;
  rs.measure_g1 = c1 * cell;
  rs.measure_g = cg * cell;
  rs.measure_f = cf * cell;
  if (cf == 0)
    throw numeric_error("select_regular_set: regular set is empty (a too small)");
  return rs;
}

TruncateResult truncate_correct(const GridFunction& u, double a, const Constants& c) {
  RegularSet rs = select_regular_set(u, a, c);
  GridFunction u1 = fd_derivative(u, 1);
  std::vector<WhitneyJet> jets;
  for (int i = 0; i < u.nx; ++i)
    if (rs.f_mask[i]) jets.push_back({u.node(i)[0], u.values[i], u1.values[i]});
  return {whitney_extend_1d(std::move(jets)), std::move(rs)};
}

CorrectionResult iterate_correction(const GridFunction& u, double a,
                                    const CorrectionOptions& opt, const Constants& c) {
  if (u.dim() != 1) throw config_error("iterate_correction is 1-D only");
  CorrectionResult out;
  out.a = a;
  out.norm21_input = sobolev_norm(u, 2, 1.0);
  if (out.norm21_input == 0) {
    out.v = ValueOracle{};
    out.v.dim = 1;
    out.v.value = [](const Point&) { return 0.0; };
    out.v.gradient = [](const Point&) { return Point(0.0); };
    out.mismatch = u;
    return out;
  }

  auto pieces = std::make_shared<std::vector<ValueOracle>>();
  std::vector<char> changed(u.size(), 0);
  GridFunction u_cur = u;
  double eps = opt.eps_start;
  bool exhausted = false;

  for (int k = 0; k < opt.max_iterations && !exhausted; ++k) {
    double norm_cur = sobolev_norm(u_cur, 2, 1.0);
    if (norm_cur <= opt.tol * out.norm21_input) break;

    double level = std::pow(2.0, -(k + 1)) * a;
    TruncateResult tc = truncate_correct(u_cur, level, c);
    ValueOracle w_oracle = tc.w.as_oracle();
    GridFunction w_grid = sample_grid(w_oracle, u.box, u.nx);
    for (int i = 0; i < u.size(); ++i)
      if (!tc.region.f_mask[i]) changed[i] = 1;

    IterationRecord rec;
    rec.k = k;
    rec.level = level;
    rec.norm21_u = norm_cur;
    rec.target21 = std::pow(4.0, -(k + 1)) * out.norm21_input;
    rec.measure_e = tc.region.measure_g;

    GridFunction v_grid;
    ValueOracle v_oracle;
    bool ok = false;
    for (int halve = 0; halve <= opt.max_halvings; ++halve) {
      v_oracle = mollify(w_oracle, eps);
      v_grid = sample_grid(v_oracle, u.box, u.nx);
      GridFunction diff = w_grid;
      for (int i = 0; i < diff.size(); ++i) diff.values[i] -= v_grid.values[i];
      rec.achieved21 = sobolev_norm(diff, 2, 1.0);
      rec.eps = eps;
      if (rec.achieved21 <= rec.target21) {
        ok = true;
        break;
      }
      eps *= 0.5;
    }
    if (!ok) {
      // Numeric floor: the width search cannot meet the geometric target any
      // more. Keep what we have; the sup residual is already at its floor.
      rec.exhausted = true;
      exhausted = true;
      if (k == 0)
        throw numeric_error("iterate_correction: iteration stalled at the first step");
      out.trace.push_back(rec);
      break;
    }
    rec.norm2inf_v = sobolev_norm(v_grid, 2, std::numeric_limits<double>::infinity());
    pieces->push_back(v_oracle);
    for (int i = 0; i < u.size(); ++i) u_cur.values[i] = w_grid.values[i] - v_grid.values[i];
    out.trace.push_back(rec);
  }

  ValueOracle v;
  v.dim = 1;
  v.smoothness = Smoothness::C2;
  v.value = [pieces](const Point& p) {
    double s = 0;
    for (const auto& piece : *pieces) s += piece.value(p);
    return s;
  };
  v.gradient = [pieces](const Point& p) {
    Point g(0.0);
    for (const auto& piece : *pieces)
      if (piece.has_gradient()) g = g + piece.gradient(p);
    return g;
  };
  out.v = std::move(v);

  GridFunction v_total = sample_grid(out.v, u.box, u.nx);
  out.mismatch = u;
  for (int i = 0; i < u.size(); ++i) out.mismatch.values[i] -= v_total.values[i];
  out.sup_mismatch = out.mismatch.max_abs();
  out.norm2inf_v = sobolev_norm(v_total, 2, std::numeric_limits<double>::infinity());
  long cnt = 0;
  for (char ch : changed) cnt += ch;
  out.changed_measure = cnt * u.cell_measure();
  out.measured_c_star = out.changed_measure * a / out.norm21_input;
  return out;
}

LusinResult lusin_c2_approx(const ValueOracle& u, double eta_in, double eta_out, double eps,
                            const Box& box, const LusinOptions& opt) {
  if (box.dim() != 1 || u.dim != 1) throw config_error("lusin_c2_approx is 1-D only");
  if (!(eta_in > eta_out) || !(eta_out > 0))
    throw config_error("lusin_c2_approx: need eta_in > eta_out > 0");
  double c_star = opt.constants.c_star();
  double standing = (eta_in - eta_out) / (2.0 * c_star);
  if (!(eps > 0) || eps >= standing)
    throw config_error("lusin_c2_approx: shrink eps below (eta_in - eta_out) / (2 n c*)");

  double mid = 0.5 * (eta_in + eta_out);

  // Declared kinks are smoothed first: across each usable kink the two
  // one-sided quadratic jets are joined by a smooth maximum, which keeps the
  // modulus and agrees with u outside transition bands of total width at most
  // eps / 2. Kinks whose windows cannot be certified are left to the
  // grid-based stages below.
  ValueOracle base_u =
      opt.smooth_kinks ? smooth_kinks(u, box, 0.5 * eps, 4.0 * box.side(0) / opt.resolution)
                       : u;

  PatchedOptions popt;
  popt.resolution = opt.resolution;
  PatchedResult ps = patched_smooth(base_u, eta_in, mid, eps * eps, 1.0, box, popt);

  GridFunction base = sample_grid(base_u, box, opt.resolution);
  GridFunction smoothed = sample_grid(ps.v, box, opt.resolution);
  GridFunction residue = base;
  for (int i = 0; i < residue.size(); ++i) residue.values[i] -= smoothed.values[i];

  double a = c_star * eps;
  CorrectionResult cr = iterate_correction(residue, a, opt.correction, opt.constants);

  // The correction's second derivative must fit inside the modulus gap left
  // by the patched stage, or the combined function loses eta_out.
  GridFunction w_grid = sample_grid(cr.v, box, opt.resolution);
  double wxx = lp_norm(fd_derivative(w_grid, 2), std::numeric_limits<double>::infinity());
  LusinResult out;
  out.hessian_budget_used = 1.0 * wxx;
  out.hessian_budget_cap = mid - eta_out;
  if (out.hessian_budget_used > out.hessian_budget_cap)
    throw numeric_error("lusin_c2_approx: correction exceeds the Hessian budget; shrink eps");

  ValueOracle v;
  v.dim = 1;
  v.modulus = eta_out;
  v.smoothness = Smoothness::C2;
  v.value = [sv = ps.v.value, wv = cr.v.value](const Point& p) { return sv(p) + wv(p); };
  if (ps.v.has_gradient()) {
    v.gradient = [sg = ps.v.gradient, wg = cr.v.gradient](const Point& p) {
      return sg(p) + wg(p);
    };
  }
  out.v = std::move(v);
  out.patched = std::move(ps);
  out.eps = eps;
  out.a = a;
  // Reported against the original input, so kink-smoothing bands count as
  // mismatch like every other deviation.
  GridFunction orig = sample_grid(u, box, opt.resolution);
  out.mismatch = orig;
  for (int i = 0; i < orig.size(); ++i)
    out.mismatch.values[i] = orig.values[i] - (smoothed.values[i] + w_grid.values[i]);
  out.sup_mismatch = out.mismatch.max_abs();
  out.correction = std::move(cr);
  return out;
}

}  // namespace lusin
