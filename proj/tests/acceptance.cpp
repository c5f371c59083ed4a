// Acceptance gate: one pass/fail line per criterion, every tolerance pinned
// in code. Exits nonzero if any criterion fails. Built in Release; checks are
// never compiled out.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "lusin/bundle.hpp"
#include "lusin/catalog.hpp"
#include "lusin/convexity.hpp"
#include "lusin/expr.hpp"
#include "lusin/gluing.hpp"
#include "lusin/grid.hpp"
#include "lusin/maximal.hpp"
#include "lusin/mollify.hpp"
#include "lusin/partition.hpp"
#include "lusin/smoothing.hpp"
#include "lusin/smoothmax.hpp"
#include "lusin/verify.hpp"
#include "lusin/whitney.hpp"

using namespace lusin;

namespace {

int g_failed = 0;
std::ostringstream g_detail;

#define REQUIRE(cond, msg)                                          \
  do {                                                              \
    if (!(cond)) {                                                  \
      g_detail << " [" << msg << " at " << __LINE__ << "]";         \
      return false;                                                 \
    }                                                               \
  } while (0)

double now_seconds() {
  using clock = std::chrono::steady_clock;
  static const clock::time_point start = clock::now();
  return std::chrono::duration<double>(clock::now() - start).count();
}

void run_criterion(int index, const std::string& name, double time_limit,
                   bool (*fn)()) {
  g_detail.str("");
  double t0 = now_seconds();
  bool ok = false;
  std::string what;
  try {
    ok = fn();
  } catch (const std::exception& e) {
    ok = false;
    what = std::string(" [exception: ") + e.what() + "]";
  }
  double dt = now_seconds() - t0;
  if (dt > time_limit) {
    ok = false;
    g_detail << " [runtime " << dt << " s exceeds " << time_limit << " s]";
  }
  std::printf("[%s] criterion %2d: %s (%.1f s)%s%s\n", ok ? "PASS" : "FAIL", index,
              name.c_str(), dt, g_detail.str().c_str(), what.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failed;
}

// --- 1: strong-convexity characterization -----------------------------------

bool criterion1() {
  CertifyOptions opt;
  opt.trials = 10000;
  opt.seed = 1;
  for (const auto& e : catalog()) {
    // The merely-convex negative control (modulus 0) has no positive modulus
    // to certify; only its eta + 0.5 rejection applies.
    if (e.eta > 0) {
      ConvexityCertificate at = certify_strong_convexity(e.oracle, e.box, e.eta, opt);
      REQUIRE(at.pass, e.name + " fails at its own modulus");
      REQUIRE(at.worst_violation >= -1e-9, e.name + " violation below -1e-9");
    }
    ConvexityCertificate above =
        certify_strong_convexity(e.oracle, e.box, e.eta + 0.5, opt);
    REQUIRE(!above.pass, e.name + " spuriously passes above its modulus");
  }
  return true;
}

// --- 2: minimal strongly convex extension -----------------------------------

bool criterion2() {
  CatalogEntry e = make_abs_plus_quad();
  Box K(-1.0, 1.0);
  ExtendOptions opt;
  opt.samples = 1024;
  QuadraticBundle b = extend_strongly_convex(e.oracle, K, 2.0, opt);
  for (const auto& a : b.atoms()) {
    REQUIRE(std::fabs(b.eval(a.z) - a.u) <= 1e-10, "node exactness");
  }
  double h = K.side(0) / opt.samples;
  Box wide(-3.0, 3.0);
  GridFunction layout(wide, 4096);
  for (int i = 0; i < layout.nx; ++i) {
    Point x = layout.node(i);
    REQUIRE(b.eval(x) <= e.oracle.value(x) + 1e-9 + h, "extension exceeds the source");
  }
  CertifyOptions copt;
  copt.trials = 10000;
  ConvexityCertificate cert = certify_strong_convexity(b.as_oracle(), wide, 2.0, copt);
  REQUIRE(cert.pass, "extension not 2-strongly convex");
  return true;
}

// --- 3: smooth maximum on random bundle pairs --------------------------------

QuadraticBundle random_bundle(Rng& rng, double eta) {
  // Atoms sampled from w(x) = c0 + c1 x + (eta + s)/2 x^2 + r |x - k|, which
  // is genuinely (eta + s)-strongly convex, so eta is admissible.
  double c0 = rng.uniform(-1.0, 1.0);
  double c1 = rng.uniform(-1.0, 1.0);
  double s = rng.uniform(0.0, 1.0);
  double r = rng.uniform(0.0, 0.5);
  double k = rng.uniform(-1.0, 1.0);
  int m = 5 + static_cast<int>(rng.uniform(0.0, 8.0));
  std::vector<BundleAtom> atoms;
  for (int i = 0; i < m; ++i) {
    double z = rng.uniform(-2.0, 2.0);
    double u = c0 + c1 * z + 0.5 * (eta + s) * z * z + r * std::fabs(z - k);
    double xi = c1 + (eta + s) * z + (z > k ? r : -r);
    atoms.push_back({Point(z), u, Point(xi)});
  }
  return QuadraticBundle(eta, std::move(atoms));
}

bool criterion3() {
  Rng rng(17);
  CertifyOptions copt;
  copt.trials = 300;
  Box box(-2.0, 2.0);
  for (int pair = 0; pair < 100; ++pair) {
    double eta_a = rng.uniform(0.5, 2.0);
    double eta_b = rng.uniform(0.5, 2.0);
    QuadraticBundle a = random_bundle(rng, eta_a);
    QuadraticBundle b = random_bundle(rng, eta_b);
    double delta = rng.uniform(0.05, 0.5);
    ThetaKernel th(delta);
    ValueOracle ao = a.as_oracle(), bo = b.as_oracle();
    ValueOracle m = smooth_max(th, ao, bo);
    for (int i = 0; i < 64; ++i) {
      Point x(rng.uniform(-2.0, 2.0));
      double va = ao.value(x), vb = bo.value(x);
      double vm = m.value(x);
      double exact = std::max(va, vb);
      if (std::fabs(va - vb) >= delta) {
        REQUIRE(std::fabs(vm - exact) <= 1e-12, "exactness outside the window");
      }
      REQUIRE(vm >= exact - 1e-12, "smooth max below the max");
      REQUIRE(vm <= exact + delta / 2.0 + 1e-12, "sandwich slack above delta/2");
    }
    copt.seed = 100 + pair;
    ConvexityCertificate cert =
        certify_strong_convexity(m, box, std::min(eta_a, eta_b), copt);
    REQUIRE(cert.pass, "smooth max loses the shared modulus");
  }
  // Tie value: M(a, a) = a + theta(0)/2 = a + (5/32) delta.
  ThetaKernel th(0.37);
  REQUIRE(std::fabs(smooth_max(th, 2.0, 2.0) - (2.0 + 5.0 * 0.37 / 32.0)) <= 1e-12,
          "tie value");
  return true;
}

// --- 4: mollification ---------------------------------------------------------

bool criterion4() {
  // Pinned golden constant: the kernel's second moment is 1/9 in 1-D, so
  // mollify(x^2, eps) - x^2 = eps^2 / 9 exactly.
  CatalogEntry quad = make_quad();
  for (double eps : {0.2, 0.05}) {
    ValueOracle m = mollify(quad.oracle, eps);
    for (double x : {-1.3, 0.0, 0.7, 2.4}) {
      REQUIRE(std::fabs(m.value(Point(x)) - (x * x + eps * eps / 9.0)) <= 1e-10,
              "parabola golden constant");
    }
  }

  std::vector<CatalogEntry> entries = {make_quad(), make_abs_plus_quad(),
                                       make_huber_abs_plus_quad(0.01), make_neglog1mx2()};
  for (auto& e : entries) {
    Box inner = e.name == "neglog1mx2" ? Box(-0.8, 0.8) : Box(-3.0, 3.0);
    double eps_h = 0.1;
    ValueOracle m = mollify(e.oracle, eps_h);
    GridFunction gv = sample_grid(m, inner, 2048);
    REQUIRE(hessian_floor_grid(gv, {}) >= e.eta - 1e-6, e.name + " hessian floor");

    double prev = std::numeric_limits<double>::infinity();
    for (double eps : {0.1, 0.05, 0.025}) {
      ValueOracle me = mollify(e.oracle, eps);
      GridFunction a = sample_grid(e.oracle, inner, 2048);
      GridFunction d = sample_grid(me, inner, 2048);
      for (int i = 0; i < d.size(); ++i) d.values[i] -= a.values[i];
      double n21 = sobolev_norm(d, 2, 1.0);
      REQUIRE(n21 < prev, e.name + " W^{2,1} error not decreasing");
      prev = n21;
    }
  }
  return true;
}

// --- 5: patched smoothing (norm budget, modulus, partition identity) ----------

bool criterion5() {
  CatalogEntry e = make_huber_abs_plus_quad(0.01);
  Box box(-4.0, 4.0);
  int res = 1 << 14;
  PatchedOptions opt;
  opt.resolution = res;
  PatchedResult r = patched_smooth(e.oracle, 2.0, 1.5, 1e-2, 1.0, box, opt);

  GridFunction gu = sample_grid(e.oracle, box, res);
  GridFunction gv = sample_grid(r.v, box, res);
  GridFunction diff = gu;
  for (int i = 0; i < diff.size(); ++i) diff.values[i] -= gv.values[i];
  REQUIRE(sobolev_norm(diff, 2, 1.0) < 1e-2, "W^{2,1} error above budget");
  REQUIRE(hessian_floor_grid(gv, {}) >= 1.5 - 1e-3, "hessian floor below 1.5");

  PartitionOfUnity pou = build_partition(box);
  for (int i = 0; i < 2000; ++i) {
    Point x(-4.0 + 8.0 * i / 1999.0);
    double sum = 0;
    for (int j = 0; j < pou.count(); ++j) sum += pou.theta(j, x);
    REQUIRE(std::fabs(sum - 1.0) <= 1e-12, "partition identity");
  }
  return true;
}

// --- 6: weak-type bound --------------------------------------------------------

bool criterion6() {
  Rng rng(23);
  for (int rep = 0; rep < 100; ++rep) {
    int n = 200 + static_cast<int>(rng.uniform(0.0, 200.0));
    GridFunction g(Box(-2.0, 2.0), n);
    for (int i = 0; i < n; ++i) g.at(i) = rng.uniform();
    GridFunction mg = maximal_function(g);
    std::vector<double> sorted = mg.values;
    std::sort(sorted.begin(), sorted.end());
    for (double q : {0.25, 0.5, 0.75}) {
      double t = sorted[static_cast<std::size_t>(q * (sorted.size() - 1))];
      if (!(t > 0)) continue;
      WeakTypeReport w = weak_type_check(g, mg, t);
      REQUIRE(w.pass, "weak type bound violated");
    }
  }
  // Indicator of [0,1] on [0,4]: Mg(2) = 1/4, matched within 2h.
  int n = 1024;
  GridFunction g(Box(0.0, 4.0), n);
  for (int i = 0; i < n; ++i) g.at(i) = g.node(i)[0] <= 1.0 ? 1.0 : 0.0;
  GridFunction mg = maximal_function(g);
  REQUIRE(std::fabs(mg.at(n / 2) - 0.25) <= 2.0 * g.h(0), "indicator example");
  return true;
}

// --- 7: Whitney extension from jets ---------------------------------------------

bool criterion7() {
  Rng rng(31);
  for (int rep = 0; rep < 1000; ++rep) {
    int m = 3 + static_cast<int>(rng.uniform(0.0, 6.0));
    std::vector<WhitneyJet> jets;
    double x = rng.uniform(-3.0, -2.0);
    for (int i = 0; i < m; ++i) {
      jets.push_back({x, rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)});
      x += rng.uniform(0.1, 1.5);
    }
    WhitneyExtension w = whitney_extend_1d(jets);
    for (const auto& j : jets) {
      REQUIRE(std::fabs(w.value(j.x) - j.u0) <= 1e-12, "jet value reproduction");
      REQUIRE(std::fabs(w.d1(j.x) - j.u1) <= 1e-12, "jet slope reproduction");
    }
    double bound = w.jet_bound();
    if (bound > 0) {
      Box span(jets.front().x - 2.0, jets.back().x + 2.0);
      REQUIRE(w.norm_2inf(span, 512) / bound <= 100.0, "norm amplification above 100");
    }
  }
  // Parabola jets: the blend at the gap midpoint has the closed form
  // U(mid) = xl * xr (Hermite-style oracle; gap to x^2 is (L/2)^2).
  double xl = -0.3, xr = 0.9;
  WhitneyExtension w =
      whitney_extend_1d({{xl, xl * xl, 2.0 * xl}, {xr, xr * xr, 2.0 * xr}});
  REQUIRE(std::fabs(w.value(0.5 * (xl + xr)) - xl * xr) <= 1e-12, "parabola midpoint oracle");
  return true;
}

// --- 8: truncation-correction norm and measure bounds ----------------------------

GridFunction kinked_testfunction(int res) {
  // Integrable kinked profile whose second derivative concentrates at the
  // origin: the changed-set widths then scale like 1/a over many grid cells,
  // so the measured coupling constant is stable across truncation levels.
  GridFunction u(Box(-10.0, 10.0), res);
  for (int i = 0; i < res; ++i) {
    double x = u.node(i)[0];
    u.at(i) = 1e-2 * std::exp(-std::fabs(x));
  }
  return u;
}

bool criterion8() {
  int res = 1 << 14;
  GridFunction u = kinked_testfunction(res);
  double norm21 = sobolev_norm(u, 2, 1.0);
  std::vector<double> measured;
  for (double a : {0.5, 1.0, 2.0}) {
    CorrectionResult r = iterate_correction(u, a);
    REQUIRE(r.norm2inf_v <= a * (1.0 + 1e-6), "||v||_{2,inf} above the level");
    for (const auto& rec : r.trace) {
      REQUIRE(rec.norm21_u <= std::pow(4.0, -rec.k) * norm21 * 1.1, "trace decay");
    }
    if (r.changed_measure > 0) measured.push_back(r.measured_c_star);
    REQUIRE(r.changed_measure <= (r.measured_c_star / a) * norm21 * (1.0 + 1e-9),
            "measure identity");
  }
  REQUIRE(!measured.empty(), "no disagreement measured at any level");
  double lo = *std::min_element(measured.begin(), measured.end());
  double hi = *std::max_element(measured.begin(), measured.end());
  REQUIRE(hi <= 1.2 * lo + 1e-12, "measured coupling drifts beyond 20 percent");
  return true;
}

// --- 9: sharpened-kink pipeline ----------------------------------------------------

bool criterion9() {
  // The C^{1,1} surrogate is sharpened into a genuine kink by the minimal
  // 2-strongly-convex extension, then approximated at eta = 1, eps = 0.1.
  CatalogEntry huber = make_huber_abs_plus_quad(1e-3);
  Box box(-2.0, 2.0);
  ExtendOptions eopt;
  eopt.samples = 512;
  QuadraticBundle sharp = extend_strongly_convex(huber.oracle, box, 2.0, eopt);
  ValueOracle u = sharp.as_oracle();

  LusinOptions lopt;
  lopt.resolution = 4096;
  LusinResult r = lusin_c2_approx(u, 2.0, 1.0, 0.1, box, lopt);

  GridFunction gu = sample_grid(u, box, 4096);
  GridFunction gv = sample_grid(r.v, box, 4096);
  REQUIRE(disagreement(gu, gv, 1e-9) < 0.1, "disagreement measure above 0.1");
  REQUIRE(hessian_floor_grid(gv, {}) >= 1.0 - 1e-3, "hessian floor below 1");

  std::vector<C2ModulusRow> vt = c2_modulus_table(r.v, box, 512, 3);
  for (std::size_t i = 1; i < vt.size(); ++i) {
    REQUIRE(vt[i].modulus < 0.7 * vt[i - 1].modulus, "approximation modulus plateaus");
  }
  std::vector<C2ModulusRow> ut = c2_modulus_table(u, box, 512, 3);
  for (const auto& row : ut) {
    REQUIRE(row.modulus >= 1.0, "kinked source loses its plateau");
  }
  return true;
}

// --- 10: end-to-end gluing over an exhaustion ---------------------------------------

bool criterion10() {
  CatalogEntry e = make_neglog1mx2();
  Box domain(-1.0, 1.0);
  Expression env = Expression::parse("0.1 * (1 - abs(x))");
  ValueOracle envelope = env.as_oracle(1);

  ScheduleOptions sopt;
  sopt.levels = 4;
  sopt.resolution = 1 << 14;
  AnnulusSchedule sched = build_schedule(e.oracle, domain, envelope, 0.1, sopt);
  GlueResult r = glue(e.oracle, sched);

  REQUIRE(r.branch_margin >= 0.0, "branch inequality violated");
  REQUIRE(r.exactness <= 1e-12, "node exactness above 1e-12");

  // Verification grid: the bounding box of the outermost body B_K (the
  // levels exhaust the open domain only in the limit; the K-level claims
  // are checked on the covered region).
  int res = 0;
  const Body& bk = sched.bodies[sched.levels_count - 1];
  Box vbox = bk.bounding_box();
  res = static_cast<int>(std::round(vbox.side(0) / (domain.side(0) / sched.resolution)));
  GridFunction gu = sample_grid(e.oracle, vbox, res);
  GridFunction gv = sample_grid(r.v, vbox, res);
  REQUIRE(disagreement(gu, gv, 1e-9) < 0.1, "disagreement measure above 0.1");
  REQUIRE(sup_error_envelope(gu, gv, envelope) < 1.0, "tolerance envelope exceeded");
  REQUIRE(graph_symmetric_difference(gu, gv, 1e-9) < 0.1, "graph difference above 0.1");
  return true;
}

}  // namespace

int main() {
  std::printf("acceptance gate: C^2 strongly convex approximation toolkit\n");
  run_criterion(1, "strong-convexity certification at and above the modulus", 5, criterion1);
  run_criterion(2, "minimal extension: node exactness, minimality, modulus", 5, criterion2);
  run_criterion(3, "smooth maximum: exactness, sandwich, tie value, modulus", 10, criterion3);
  run_criterion(4, "mollification: golden constant, hessian floor, W21 decay", 10, criterion4);
  run_criterion(5, "patched smoothing: norm budget, floor, partition identity", 60, criterion5);
  run_criterion(6, "maximal function weak-type bound and indicator example", 30, criterion6);
  run_criterion(7, "Whitney jets: reproduction, amplification, midpoint oracle", 30, criterion7);
  run_criterion(8, "correction: norm level, stable coupling, trace decay", 120, criterion8);
  run_criterion(9, "sharpened-kink pipeline: disagreement, floor, C2 modulus", 120, criterion9);
  run_criterion(10, "gluing end-to-end: branches, exactness, envelope, graphs", 300, criterion10);
  if (g_failed > 0) {
    std::printf("%d criterion(s) failed\n", g_failed);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
