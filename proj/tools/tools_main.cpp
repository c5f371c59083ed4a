// Command-line front end for the C^2 strongly convex approximation toolkit.
//
// Exit codes: 0 success, 1 verification failure, 2 configuration error,
// 3 numeric failure.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "lusin/bundle.hpp"
#include "lusin/catalog.hpp"
#include "lusin/convexity.hpp"
#include "lusin/expr.hpp"
#include "lusin/gluing.hpp"
#include "lusin/grid.hpp"
#include "lusin/io.hpp"
#include "lusin/maximal.hpp"
#include "lusin/mollify.hpp"
#include "lusin/smoothing.hpp"
#include "lusin/smoothmax.hpp"
#include "lusin/types.hpp"
#include "lusin/verify.hpp"
#include "lusin/whitney.hpp"

namespace {

using nlohmann::ordered_json;

struct GlobalOpts {
  std::string config;
  std::string out;
  unsigned long long seed = 1;
  int grid = 1024;
  bool json = false, csv = false, svg = false;
};

// Values from --config apply only where the flag was not given on the line.
void apply_config(CLI::App& app, GlobalOpts& g) {
  if (g.config.empty()) return;
  ordered_json cfg = ordered_json::parse(lusin::read_text_file(g.config), nullptr, false);
  if (cfg.is_discarded() || !cfg.is_object()) {
    throw lusin::config_error("config file '" + g.config + "' is not a JSON object");
  }
  if (cfg.contains("grid") && app.count("--grid") == 0) g.grid = cfg["grid"].get<int>();
  if (cfg.contains("seed") && app.count("--seed") == 0) {
    g.seed = cfg["seed"].get<unsigned long long>();
  }
  if (cfg.contains("out") && app.count("--out") == 0) g.out = cfg["out"].get<std::string>();
}

void emit(const GlobalOpts& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text << std::endl;
  } else {
    lusin::write_text_file(g.out, text);
  }
}

std::string with_suffix(const std::string& path, const std::string& suffix) {
  std::size_t dot = path.find_last_of('.');
  if (dot == std::string::npos) return path + suffix;
  return path.substr(0, dot) + suffix + path.substr(dot);
}

ordered_json grid_summary(const lusin::GridFunction& g) {
  return ordered_json{{"nodes", g.size()},
                      {"min", g.min_value()},
                      {"max", g.max_value()},
                      {"h", g.h(0)}};
}

void emit_grid(const GlobalOpts& g, const lusin::GridFunction& grid, const std::string& title) {
  if (g.csv || (!g.json && !g.svg)) {
    if (g.out.empty()) throw lusin::config_error("--csv output needs --out");
    lusin::write_grid_csv(grid, g.out);
  }
  if (g.svg) {
    std::string path = g.out.empty() ? title + ".svg" : with_suffix(g.out, "");
    lusin::write_svg_plot({lusin::series_from_grid(grid, title)}, title, path);
  }
  if (g.json) {
    ordered_json j = grid_summary(grid);
    j["title"] = title;
    std::cout << j.dump(2) << std::endl;
  }
}

lusin::Box box_from_vec(const std::vector<double>& v, const lusin::Box& fallback) {
  if (v.empty()) return fallback;
  if (v.size() == 2) return lusin::Box(v[0], v[1]);
  if (v.size() == 4) {
    return lusin::Box(lusin::Point(v[0], v[1]), lusin::Point(v[2], v[3]));
  }
  throw lusin::config_error("--box takes 2 values (1-D) or 4 (2-D)");
}

int run(int argc, char** argv) {
  CLI::App app{"C^2 strongly convex approximation toolkit"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--config", g.config, "JSON config file with defaults");
  app.add_option("--out", g.out, "output path");
  app.add_option("--seed", g.seed, "RNG seed");
  app.add_option("--grid", g.grid, "grid resolution per axis");
  app.add_flag("--json", g.json, "JSON output");
  app.add_flag("--csv", g.csv, "CSV output");
  app.add_flag("--svg", g.svg, "SVG plot output");

  // ---- catalog -------------------------------------------------------------
  auto* sc_catalog = app.add_subcommand("catalog", "list built-in test functions");

  // ---- theta ---------------------------------------------------------------
  double delta = 0.5;
  auto* sc_theta = app.add_subcommand("theta", "regularized absolute value kernel");
  sc_theta->add_option("--delta", delta, "kernel width")->check(CLI::PositiveNumber);

  // ---- smoothmax -----------------------------------------------------------
  std::string fa = "quad", fb = "abs_plus_quad";
  auto* sc_smax = app.add_subcommand("smoothmax", "smooth maximum of two functions");
  sc_smax->add_option("--delta", delta, "kernel width")->check(CLI::PositiveNumber);
  sc_smax->add_option("--first", fa, "first catalog entry");
  sc_smax->add_option("--second", fb, "second catalog entry");

  // ---- extend --------------------------------------------------------------
  std::string fname = "abs_plus_quad";
  double eta = 1.0;
  std::vector<double> box_vals;
  int samples = 256;
  auto* sc_extend = app.add_subcommand("extend", "minimal strongly convex extension (bundle)");
  sc_extend->add_option("--function", fname, "catalog entry or bundle:<path>");
  sc_extend->add_option("--eta", eta, "modulus of the extension")->check(CLI::PositiveNumber);
  sc_extend->add_option("--box", box_vals, "sampling box")->expected(2, 4);
  sc_extend->add_option("--samples", samples, "atoms per axis");

  // ---- mollify ---------------------------------------------------------------
  double eps = 0.1;
  auto* sc_mollify = app.add_subcommand("mollify", "convolve with the C^2 mollifier");
  sc_mollify->add_option("--function", fname, "catalog entry or bundle:<path>");
  sc_mollify->add_option("--eps", eps, "mollification width")->check(CLI::PositiveNumber);
  sc_mollify->add_option("--box", box_vals, "evaluation box")->expected(2, 4);

  // ---- patched-smooth --------------------------------------------------------
  double eta_in = 2.0, eta_out = 1.0, qnorm = 1.0;
  auto* sc_patch = app.add_subcommand("patched-smooth",
                                      "annulus-by-annulus smoothing with modulus retention");
  sc_patch->add_option("--function", fname, "catalog entry or bundle:<path>");
  sc_patch->add_option("--eta-in", eta_in, "input modulus")->check(CLI::PositiveNumber);
  sc_patch->add_option("--eta-out", eta_out, "output modulus")->check(CLI::PositiveNumber);
  sc_patch->add_option("--eps", eps, "W^{2,q} budget")->check(CLI::PositiveNumber);
  sc_patch->add_option("--q", qnorm, "Sobolev exponent");
  sc_patch->add_option("--box", box_vals, "evaluation box")->expected(2, 4);

  // ---- maximal ---------------------------------------------------------------
  std::string in_csv;
  double level_t = 1.0;
  auto* sc_max = app.add_subcommand("maximal", "Hardy-Littlewood maximal function of a grid");
  sc_max->add_option("--in", in_csv, "input grid CSV");
  sc_max->add_option("--function", fname, "catalog entry (used when --in is absent)");
  sc_max->add_option("--level", level_t, "weak-type level t")->check(CLI::PositiveNumber);
  sc_max->add_option("--box", box_vals, "sampling box")->expected(2, 4);

  // ---- whitney ---------------------------------------------------------------
  double trunc_a = 0.5;
  auto* sc_whit = app.add_subcommand("whitney", "truncate to the regular set and extend");
  sc_whit->add_option("--function", fname, "catalog entry or bundle:<path>");
  sc_whit->add_option("--a", trunc_a, "truncation level")->check(CLI::PositiveNumber);
  sc_whit->add_option("--box", box_vals, "evaluation box")->expected(2, 4);

  // ---- correct ---------------------------------------------------------------
  auto* sc_corr = app.add_subcommand("correct", "iterated truncate-and-mollify correction");
  sc_corr->add_option("--function", fname, "catalog entry or bundle:<path>");
  sc_corr->add_option("--a", trunc_a, "truncation level")->check(CLI::PositiveNumber);
  sc_corr->add_option("--box", box_vals, "evaluation box")->expected(2, 4);

  // ---- lusin -----------------------------------------------------------------
  auto* sc_lusin = app.add_subcommand("lusin", "C^2 strongly convex approximation");
  sc_lusin->add_option("--function", fname, "catalog entry or bundle:<path>");
  sc_lusin->add_option("--eta-in", eta_in, "input modulus")->check(CLI::PositiveNumber);
  sc_lusin->add_option("--eta-out", eta_out, "output modulus")->check(CLI::PositiveNumber);
  sc_lusin->add_option("--eps", eps, "approximation budget")->check(CLI::PositiveNumber);
  sc_lusin->add_option("--box", box_vals, "evaluation box")->expected(2, 4);

  // ---- glue ------------------------------------------------------------------
  double eps_o = 0.05;
  std::string envelope_expr = "0.05";
  int levels = 4;
  std::string strategy = "lusin";
  auto* sc_glue = app.add_subcommand("glue", "global approximation over nested bodies");
  sc_glue->add_option("--function", fname, "catalog entry or bundle:<path>");
  sc_glue->add_option("--eps-o", eps_o, "global budget")->check(CLI::PositiveNumber);
  sc_glue->add_option("--envelope", envelope_expr, "tolerance profile eps(x)");
  sc_glue->add_option("--levels", levels, "number of bodies K");
  sc_glue->add_option("--strategy", strategy, "lusin | mollify")
      ->check(CLI::IsMember({"lusin", "mollify"}));
  sc_glue->add_option("--box", box_vals, "domain box")->expected(2, 4);

  // ---- verify ----------------------------------------------------------------
  std::string uname = "abs_plus_quad", vname;
  double budget = 0;
  auto* sc_verify = app.add_subcommand("verify", "full approximation report");
  sc_verify->add_option("--u", uname, "reference catalog entry or bundle:<path>");
  sc_verify->add_option("--v", vname, "approximation catalog entry or bundle:<path>")
      ->required();
  sc_verify->add_option("--eta", eta, "required modulus")->check(CLI::PositiveNumber);
  sc_verify->add_option("--budget", budget, "disagreement budget (0 disables)");
  sc_verify->add_option("--envelope", envelope_expr, "tolerance profile eps(x)");
  sc_verify->add_option("--box", box_vals, "verification box")->expected(2, 4);

  for (CLI::App* sc : app.get_subcommands([](const CLI::App*) { return true; })) {
    sc->fallthrough();
  }

  CLI11_PARSE(app, argc, argv);
  apply_config(app, g);

  if (sc_catalog->parsed()) {
    ordered_json j = ordered_json::array();
    for (const auto& e : lusin::catalog()) {
      ordered_json row;
      row["name"] = e.name;
      row["description"] = e.description;
      row["eta"] = e.eta;
      row["dim"] = e.oracle.dim;
      if (e.box.dim() == 1) {
        row["box"] = {e.box.lo[0], e.box.hi[0]};
      } else {
        row["box"] = {e.box.lo[0], e.box.lo[1], e.box.hi[0], e.box.hi[1]};
      }
      j.push_back(row);
    }
    emit(g, j.dump(2));
    return 0;
  }

  if (sc_theta->parsed()) {
    lusin::ThetaKernel th(delta);
    lusin::Box b(-2.0 * delta, 2.0 * delta);
    lusin::GridFunction val(b, g.grid), d1(b, g.grid), d2(b, g.grid);
    for (int i = 0; i < g.grid; ++i) {
      double t = val.node(i)[0];
      val.at(i) = th.value(t);
      d1.at(i) = th.d1(t);
      d2.at(i) = th.d2(t);
    }
    if (g.svg) {
      std::string path = g.out.empty() ? "theta.svg" : g.out;
      lusin::write_svg_plot({lusin::series_from_grid(val, "theta"),
                             lusin::series_from_grid(d1, "theta'"),
                             lusin::series_from_grid(d2, "theta''")},
                            "regularized absolute value", path);
      return 0;
    }
    if (g.json) {
      ordered_json j;
      j["delta"] = delta;
      j["value_at_zero"] = th.value(0.0);
      j["d2_at_zero"] = th.d2(0.0);
      j["exact_outside"] = th.value(delta) == delta;
      emit(g, j.dump(2));
      return 0;
    }
    emit_grid(g, val, "theta");
    return 0;
  }

  if (sc_smax->parsed()) {
    lusin::CatalogEntry a = lusin::catalog_lookup(fa);
    lusin::CatalogEntry b = lusin::catalog_lookup(fb);
    lusin::ThetaKernel th(delta);
    lusin::ValueOracle m = lusin::smooth_max(th, a.oracle, b.oracle);
    lusin::Box box = box_from_vec(box_vals, a.box);
    lusin::GridFunction grid = lusin::sample_grid(m, box, g.grid);
    if (g.json) {
      double worst = 0;
      for (int i = 0; i < grid.nx; ++i) {
        lusin::Point x = grid.node(i);
        double exact = std::max(a.oracle.value(x), b.oracle.value(x));
        worst = std::max(worst, grid.at(i) - exact);
      }
      ordered_json j;
      j["delta"] = delta;
      j["max_overshoot"] = worst;
      j["overshoot_cap"] = delta / 2.0;
      emit(g, j.dump(2));
      return 0;
    }
    emit_grid(g, grid, "smoothmax");
    return 0;
  }

  if (sc_extend->parsed()) {
    lusin::CatalogEntry e = lusin::catalog_lookup(fname);
    lusin::Box box = box_from_vec(box_vals, e.box);
    lusin::ExtendOptions opt;
    opt.samples = samples;
    lusin::QuadraticBundle bun = lusin::extend_strongly_convex(e.oracle, box, eta, opt);
    emit(g, bun.to_json());
    return 0;
  }

  if (sc_mollify->parsed()) {
    lusin::CatalogEntry e = lusin::catalog_lookup(fname);
    lusin::Box box = box_from_vec(box_vals, e.box);
    lusin::ValueOracle m = lusin::mollify(e.oracle, eps);
    lusin::GridFunction grid = lusin::sample_grid(m, box, g.grid, e.oracle.dim == 2 ? g.grid : 0);
    if (g.json) {
      lusin::GridFunction orig =
          lusin::sample_grid(e.oracle, box, g.grid, e.oracle.dim == 2 ? g.grid : 0);
      double sup = 0;
      for (int i = 0; i < grid.size(); ++i) {
        sup = std::max(sup, std::fabs(grid.values[i] - orig.values[i]));
      }
      ordered_json j;
      j["eps"] = eps;
      j["sup_change"] = sup;
      j["second_moment"] = lusin::mollifier_second_moment(e.oracle.dim);
      emit(g, j.dump(2));
      return 0;
    }
    emit_grid(g, grid, "mollify");
    return 0;
  }

  if (sc_patch->parsed()) {
    lusin::CatalogEntry e = lusin::catalog_lookup(fname);
    lusin::Box box = box_from_vec(box_vals, e.box);
    lusin::PatchedOptions opt;
    opt.resolution = g.grid;
    lusin::PatchedResult r = lusin::patched_smooth(e.oracle, eta_in, eta_out, eps, qnorm, box, opt);
    ordered_json j;
    j["eta_in"] = eta_in;
    j["eta_out"] = eta_out;
    j["eps"] = eps;
    j["q"] = qnorm;
    ordered_json annuli = ordered_json::array();
    for (const auto& a : r.annuli) {
      annuli.push_back({{"index", a.index},
                        {"delta", a.delta},
                        {"halvings", a.halvings},
                        {"norm_contribution", a.norm_contribution},
                        {"value_gap", a.value_gap},
                        {"gradient_gap", a.gradient_gap},
                        {"nodes", a.nodes}});
    }
    j["annuli"] = annuli;
    emit(g, j.dump(2));
    if (g.csv && !g.out.empty()) {
      lusin::write_grid_csv(lusin::sample_grid(r.v, box, g.grid), with_suffix(g.out, "_grid"));
    }
    return 0;
  }

  if (sc_max->parsed()) {
    lusin::GridFunction grid;
    if (!in_csv.empty()) {
      grid = lusin::read_grid_csv(in_csv);
    } else {
      lusin::CatalogEntry e = lusin::catalog_lookup(fname);
      lusin::Box box = box_from_vec(box_vals, e.box);
      grid = lusin::sample_grid(e.oracle, box, g.grid, e.oracle.dim == 2 ? g.grid : 0);
    }
    lusin::GridFunction mg = lusin::maximal_function(grid);
    lusin::WeakTypeReport wt = lusin::weak_type_check(grid, mg, level_t);
    if (g.json || g.out.empty()) {
      ordered_json j;
      j["level"] = wt.t;
      j["level_set_measure"] = wt.level_set_measure;
      j["weak_type_bound"] = wt.bound;
      j["pass"] = wt.pass;
      emit(g, j.dump(2));
      return 0;
    }
    emit_grid(g, mg, "maximal");
    return 0;
  }

  if (sc_whit->parsed() || sc_corr->parsed()) {
    lusin::CatalogEntry e = lusin::catalog_lookup(fname);
    lusin::Box box = box_from_vec(box_vals, e.box);
    if (e.oracle.dim != 1) throw lusin::config_error("this subcommand is 1-D only");
    lusin::GridFunction grid = lusin::sample_grid(e.oracle, box, g.grid);
    if (sc_whit->parsed()) {
      lusin::TruncateResult t = lusin::truncate_correct(grid, trunc_a);
      ordered_json j;
      j["a"] = trunc_a;
      j["measure_f"] = t.region.measure_f;
      j["measure_g0"] = t.region.measure_g0;
      j["measure_g1"] = t.region.measure_g1;
      j["jet_bound"] = t.w.jet_bound();
      j["norm_2inf"] = t.w.norm_2inf(box, g.grid);
      emit(g, j.dump(2));
      if (g.csv && !g.out.empty()) {
        lusin::write_grid_csv(lusin::sample_grid(t.w.as_oracle(), box, g.grid),
                              with_suffix(g.out, "_grid"));
      }
      return 0;
    }
    lusin::CorrectionResult r = lusin::iterate_correction(grid, trunc_a);
    ordered_json j;
    j["a"] = trunc_a;
    j["iterations"] = r.trace.size();
    j["sup_mismatch"] = r.sup_mismatch;
    j["changed_measure"] = r.changed_measure;
    j["measured_c_star"] = r.measured_c_star;
    ordered_json trace = ordered_json::array();
    for (const auto& it : r.trace) {
      trace.push_back({{"k", it.k},
                       {"level", it.level},
                       {"norm21", it.norm21_u},
                       {"achieved21", it.achieved21},
                       {"eps", it.eps},
                       {"exhausted", it.exhausted}});
    }
    j["trace"] = trace;
    emit(g, j.dump(2));
    return 0;
  }

  if (sc_lusin->parsed()) {
    lusin::CatalogEntry e = lusin::catalog_lookup(fname);
    lusin::Box box = box_from_vec(box_vals, e.box);
    lusin::LusinOptions opt;
    opt.resolution = g.grid;
    lusin::LusinResult r = lusin::lusin_c2_approx(e.oracle, eta_in, eta_out, eps, box, opt);
    lusin::VerifyOptions vo;
    vo.resolution = g.grid;
    vo.eta = eta_out;
    vo.certify.seed = g.seed;
    lusin::ApproxReport rep = lusin::verify_approximation(e.oracle, r.v, box, vo);
    rep.name = fname;
    emit(g, rep.to_json());
    if (g.csv && !g.out.empty()) {
      lusin::write_grid_csv(lusin::sample_grid(r.v, box, g.grid), with_suffix(g.out, "_grid"));
    }
    if (g.svg && !g.out.empty()) {
      lusin::write_svg_plot(
          {lusin::series_from_grid(lusin::sample_grid(e.oracle, box, g.grid), "u"),
           lusin::series_from_grid(lusin::sample_grid(r.v, box, g.grid), "v")},
          "approximation", with_suffix(g.out, "_plot") + ".svg");
    }
    return rep.pass ? 0 : 1;
  }

  if (sc_glue->parsed()) {
    lusin::CatalogEntry e = lusin::catalog_lookup(fname);
    lusin::Box box = box_from_vec(box_vals, e.box);
    lusin::Expression envelope = lusin::Expression::parse(envelope_expr);
    lusin::ScheduleOptions sopt;
    sopt.levels = levels;
    sopt.resolution = g.grid;
    lusin::AnnulusSchedule sched =
        lusin::build_schedule(e.oracle, box, envelope.as_oracle(e.oracle.dim), eps_o, sopt);
    lusin::GlueOptions gopt;
    gopt.strategy = strategy == "lusin" ? lusin::GlueStrategy::LusinCorrection
                                        : lusin::GlueStrategy::MollifyOnly;
    lusin::GlueResult r = lusin::glue(e.oracle, sched, gopt);
    ordered_json j;
    j["levels"] = levels;
    j["eps_o"] = eps_o;
    j["branch_margin"] = r.branch_margin;
    j["exactness"] = r.exactness;
    ordered_json lv = ordered_json::array();
    for (const auto& rep : r.levels) {
      lv.push_back({{"k", rep.k},
                    {"eps_used", rep.eps_used},
                    {"attempts", rep.attempts},
                    {"sup_mismatch", rep.sup_mismatch},
                    {"mismatch_measure", rep.mismatch_measure}});
    }
    j["per_level"] = lv;
    emit(g, j.dump(2));
    return 0;
  }

  if (sc_verify->parsed()) {
    lusin::CatalogEntry ue = lusin::catalog_lookup(uname);
    lusin::CatalogEntry ve = lusin::catalog_lookup(vname);
    lusin::Box box = box_from_vec(box_vals, ue.box);
    lusin::VerifyOptions vo;
    vo.resolution = g.grid;
    vo.eta = eta;
    vo.disagreement_budget = budget;
    vo.certify.seed = g.seed;
    lusin::Expression envelope = lusin::Expression::parse(envelope_expr);
    lusin::ValueOracle env = envelope.as_oracle(ue.oracle.dim);
    vo.envelope = &env;
    lusin::ApproxReport rep = lusin::verify_approximation(ue.oracle, ve.oracle, box, vo);
    rep.name = vname;
    emit(g, rep.to_json());
    return rep.pass ? 0 : 1;
  }

  throw lusin::config_error("no subcommand selected");
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const lusin::Error& e) {
    std::cerr << "error: " << e.what() << std::endl;
    switch (e.kind) {
      case lusin::Error::Kind::Verification:
        return 1;
      case lusin::Error::Kind::Config:
        return 2;
      case lusin::Error::Kind::Numeric:
        return 3;
    }
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 3;
  }
}
