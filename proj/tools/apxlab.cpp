// Command-line laboratory for approximate-subring computations: exact ring
// arithmetic, set calculus, covering certificates, structure certificates,
// escape norms, cut-and-project clouds, growth series, and seeded
// experiments. See README.md for the file formats.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "apx/experiment.hpp"
#include "apx/report.hpp"
#include "apx/setops.hpp"

using namespace apx;

namespace {

struct GlobalOpts {
  std::uint64_t seed = 0;
  std::uint64_t budget_nodes = 1'000'000;
  std::uint64_t budget_points = 2'000'000;
  std::string out;
  std::string format = "structured";  // structured | csv | text
  unsigned workers = 1;
};

std::string slurp_arg(const std::string& arg) {
  // "@path" reads the file; anything else is taken literally.
  if (!arg.empty() && arg[0] == '@') return read_text_file(arg.substr(1));
  return arg;
}

void emit(const GlobalOpts& g, const Json& report, const std::string& csv = "") {
  Json env = envelope(Json::object(), report);
  std::string text;
  if (g.format == "text")
    text = render_text(report);
  else if (g.format == "csv" && !csv.empty())
    text = csv;
  else
    text = env.dump(2) + "\n";
  if (g.out.empty())
    std::cout << text;
  else
    write_text_file(g.out, text);
}

RingPtr ring_of(const std::string& spec) { return make_ring(slurp_arg(spec)); }

mpq_class q_of(const std::string& s) {
  mpq_class q(s);
  q.canonicalize();
  return q;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"apxlab: approximate subrings, covers, and model sets"};
  app.require_subcommand(1);
  GlobalOpts g;
  app.add_option("--seed", g.seed, "master seed for randomized recipes");
  app.add_option("--budget-nodes", g.budget_nodes, "search node budget");
  app.add_option("--budget-points", g.budget_points, "enumeration budget");
  app.add_option("--out", g.out, "output file (default: stdout)");
  app.add_option("--format", g.format, "structured | csv | text");
  app.add_option("--workers", g.workers, "worker thread cap");

  std::string spec, set_a, set_b, set_s, elem_a, elem_b, op, kind, cfg;
  std::string w1 = "1", w2 = "2", wq = "1", Rq = "10", margin = "0", dq = "2";
  std::string trunc;
  unsigned nn = 1, dim_max = 8, class_max = 8, n_max = 20;
  bool exact = false, with_stats = false, svg = false;

  // ring ----------------------------------------------------------------
  auto* ring = app.add_subcommand("ring", "ring construction and arithmetic");
  auto* ring_check = ring->add_subcommand("check", "validate a ring spec");
  ring_check->add_option("--spec", spec)->required();
  auto* ring_arith_cmd = ring->add_subcommand("arith", "add / mul / neg");
  ring_arith_cmd->add_option("--spec", spec)->required();
  ring_arith_cmd->add_option("--op", op)->required();
  ring_arith_cmd->add_option("-a", elem_a)->required();
  ring_arith_cmd->add_option("-b", elem_b);
  auto* ring_order = ring->add_subcommand("order", "additive order");
  ring_order->add_option("--spec", spec)->required();
  ring_order->add_option("-a", elem_a)->required();

  // set -----------------------------------------------------------------
  auto* set = app.add_subcommand("set", "exact set calculus");
  auto* set_pair = set->add_subcommand("pairwise", "sum / product / difference");
  set_pair->add_option("--spec", spec)->required();
  set_pair->add_option("--kind", kind)->required();
  set_pair->add_option("-A", set_a)->required();
  set_pair->add_option("-B", set_b);
  auto* set_iter = set->add_subcommand("iterate", "X_n recursion");
  set_iter->add_option("--spec", spec)->required();
  set_iter->add_option("-X", set_a)->required();
  set_iter->add_option("-n", nn)->required();
  set_iter->add_option("--truncation", trunc);
  auto* set_ball = set->add_subcommand("ball", "word ball X^{<=n}");
  set_ball->add_option("--spec", spec)->required();
  set_ball->add_option("-X", set_a)->required();
  set_ball->add_option("-n", nn)->required();
  auto* set_alg = set->add_subcommand("alg", "Alg_n over a finite field");
  set_alg->add_option("--spec", spec)->required();
  set_alg->add_option("-X", set_a)->required();
  set_alg->add_option("-n", nn)->required();
  auto* set_cover = set->add_subcommand("cover", "translate covering number");
  set_cover->add_option("--spec", spec)->required();
  set_cover->add_option("-S", set_s)->required();
  set_cover->add_option("-X", set_a)->required();
  set_cover->add_flag("--exact", exact);

  // approx ----------------------------------------------------------------
  auto* approx = app.add_subcommand("approx", "approximate-subring reports");
  auto* ap_const = approx->add_subcommand("constant", "K and growth ratio");
  ap_const->add_option("--spec", spec)->required();
  ap_const->add_option("-X", set_a)->required();
  ap_const->add_flag("--exact", exact);
  auto* ap_comm = approx->add_subcommand("commensurability", "mutual covers");
  ap_comm->add_option("--spec", spec)->required();
  ap_comm->add_option("-X", set_a)->required();
  ap_comm->add_option("-Y", set_b)->required();
  ap_comm->add_flag("--exact", exact);
  auto* ap_thick = approx->add_subcommand("thickness", "N-thickness of D in Y");
  ap_thick->add_option("--spec", spec)->required();
  ap_thick->add_option("-D", set_a)->required();
  ap_thick->add_option("-Y", set_b)->required();
  ap_thick->add_flag("--exact", exact);
  auto* ap_bounds = approx->add_subcommand("bounds", "classical bound suite");
  ap_bounds->add_option("--spec", spec)->required();
  ap_bounds->add_option("-X", set_a)->required();
  ap_bounds->add_option("-H", set_b);
  auto* ap_dich = approx->add_subcommand("dichotomy", "zero-divisor dichotomy");
  ap_dich->add_option("--spec", spec)->required();
  ap_dich->add_option("-X", set_a)->required();

  // structure ---------------------------------------------------------------
  auto* st = app.add_subcommand("structure", "subrings, ideals, nilpotency");
  auto* st_verify = st->add_subcommand("verify", "subring / ideal axioms");
  st_verify->add_option("--spec", spec)->required();
  st_verify->add_option("--kind", kind)->required();
  st_verify->add_option("-S", set_s)->required();
  st_verify->add_option("--of", set_b);
  auto* st_sub = st->add_subcommand("subring", "generated subring");
  st_sub->add_option("--spec", spec)->required();
  st_sub->add_option("-X", set_a)->required();
  st_sub->add_option("--truncation", trunc);
  auto* st_ideal = st->add_subcommand("ideal", "generated two-sided ideal");
  st_ideal->add_option("--spec", spec)->required();
  st_ideal->add_option("--subring", set_b)->required();
  st_ideal->add_option("-S", set_s)->required();
  auto* st_largest = st->add_subcommand("largest-ideal", "largest ideal in S");
  st_largest->add_option("--spec", spec)->required();
  st_largest->add_option("--subring", set_b)->required();
  st_largest->add_option("-S", set_s)->required();
  auto* st_class = st->add_subcommand("class", "nilpotency class");
  st_class->add_option("--spec", spec)->required();
  st_class->add_option("-R", set_a)->required();
  st_class->add_option("--max", dim_max);
  auto* st_base = st->add_subcommand("base", "nilpotent base search");
  st_base->add_option("--spec", spec)->required();
  st_base->add_option("-R", set_a)->required();
  st_base->add_option("-n", nn)->required();
  auto* st_cert = st->add_subcommand("certificate", "nilpotent certificate");
  st_cert->add_option("--spec", spec)->required();
  st_cert->add_option("-X", set_a)->required();
  st_cert->add_option("--m-max", dim_max);
  st_cert->add_option("--class-max", class_max);

  // escape ----------------------------------------------------------------
  auto* esc = app.add_subcommand("escape", "escape norms");
  auto* esc_norm = esc->add_subcommand("norm", "||r||_X");
  esc_norm->add_option("--spec", spec)->required();
  esc_norm->add_option("-X", set_a)->required();
  esc_norm->add_option("-r", elem_a)->required();
  auto* esc_zero = esc->add_subcommand("zeroset", "norm-zero set in <X>");
  esc_zero->add_option("--spec", spec)->required();
  esc_zero->add_option("-X", set_a)->required();
  auto* esc_check = esc->add_subcommand("check", "strong-norm inequalities");
  esc_check->add_option("--spec", spec)->required();
  esc_check->add_option("-Z", set_a)->required();

  // cutproject ---------------------------------------------------------------
  auto* cp = app.add_subcommand("cutproject", "cut-and-project schemes");
  auto* cp_pisot = cp->add_subcommand("pisot", "S-integer window cloud");
  cp_pisot->add_option("-d", dq);
  cp_pisot->add_option("-w", wq);
  cp_pisot->add_option("-R", Rq);
  cp_pisot->add_flag("--stats", with_stats);
  cp_pisot->add_option("--check-margin", margin);
  cp_pisot->add_flag("--svg", svg);
  auto* cp_model = cp->add_subcommand("model", "lattice-scheme model set");
  cp_model->add_option("--scheme", cfg, "scheme JSON (@file ok)")->required();
  cp_model->add_flag("--stats", with_stats);
  auto* cp_win = cp->add_subcommand("wincomm", "window commensurability");
  cp_win->add_option("-d", dq);
  cp_win->add_option("--w1", w1);
  cp_win->add_option("--w2", w2);
  cp_win->add_option("-R", Rq);
  cp_win->add_option("--margin", margin);
  auto* cp_alg = cp->add_subcommand("algebra", "algebra-valued model set");
  cp_alg->add_option("-d", dq);
  cp_alg->add_option("-w", wq);
  cp_alg->add_option("-R", Rq);
  cp_alg->add_option("--mul", cfg, "structure constants JSON (@file ok)")
      ->required();

  // growth ----------------------------------------------------------------
  auto* gr = app.add_subcommand("growth", "growth series and the dichotomy");
  auto* gr_series = gr->add_subcommand("series", "|X^{<=n}| for n <= n_max");
  gr_series->add_option("--spec", spec)->required();
  gr_series->add_option("-X", set_a)->required();
  gr_series->add_option("--n-max", n_max)->required();
  auto* gr_gromov = gr->add_subcommand("gromov", "combined pipeline");
  gr_gromov->add_option("--spec", spec)->required();
  gr_gromov->add_option("-X", set_a)->required();
  gr_gromov->add_option("--n-max", n_max);
  gr_gromov->add_option("--class-max", class_max);
  gr_gromov->add_option("--quotient-modulus", nn);

  // experiment ----------------------------------------------------------------
  auto* ex = app.add_subcommand("experiment", "seeded experiment configs");
  auto* ex_run = ex->add_subcommand("run", "run a config document");
  ex_run->add_option("--config", cfg, "config JSON (@file ok)")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    auto load_set = [&](const std::string& path, const RingPtr& r) {
      return read_set_file(path, r);
    };
    CoverMode mode = exact ? CoverMode::Exact : CoverMode::Greedy;

    if (*ring_check) {
      RingPtr r = ring_of(spec);
      Json j;
      j["ring"] = Json::parse(r->describe());
      j["finite"] = r->is_finite();
      if (r->is_finite()) j["size"] = r->size();
      emit(g, j);
    } else if (*ring_arith_cmd) {
      RingPtr r = ring_of(spec);
      Element a = r->parse(elem_a);
      std::optional<Element> b;
      if (!elem_b.empty()) b = r->parse(elem_b);
      Element res = ring_arith(*r, op, a, b ? &*b : nullptr);
      Json j;
      j["result"] = r->encode(res);
      emit(g, j);
    } else if (*ring_order) {
      RingPtr r = ring_of(spec);
      auto o = r->additive_order(r->parse(elem_a));
      Json j;
      j["order"] = o ? Json(o->get_str()) : Json("infinite");
      emit(g, j);
    } else if (*set_pair) {
      RingPtr r = ring_of(spec);
      ElementSet A = load_set(set_a, r);
      ElementSet B = set_b.empty() ? A : load_set(set_b, r);
      PairwiseKind k = kind == "sum"       ? PairwiseKind::Sum
                       : kind == "product" ? PairwiseKind::Product
                                           : PairwiseKind::Difference;
      emit(g, json_of(pairwise_set(k, A, B)));
    } else if (*set_iter) {
      RingPtr r = ring_of(spec);
      std::optional<Truncation> tr;
      if (!trunc.empty()) tr = Truncation{mpz_class(trunc)};
      emit(g, json_of(iterate_xn(load_set(set_a, r), nn, tr ? &*tr : nullptr)));
    } else if (*set_ball) {
      RingPtr r = ring_of(spec);
      emit(g, json_of(word_ball(r, load_set(set_a, r), nn)));
    } else if (*set_alg) {
      RingPtr r = ring_of(spec);
      emit(g, json_of(alg_set(r, load_set(set_a, r), nn)));
    } else if (*set_cover) {
      RingPtr r = ring_of(spec);
      CoverOptions opts;
      opts.mode = mode;
      opts.node_budget = g.budget_nodes;
      emit(g,
           json_of(cover_number(load_set(set_s, r), load_set(set_a, r), opts)));
    } else if (*ap_const) {
      RingPtr r = ring_of(spec);
      emit(g,
           json_of(approx_constant(load_set(set_a, r), mode, g.budget_nodes)));
    } else if (*ap_comm) {
      RingPtr r = ring_of(spec);
      emit(g, json_of(commensurability(load_set(set_a, r), load_set(set_b, r),
                                       mode, g.budget_nodes)));
    } else if (*ap_thick) {
      RingPtr r = ring_of(spec);
      ThicknessMode tm = exact ? ThicknessMode::Exact : ThicknessMode::Greedy;
      emit(g, json_of(thickness(load_set(set_a, r), load_set(set_b, r), tm,
                                g.budget_nodes),
                      r));
    } else if (*ap_bounds) {
      RingPtr r = ring_of(spec);
      ElementSet X = load_set(set_a, r);
      std::optional<ElementSet> H;
      if (!set_b.empty()) H = load_set(set_b, r);
      emit(g, json_of(bound_suite(X, H ? &*H : nullptr, g.budget_nodes)));
    } else if (*ap_dich) {
      RingPtr r = ring_of(spec);
      emit(g, json_of(dichotomy_report(load_set(set_a, r))));
    } else if (*st_verify) {
      RingPtr r = ring_of(spec);
      ElementSet S = load_set(set_s, r);
      std::optional<ElementSet> of;
      if (!set_b.empty()) of = load_set(set_b, r);
      auto res = verify_substructure(
          kind == "subring" ? SubstructureKind::Subring
                            : SubstructureKind::IdealOf,
          S, of ? &*of : nullptr);
      Json j;
      j["ok"] = res.ok;
      if (!res.ok) j["violation"] = res.violation;
      emit(g, j);
    } else if (*st_sub) {
      RingPtr r = ring_of(spec);
      std::optional<Truncation> tr;
      if (!trunc.empty()) tr = Truncation{mpz_class(trunc)};
      emit(g, json_of(generated_subring(load_set(set_a, r),
                                        tr ? &*tr : nullptr)));
    } else if (*st_ideal) {
      RingPtr r = ring_of(spec);
      emit(g,
           json_of(generated_ideal(load_set(set_b, r), load_set(set_s, r))));
    } else if (*st_largest) {
      RingPtr r = ring_of(spec);
      emit(g, json_of(largest_ideal_within(load_set(set_b, r),
                                           load_set(set_s, r))));
    } else if (*st_class) {
      RingPtr r = ring_of(spec);
      auto c = nilpotency_class(load_set(set_a, r), dim_max);
      Json j;
      j["class"] = c ? Json(*c) : Json("not nilpotent within max");
      emit(g, j);
    } else if (*st_base) {
      RingPtr r = ring_of(spec);
      auto b = nilpotent_base(load_set(set_a, r), nn, g.budget_nodes);
      Json j;
      if (b) {
        Json arr = Json::array();
        for (const Element& e : *b) arr.push_back(r->encode(e));
        j["base"] = arr;
      } else {
        j["base"] = "none found";
      }
      emit(g, j);
    } else if (*st_cert) {
      RingPtr r = ring_of(spec);
      CertificateOptions copts;
      copts.m_max = dim_max;
      copts.class_max = class_max;
      copts.node_budget = g.budget_nodes;
      auto cert = nilpotent_certificate(load_set(set_a, r), copts);
      emit(g, cert ? json_of(*cert) : Json("none within budget"));
    } else if (*esc_norm) {
      RingPtr r = ring_of(spec);
      emit(g, json_of(escape_norm(load_set(set_a, r), r->parse(elem_a))));
    } else if (*esc_zero) {
      RingPtr r = ring_of(spec);
      emit(g, json_of(norm_zero_set(load_set(set_a, r))));
    } else if (*esc_check) {
      RingPtr r = ring_of(spec);
      emit(g, json_of(strong_norm_check(load_set(set_a, r)), r));
    } else if (*cp_pisot) {
      QuadFieldData f = quad_field_data(std::stoul(dq));
      PointCloud cloud = pisot_window(f, q_of(wq), q_of(Rq), g.budget_points);
      Json j = json_of(cloud, cloud.points.size() <= 4096);
      if (with_stats) j["stats"] = json_of(cloud_stats(cloud));
      if (q_of(margin) > 0)
        j["approx_check"] =
            json_of(approx_check_cloud(cloud, q_of(margin), g.budget_nodes));
      emit(g, j);
      if (!g.out.empty()) {
        write_cloud_file(g.out + ".cloud", cloud);
        if (svg) write_cloud_svg(g.out + ".svg", cloud);
      }
    } else if (*cp_model) {
      Json sj = Json::parse(slurp_arg(cfg));
      ModelSetSpec ms;
      ms.scheme.dA = sj.at("dA").get<unsigned>();
      ms.scheme.dB = sj.at("dB").get<unsigned>();
      ms.scheme.d = sj.value("d", 0ul);
      for (const auto& row : sj.at("basis")) {
        std::vector<QuadVal> v;
        for (const auto& cell : row) {
          if (cell.is_array())
            v.push_back(QuadVal(q_of(cell.at(0).get<std::string>()),
                                q_of(cell.at(1).get<std::string>()),
                                ms.scheme.d));
          else
            v.push_back(
                QuadVal(q_of(cell.get<std::string>()), 0, ms.scheme.d));
        }
        ms.scheme.basis.push_back(v);
      }
      for (const auto& plane : sj.at("mul")) {
        std::vector<std::vector<mpz_class>> p2;
        for (const auto& row : plane) {
          std::vector<mpz_class> r2;
          for (const auto& cell : row)
            r2.push_back(mpz_class(cell.get<long>()));
          p2.push_back(r2);
        }
        ms.scheme.mul.push_back(p2);
      }
      if (sj.at("window").is_array()) {
        ms.window.shape = WindowSpec::Shape::Box;
        for (const auto& h : sj.at("window"))
          ms.window.half_widths.push_back(q_of(h.get<std::string>()));
      } else {
        ms.window.shape = WindowSpec::Shape::Ball;
        ms.window.radius = q_of(sj.at("window").get<std::string>());
      }
      ms.truncation_R = q_of(sj.at("R").get<std::string>());
      PointCloud cloud = model_set(ms, g.budget_points);
      Json j = json_of(cloud, cloud.points.size() <= 4096);
      if (with_stats) j["stats"] = json_of(cloud_stats(cloud));
      emit(g, j);
      if (!g.out.empty()) write_cloud_file(g.out + ".cloud", cloud);
    } else if (*cp_win) {
      QuadFieldData f = quad_field_data(std::stoul(dq));
      emit(g, json_of(window_commensurability(f, q_of(w1), q_of(w2), q_of(Rq),
                                              q_of(margin), g.budget_nodes)));
    } else if (*cp_alg) {
      QuadFieldData f = quad_field_data(std::stoul(dq));
      Json mj = Json::parse(slurp_arg(cfg));
      std::vector<std::vector<std::vector<mpz_class>>> mul;
      for (const auto& plane : mj) {
        std::vector<std::vector<mpz_class>> p2;
        for (const auto& row : plane) {
          std::vector<mpz_class> r2;
          for (const auto& cell : row)
            r2.push_back(mpz_class(cell.get<long>()));
          p2.push_back(r2);
        }
        mul.push_back(p2);
      }
      emit(g, json_of(algebra_model_set(f, q_of(wq), q_of(Rq), mul, 64, g.seed,
                                        g.budget_points)));
    } else if (*gr_series) {
      RingPtr r = ring_of(spec);
      GrowthSeries s = growth_series(r, load_set(set_a, r), n_max);
      std::string csv = "n,size\n";
      for (std::size_t n = 0; n < s.sizes.size(); ++n)
        csv += std::to_string(n) + "," + std::to_string(s.sizes[n]) + "\n";
      emit(g, json_of(s), csv);
    } else if (*gr_gromov) {
      RingPtr r = ring_of(spec);
      GromovOptions gopts;
      gopts.n_max = n_max;
      gopts.class_max = class_max;
      if (gr_gromov->count("--quotient-modulus")) gopts.quotient_modulus = nn;
      emit(g, json_of(gromov_report(r, load_set(set_a, r), gopts)));
    } else if (*ex_run) {
      return run_experiment_files(slurp_arg(cfg), g.out, g.workers);
    }
  } catch (const BudgetError& e) {
    fprintf(stderr, "budget exceeded: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
