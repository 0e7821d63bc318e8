#include "apx/experiment.hpp"

#include <algorithm>

#include "apx/setops.hpp"

namespace apx {

ElementSet random_symmetric_subset(const RingPtr& ring, std::size_t size,
                                   SplitMix64& rng) {
  if (!ring->is_finite())
    throw DomainError("random_symmetric_subset: finite ring required");
  std::uint64_t n = ring->size();
  ElementSet X(ring);
  X.insert_unchecked(ring->zero());
  std::uint64_t attempts = 0;
  while (X.size() < size && attempts < 64 * size + 64) {
    ++attempts;
    Element e = ring->element_at(rng.below(n));
    X.insert_unchecked(e);
    X.insert_unchecked(ring->neg(e));
  }
  return X;
}

ElementSet interval_set(const RingPtr& ring, std::uint64_t radius) {
  ElementSet X(ring);
  switch (ring->kind()) {
    case Ring::Kind::Integers: {
      for (std::int64_t k = -static_cast<std::int64_t>(radius);
           k <= static_cast<std::int64_t>(radius); ++k)
        X.insert_unchecked(Element(ring.get(), mpz_class(static_cast<long>(k))));
      return X;
    }
    case Ring::Kind::Zmod: {
      Element one = ring->parse("1");
      Element acc = ring->zero();
      X.insert_unchecked(acc);
      for (std::uint64_t k = 1; k <= radius; ++k) {
        acc = ring->add(acc, one);
        X.insert_unchecked(acc);
        X.insert_unchecked(ring->neg(acc));
      }
      return X;
    }
    default:
      throw DomainError("interval generator: integers or zmod ambients only");
  }
}

namespace {

mpq_class parse_q(const Json& j) {
  if (j.is_number_integer()) return mpq_class(j.get<long>());
  if (j.is_string()) {
    mpq_class q(j.get<std::string>());
    q.canonicalize();
    return q;
  }
  throw SpecError("expected a rational (integer or \"p/q\" string)");
}

ElementSet build_generator(const Json& gen, const RingPtr& ring,
                           std::uint64_t seed) {
  std::string kind = gen.at("kind").get<std::string>();
  if (kind == "explicit") {
    std::vector<std::string> enc;
    for (const auto& e : gen.at("elements")) enc.push_back(e.get<std::string>());
    return ElementSet::parse(ring, enc);
  }
  if (kind == "random-symmetric") {
    SplitMix64 rng = SplitMix64::derive(seed, 0xa11ce);
    return random_symmetric_subset(ring, gen.at("size").get<std::size_t>(),
                                   rng);
  }
  if (kind == "interval")
    return interval_set(ring, gen.at("radius").get<std::uint64_t>());
  if (kind == "ideal") {
    ElementSet gens(ring);
    for (const auto& e : gen.at("generators"))
      gens.insert(ring->parse(e.get<std::string>()));
    return ideal_closure_in_full_ring(ring, gens);
  }
  throw SpecError("unknown generator kind '" + kind + "'");
}

struct PipelineState {
  RingPtr ring;
  std::optional<ElementSet> X;
  std::optional<PointCloud> cloud;
  std::optional<GrowthSeries> series;
  Budgets budgets;
  std::uint64_t seed = 0;

  const ElementSet& need_set(const char* op) const {
    if (!X) throw SpecError(std::string(op) + ": no generator set in scope");
    return *X;
  }
  const PointCloud& need_cloud(const char* op) const {
    if (!cloud)
      throw SpecError(std::string(op) + ": no point cloud in scope (run "
                                        "pisot_window or model_set first)");
    return *cloud;
  }
};

CoverMode mode_of(const Json& step) {
  if (step.contains("mode") && step.at("mode").get<std::string>() == "exact")
    return CoverMode::Exact;
  return CoverMode::Greedy;
}

Json run_step(PipelineState& st, const Json& step) {
  std::string op = step.at("op").get<std::string>();
  Json out;
  out["op"] = op;

  if (op == "iterate_xn") {
    unsigned n = step.at("n").get<unsigned>();
    std::optional<Truncation> tr;
    if (step.contains("truncation"))
      tr = Truncation{mpz_class(step.at("truncation").get<std::string>())};
    ElementSet r = iterate_xn(st.need_set("iterate_xn"), n,
                              tr ? &*tr : nullptr, st.budgets.set_elements);
    out["result"] = json_of(r);
    st.X = r;
  } else if (op == "approx_constant") {
    out["result"] = json_of(approx_constant(st.need_set(op.c_str()),
                                            mode_of(step),
                                            st.budgets.search_nodes));
  } else if (op == "bound_suite") {
    out["result"] =
        json_of(bound_suite(st.need_set(op.c_str()), nullptr,
                            st.budgets.search_nodes));
  } else if (op == "dichotomy_report") {
    ThicknessMode tm = (step.contains("mode") &&
                        step.at("mode").get<std::string>() == "greedy")
                           ? ThicknessMode::Greedy
                           : ThicknessMode::Exact;
    out["result"] = json_of(
        dichotomy_report(st.need_set(op.c_str()), tm, st.budgets.search_nodes));
  } else if (op == "nilpotent_certificate") {
    CertificateOptions copts;
    if (step.contains("m_max")) copts.m_max = step.at("m_max").get<unsigned>();
    if (step.contains("class_max"))
      copts.class_max = step.at("class_max").get<unsigned>();
    copts.node_budget = st.budgets.search_nodes;
    auto cert = nilpotent_certificate(st.need_set(op.c_str()), copts);
    out["result"] = cert ? json_of(*cert) : Json("none within budget");
  } else if (op == "norm_zero_set") {
    out["result"] = json_of(norm_zero_set(st.need_set(op.c_str())));
  } else if (op == "strong_norm_check") {
    std::uint64_t budget = step.value("sample_budget", std::uint64_t{200'000});
    out["result"] =
        json_of(strong_norm_check(st.need_set(op.c_str()), budget), st.ring);
  } else if (op == "growth_series") {
    unsigned n_max = step.at("n_max").get<unsigned>();
    st.series = growth_series(st.ring, st.need_set(op.c_str()), n_max,
                              st.budgets.set_elements);
    out["result"] = json_of(*st.series);
  } else if (op == "fit_degree") {
    if (!st.series) throw SpecError("fit_degree: no series in scope");
    out["result"] = json_of(fit_degree(*st.series));
  } else if (op == "gromov_report") {
    GromovOptions gopts;
    if (step.contains("n_max")) gopts.n_max = step.at("n_max").get<unsigned>();
    if (step.contains("class_max"))
      gopts.class_max = step.at("class_max").get<unsigned>();
    if (step.contains("quotient_modulus"))
      gopts.quotient_modulus = step.at("quotient_modulus").get<std::uint64_t>();
    if (step.contains("torsion_free"))
      gopts.torsion_free_flag = step.at("torsion_free").get<bool>();
    gopts.cover_mode = mode_of(step);
    gopts.element_budget = st.budgets.set_elements;
    gopts.node_budget = st.budgets.search_nodes;
    out["result"] = json_of(gromov_report(st.ring, st.need_set(op.c_str()),
                                          gopts));
  } else if (op == "pisot_window") {
    QuadFieldData f = quad_field_data(step.at("d").get<unsigned long>());
    st.cloud = pisot_window(f, parse_q(step.at("w")), parse_q(step.at("R")),
                            st.budgets.points);
    out["result"] = json_of(*st.cloud);
  } else if (op == "cloud_stats") {
    mpq_class margin = step.contains("margin") ? parse_q(step.at("margin"))
                                               : mpq_class(0);
    out["result"] = json_of(cloud_stats(st.need_cloud(op.c_str()), margin));
  } else if (op == "approx_check_cloud") {
    out["result"] = json_of(approx_check_cloud(st.need_cloud(op.c_str()),
                                               parse_q(step.at("margin")),
                                               st.budgets.search_nodes));
  } else if (op == "window_commensurability") {
    QuadFieldData f = quad_field_data(step.at("d").get<unsigned long>());
    out["result"] = json_of(window_commensurability(
        f, parse_q(step.at("w1")), parse_q(step.at("w2")),
        parse_q(step.at("R")), parse_q(step.at("margin")),
        st.budgets.search_nodes));
  } else {
    throw SpecError("unknown operation '" + op + "' in pipeline");
  }
  return out;
}

}  // namespace

ExperimentResult run_experiment(const std::string& config_json,
                                unsigned workers) {
  (void)workers;  // steps are data-dependent; file merging is ordered anyway
  ExperimentResult res;
  Json config;
  try {
    config = Json::parse(config_json);
  } catch (const std::exception& e) {
    res.structural_error = true;
    res.error = std::string("config parse error: ") + e.what();
    return res;
  }
  try {
    PipelineState st;
    st.seed = config.value("seed", std::uint64_t{0});
    if (config.contains("budgets")) {
      const Json& b = config.at("budgets");
      st.budgets.search_nodes =
          b.value("nodes", st.budgets.search_nodes);
      st.budgets.points = b.value("points", st.budgets.points);
      st.budgets.set_elements = b.value("elements", st.budgets.set_elements);
    }
    if (config.contains("ring")) {
      st.ring = make_ring(config.at("ring").dump());
      if (config.contains("generator"))
        st.X = build_generator(config.at("generator"), st.ring, st.seed);
    }
    Json steps = Json::array();
    for (const Json& step : config.at("pipeline")) {
      try {
        steps.push_back(run_step(st, step));
      } catch (const BudgetError& e) {
        Json j;
        j["op"] = step.value("op", "?");
        j["truncated"] = true;
        j["budget_error"] = e.what();
        steps.push_back(j);
      }
    }
    Json report;
    report["seed"] = st.seed;
    report["steps"] = steps;
    res.machine = envelope(config, report);
    res.summary = "experiment with seed " + std::to_string(st.seed) + "\n" +
                  render_text(report);
  } catch (const std::exception& e) {
    res.structural_error = true;
    res.error = e.what();
  }
  return res;
}

int run_experiment_files(const std::string& config_json,
                         const std::string& out_override, unsigned workers) {
  ExperimentResult res = run_experiment(config_json, workers);
  if (res.structural_error) {
    fprintf(stderr, "error: %s\n", res.error.c_str());
    return 2;
  }
  std::string out = out_override;
  if (out.empty())
    out = res.machine.at("config").value("out", std::string("experiment"));
  write_text_file(out + ".json", res.machine.dump(2) + "\n");
  write_text_file(out + ".txt", res.summary);
  return 0;
}

}  // namespace apx
