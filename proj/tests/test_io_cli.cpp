#include <doctest.h>

#include <cstdio>

#include "apx/experiment.hpp"
#include "apx/report.hpp"
#include "oracles.hpp"

using namespace apx;

namespace {

std::string tmp_path(const char* name) {
  return std::string("apxlab_test_") + name;
}

}  // namespace

TEST_CASE("set files round trip, comments ignored") {
  RingPtr z11 = make_zmod(11);
  ElementSet X = oracle::zmod_set(z11, {0, 1, 4, 7, 10});
  std::string path = tmp_path("set.txt");
  write_set_file(path, X);
  ElementSet back = read_set_file(path, z11);
  CHECK(back == X);
  write_text_file(path, "# comment\n3\n\n 5 \n");
  ElementSet spaced = read_set_file(path, z11);
  CHECK(spaced == oracle::zmod_set(z11, {3, 5}));
  std::remove(path.c_str());
}

TEST_CASE("emitted cover certificates revalidate when re-ingested") {
  RingPtr z31 = make_zmod(31);
  ElementSet X = oracle::zmod_set(z31, {0, 1, 30, 5, 26});
  ElementSet S = sumset(X, X);
  CoverOptions opts;
  CoverCertificate cert = cover_number(S, X, opts);
  Json j = json_of(cert);
  // Re-ingest the translate list from the JSON document.
  ElementSet F(z31);
  for (const auto& t : j.at("translates"))
    F.insert(z31->parse(t.get<std::string>()));
  CoverCertificate again;
  again.translates = F;
  CHECK(again.revalidate(S, X));
  CHECK(F.size() == j.at("K").get<std::uint64_t>());
}

TEST_CASE("experiment: deterministic reruns, bit-identical reports") {
  std::string cfg = R"({
    "seed": 7,
    "ring": {"kind": "zmod", "n": 101},
    "generator": {"kind": "random-symmetric", "size": 10},
    "pipeline": [
      {"op": "approx_constant"},
      {"op": "dichotomy_report"}
    ]
  })";
  ExperimentResult a = run_experiment(cfg, 1);
  ExperimentResult b = run_experiment(cfg, 1);
  ExperimentResult c = run_experiment(cfg, 4);
  REQUIRE(!a.structural_error);
  CHECK(a.machine.dump() == b.machine.dump());
  CHECK(a.machine.dump() == c.machine.dump());
}

TEST_CASE("experiment: unknown operation is a structural error") {
  std::string cfg = R"({
    "seed": 1,
    "ring": {"kind": "zmod", "n": 7},
    "generator": {"kind": "explicit", "elements": ["0", "1", "6"]},
    "pipeline": [{"op": "definitely_not_an_op"}]
  })";
  ExperimentResult r = run_experiment(cfg, 1);
  CHECK(r.structural_error);
  CHECK(r.error.find("definitely_not_an_op") != std::string::npos);
}

TEST_CASE("experiment: pisot pipeline produces cloud stats") {
  std::string cfg = R"({
    "seed": 3,
    "pipeline": [
      {"op": "pisot_window", "d": 2, "w": "1", "R": "50"},
      {"op": "cloud_stats"}
    ]
  })";
  ExperimentResult r = run_experiment(cfg, 1);
  REQUIRE(!r.structural_error);
  const Json& steps = r.machine.at("report").at("steps");
  CHECK(steps.at(0).at("result").at("count").get<int>() == 71);
  CHECK(steps.at(1).at("result").contains("min_gap"));
}

TEST_CASE("experiment: budget violations truncate, not fail") {
  std::string cfg = R"({
    "seed": 5,
    "ring": {"kind": "integers"},
    "generator": {"kind": "interval", "radius": 2},
    "budgets": {"elements": 10},
    "pipeline": [
      {"op": "iterate_xn", "n": 4, "truncation": "1000000"},
      {"op": "approx_constant"}
    ]
  })";
  ExperimentResult r = run_experiment(cfg, 1);
  REQUIRE(!r.structural_error);
  CHECK(r.machine.at("report").at("steps").at(0).value("truncated", false));
}

TEST_CASE("generator recipes are deterministic per seed") {
  RingPtr z101 = make_zmod(101);
  SplitMix64 a(42), b(42), c(43);
  ElementSet xa = random_symmetric_subset(z101, 10, a);
  ElementSet xb = random_symmetric_subset(z101, 10, b);
  ElementSet xc = random_symmetric_subset(z101, 10, c);
  CHECK(xa == xb);
  CHECK(xa.is_symmetric());
  CHECK(!(xa == xc));
}

TEST_CASE("interval generator in both ambient kinds") {
  CHECK(interval_set(make_integers(), 4).size() == 9);
  RingPtr z11 = make_zmod(11);
  ElementSet iv = interval_set(z11, 3);
  CHECK(iv == oracle::zmod_set(z11, {0, 1, 2, 3, 8, 9, 10}));
  CHECK(iv.is_symmetric());
}

TEST_CASE("growth series CSV shape") {
  RingPtr z = make_integers();
  GrowthSeries s = growth_series(z, oracle::int_set(z, {-1, 0, 1}), 5);
  std::string path = tmp_path("series.csv");
  write_series_csv(path, s);
  std::string body = read_text_file(path);
  CHECK(body == "n,size\n0,1\n1,3\n2,5\n3,7\n4,9\n5,11\n");
  std::remove(path.c_str());
}

TEST_CASE("cloud files carry exact coordinates") {
  QuadFieldData f = quad_field_data(2);
  PointCloud cloud = pisot_window(f, 1, 10);
  std::string path = tmp_path("cloud.txt");
  write_cloud_file(path, cloud);
  std::string body = read_text_file(path);
  CHECK(body.find("1+1*w\t1+1*r2") != std::string::npos);
  std::remove(path.c_str());

  std::string svg = tmp_path("cloud.svg");
  write_cloud_svg(svg, cloud);
  CHECK(read_text_file(svg).find("<circle") != std::string::npos);
  std::remove(svg.c_str());
}
