#include <cstdio>

#include <catch2/catch_amalgamated.hpp>

#include "gridsched/experiment.hpp"
#include "gridsched/fixtures.hpp"
#include "gridsched/io.hpp"
#include "test_helpers.hpp"

using namespace gridsched;

TEST_CASE("graph JSON round trip preserves structure") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    TaskGraph g = testing::random_small_dag(rng, 20);
    g.nodes[0].work = 42.0;
    g.nodes[0].mem_req = 1.5;
    TaskGraph back = graph_from_json(graph_to_json(g));
    CHECK(graph_to_json(back).dump() == graph_to_json(g).dump());
  }
}

TEST_CASE("XML import maps tasks and dependencies") {
  const std::string xml = R"(
    <tasks>
      <task id="1" cost="3" mem="2"/>
      <task id="0" cost="2" work="10"/>
      <dependency src="0" dst="1" data_size="4"/>
    </tasks>)";
  TaskGraph g = import_xml(xml);
  REQUIRE(g.nodes.size() == 2);
  CHECK(g.nodes[0].id == 0);  // sorted by id
  CHECK(g.nodes[0].work == 10.0);
  CHECK(g.nodes[1].mem_req == 2.0);
  REQUIRE(g.edges.size() == 1);
  CHECK(g.edges[0].data_size == 4.0);
  CHECK(validate(g).ok());
}

TEST_CASE("DOT export labels nodes id/cost and edges with data_size") {
  TaskGraph g;
  g.nodes = {TaskNode{0, 2.0}, TaskNode{1, 3.0}};
  g.edges = {{0, 1, 4.0}};
  std::string dot = export_dot(g);
  CHECK(dot.find("label=\"0/2\"") != std::string::npos);
  CHECK(dot.find("n0 -> n1 [label=\"4\"]") != std::string::npos);
}

TEST_CASE("platform JSON round trip") {
  GridPlatform p;
  p.resources = {Resource{0, 2.0, 4.0, 8.0, 0}, Resource{1, 3.0, 4.0, 8.0, 1}};
  p.links = {NetLink{0, 1, 10.0, 0.25}};
  p.default_link = NetLink{0, 0, 5.0, 0.1};
  GridPlatform back = platform_from_json(platform_to_json(p));
  CHECK(platform_to_json(back).dump() == platform_to_json(p).dump());
}

TEST_CASE("schedule files round trip and re-verify") {
  TaskGraph g = reference_dag9();
  GridPlatform p = three_unit_resources();
  auto levels = compute_levels(g);
  Schedule s = static_list_schedule(g, p, levels);

  const std::string path = "test_schedule.json";
  save_schedule(s, path);
  Schedule back = load_schedule(path);
  std::remove(path.c_str());
  CHECK(verify_schedule(back, g, p).ok());
  CHECK(back.makespan == s.makespan);
}

TEST_CASE("experiment config parsing with ga overrides") {
  json j = {
      {"graphs", {"a.json", "b.json"}},
      {"platform", "p.json"},
      {"strategies", {"static", "ccf-ga"}},
      {"seed", 5},
      {"repetitions", 2},
      {"ga", {{"generations", 40}, {"batch_length", 6}, {"islands", 4}}},
  };
  ExperimentConfig cfg = config_from_json(j);
  CHECK(cfg.graphs.size() == 2);
  CHECK(cfg.strategies == std::vector<std::string>{"static", "ccf-ga"});
  CHECK(cfg.ga.generations == 40);
  CHECK(cfg.ga.batch_length == 6);
  CHECK(cfg.ga.islands == 4);
  CHECK(cfg.ga.crossover_rate == 0.9);  // default kept
}

TEST_CASE("comparison report improvement arithmetic recomputes from makespans") {
  TaskGraph g = reference_dag9();
  GridPlatform p = three_unit_resources();
  GAConfig ga;
  auto rep = compare_strategies({"fig2"}, {g}, p, {"static", "ccf-greedy", "ccf-ga"},
                                ga, 3);
  double static_mk = 0.0;
  for (const auto& r : rep.rows)
    if (r.strategy == "static") static_mk = r.makespan;
  for (const auto& r : rep.rows)
    CHECK(r.improvement_pct ==
          Catch::Approx((static_mk - r.makespan) / static_mk * 100.0).margin(1e-9));

  // identical strategy twice: zero improvement
  auto rep2 = compare_strategies({"fig2"}, {g}, p, {"static", "static"}, ga, 3);
  for (const auto& r : rep2.rows) CHECK(r.improvement_pct == 0.0);
}
