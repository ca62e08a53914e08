#include "fixtures.hpp"

#include "qgs/errors.hpp"
#include "qgs/graph.hpp"
#include "qgs/random_graph.hpp"

#include <doctest.h>

#include <random>

using namespace qgs;

TEST_CASE("vertices are sorted and external status follows the leads") {
  const MetricGraph g({{"V3", 0.9}, {"V1", 0.4}, {"V2", -1.1}},
                      {{"e1", "V1", "V2", 1.0}, {"e2", "V2", "V3", 2.0}}, {"V3"});
  CHECK(g.vertices()[0].id == "V1");
  CHECK(g.vertices()[2].id == "V3");
  CHECK(g.external_indices() == std::vector<std::size_t>{2});
  CHECK(g.degree(1) == 2);
  CHECK(g.total_length() == doctest::Approx(3.0));
}

TEST_CASE("loops count twice in the degree") {
  const auto g = fixtures::loop_graph();
  CHECK(g.degree(g.vertex_index("V1")) == 3);
  CHECK(g.degree(g.vertex_index("V2")) == 1);
}

TEST_CASE("serialisation round trip on random graphs") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 25; ++i) {
    const MetricGraph g = random_graph(rng);
    CHECK(parse_graph(serialize_graph(g)) == g);
  }
}

TEST_CASE("parser accepts scalar and pair couplings") {
  const auto g = parse_graph(R"({"vertices":[{"id":"A","coupling":1.5},{"id":"B","coupling":[0.5,-2]}],
                                 "edges":[{"id":"e","from":"A","to":"B","length":2}],"leads":["A"]})");
  CHECK(g.vertices()[0].coupling == Complex(1.5, 0.0));
  CHECK(g.vertices()[1].coupling == Complex(0.5, -2.0));
  CHECK(g.lead_count() == 1);
}

TEST_CASE("parser reports line or field") {
  try {
    parse_graph("{\n\"vertices\": [\n{\"id\": 3}]}");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.field() == "/vertices/0/id");
  }
  try {
    parse_graph("{\n\"vertices\": [,]}");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(load_graph("/nonexistent/graph.json"), InputError);
}

TEST_CASE("validation codes") {
  SUBCASE("disconnected") {
    const MetricGraph g({{"A", 0.0}, {"B", 0.0}, {"C", 0.0}}, {{"e", "A", "B", 1.0}}, {});
    CHECK(validate(g).has("disconnected"));
    CHECK_THROWS_AS(require_valid(g), InvalidGraph);
  }
  SUBCASE("length") {
    const MetricGraph g({{"A", 0.0}, {"B", 0.0}}, {{"e", "A", "B", -1.0}}, {});
    CHECK(validate(g).has("non-positive-length"));
  }
  SUBCASE("two leads at one vertex") {
    const MetricGraph g({{"A", 0.0}, {"B", 0.0}}, {{"e", "A", "B", 1.0}}, {"A", "A"});
    CHECK(validate(g).has("multiple-leads"));
  }
  SUBCASE("unknown endpoint") {
    const MetricGraph g({{"A", 0.0}}, {{"e", "A", "Z", 1.0}}, {});
    CHECK(validate(g).has("unknown-endpoint"));
  }
  SUBCASE("commensurate lengths only warn") {
    const MetricGraph g({{"A", 0.0}, {"B", 0.0}, {"C", 0.0}},
                        {{"e1", "A", "B", 1.0}, {"e2", "B", "C", 1.5}}, {});
    const auto report = validate(g);
    CHECK(report.valid());
    CHECK(report.has("rational-dependence"));
  }
  CHECK(validate(fixtures::four_vertex()).issues.empty());
}

TEST_CASE("contraction merges endpoints and sums couplings") {
  const auto g = fixtures::triangle();
  const auto c = contract(g, "e1");
  const std::string merged = merged_vertex_id("V1", "V2");
  CHECK(merged == "(V1|V2)");
  REQUIRE(c.vertex_count() == 2);
  const auto& v = c.vertices()[c.vertex_index(merged)];
  CHECK(v.coupling.real() == doctest::Approx(0.4 - 1.1));
  CHECK(c.edge_count() == 2);
  CHECK(c.lead_count() == 2);

  // Contracting e2 next turns e3 into a loop.
  const auto cc = contract(c, "e2");
  REQUIRE(cc.vertex_count() == 1);
  CHECK(cc.edges().front().is_loop());
  CHECK(cc.vertices().front().coupling.real() == doctest::Approx(0.2));
  CHECK(cc.lead_count() == 1);
  CHECK_THROWS_AS(contract(cc, "e3"), LoopContraction);
  CHECK_THROWS_AS(contract(g, "nope"), UnknownEdge);
}

TEST_CASE("spanning tree paths") {
  const auto paths = spanning_tree(fixtures::four_vertex(), "V1");
  REQUIRE(paths.size() == 4);
  CHECK(paths[0].target == "V1");
  CHECK(paths[0].edge_ids.empty());
  CHECK(paths[3].target == "V4");
  CHECK(paths[3].vertices_on_path == std::vector<std::string>{"V1", "V2", "V3", "V4"});
  CHECK(paths[3].edge_ids == std::vector<std::string>{"e1", "e2", "e3"});

  // Random graphs: one path per vertex, consistent chains, non-decreasing length.
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    const auto g = random_graph(rng);
    const auto root = g.vertices()[g.external_indices().front()].id;
    const auto ps = spanning_tree(g, root);
    CHECK(ps.size() == g.vertex_count());
    for (std::size_t p = 0; p < ps.size(); ++p) {
      CHECK(ps[p].vertices_on_path.front() == root);
      CHECK(ps[p].vertices_on_path.back() == ps[p].target);
      CHECK(ps[p].edge_ids.size() + 1 == ps[p].vertex_count());
      if (p > 0) CHECK(ps[p - 1].vertex_count() <= ps[p].vertex_count());
    }
  }
  const MetricGraph split({{"A", 0.0}, {"B", 0.0}}, {}, {});
  CHECK_THROWS_AS(spanning_tree(split, "A"), Disconnected);
}

TEST_CASE("random graphs satisfy the generator contract") {
  std::mt19937_64 rng(3);
  RandomGraphOptions opt;
  for (int i = 0; i < 30; ++i) {
    const auto g = random_graph(rng, opt);
    CHECK(validate(g).valid());
    CHECK(g.vertex_count() <= 5);
    CHECK(g.edge_count() <= 8);
    CHECK(g.lead_count() >= 1);
    for (const auto& v : g.vertices()) CHECK(std::abs(v.coupling.real()) <= 2.0);
  }
}
