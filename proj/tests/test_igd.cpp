#include "doctest.h"
#include "stardist/igd.hpp"

using namespace stardist;

namespace {

const char* kComb = R"(
# comment line
[prefix]
vertices: 1

[arm a]
vertices: 2
unit: 0-1
splice_prefix: 0-0
splice_unit: 0-0   # trailing comment
)";

bool is_path(const Graph& g) {
  if (!is_connected(g) || g.size() != g.order() - 1) return false;
  for (Vertex v = 0; v < g.order(); ++v)
    if (g.degree(v) > 2) return false;
  return true;
}

}  // namespace

TEST_CASE("parse a comb") {
  const auto d = parse_igd(kComb);
  CHECK(d.prefix.order() == 1);
  REQUIRE(d.arms.size() == 1);
  CHECK(d.arms[0].name == "a");
  CHECK(d.arms[0].unit.order() == 2);
  CHECK(d.arms[0].unit.has_edge(0, 1));
  CHECK(d.arms[0].splice_prefix == std::vector<VertexPair>{{0, 0}});
  CHECK(d.arms[0].splice_unit == std::vector<VertexPair>{{0, 0}});
}

TEST_CASE("pairs may be comma separated and keys may repeat") {
  const auto d = parse_igd("[arm x]\nvertices: 3\nunit: 0-1, 1-2\nunit: 0-2\nsplice_unit: 0-0,1-1\n");
  CHECK(d.prefix.order() == 0);
  CHECK(d.arms[0].unit.size() == 3);
  CHECK(d.arms[0].splice_unit.size() == 2);
}

TEST_CASE("write and parse round trip") {
  const auto d = parse_igd(kComb);
  const auto again = parse_igd(write_igd(d));
  CHECK(again.prefix.order() == d.prefix.order());
  CHECK(again.arms[0].unit.edges() == d.arms[0].unit.edges());
  CHECK(again.arms[0].splice_prefix == d.arms[0].splice_prefix);
  CHECK(again.arms[0].splice_unit == d.arms[0].splice_unit);
}

TEST_CASE("parse errors carry line numbers") {
  auto message = [](const char* text) {
    try {
      parse_igd(text);
    } catch (const ParseError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message("vertices: 1\n") == "igd line 1: key outside of a section");
  CHECK(message("[arm a]\nvertices: 1\nsplice_unit: 0_0\n").starts_with("igd line 3:"));
  CHECK(message("[arm a]\nvertices: 1\nsplice_unit: 0-0\n[arm a]\nvertices: 1\n").starts_with("igd line 4: duplicate"));
  CHECK(message("[prefix]\nvertices: 1\n[prefix]\n").starts_with("igd line 3:"));
  CHECK(message("[arm a]\nvertices: 2\nunit: 0-2\nsplice_unit: 0-0\n").find("out of range") != std::string::npos);
  CHECK(message("[arm a]\nvertices: 1\ncolour: 3\n").starts_with("igd line 3: unknown key"));
  CHECK(message("[arms a]\n").starts_with("igd line 1: unknown section"));
  CHECK(message("[arm a]\nunit: 0-1\n").find("missing 'vertices:'") != std::string::npos);
  CHECK(message("[arm a]\nvertices: -1\n").starts_with("igd line 2:"));
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(parse_igd("[prefix]\nvertices: 1\n"), PreconditionError);
  CHECK_THROWS_AS(parse_igd("[arm a]\nvertices: 1\n"), PreconditionError);
  // Prefix vertex never joined to the arm.
  CHECK_THROWS_AS(parse_igd("[prefix]\nvertices: 1\n[arm a]\nvertices: 1\nsplice_unit: 0-0\n"), PreconditionError);
  // Two disjoint rays inside one arm.
  CHECK_THROWS_AS(parse_igd("[arm a]\nvertices: 2\nsplice_unit: 0-0 1-1\n"), PreconditionError);
  CHECK_THROWS_AS(parse_igd("[arm a]\nvertices: 1\nsplice_unit: 0-0 0-0\n"), PreconditionError);
  CHECK_NOTHROW(parse_igd("[arm a]\nvertices: 2\nunit: 0-1\nsplice_unit: 0-0 1-1\n"));
}

TEST_CASE("truncation of a plain ray is a path") {
  const auto d = parse_igd("[arm a]\nvertices: 1\nsplice_unit: 0-0\n");
  for (int depth = 1; depth <= 6; ++depth) {
    const auto t = truncate(d, depth);
    CHECK(t.graph.order() == depth);
    CHECK(is_path(t.graph));
    CHECK(t.boundary == std::vector<Vertex>{depth - 1});
  }
  CHECK_THROWS_AS(truncate(d, 0), PreconditionError);
}

TEST_CASE("truncation ids and origins") {
  const auto d = load_igd(STARDIST_DATA_DIR "/igd/mixed.igd");
  const auto t = truncate(d, 3);
  CHECK(t.graph.order() == 1 + 3 + 9);
  CHECK(t.graph.size() == 2 + 2 + 3 * 3 + 2);
  for (Vertex v = 0; v < t.graph.order(); ++v) CHECK(t.id(t.origin[v]) == v);
  CHECK(t.id({0, 3, 0}) == -1);
  CHECK(t.id({1, 0, 3}) == -1);
  CHECK(t.origin[0].depth() == 0);
  CHECK(t.boundary == std::vector<Vertex>{3, 10, 11, 12});
  CHECK(t.graph.has_edge(0, t.id({0, 0, 0})));
  CHECK(t.graph.has_edge(0, t.id({1, 0, 0})));
}

TEST_CASE("truncations nest") {
  const auto d = load_igd(STARDIST_DATA_DIR "/igd/pendant_triangles.igd");
  const auto small = truncate(d, 3);
  const auto big = truncate(d, 5);
  CHECK(small.graph.order() == 9);
  for (const auto& e : small.graph.edges())
    CHECK(big.graph.has_edge(big.id(small.origin[e.u]), big.id(small.origin[e.v])));
  std::vector<Vertex> inner;
  for (Vertex v = 0; v < big.graph.order(); ++v)
    if (big.origin[v].depth() <= 3) inner.push_back(v);
  CHECK(induced_subgraph(big.graph, inner).graph.size() == small.graph.size());
}

TEST_CASE("stars in descriptions") {
  const auto comb = load_igd(STARDIST_DATA_DIR "/igd/pendant_k1.igd");
  const auto claw = find_star_in_description(comb, 3);
  REQUIRE(claw);
  CHECK(claw->leaves.size() == 3);
  CHECK_FALSE(find_star_in_description(comb, 4));
  CHECK_FALSE(find_star_in_description(load_igd(STARDIST_DATA_DIR "/igd/r3_strip.igd"), 3));
  CHECK_FALSE(find_star_in_description(load_igd(STARDIST_DATA_DIR "/igd/two_armed_star.igd"), 3));
}
