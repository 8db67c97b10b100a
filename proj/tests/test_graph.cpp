#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "stardist/graph.hpp"

using namespace stardist;

TEST_CASE("graph6 decodes hand-checked strings") {
  const Graph k1 = parse_graph6("@");
  CHECK(k1.order() == 1);
  CHECK(k1.size() == 0);

  const Graph k2 = parse_graph6("A_");
  CHECK(k2.order() == 2);
  CHECK(k2.has_edge(0, 1));

  // 'D' -> n = 5; '?' = 000000 covers (0,1)..(2,3); '{' = 111100 sets (0,4)..(3,4).
  const Graph d = parse_graph6("D?{");
  CHECK(d.order() == 5);
  CHECK(d.edges() == std::vector<Edge>{{0, 4}, {1, 4}, {2, 4}, {3, 4}});
}

TEST_CASE("graph6 encodes small graphs") {
  CHECK(write_graph6(Graph(1)) == "@");
  CHECK(write_graph6(graphs::complete(2)) == "A_");
  CHECK(write_graph6(Graph(0)) == "?");
}

TEST_CASE("graph6 rejects malformed input") {
  CHECK_THROWS_AS(parse_graph6(""), ParseError);
  CHECK_THROWS_AS(parse_graph6("A"), ParseError);        // body missing
  CHECK_THROWS_AS(parse_graph6("A`"), ParseError);       // padding bit set
  CHECK_THROWS_AS(parse_graph6("D?{?"), ParseError);     // trailing byte
  CHECK_THROWS_AS(parse_graph6("D?\x7f"), ParseError);   // byte outside 63..126
  CHECK_THROWS_AS(parse_graph6("~?"), ParseError);       // truncated long header
}

TEST_CASE("graph6 round trips on random graphs") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = std::uniform_int_distribution<int>(0, 62)(rng);
    const Graph g = oracle::random_graph(n, 0.3, rng);
    const std::string text = write_graph6(g);
    CHECK(parse_graph6(text) == g);
    CHECK(write_graph6(parse_graph6(text)) == text);
  }
  const Graph big = graphs::cycle(100);
  CHECK(parse_graph6(write_graph6(big)) == big);
}

TEST_CASE("graph6 streams skip blank lines and the header") {
  std::istringstream in(">>graph6<<A_\n\n@\r\nD?{\n");
  const auto gs = read_graph6_stream(in);
  REQUIRE(gs.size() == 3);
  CHECK(gs[2].size() == 4);
}

TEST_CASE("edge list format") {
  std::istringstream in("4 3\n0 1\n1 2\n2 3\n");
  const Graph g = parse_edge_list(in);
  CHECK(g == graphs::path(4));
  std::istringstream back(write_edge_list(g));
  CHECK(parse_edge_list(back) == g);

  std::istringstream bad("3 2\n0 1\n");
  CHECK_THROWS_AS(parse_edge_list(bad), ParseError);
  std::istringstream loop("3 1\n1 1\n");
  CHECK_THROWS_AS(parse_edge_list(loop), ParseError);
}

TEST_CASE("graph invariants hold after construction") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const Graph g = oracle::random_graph(12, 0.4, rng);
    for (Vertex v = 0; v < g.order(); ++v) {
      CHECK_FALSE(g.has_edge(v, v));
      const auto& nb = g.neighbours(v);
      CHECK(std::is_sorted(nb.begin(), nb.end()));
      CHECK(std::adjacent_find(nb.begin(), nb.end()) == nb.end());
      for (Vertex w : nb) CHECK(g.has_edge(w, v));
    }
  }
  CHECK_THROWS_AS(Graph(3, {{0, 0}}), PreconditionError);
  CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), PreconditionError);
  CHECK_THROWS_AS(Graph(3, {{0, 3}}), PreconditionError);
}

TEST_CASE("induced subgraphs") {
  const std::vector<Vertex> three{1, 2, 3};
  CHECK(induced_subgraph(graphs::cycle(5), three).graph == graphs::path(3));
  const std::vector<Vertex> two{0, 3};
  CHECK(induced_subgraph(graphs::complete(4), two).graph == graphs::complete(2));

  // Petersen has girth 5, so every closed neighbourhood induces a claw.
  const Graph p = graphs::petersen();
  for (Vertex v = 0; v < p.order(); ++v) {
    std::vector<Vertex> closed = p.neighbours(v);
    closed.push_back(v);
    const auto sub = induced_subgraph(p, closed);
    CHECK(sub.graph.size() == 3);
    CHECK(sub.graph.degree(sub.to_new[v]) == 3);
  }

  const Graph g = graphs::petersen();
  std::vector<Vertex> all(g.order());
  std::iota(all.begin(), all.end(), 0);
  CHECK(induced_subgraph(g, all).graph == g);

  const std::vector<Vertex> bad{0, 11};
  CHECK_THROWS_AS(induced_subgraph(g, bad), PreconditionError);
}

TEST_CASE("components and connectivity") {
  CHECK(components(Graph(2)).size() == 2);
  CHECK(components(graphs::cycle(5)).size() == 1);
  const auto parts = components(graphs::disjoint_union(graphs::cycle(3), graphs::path(2)));
  REQUIRE(parts.size() == 2);
  CHECK(parts[0].size() == 3);
  CHECK(parts[1].size() == 2);

  CHECK(is_connected(graphs::cycle(5)));
  CHECK_FALSE(is_connected(Graph(2)));
  CHECK(is_connected(Graph(1)));
  CHECK(is_connected(Graph(0)));
}

TEST_CASE("edge colourings") {
  const Graph g = graphs::path(3);
  EdgeColouring c(2);
  c.set(1, 0, 2);
  CHECK(c.get(0, 1) == 2);
  CHECK_FALSE(c.get(1, 2).has_value());
  CHECK_FALSE(c.is_total_on(g));
  c.set(1, 2, 1);
  CHECK(c.is_total_on(g));
  CHECK(format_colouring(c) == "0-1:2,1-2:1");
  CHECK(EdgeColouring::from_vector(g, c.to_vector(g), 2) == c);
  CHECK_THROWS_AS(c.set(0, 1, 0), PreconditionError);
}
