#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "stardist/automorphism.hpp"
#include "stardist/enumerate.hpp"
#include "stardist/star_free.hpp"

using namespace stardist;

TEST_CASE("induced star search") {
  const auto w = find_induced_star(graphs::star(3), 3);
  REQUIRE(w.has_value());
  CHECK(w->centre == 0);
  CHECK(w->leaves == std::vector<Vertex>{1, 2, 3});
  CHECK(w->to_string() == "centre: 0 leaves: 1 2 3");

  CHECK_FALSE(find_induced_star(graphs::cycle(5), 3).has_value());

  const Graph p = graphs::petersen();
  for (Vertex v = 0; v < p.order(); ++v) {
    const std::vector<Vertex> only{v};
    const auto at = find_induced_star(p, 3, only);
    REQUIRE(at.has_value());
    CHECK(at->valid_in(p));
  }
  CHECK_THROWS_AS(find_induced_star(p, 0), PreconditionError);
}

TEST_CASE("lowest centre and least leaf set are reported") {
  // Vertex 2 has independent neighbours {0, 1, 3, 4}; vertex 0 has degree 1.
  const Graph g(6, {{0, 2}, {1, 2}, {2, 3}, {2, 4}, {4, 5}, {3, 5}});
  const auto w = find_induced_star(g, 3);
  REQUIRE(w.has_value());
  CHECK(w->centre == 2);
  CHECK(w->leaves == std::vector<Vertex>{0, 1, 3});
}

TEST_CASE("K_{1,n}-freeness of named graphs") {
  CHECK(is_k1n_free(graphs::hourglass(), 3));
  CHECK_FALSE(is_k1n_free(graphs::star(3), 3));
  for (int n = 1; n <= 7; ++n) CHECK(is_k1n_free(graphs::complete(n), 2));
  CHECK_FALSE(is_k1n_free(graphs::path(2), 1));
  CHECK(is_k1n_free(Graph(3), 1));
}

TEST_CASE("freeness is antitone in n and witnesses validate") {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 300; ++trial) {
    const Graph g = oracle::random_graph(9, 0.35, rng);
    bool free_before = false;
    for (int n = 1; n <= 8; ++n) {
      const auto w = find_induced_star(g, n);
      if (free_before) CHECK_FALSE(w.has_value());
      if (w) {
        CHECK(w->valid_in(g));
        CHECK(static_cast<int>(w->leaves.size()) == n);
      }
      free_before = free_before || !w;
    }
  }
}

TEST_CASE("every graph is K_{1,Δ+1}-free, exhaustively for n <= 7") {
  for (int n = 1; n <= 7; ++n)
    for (const auto& g : all_graphs(n)) REQUIRE(is_k1n_free(g, g.max_degree() + 1));
}

TEST_CASE("classification of special graphs") {
  CHECK(classify_special(graphs::cycle(4)).tag == SpecialTag::C4);
  CHECK(classify_special(graphs::cycle(3)).tag == SpecialTag::C3);
  CHECK(classify_special(graphs::complete(3)).tag == SpecialTag::C3);
  CHECK(classify_special(graphs::complete(2)).tag == SpecialTag::K2);
  CHECK(classify_special(Graph(1)).tag == SpecialTag::K1);

  const Graph p3(3, {{0, 1}, {1, 2}});
  const auto star2 = classify_special(p3);
  CHECK(star2.tag == SpecialTag::Star);
  CHECK(star2.star_leaves == 2);
  CHECK(star2.centre == 1);
  CHECK(star2.to_string() == "Star(2)");

  // Hourglass relabelled so the centre is vertex 3.
  const Graph hg(5, {{3, 0}, {3, 1}, {0, 1}, {3, 2}, {3, 4}, {2, 4}});
  const auto kind = classify_special(hg);
  CHECK(kind.tag == SpecialTag::Hourglass);
  CHECK(kind.centre == 3);

  CHECK(classify_special(graphs::path(4)).tag == SpecialTag::None);
  CHECK_THROWS_AS(classify_special(Graph(2)), PreconditionError);
}

TEST_CASE("classification agrees with reference isomorphism tests for n <= 7") {
  struct Ref {
    SpecialTag tag;
    Graph g;
  };
  std::vector<Ref> refs = {{SpecialTag::K1, Graph(1)},           {SpecialTag::K2, graphs::complete(2)},
                           {SpecialTag::C3, graphs::cycle(3)},    {SpecialTag::C4, graphs::cycle(4)},
                           {SpecialTag::C5, graphs::cycle(5)},    {SpecialTag::K4, graphs::complete(4)},
                           {SpecialTag::K5, graphs::complete(5)}, {SpecialTag::Hourglass, graphs::hourglass()}};
  for (int m = 2; m <= 6; ++m) refs.push_back({SpecialTag::Star, graphs::star(m)});
  for (int n = 1; n <= 7; ++n) {
    for (const auto& g : connected_graphs(n)) {
      SpecialTag expected = SpecialTag::None;
      for (const auto& r : refs)
        if (r.g.order() == n && canonical_code(r.g) == canonical_code(g)) expected = r.tag;
      const auto kind = classify_special(g);
      REQUIRE(kind.tag == expected);
      if (kind.centre) {
        const int want = kind.tag == SpecialTag::Hourglass ? 4 : n - 1;
        CHECK(g.degree(*kind.centre) == want);
      }
    }
  }
}
