#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "stardist/automorphism.hpp"

using namespace stardist;

namespace {

EdgeColouring colour_edges(const std::vector<std::pair<Edge, Colour>>& list) {
  EdgeColouring c;
  for (const auto& [e, col] : list) c.set(e, col);
  return c;
}

std::vector<Vertex> none() { return {}; }

}  // namespace

TEST_CASE("automorphism group orders of named graphs") {
  CHECK(automorphism_group(graphs::cycle(5)).order() == 10);
  CHECK(automorphism_group(graphs::star(3)).order() == 6);
  CHECK(automorphism_group(Graph(1)).order() == 1);
  CHECK(automorphism_group(graphs::complete(7)).order() == 5040);
  CHECK(automorphism_group(graphs::hourglass()).order() == 8);
  CHECK_THROWS_AS(automorphism_group(Graph(0)), PreconditionError);
}

TEST_CASE("Petersen graph has 120 automorphisms") {
  const Graph p = graphs::petersen();
  const auto group = automorphism_group(p);
  CHECK(group.order() == 120);
  CHECK(oracle::all_automorphisms(p).size() == 120);
  CHECK(group.elements().size() == 120);
}

TEST_CASE("group order matches brute force on every labelled graph with n <= 5") {
  for (int n = 1; n <= 5; ++n) {
    const int bits = n * (n - 1) / 2;
    for (std::uint64_t mask = 0; mask < (1ULL << bits); ++mask) {
      const Graph g = oracle::graph_from_mask(n, mask);
      const auto group = automorphism_group(g);
      REQUIRE(group.order() == oracle::all_automorphisms(g).size());
      for (const auto& gen : group.generators()) REQUIRE(is_automorphism(g, gen));
    }
  }
}

TEST_CASE("group order matches brute force on random graphs with n = 6, 7") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 6 + trial % 2;
    const Graph g = oracle::random_graph(n, 0.2 + 0.6 * (trial % 5) / 4.0, rng);
    const auto group = automorphism_group(g);
    CHECK(group.order() == oracle::all_automorphisms(g).size());
    CHECK(group.elements().size() == group.order());
    for (const auto& gen : group.generators()) CHECK(is_automorphism(g, gen));
  }
}

TEST_CASE("pointwise stabilizers") {
  const Graph k13 = graphs::star(3);
  const std::vector<Vertex> centre{0};
  const std::vector<Vertex> leaf{1};
  CHECK(pointwise_stabilizer(k13, centre).order() == 6);
  CHECK(pointwise_stabilizer(k13, leaf).order() == 2);
  CHECK(pointwise_stabilizer(graphs::cycle(5), leaf).order() == 2);

  std::mt19937 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const Graph g = oracle::random_graph(7, 0.4, rng);
    std::vector<int> fixed;
    for (int v = 0; v < 7; ++v)
      if (rng() % 4 == 0) fixed.push_back(v);
    CHECK(pointwise_stabilizer(g, fixed).order() == oracle::all_automorphisms(g, fixed).size());
  }
}

TEST_CASE("colour-preserving automorphisms") {
  const Graph p4 = graphs::path(4);
  const auto mono = colour_edges({{{0, 1}, 1}, {{1, 2}, 1}, {{2, 3}, 1}});
  const auto phi = find_colour_preserving(p4, mono, none());
  REQUIRE(phi.has_value());
  CHECK(phi->image == std::vector<Vertex>{3, 2, 1, 0});

  const auto broken = colour_edges({{{0, 1}, 1}, {{1, 2}, 1}, {{2, 3}, 2}});
  CHECK_FALSE(find_colour_preserving(p4, broken, none()).has_value());

  const auto rainbow = colour_edges({{{0, 1}, 1}, {{0, 2}, 2}, {{0, 3}, 3}});
  CHECK_FALSE(find_colour_preserving(graphs::star(3), rainbow, none()).has_value());
}

TEST_CASE("distinguishing colourings of C5 and K2") {
  const Graph c5 = graphs::cycle(5);
  // Edges in cycle order: 0-1, 1-2, 2-3, 3-4, 0-4.
  auto around = [](std::vector<Colour> cols) {
    return colour_edges({{{0, 1}, cols[0]}, {{1, 2}, cols[1]}, {{2, 3}, cols[2]}, {{3, 4}, cols[3]}, {{0, 4}, cols[4]}});
  };
  // 1,1,1,2,2 is preserved by the reflection through the middle 1-edge; no
  // 2-colouring of C5 is distinguishing.
  CHECK_FALSE(is_distinguishing(c5, around({1, 1, 1, 2, 2}), none()));
  CHECK_FALSE(is_distinguishing(c5, around({1, 1, 2, 1, 2}), none()));
  CHECK(is_distinguishing(c5, around({1, 1, 2, 3, 3}), none()));

  const Graph k2 = graphs::complete(2);
  for (Colour col = 1; col <= 3; ++col) CHECK_FALSE(is_distinguishing(k2, colour_edges({{{0, 1}, col}}), none()));
}

TEST_CASE("is_distinguishing agrees with brute force, total and partial") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 400; ++trial) {
    const int n = 4 + trial % 4;
    const Graph g = oracle::random_graph(n, 0.5, rng);
    std::vector<int> fixed;
    if (trial % 3 == 0) fixed.push_back(0);
    const auto autos = oracle::all_automorphisms(g, fixed);
    std::vector<Colour> cols(g.size());
    const bool partial = trial % 2 == 1;
    for (auto& c : cols) c = static_cast<int>(rng() % 3) + (partial ? 0 : 1);
    const auto colouring = EdgeColouring::from_vector(g, cols, 3);
    const bool expected = !oracle::preserved_by_some(g, cols, autos);
    REQUIRE(is_distinguishing(g, colouring, fixed) == expected);
    if (auto phi = find_colour_preserving(g, colouring, fixed)) {
      CHECK_FALSE(phi->is_identity());
      CHECK(is_automorphism(g, *phi));
      for (Vertex v : fixed) CHECK((*phi)(v) == v);
    }
  }
}

TEST_CASE("component orbits with attachment labels") {
  const std::vector<Vertex> apex{0};
  const auto hg = component_orbits(graphs::hourglass(), apex);
  CHECK(hg.components.size() == 2);
  CHECK(hg.classes.size() == 1);

  const auto st = component_orbits(graphs::star(3), apex);
  CHECK(st.components.size() == 3);
  CHECK(st.classes.size() == 1);

  // v = 0 with path neighbours a = 1, b = 2 and pendant triangle t1 = 3, t2 = 4.
  const Graph g(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {3, 4}});
  const auto mixed = component_orbits(g, apex);
  CHECK(mixed.components.size() == 3);
  CHECK(mixed.classes.size() == 2);
}

TEST_CASE("component orbits coincide with explicit stabilizer orbits") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph g = oracle::random_graph(7, 0.3, rng);
    std::vector<int> f;
    for (int v = 0; v < 7; ++v)
      if (rng() % 3 == 0) f.push_back(v);
    const auto result = component_orbits(g, f);
    const auto autos = oracle::all_automorphisms(g, f);
    std::map<Vertex, int> comp_of;
    for (std::size_t i = 0; i < result.components.size(); ++i)
      for (Vertex v : result.components[i]) comp_of[v] = static_cast<int>(i);
    std::vector<int> cls_of(result.components.size());
    for (std::size_t c = 0; c < result.classes.size(); ++c)
      for (int i : result.classes[c]) cls_of[i] = static_cast<int>(c);
    for (std::size_t i = 0; i < result.components.size(); ++i) {
      std::set<int> images;
      for (const auto& p : autos) images.insert(comp_of[p[result.components[i].front()]]);
      for (std::size_t j = 0; j < result.components.size(); ++j)
        REQUIRE((cls_of[i] == cls_of[j]) == images.contains(static_cast<int>(j)));
    }
  }
}

TEST_CASE("isomorphic colourings") {
  const Graph k13 = graphs::star(3);
  const std::vector<Vertex> centre{0};
  auto leaves = [](Colour a, Colour b, Colour c) { return colour_edges({{{0, 1}, a}, {{0, 2}, b}, {{0, 3}, c}}); };
  CHECK(are_colourings_isomorphic(k13, centre, leaves(1, 2, 3), leaves(1, 2, 3)));
  CHECK(are_colourings_isomorphic(k13, centre, leaves(1, 2, 3), leaves(2, 3, 1)));
  CHECK_FALSE(are_colourings_isomorphic(k13, centre, leaves(1, 1, 2), leaves(1, 2, 2)));
  const std::vector<Vertex> leaf{1};
  CHECK_FALSE(are_colourings_isomorphic(k13, leaf, leaves(1, 2, 2), leaves(2, 1, 2)));
}

TEST_CASE("colouring isomorphism is an equivalence relation") {
  std::mt19937 rng(29);
  const Graph g = graphs::cycle(6);
  const std::vector<Vertex> fixed{0};
  std::vector<EdgeColouring> pool;
  for (int i = 0; i < 40; ++i) {
    std::vector<Colour> cols(g.size());
    for (auto& c : cols) c = 1 + static_cast<int>(rng() % 2);
    pool.push_back(EdgeColouring::from_vector(g, cols, 2));
  }
  for (std::size_t a = 0; a < pool.size(); ++a) {
    CHECK(are_colourings_isomorphic(g, fixed, pool[a], pool[a]));
    for (std::size_t b = 0; b < pool.size(); ++b) {
      const bool ab = are_colourings_isomorphic(g, fixed, pool[a], pool[b]);
      CHECK(ab == are_colourings_isomorphic(g, fixed, pool[b], pool[a]));
      if (!ab) continue;
      for (std::size_t c = 0; c < pool.size(); c += 3)
        if (are_colourings_isomorphic(g, fixed, pool[b], pool[c]))
          CHECK(are_colourings_isomorphic(g, fixed, pool[a], pool[c]));
    }
  }
}

TEST_CASE("setwise stabilized sets and colour-preserving group") {
  const Graph p5 = graphs::path(5);
  EdgeColouring mono;
  for (const auto& e : p5.edges()) mono.set(e, 1);
  SymmetryQuery q;
  CHECK(colour_preserving_group(p5, mono, q).order() == 2);
  q.stabilized_sets = {{4}};
  CHECK(colour_preserving_group(p5, mono, q).order() == 1);
  q.stabilized_sets = {{0, 4}};
  CHECK(colour_preserving_group(p5, mono, q).order() == 2);
}
