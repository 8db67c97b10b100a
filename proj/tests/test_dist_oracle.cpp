#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "stardist/dist_oracle.hpp"
#include "stardist/enumerate.hpp"
#include "stardist/star_free.hpp"

using namespace stardist;

namespace {

// Independent reference: every colour vector with palette 1..k, tested
// against the explicit list of root-fixing automorphisms.
std::vector<std::vector<int>> brute_distinguishing(const Graph& g, int k, const std::vector<int>& root = {}) {
  const auto autos = oracle::all_automorphisms(g, root);
  std::vector<std::vector<int>> out;
  std::vector<int> col(g.size(), 1);
  while (true) {
    if (!oracle::preserved_by_some(g, col, autos)) out.push_back(col);
    int i = g.size() - 1;
    while (i >= 0 && col[i] == k) col[i--] = 1;
    if (i < 0) break;
    ++col[i];
  }
  return out;
}

std::size_t brute_classes(const Graph& g, int k, const std::vector<int>& root) {
  const auto autos = oracle::all_automorphisms(g, root);
  std::set<std::vector<int>> canon;
  for (const auto& col : brute_distinguishing(g, k, root)) {
    std::vector<int> best = col;
    for (const auto& p : autos) {
      std::vector<int> img(col.size());
      for (int i = 0; i < g.size(); ++i) img[g.edge_index(p[g.edges()[i].u], p[g.edges()[i].v])] = col[i];
      best = std::min(best, img);
    }
    canon.insert(best);
  }
  return canon.size();
}

std::optional<int> brute_index(const Graph& g) {
  for (int k = 1; k <= g.size(); ++k)
    if (!brute_distinguishing(g, k).empty()) return k;
  return std::nullopt;
}

}  // namespace

TEST_CASE("distinguishing index of the exceptional graphs") {
  const auto k2 = distinguishing_index(graphs::complete(2), 5);
  CHECK(k2.status == DistStatus::NoFinite);
  CHECK_FALSE(brute_index(graphs::complete(2)).has_value());

  for (int len : {3, 4, 5}) {
    const Graph c = graphs::cycle(len);
    const auto r = distinguishing_index(c, 5);
    CHECK(r.status == DistStatus::Finite);
    CHECK(r.value == 3);
    CHECK(brute_index(c) == 3);
    REQUIRE(r.witness.has_value());
    CHECK(is_distinguishing(c, *r.witness, {}));
  }

  for (int leaves : {2, 3, 4}) {
    const auto r = distinguishing_index(graphs::star(leaves), 6);
    CHECK(r.status == DistStatus::Finite);
    CHECK(r.value == leaves);
  }
}

TEST_CASE("index search honours max_k and input checks") {
  const auto r = distinguishing_index(graphs::cycle(5), 2);
  CHECK(r.status == DistStatus::AboveLimit);
  CHECK_THROWS_AS(distinguishing_index(Graph(2), 3), PreconditionError);
  CHECK_THROWS_AS(distinguishing_index(Graph(1), 3), PreconditionError);
}

TEST_CASE("enumeration examples") {
  CHECK(enumerate_distinguishing(graphs::complete(2), 3).empty());
  const auto p3 = enumerate_distinguishing(graphs::path(3), 2);
  REQUIRE(p3.size() == 2);
  CHECK(p3[0].to_vector(graphs::path(3)) == std::vector<Colour>{1, 2});
  CHECK(p3[1].to_vector(graphs::path(3)) == std::vector<Colour>{2, 1});
  CHECK(enumerate_distinguishing(graphs::cycle(5), 2).empty());
}

TEST_CASE("enumeration equals brute force in lexicographic order") {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 3 + trial % 4;
    const Graph g = oracle::random_graph(n, 0.55, rng);
    if (g.size() > 9) continue;
    const int k = 1 + trial % 3;
    std::vector<int> root;
    if (trial % 2) root.push_back(0);
    std::vector<std::vector<int>> got;
    for_each_distinguishing(g, root, k, [&](const std::vector<Colour>& c) {
      got.push_back(c);
      return true;
    });
    REQUIRE(got == brute_distinguishing(g, k, root));
  }
}

TEST_CASE("class counts") {
  const std::vector<Vertex> centre{0};
  const std::vector<Vertex> end{0};
  // Both distinguishing colourings of the centred P3 are swapped by the leaf swap.
  CHECK(count_nonisomorphic_distinguishing(graphs::star(2), centre, 2) == 1);
  CHECK(count_nonisomorphic_distinguishing(graphs::complete(2), end, 2) == 2);
  CHECK(count_nonisomorphic_distinguishing(graphs::star(3), centre, 2) == 0);
}

TEST_CASE("class counts equal brute force and |distinguishing| / |group|") {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    const Graph g = oracle::random_graph(5, 0.6, rng);
    if (g.size() > 8) continue;
    const std::vector<int> root{static_cast<int>(rng() % 5)};
    const int k = 2 + trial % 2;
    const auto classes = count_nonisomorphic_distinguishing(g, root, k);
    CHECK(classes == brute_classes(g, k, root));
    const auto total = brute_distinguishing(g, k, root).size();
    CHECK(classes * oracle::all_automorphisms(g, root).size() == total);
  }
}

TEST_CASE("stop_at returns early and representatives are distinct classes") {
  const Graph g = graphs::cycle(6);
  const std::vector<Vertex> root{0};
  CHECK(count_nonisomorphic_distinguishing(g, root, 3, {}, 2) == 2);
  const auto reps = nonisomorphic_distinguishing(g, root, 3, 4);
  REQUIRE(reps.size() == 4);
  for (std::size_t i = 0; i < reps.size(); ++i) {
    CHECK(is_distinguishing(g, reps[i], root));
    for (std::size_t j = i + 1; j < reps.size(); ++j) CHECK_FALSE(are_colourings_isomorphic(g, root, reps[i], reps[j]));
  }
}

TEST_CASE("budget is enforced") {
  OracleBudget tiny;
  tiny.max_nodes = 10;
  CHECK_THROWS_AS(enumerate_distinguishing(graphs::complete(5), 3, tiny), BudgetExceeded);
  OracleBudget small_group;
  small_group.max_group = 100;
  CHECK_THROWS_AS(distinguishing_index(graphs::complete(6), 3, small_group), BudgetExceeded);
}

TEST_CASE("a palette that works keeps working with one more colour") {
  for (const auto& g : connected_graphs(5)) {
    if (g.size() == 0) continue;
    bool seen = false;
    for (int k = 1; k <= 4; ++k) {
      const bool ok = first_distinguishing(g, {}, k).has_value();
      if (seen) CHECK(ok);
      seen = seen || ok;
    }
  }
}

TEST_CASE("index agrees with brute force on all connected graphs of order 5") {
  for (const auto& g : connected_graphs(5)) {
    const auto r = distinguishing_index(g, g.size());
    const auto expected = brute_index(g);
    if (!expected) {
      CHECK(r.status == DistStatus::NoFinite);
      continue;
    }
    CHECK(r.status == DistStatus::Finite);
    CHECK(r.value == *expected);
    CHECK(is_distinguishing(g, *r.witness, {}));
  }
}
