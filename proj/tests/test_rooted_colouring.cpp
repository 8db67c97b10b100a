#include "doctest.h"
#include "oracles.hpp"
#include "stardist/automorphism.hpp"
#include "stardist/dist_oracle.hpp"
#include "stardist/enumerate.hpp"
#include "stardist/rooted_colouring.hpp"
#include "stardist/star_free.hpp"

using namespace stardist;

namespace {

Graph net() { return Graph(6, {{0, 1}, {1, 2}, {0, 2}, {0, 3}, {1, 4}, {2, 5}}); }

// Checks the outcome invariants with the brute-force automorphism list.
void check_colourings(const Graph& g, Vertex r, int n, const std::vector<EdgeColouring>& cols) {
  REQUIRE(static_cast<int>(cols.size()) == n - 1);
  const std::vector<int> root{r};
  const auto autos = oracle::all_automorphisms(g, root);
  for (std::size_t i = 0; i < cols.size(); ++i) {
    CHECK(cols[i].is_total_on(g));
    CHECK(cols[i].max_colour() <= n - 1);
    CHECK_FALSE(oracle::preserved_by_some(g, cols[i].to_vector(g), autos));
    for (std::size_t j = i + 1; j < cols.size(); ++j) CHECK_FALSE(are_colourings_isomorphic(g, root, cols[i], cols[j]));
  }
}

}  // namespace

TEST_CASE("classification examples") {
  CHECK(theorem3_classify(graphs::star(2), 0, 3) == Theorem3Case::C3);
  CHECK(theorem3_classify(graphs::hourglass(), 1, 3) == Theorem3Case::C1);
  CHECK(theorem3_classify(graphs::hourglass(), 0, 3) == Theorem3Case::C2);
  CHECK(theorem3_classify(graphs::hourglass(), 0, 4) == Theorem3Case::C1);
  CHECK(theorem3_classify(Graph(1), 0, 5) == Theorem3Case::C4);
  CHECK(theorem3_classify(graphs::star(3), 0, 4) == Theorem3Case::C3);
  CHECK(theorem3_classify(graphs::star(3), 1, 4) == Theorem3Case::C1);
  CHECK(theorem3_classify(graphs::star(2), 1, 3) == Theorem3Case::C1);
}

TEST_CASE("classification rejects bad input") {
  CHECK_THROWS_AS(theorem3_classify(graphs::star(3), 0, 3), PreconditionError);
  CHECK_THROWS_AS(theorem3_classify(Graph(2), 0, 3), PreconditionError);
  CHECK_THROWS_AS(theorem3_classify(graphs::path(3), 0, 2), PreconditionError);
  CHECK_THROWS_AS(theorem3_classify(graphs::path(3), 3, 3), PreconditionError);
  RootedOptions small;
  small.max_vertices = 5;
  CHECK_THROWS_AS(theorem3_colourings(net(), 0, 3, small), PreconditionError);
}

TEST_CASE("base case colourings") {
  const auto k2 = base_case_colouring(graphs::complete(2), 0, 3);
  REQUIRE(k2.size() == 2);
  CHECK(k2[0].get(0, 1) == 1);
  CHECK(k2[1].get(0, 1) == 2);

  check_colourings(graphs::complete(4), 0, 3, base_case_colouring(graphs::complete(4), 0, 3));
  check_colourings(graphs::cycle(5), 2, 4, base_case_colouring(graphs::cycle(5), 2, 4));
  for (const Graph& g : {graphs::complete(3), graphs::complete(5), graphs::cycle(4)})
    for (int n : {3, 4, 5})
      for (Vertex r = 0; r < g.order(); ++r) check_colourings(g, r, n, base_case_colouring(g, r, n));

  CHECK_THROWS_AS(base_case_colouring(graphs::path(4), 0, 3), PreconditionError);
}

TEST_CASE("theorem 3 examples") {
  const auto hg = theorem3_colourings(graphs::hourglass(), 0, 3);
  CHECK(hg.exception == Theorem3Exception::HourglassCentre);
  CHECK(hg.colourings.empty());

  CHECK(theorem3_colourings(graphs::star(3), 0, 4).exception == Theorem3Exception::StarCentre);
  CHECK(theorem3_colourings(Graph(1), 0, 3).exception == Theorem3Exception::K1);

  // K_{1,3} contains a claw, so the leaf-rooted case runs with n = 4.
  const auto leaf = theorem3_colourings(graphs::star(3), 1, 4);
  REQUIRE_FALSE(leaf.exception);
  check_colourings(graphs::star(3), 1, 4, leaf.colourings);

  for (Vertex r = 0; r < 6; ++r) {
    const auto out = theorem3_colourings(net(), r, 3);
    REQUIRE_FALSE(out.exception);
    check_colourings(net(), r, 3, out.colourings);
  }
}

TEST_CASE("oracle agreement on small connected graphs") {
  for (int n : {3, 4}) {
    for (int order = 1; order <= 6; ++order) {
      for (const auto& g : connected_graphs(order)) {
        if (!is_k1n_free(g, n)) continue;
        const auto reps = automorphism_group(g).orbit_representatives();
        for (Vertex r = 0; r < order; ++r) {
          if (reps[r] != r) continue;
          const auto out = theorem3_colourings(g, r, n);
          const std::vector<Vertex> root{r};
          const auto classes =
              count_nonisomorphic_distinguishing(g, root, n - 1, {}, static_cast<std::size_t>(n - 1));
          INFO("graph " << write_graph6(g) << " root " << r << " n " << n);
          if (out.exception) {
            CHECK(theorem3_classify(g, r, n) != Theorem3Case::C1);
            CHECK(classes < static_cast<std::size_t>(n - 1));
          } else {
            CHECK(classes >= static_cast<std::size_t>(n - 1));
            check_colourings(g, r, n, out.colourings);
          }
        }
      }
    }
  }
}

TEST_CASE("construction mostly avoids the oracle") {
  int filled = 0, total = 0;
  for (const auto& g : connected_graphs(6)) {
    if (!is_k1n_free(g, 3)) continue;
    const auto out = theorem3_colourings(g, 0, 3);
    if (out.exception) continue;
    filled += out.oracle_filled;
    total += 2;
  }
  MESSAGE("oracle supplied " << filled << " of " << total << " colourings");
  CHECK(filled * 2 < total);
}
