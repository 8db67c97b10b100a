#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stardist/dist_oracle.hpp"
#include "stardist/graph.hpp"

namespace stardist {

enum class Theorem3Case { C1, C2, C3, C4 };
enum class Theorem3Exception { HourglassCentre, StarCentre, K1 };

std::string to_string(Theorem3Case c);
std::string to_string(Theorem3Exception e);

/// Either n−1 pairwise non-isomorphic distinguishing colourings of (g, r)
/// with palette 1..n−1, or the exceptional shape of (g, r).
struct Theorem3Outcome {
  std::optional<Theorem3Exception> exception;
  std::vector<EdgeColouring> colourings;
  /// Construction branch used at the top level ("base", "split", "split-cross",
  /// "components", "complete-components", "outer", "outer-local", "exception").
  std::string branch;
  /// How many of the colourings came from oracle search rather than the construction.
  int oracle_filled = 0;
};

struct RootedOptions {
  OracleBudget budget;
  int max_vertices = 16;
};

/// C4 for K1, C3 for K_{1,n−1} rooted at its centre, C2 for the hourglass
/// rooted at its centre when n = 3, C1 otherwise.
Theorem3Case theorem3_classify(const Graph& g, Vertex r, int n);

/// For K2, K3, K4, K5, C4 and C5: colouring j puts colour j on a Hamiltonian
/// path starting at r and colour (j mod (n−1)) + 1 on every other edge.
std::vector<EdgeColouring> base_case_colouring(const Graph& g, Vertex r, int n);

/// Requires g connected and K_{1,n}-free, r ∈ V(g), n ≥ 3, |V(g)| ≤ max_vertices.
/// Every returned colouring has been re-verified.
Theorem3Outcome theorem3_colourings(const Graph& g, Vertex r, int n, const RootedOptions& opts = {});

}  // namespace stardist
