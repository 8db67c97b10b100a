#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stardist/graph.hpp"

namespace stardist {

/// Induced K_{1,n}: a centre adjacent to n pairwise non-adjacent leaves.
struct StarWitness {
  Vertex centre = -1;
  std::vector<Vertex> leaves;

  bool valid_in(const Graph& g) const;
  /// "centre: v leaves: a b c"
  std::string to_string() const;
};

/// First induced K_{1,n} by lowest centre, then lexicographically least leaf set.
std::optional<StarWitness> find_induced_star(const Graph& g, int n);
/// Same search restricted to the given centres (in the order given).
std::optional<StarWitness> find_induced_star(const Graph& g, int n, const std::vector<Vertex>& centres);
bool is_k1n_free(const Graph& g, int n);

enum class SpecialTag { K1, K2, C3, C4, C5, K4, K5, Star, Hourglass, None };

struct SpecialKind {
  SpecialTag tag = SpecialTag::None;
  int star_leaves = 0;                // m for Star(m)
  std::optional<Vertex> centre;       // Star and Hourglass only

  std::string to_string() const;
  bool operator==(const SpecialKind&) const = default;
};

/// Exact isomorphism type against the fixed list of small exceptional graphs.
SpecialKind classify_special(const Graph& g);

}  // namespace stardist
