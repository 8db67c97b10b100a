#pragma once

#include <cstdint>
#include <vector>

#include "stardist/graph.hpp"

namespace stardist {

/// Canonical form of a graph on at most 11 vertices: the least upper-triangle
/// bit string over all relabellings that order vertices by a degree invariant.
std::uint64_t canonical_code(const Graph& g);
Graph graph_from_code(int n, std::uint64_t code);

/// One representative of every isomorphism class of graphs on n vertices
/// (n ≤ 8), in increasing canonical code order.
std::vector<Graph> all_graphs(int n);
std::vector<Graph> connected_graphs(int n);

}  // namespace stardist
