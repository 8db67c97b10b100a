#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "stardist/automorphism.hpp"
#include "stardist/graph.hpp"

namespace stardist {

/// Work limits for the exhaustive searches. Exceeding one throws BudgetExceeded.
struct OracleBudget {
  /// Search nodes visited per call (a full enumeration visits at least k^|E|).
  std::uint64_t max_nodes = 100'000'000;
  /// Wall-clock seconds per call; 0 disables the check.
  double max_seconds = 0;
  /// Largest automorphism group expanded into explicit elements.
  std::size_t max_group = 1'000'000;
};

enum class DistStatus {
  Finite,     // value holds D'(G)
  NoFinite,   // no palette admits a distinguishing edge colouring
  AboveLimit  // none with at most max_k colours, though one exists
};

struct DistResult {
  DistStatus status = DistStatus::NoFinite;
  int value = 0;
  std::optional<EdgeColouring> witness;
};

/// Least k ≤ max_k with a distinguishing edge colouring from palette 1..k.
DistResult distinguishing_index(const Graph& g, int max_k, const OracleBudget& budget = {});

/// Visits colour vectors (aligned with g.edges()) of the colourings with
/// palette 1..k that are distinguishing for (g, root pointwise), in
/// lexicographic order, until the visitor returns false.
void for_each_distinguishing(const Graph& g, std::span<const Vertex> root, int k,
                             const std::function<bool(const std::vector<Colour>&)>& visit,
                             const OracleBudget& budget = {});

std::vector<EdgeColouring> enumerate_distinguishing(const Graph& g, int k, const OracleBudget& budget = {});
std::optional<EdgeColouring> first_distinguishing(const Graph& g, std::span<const Vertex> root, int k,
                                                  const OracleBudget& budget = {});

/// Number of classes, up to automorphisms fixing root pointwise, of the
/// distinguishing colourings of (g, root) with palette 1..k. With stop_at
/// set, returns as soon as that many classes have been seen.
std::size_t count_nonisomorphic_distinguishing(const Graph& g, std::span<const Vertex> root, int k,
                                               const OracleBudget& budget = {},
                                               std::optional<std::size_t> stop_at = std::nullopt);

/// Up to `limit` pairwise non-isomorphic distinguishing colourings of
/// (g, root), the lexicographically first of each class encountered.
std::vector<EdgeColouring> nonisomorphic_distinguishing(const Graph& g, std::span<const Vertex> root, int k,
                                                        std::size_t limit, const OracleBudget& budget = {});

}  // namespace stardist
