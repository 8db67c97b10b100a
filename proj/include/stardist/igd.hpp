#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stardist/graph.hpp"
#include "stardist/star_free.hpp"

namespace stardist {

using VertexPair = std::pair<Vertex, Vertex>;

/// One infinite arm: copies 0, 1, 2, ... of `unit`, copy 0 joined to the
/// prefix by `splice_prefix` (prefix vertex, unit vertex) and copy k joined
/// to copy k+1 by `splice_unit` (vertex in copy k, vertex in copy k+1).
struct ArmDescription {
  std::string name;
  Graph unit;
  std::vector<VertexPair> splice_prefix;
  std::vector<VertexPair> splice_unit;
};

/// Eventually periodic locally finite graph: a finite prefix plus arms.
struct PeriodicGraphDescription {
  Graph prefix;
  std::vector<ArmDescription> arms;
};

/// Parses the IGD text format (see docs/igd-grammar.md) and validates it.
PeriodicGraphDescription parse_igd(std::string_view text);
PeriodicGraphDescription load_igd(const std::string& path);
std::string write_igd(const PeriodicGraphDescription& d);

/// Throws PreconditionError unless ids are in range, every arm is infinite
/// and the described graph is connected.
void validate(const PeriodicGraphDescription& d);

/// Where a truncation vertex comes from. arm = -1 marks a prefix vertex.
struct VertexOrigin {
  int arm = -1;
  int copy = -1;
  Vertex unit = 0;

  /// 0 for the prefix, copy + 1 inside an arm.
  int depth() const { return arm < 0 ? 0 : copy + 1; }
  bool operator==(const VertexOrigin&) const = default;
  auto operator<=>(const VertexOrigin&) const = default;
};

/// Prefix plus copies 0..depth−1 of every arm. Ids: prefix first, then arm
/// by arm, copy by copy, unit id order inside a copy.
struct Truncation {
  Graph graph;
  int depth = 0;
  std::vector<Vertex> boundary;      // last copy of every arm, sorted
  std::vector<VertexOrigin> origin;  // per truncation vertex

  /// Truncation id of a described vertex, or -1 when outside the window.
  Vertex id(const VertexOrigin& o) const;

 private:
  friend Truncation truncate(const PeriodicGraphDescription& d, int depth);
  int prefix_order_ = 0;
  std::vector<int> arm_offset_;
  std::vector<int> unit_order_;
};

Truncation truncate(const PeriodicGraphDescription& d, int depth);

/// An induced K_{1,n} of the infinite graph, reported in the ids of a
/// depth-3 truncation (stars have radius one, so three copies see them all).
std::optional<StarWitness> find_star_in_description(const PeriodicGraphDescription& d, int n);

}  // namespace stardist
