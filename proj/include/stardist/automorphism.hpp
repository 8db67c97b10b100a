#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stardist/graph.hpp"

namespace stardist {

using BigInt = boost::multiprecision::cpp_int;

/// Vertex permutation; image[v] is the image of v.
struct Permutation {
  std::vector<Vertex> image;

  static Permutation identity(int n);
  int degree() const { return static_cast<int>(image.size()); }
  Vertex operator()(Vertex v) const { return image[v]; }
  bool is_identity() const;
  /// (*this ∘ other)(v) = (*this)(other(v)).
  Permutation compose(const Permutation& other) const;
  Permutation inverse() const;
  Edge apply(Edge e) const { return Edge(image[e.u], image[e.v]); }
  /// "φ(0) φ(1) … φ(n−1)".
  std::string to_string() const;

  bool operator==(const Permutation&) const = default;
};

bool is_automorphism(const Graph& g, const Permutation& p);

/// Group of vertex permutations given by generators plus the stabilizer
/// chain data gathered while searching (base points and basic orbit lengths).
class PermGroup {
 public:
  PermGroup() = default;
  PermGroup(int degree, std::vector<Permutation> generators, std::vector<Vertex> base,
            std::vector<std::size_t> orbit_lengths);

  int degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return generators_; }
  const std::vector<Vertex>& base() const { return base_; }
  const std::vector<std::size_t>& basic_orbit_lengths() const { return orbit_lengths_; }

  /// Product of the basic orbit lengths.
  BigInt order() const;
  /// order() as a machine integer; throws std::overflow_error when it does not fit.
  std::uint64_t order_u64() const;
  bool is_trivial() const { return generators_.empty(); }

  /// orbit_of[v] = least vertex in the orbit of v.
  std::vector<Vertex> orbit_representatives() const;
  std::vector<std::vector<Vertex>> orbits() const;
  /// All group elements, identity first; throws BudgetExceeded above `limit`.
  std::vector<Permutation> elements(std::size_t limit = 1'000'000) const;

 private:
  int degree_ = 0;
  std::vector<Permutation> generators_;
  std::vector<Vertex> base_;
  std::vector<std::size_t> orbit_lengths_;
};

/// Raised when a search would exceed its configured work limit.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Graph with an initial vertex colouring and edge labels (aligned with
/// graph.edges()). Isomorphisms must preserve both exactly.
struct LabelledGraph {
  const Graph* graph = nullptr;
  std::vector<int> vertex_colour;  // empty: all equal
  std::vector<int> edge_label;     // empty: all equal

  explicit LabelledGraph(const Graph& g) : graph(&g) {}
};

/// Group of label-preserving automorphisms of a labelled graph.
PermGroup labelled_automorphism_group(const LabelledGraph& lg);
/// Some label-preserving isomorphism a -> b, if any exists.
std::optional<Permutation> find_isomorphism(const LabelledGraph& a, const LabelledGraph& b);

PermGroup automorphism_group(const Graph& g);
PermGroup pointwise_stabilizer(const Graph& g, std::span<const Vertex> fixed);

/// Which automorphisms to consider in the symmetry queries below.
struct SymmetryQuery {
  std::vector<Vertex> fixed;                          // pointwise
  std::vector<std::vector<Vertex>> stabilized_sets;  // setwise
};

/// Automorphisms fixing `q.fixed` pointwise, mapping each stabilized set onto
/// itself, and preserving the total colouring `c`.
PermGroup colour_preserving_group(const Graph& g, const EdgeColouring& c, const SymmetryQuery& q);

/// A non-identity automorphism fixing `fixed` pointwise that preserves c.
/// c may be partial: an edge only breaks φ when both c(e) and c(φ(e)) are defined.
std::optional<Permutation> find_colour_preserving(const Graph& g, const EdgeColouring& c,
                                                  std::span<const Vertex> fixed);
bool is_distinguishing(const Graph& g, const EdgeColouring& c, std::span<const Vertex> fixed);

/// Visits every automorphism fixing `fixed` pointwise (identity included)
/// until the visitor returns false. Exponential in the group order.
void for_each_automorphism(const Graph& g, std::span<const Vertex> fixed,
                           const std::function<bool(const Permutation&)>& visit);

/// Components of g − f and their classes under automorphisms fixing f pointwise.
struct ComponentOrbits {
  std::vector<std::vector<Vertex>> components;  // ids of g, ordered by least vertex
  std::vector<std::vector<int>> classes;        // indices into components
};

ComponentOrbits component_orbits(const Graph& g, std::span<const Vertex> f);

/// True iff some automorphism fixing `fixed` pointwise carries c onto d,
/// i.e. d(φ(e)) = c(e) for every edge. Both colourings must be total.
bool are_colourings_isomorphic(const Graph& g, std::span<const Vertex> fixed, const EdgeColouring& c,
                               const EdgeColouring& d);

}  // namespace stardist
