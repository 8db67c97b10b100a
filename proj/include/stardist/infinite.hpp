#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "stardist/automorphism.hpp"
#include "stardist/igd.hpp"
#include "stardist/rooted_colouring.hpp"

namespace stardist {

enum class RayKind { R0, RInf };
enum class EdgeSupport { Supported, Supporting, Plain };

std::string to_string(RayKind k);
std::string to_string(EdgeSupport s);

/// Eventually periodic induced ray: `start`, then `pattern` repeated, each
/// repetition shifted `period` copies further along the arm.
struct RayDescription {
  int index = 2;
  int arm = 0;
  std::vector<VertexOrigin> start;
  std::vector<VertexOrigin> pattern;  // copies relative to the first repetition
  int period = 1;
  RayKind kind = RayKind::R0;

  VertexOrigin at(std::size_t j) const;
};

struct RayFamily {
  std::vector<RayDescription> rays;  // ray i of the family has index i + 2
};

/// Disjoint induced eventually periodic rays leaving only finite components,
/// each start extended backwards while some outside vertex sees only that
/// endvertex of F. Kinds are filled in by classify_rays.
RayFamily ray_family(const PeriodicGraphDescription& d);
/// RInf iff a vertex of the repeating pattern has a neighbour outside F.
std::vector<RayKind> classify_rays(const PeriodicGraphDescription& d, const RayFamily& f);

/// Truncation with the ray family and the components of G − V(F) laid over it.
class RayWindow {
 public:
  RayWindow() = default;
  RayWindow(const PeriodicGraphDescription& d, const RayFamily& f, int depth);

  const Truncation& truncation() const { return t_; }
  const Graph& graph() const { return t_.graph; }
  const RayFamily& family() const { return family_; }
  int depth_of(Vertex v) const { return t_.origin[v].depth(); }

  int ray_count() const { return static_cast<int>(rays_.size()); }
  const std::vector<Vertex>& ray(int i) const { return rays_[i]; }
  bool in_f(Vertex v) const { return ray_of_[v] >= 0; }
  int ray_of(Vertex v) const { return ray_of_[v]; }
  int position(Vertex v) const { return position_[v]; }
  std::optional<Vertex> successor(Vertex v) const;
  std::optional<Vertex> predecessor(Vertex v) const;
  const std::vector<Vertex>& f_vertices() const { return f_; }

  const std::vector<std::vector<Vertex>>& components() const { return components_; }
  int component_of(Vertex v) const { return component_of_[v]; }
  /// Orbit class of each component under automorphisms fixing V(F) pointwise.
  int orbit_class(int component) const { return orbit_class_[component]; }
  int orbit_size(int component) const;
  /// B(v): indices of the components adjacent to v, increasing.
  std::vector<int> attached(Vertex v) const;
  /// Largest copy span of a component that stays clear of the last copy.
  int component_span() const { return span_; }

 private:
  Truncation t_;
  RayFamily family_;
  std::vector<std::vector<Vertex>> rays_;
  std::vector<int> ray_of_, position_, component_of_, orbit_class_, class_size_;
  std::vector<Vertex> f_;
  std::vector<std::vector<Vertex>> components_;
  int span_ = 0;
};

/// Classifies vw for v on a ray and w off F; Supported wins when both hold.
EdgeSupport edge_support(const RayWindow& w, Vertex v, Vertex x);

/// A selection or extraction needed vertices beyond the trusted part of the window.
class WindowTooShort : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Favourite {
  int m = 0;         // index among the ray vertices with B(v) nonempty
  int position = 0;  // position of the favourite vertex along its ray
};

/// k(i) for R0 rays (nullopt for RInf), the least admissible even value
/// above 2 given the earlier rays. Only vertices with depth ≤ trusted are used.
std::vector<std::optional<int>> select_k(const RayWindow& w, int trusted);
std::vector<std::optional<Favourite>> select_favourites(const RayWindow& w, int n, int trusted);

/// Edge colours of the infinite graph: prefix slots are the prefix edges and
/// then each arm's splice_prefix pairs; copy slots are the unit edges and then
/// the splice_unit pairs leaving that copy. Copy c ≥ preperiod uses table
/// preperiod + (c − preperiod) mod period.
struct PeriodicColouring {
  struct Arm {
    int preperiod = 0;
    int period = 1;
    std::vector<std::vector<Colour>> copies;
  };
  int palette = 0;
  std::vector<Colour> prefix;
  std::vector<Arm> arms;

  const std::vector<Colour>& copy_slots(int arm, int copy) const;
};

EdgeColouring expand(const PeriodicGraphDescription& d, const PeriodicColouring& c, const Truncation& t);

struct ComponentRecord {
  std::vector<Vertex> vertices;  // window ids
  Vertex root = -1;              // w_B
  int variant = -1;              // which rooted colouring, -1 for K1
  bool favourite = false;        // adjacent to a favourite vertex
  bool sibling = false;          // second of a blue pair at an endvertex
};

struct ConstructionOptions {
  RootedOptions rooted;
  int min_window = 16;
  int max_window = 128;
};

struct Construction {
  int n = 0;
  RayWindow window;
  int trusted = 0;  // vertices with depth ≤ trusted are final
  std::vector<std::optional<int>> k;
  std::vector<std::optional<Favourite>> favourites;
  EdgeColouring colouring;  // on the window
  std::vector<ComponentRecord> components;
  /// Rooted colourings used for the components, by component index: c(B, w_B, 0) and c(B, w_B, 1).
  std::vector<std::pair<EdgeColouring, EdgeColouring>> rooted;
  PeriodicColouring periodic;
  /// Places where a rule could not be applied as stated.
  std::vector<std::string> anomalies;
};

/// Requires n ≥ 3 and a K_{1,n}-free description.
Construction construct_colouring(const PeriodicGraphDescription& d, int n, const ConstructionOptions& opts = {});

struct LawCheck {
  std::string name;
  bool pass = true;
  std::string detail;
};

/// Laws (a)–(e), (M1)–(M3), (K1)–(K4), the orbit-size bounds, the P/P' lengths,
/// palette range and agreement of the periodic form with the window.
std::vector<LawCheck> check_laws(const PeriodicGraphDescription& d, const Construction& c);

struct FixedCoreReport {
  int depth = 0;
  int margin = 0;
  bool pass = false;
  BigInt group_order = 1;
  std::vector<Vertex> core;       // vertices fixed by every admissible automorphism
  std::vector<Vertex> uncovered;  // depth ≤ depth − margin but not fixed
  std::optional<Permutation> witness;
};

/// Colour-preserving automorphisms of truncate(d, depth) that map the
/// boundary onto itself; passes iff they fix every vertex of depth ≤ depth − margin.
FixedCoreReport verify_fixed_core(const PeriodicGraphDescription& d, const PeriodicColouring& c, int depth, int margin);

}  // namespace stardist
