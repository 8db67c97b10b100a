#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace stardist {

using Vertex = int;
using Colour = int;

/// Colours with a fixed role in the constructions.
inline constexpr Colour kBlue = 1;
inline constexpr Colour kRed = 2;
inline constexpr Colour kYellow = 3;

/// Raised for malformed input data (graph6 text, edge lists, descriptions).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an operation's precondition does not hold for its arguments.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Unordered vertex pair, always stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b);

  auto operator<=>(const Edge&) const = default;
};

/// Finite simple undirected graph on vertices 0..n-1.
///
/// Adjacency lists are sorted and the object is immutable after
/// construction; a dense adjacency matrix backs has_edge().
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);
  Graph(int n, std::span<const Edge> edges);
  Graph(int n, std::initializer_list<std::pair<int, int>> edges);

  int order() const { return n_; }
  int size() const { return static_cast<int>(edges_.size()); }
  bool has_edge(Vertex a, Vertex b) const {
    return adjm_[static_cast<std::size_t>(a) * n_ + b] != 0;
  }
  const std::vector<Vertex>& neighbours(Vertex v) const { return adj_[v]; }
  int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }
  int max_degree() const;

  /// Sorted edge list; index positions are stable and used as edge ids.
  const std::vector<Edge>& edges() const { return edges_; }
  /// Position of the edge in edges(), or -1 when absent.
  int edge_index(Vertex a, Vertex b) const;

  bool operator==(const Graph& o) const { return n_ == o.n_ && edges_ == o.edges_; }

 private:
  void build(std::vector<Edge> edges);

  int n_ = 0;
  std::vector<std::vector<Vertex>> adj_;
  std::vector<std::uint8_t> adjm_;
  std::vector<Edge> edges_;
  std::vector<int> edge_id_;  // n*n, -1 where no edge
};

/// Total or partial assignment of colours 1..palette to edges.
class EdgeColouring {
 public:
  EdgeColouring() = default;
  explicit EdgeColouring(int palette) : palette_(palette) {}

  int palette() const { return palette_; }
  void set_palette(int k) { palette_ = k; }

  void set(Edge e, Colour c);
  void set(Vertex a, Vertex b, Colour c) { set(Edge(a, b), c); }
  void erase(Edge e) { assignment_.erase(e); }
  std::optional<Colour> get(Edge e) const;
  std::optional<Colour> get(Vertex a, Vertex b) const { return get(Edge(a, b)); }
  bool contains(Edge e) const { return assignment_.contains(e); }

  std::size_t size() const { return assignment_.size(); }
  const std::map<Edge, Colour>& assignment() const { return assignment_; }

  /// True iff exactly the edges of g are coloured.
  bool is_total_on(const Graph& g) const;
  /// Highest colour in use (0 for the empty colouring).
  Colour max_colour() const;

  /// Colour vector aligned with g.edges(); 0 marks an uncoloured edge.
  std::vector<Colour> to_vector(const Graph& g) const;
  static EdgeColouring from_vector(const Graph& g, std::span<const Colour> colours, int palette);

  bool operator==(const EdgeColouring& o) const { return assignment_ == o.assignment_; }

 private:
  int palette_ = 0;
  std::map<Edge, Colour> assignment_;
};

/// Graph with a distinguished vertex set (fixed pointwise by its automorphisms).
struct RootedGraph {
  Graph graph;
  std::vector<Vertex> root;
};

/// "u-v:c" triples joined by commas, in edge order.
std::string format_colouring(const EdgeColouring& c);

Graph parse_graph6(std::string_view text);
std::string write_graph6(const Graph& g);
/// Reads one graph per non-empty line; a leading ">>graph6<<" header is skipped.
std::vector<Graph> read_graph6_stream(std::istream& in);

/// "n m" followed by m lines "u v".
Graph parse_edge_list(std::istream& in);
std::string write_edge_list(const Graph& g);

struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> to_new;  // size g.order(), -1 outside the subset
  std::vector<Vertex> to_old;  // new id -> old id, increasing
};

InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> subset);

/// Connected components, each sorted, ordered by least vertex.
std::vector<std::vector<Vertex>> components(const Graph& g);
bool is_connected(const Graph& g);

/// Graph with the vertices in `removed` deleted; other ids keep their order.
InducedSubgraph remove_vertices(const Graph& g, std::span<const Vertex> removed);

namespace graphs {
Graph complete(int n);
Graph cycle(int n);
Graph path(int n);
Graph star(int leaves);  // centre 0
Graph hourglass();        // centre 0
Graph petersen();
Graph disjoint_union(const Graph& a, const Graph& b);
}  // namespace graphs

}  // namespace stardist
