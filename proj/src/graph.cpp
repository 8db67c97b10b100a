#include "stardist/graph.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <sstream>

namespace stardist {

Edge::Edge(Vertex a, Vertex b) : u(std::min(a, b)), v(std::max(a, b)) {
  if (a == b) throw PreconditionError("loop edge at vertex " + std::to_string(a));
}

Graph::Graph(int n) : n_(n) {
  if (n < 0) throw PreconditionError("negative vertex count");
  build({});
}

Graph::Graph(int n, std::span<const Edge> edges) : n_(n) {
  if (n < 0) throw PreconditionError("negative vertex count");
  build(std::vector<Edge>(edges.begin(), edges.end()));
}

Graph::Graph(int n, std::initializer_list<std::pair<int, int>> edges) : n_(n) {
  if (n < 0) throw PreconditionError("negative vertex count");
  std::vector<Edge> es;
  es.reserve(edges.size());
  for (auto [a, b] : edges) es.emplace_back(a, b);
  build(std::move(es));
}

void Graph::build(std::vector<Edge> edges) {
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw PreconditionError("multi-edge in edge list");
  const auto nn = static_cast<std::size_t>(n_) * n_;
  adjm_.assign(nn, 0);
  edge_id_.assign(nn, -1);
  adj_.assign(n_, {});
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    if (e.v >= n_ || e.u < 0)
      throw PreconditionError("edge " + std::to_string(e.u) + "-" + std::to_string(e.v) +
                              " out of range for n=" + std::to_string(n_));
    adj_[e.u].push_back(e.v);
    adj_[e.v].push_back(e.u);
    adjm_[static_cast<std::size_t>(e.u) * n_ + e.v] = 1;
    adjm_[static_cast<std::size_t>(e.v) * n_ + e.u] = 1;
    edge_id_[static_cast<std::size_t>(e.u) * n_ + e.v] = static_cast<int>(i);
    edge_id_[static_cast<std::size_t>(e.v) * n_ + e.u] = static_cast<int>(i);
  }
  for (auto& list : adj_) std::sort(list.begin(), list.end());
  edges_ = std::move(edges);
}

int Graph::max_degree() const {
  int d = 0;
  for (const auto& list : adj_) d = std::max(d, static_cast<int>(list.size()));
  return d;
}

int Graph::edge_index(Vertex a, Vertex b) const {
  if (a < 0 || b < 0 || a >= n_ || b >= n_) return -1;
  return edge_id_[static_cast<std::size_t>(a) * n_ + b];
}

void EdgeColouring::set(Edge e, Colour c) {
  if (c < 1) throw PreconditionError("colours start at 1");
  assignment_[e] = c;
  palette_ = std::max(palette_, c);
}

std::optional<Colour> EdgeColouring::get(Edge e) const {
  auto it = assignment_.find(e);
  if (it == assignment_.end()) return std::nullopt;
  return it->second;
}

bool EdgeColouring::is_total_on(const Graph& g) const {
  if (assignment_.size() != g.edges().size()) return false;
  return std::all_of(assignment_.begin(), assignment_.end(),
                     [&](const auto& kv) { return g.edge_index(kv.first.u, kv.first.v) >= 0; });
}

Colour EdgeColouring::max_colour() const {
  Colour m = 0;
  for (const auto& [e, c] : assignment_) m = std::max(m, c);
  return m;
}

std::vector<Colour> EdgeColouring::to_vector(const Graph& g) const {
  std::vector<Colour> out(g.edges().size(), 0);
  for (const auto& [e, c] : assignment_) {
    const int idx = g.edge_index(e.u, e.v);
    if (idx < 0) throw PreconditionError("colouring references a non-edge");
    out[idx] = c;
  }
  return out;
}

EdgeColouring EdgeColouring::from_vector(const Graph& g, std::span<const Colour> colours, int palette) {
  EdgeColouring c(palette);
  for (std::size_t i = 0; i < colours.size(); ++i)
    if (colours[i] > 0) c.set(g.edges()[i], colours[i]);
  c.set_palette(palette);
  return c;
}

std::string format_colouring(const EdgeColouring& c) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, col] : c.assignment()) {
    if (!first) os << ',';
    first = false;
    os << e.u << '-' << e.v << ':' << col;
  }
  return os.str();
}

namespace {

constexpr int kG6Low = 63;
constexpr int kG6High = 126;

int g6_byte(char ch) {
  const int b = static_cast<unsigned char>(ch);
  if (b < kG6Low || b > kG6High)
    throw ParseError("graph6 byte " + std::to_string(b) + " outside 63..126");
  return b - kG6Low;
}

}  // namespace

Graph parse_graph6(std::string_view text) {
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
  if (text.starts_with(">>graph6<<")) text.remove_prefix(10);
  if (text.empty()) throw ParseError("empty graph6 line");

  std::size_t pos = 0;
  long n = 0;
  if (static_cast<unsigned char>(text[0]) != kG6High) {
    n = g6_byte(text[0]);
    pos = 1;
  } else if (text.size() >= 2 && static_cast<unsigned char>(text[1]) != kG6High) {
    if (text.size() < 4) throw ParseError("truncated graph6 length header");
    n = (static_cast<long>(g6_byte(text[1])) << 12) | (g6_byte(text[2]) << 6) | g6_byte(text[3]);
    if (n < 63) throw ParseError("non-canonical graph6 length header");
    pos = 4;
  } else {
    throw ParseError("graph6 headers beyond 258047 vertices are not supported");
  }

  const std::size_t bits = static_cast<std::size_t>(n) * (n - 1) / 2;
  const std::size_t need = (bits + 5) / 6;
  if (text.size() - pos != need)
    throw ParseError("graph6 body has " + std::to_string(text.size() - pos) + " bytes, expected " +
                     std::to_string(need));

  std::vector<Edge> edges;
  std::size_t k = 0;
  for (long j = 1; j < n; ++j) {
    for (long i = 0; i < j; ++i, ++k) {
      const int byte = g6_byte(text[pos + k / 6]);
      if (byte & (1 << (5 - static_cast<int>(k % 6)))) edges.emplace_back(i, j);
    }
  }
  for (; k < need * 6; ++k) {
    const int byte = g6_byte(text[pos + k / 6]);
    if (byte & (1 << (5 - static_cast<int>(k % 6)))) throw ParseError("graph6 padding bits are not zero");
  }
  for (std::size_t b = pos; b < text.size(); ++b) g6_byte(text[b]);
  return Graph(static_cast<int>(n), edges);
}

std::string write_graph6(const Graph& g) {
  const int n = g.order();
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(kG6Low + n));
  } else if (n <= 258047) {
    out.push_back(static_cast<char>(kG6High));
    out.push_back(static_cast<char>(kG6Low + ((n >> 12) & 63)));
    out.push_back(static_cast<char>(kG6Low + ((n >> 6) & 63)));
    out.push_back(static_cast<char>(kG6Low + (n & 63)));
  } else {
    throw PreconditionError("graph6 writer supports at most 258047 vertices");
  }
  int acc = 0;
  int nbits = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
      if (++nbits == 6) {
        out.push_back(static_cast<char>(kG6Low + acc));
        acc = 0;
        nbits = 0;
      }
    }
  }
  if (nbits > 0) out.push_back(static_cast<char>(kG6Low + (acc << (6 - nbits))));
  return out;
}

std::vector<Graph> read_graph6_stream(std::istream& in) {
  std::vector<Graph> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    out.push_back(parse_graph6(line));
  }
  return out;
}

Graph parse_edge_list(std::istream& in) {
  long n = -1;
  long m = -1;
  if (!(in >> n >> m) || n < 0 || m < 0) throw ParseError("edge list must start with \"n m\"");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long i = 0; i < m; ++i) {
    long a = 0;
    long b = 0;
    if (!(in >> a >> b)) throw ParseError("edge list ended after " + std::to_string(i) + " edges");
    if (a < 0 || b < 0 || a >= n || b >= n || a == b)
      throw ParseError("bad edge " + std::to_string(a) + " " + std::to_string(b));
    edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
  }
  try {
    return Graph(static_cast<int>(n), edges);
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
}

std::string write_edge_list(const Graph& g) {
  std::ostringstream os;
  os << g.order() << ' ' << g.size() << '\n';
  for (const auto& e : g.edges()) os << e.u << ' ' << e.v << '\n';
  return os.str();
}

InducedSubgraph induced_subgraph(const Graph& g, std::span<const Vertex> subset) {
  InducedSubgraph out;
  out.to_new.assign(g.order(), -1);
  out.to_old.assign(subset.begin(), subset.end());
  std::sort(out.to_old.begin(), out.to_old.end());
  if (std::adjacent_find(out.to_old.begin(), out.to_old.end()) != out.to_old.end())
    throw PreconditionError("duplicate vertex in subset");
  for (std::size_t i = 0; i < out.to_old.size(); ++i) {
    const Vertex v = out.to_old[i];
    if (v < 0 || v >= g.order()) throw PreconditionError("vertex " + std::to_string(v) + " out of range");
    out.to_new[v] = static_cast<Vertex>(i);
  }
  std::vector<Edge> edges;
  for (const Vertex v : out.to_old)
    for (const Vertex w : g.neighbours(v))
      if (v < w && out.to_new[w] >= 0) edges.emplace_back(out.to_new[v], out.to_new[w]);
  out.graph = Graph(static_cast<int>(out.to_old.size()), edges);
  return out;
}

InducedSubgraph remove_vertices(const Graph& g, std::span<const Vertex> removed) {
  std::vector<char> drop(g.order(), 0);
  for (Vertex v : removed) {
    if (v < 0 || v >= g.order()) throw PreconditionError("vertex " + std::to_string(v) + " out of range");
    drop[v] = 1;
  }
  std::vector<Vertex> keep;
  for (Vertex v = 0; v < g.order(); ++v)
    if (!drop[v]) keep.push_back(v);
  return induced_subgraph(g, keep);
}

std::vector<std::vector<Vertex>> components(const Graph& g) {
  std::vector<std::vector<Vertex>> out;
  std::vector<char> seen(g.order(), 0);
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < g.order(); ++s) {
    if (seen[s]) continue;
    std::vector<Vertex> comp;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (Vertex w : g.neighbours(v))
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

bool is_connected(const Graph& g) { return components(g).size() <= 1; }

namespace graphs {

Graph complete(int n) {
  std::vector<Edge> es;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) es.emplace_back(i, j);
  return Graph(n, es);
}

Graph cycle(int n) {
  std::vector<Edge> es;
  for (int i = 0; i < n; ++i) es.emplace_back(i, (i + 1) % n);
  return Graph(n, es);
}

Graph path(int n) {
  std::vector<Edge> es;
  for (int i = 0; i + 1 < n; ++i) es.emplace_back(i, i + 1);
  return Graph(n, es);
}

Graph star(int leaves) {
  std::vector<Edge> es;
  for (int i = 1; i <= leaves; ++i) es.emplace_back(0, i);
  return Graph(leaves + 1, es);
}

Graph hourglass() { return Graph(5, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {0, 4}, {3, 4}}); }

Graph petersen() {
  std::vector<Edge> es;
  for (int i = 0; i < 5; ++i) {
    es.emplace_back(i, (i + 1) % 5);
    es.emplace_back(i, i + 5);
    es.emplace_back(5 + i, 5 + (i + 2) % 5);
  }
  return Graph(10, es);
}

Graph disjoint_union(const Graph& a, const Graph& b) {
  std::vector<Edge> es = a.edges();
  for (const auto& e : b.edges()) es.emplace_back(e.u + a.order(), e.v + a.order());
  return Graph(a.order() + b.order(), es);
}

}  // namespace graphs

}  // namespace stardist
