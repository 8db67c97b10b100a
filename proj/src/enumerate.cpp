#include "stardist/enumerate.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <functional>
#include <set>

namespace stardist {

namespace {

// Bit position of pair (i, j), i < j, in column order (graph6 order).
int pair_bit(int i, int j) { return j * (j - 1) / 2 + i; }

std::uint64_t code_under(const Graph& g, const std::vector<Vertex>& pos) {
  std::uint64_t code = 0;
  for (const auto& e : g.edges()) {
    const int a = std::min(pos[e.u], pos[e.v]);
    const int b = std::max(pos[e.u], pos[e.v]);
    code |= std::uint64_t{1} << pair_bit(a, b);
  }
  return code;
}

}  // namespace

std::uint64_t canonical_code(const Graph& g) {
  const int n = g.order();
  if (n > 11) throw PreconditionError("canonical_code supports at most 11 vertices");

  // Invariant key per vertex: degree, then sorted neighbour degrees.
  std::vector<std::vector<int>> key(n);
  for (Vertex v = 0; v < n; ++v) {
    key[v].push_back(g.degree(v));
    std::vector<int> nd;
    for (Vertex w : g.neighbours(v)) nd.push_back(g.degree(w));
    std::sort(nd.begin(), nd.end());
    key[v].insert(key[v].end(), nd.begin(), nd.end());
  }
  std::map<std::vector<int>, std::vector<Vertex>> classes;
  for (Vertex v = 0; v < n; ++v) classes[key[v]].push_back(v);
  std::vector<std::vector<Vertex>> cls;
  for (auto& [k, members] : classes) cls.push_back(members);

  // Enumerate orderings: classes in key order, members permuted within each.
  std::uint64_t best = ~std::uint64_t{0};
  std::vector<Vertex> pos(n);
  std::function<void(std::size_t, int)> rec = [&](std::size_t c, int offset) {
    if (c == cls.size()) {
      best = std::min(best, code_under(g, pos));
      return;
    }
    auto members = cls[c];
    std::sort(members.begin(), members.end());
    do {
      for (std::size_t i = 0; i < members.size(); ++i) pos[members[i]] = offset + static_cast<int>(i);
      rec(c + 1, offset + static_cast<int>(members.size()));
    } while (std::next_permutation(members.begin(), members.end()));
  };
  rec(0, 0);
  return best;
}

Graph graph_from_code(int n, std::uint64_t code) {
  std::vector<Edge> es;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i)
      if (code >> pair_bit(i, j) & 1) es.emplace_back(i, j);
  return Graph(n, es);
}

std::vector<Graph> all_graphs(int n) {
  if (n < 0 || n > 8) throw PreconditionError("all_graphs supports 0 <= n <= 8");
  std::set<std::uint64_t> codes{0};
  for (int k = 1; k <= n; ++k) {
    std::set<std::uint64_t> next;
    for (std::uint64_t code : codes) {
      const Graph base = graph_from_code(k - 1, code);
      for (std::uint32_t subset = 0; subset < (1u << (k - 1)); ++subset) {
        std::vector<Edge> es = base.edges();
        for (int v = 0; v < k - 1; ++v)
          if (subset >> v & 1) es.emplace_back(v, k - 1);
        next.insert(canonical_code(Graph(k, es)));
      }
    }
    codes = std::move(next);
  }
  std::vector<Graph> out;
  for (std::uint64_t code : codes) out.push_back(graph_from_code(n, code));
  return out;
}

std::vector<Graph> connected_graphs(int n) {
  std::vector<Graph> out;
  for (auto& g : all_graphs(n))
    if (is_connected(g)) out.push_back(std::move(g));
  return out;
}

}  // namespace stardist
