#include "stardist/star_free.hpp"

#include <algorithm>
#include <sstream>

#include "stardist/automorphism.hpp"

namespace stardist {

bool StarWitness::valid_in(const Graph& g) const {
  if (centre < 0 || centre >= g.order()) return false;
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    if (leaves[i] == centre || !g.has_edge(centre, leaves[i])) return false;
    for (std::size_t j = i + 1; j < leaves.size(); ++j)
      if (leaves[i] == leaves[j] || g.has_edge(leaves[i], leaves[j])) return false;
  }
  return true;
}

std::string StarWitness::to_string() const {
  std::ostringstream os;
  os << "centre: " << centre << " leaves:";
  for (Vertex v : leaves) os << ' ' << v;
  return os.str();
}

namespace {

// Depth-first search for `need` more independent vertices among cand[from..],
// in increasing id order, so the first hit is lexicographically least.
bool extend_independent(const Graph& g, const std::vector<Vertex>& cand, std::size_t from, int need,
                        std::vector<Vertex>& chosen) {
  if (need == 0) return true;
  for (std::size_t i = from; i < cand.size(); ++i) {
    if (cand.size() - i < static_cast<std::size_t>(need)) return false;
    const Vertex v = cand[i];
    if (std::any_of(chosen.begin(), chosen.end(), [&](Vertex u) { return g.has_edge(u, v); })) continue;
    chosen.push_back(v);
    if (extend_independent(g, cand, i + 1, need - 1, chosen)) return true;
    chosen.pop_back();
  }
  return false;
}

}  // namespace

std::optional<StarWitness> find_induced_star(const Graph& g, int n, const std::vector<Vertex>& centres) {
  if (n < 1) throw PreconditionError("star size must be at least 1");
  for (Vertex c : centres) {
    if (g.degree(c) < n) continue;
    std::vector<Vertex> chosen;
    if (extend_independent(g, g.neighbours(c), 0, n, chosen)) return StarWitness{c, chosen};
  }
  return std::nullopt;
}

std::optional<StarWitness> find_induced_star(const Graph& g, int n) {
  std::vector<Vertex> all(g.order());
  for (Vertex v = 0; v < g.order(); ++v) all[v] = v;
  return find_induced_star(g, n, all);
}

bool is_k1n_free(const Graph& g, int n) { return !find_induced_star(g, n).has_value(); }

std::string SpecialKind::to_string() const {
  switch (tag) {
    case SpecialTag::K1: return "K1";
    case SpecialTag::K2: return "K2";
    case SpecialTag::C3: return "C3";
    case SpecialTag::C4: return "C4";
    case SpecialTag::C5: return "C5";
    case SpecialTag::K4: return "K4";
    case SpecialTag::K5: return "K5";
    case SpecialTag::Star: return "Star(" + std::to_string(star_leaves) + ")";
    case SpecialTag::Hourglass: return "Hourglass";
    case SpecialTag::None: return "None";
  }
  return "None";
}

SpecialKind classify_special(const Graph& g) {
  if (!is_connected(g) || g.order() == 0) throw PreconditionError("classify_special needs a connected graph");
  const int n = g.order();
  if (n == 1) return {SpecialTag::K1, 0, std::nullopt};

  // Star(m): one vertex adjacent to all others, which are leaves.
  if (n >= 3 && g.size() == n - 1) {
    for (Vertex v = 0; v < n; ++v)
      if (g.degree(v) == n - 1) return {SpecialTag::Star, n - 1, v};
  }

  struct Reference {
    SpecialTag tag;
    Graph graph;
  };
  static const std::vector<Reference> refs = {
      {SpecialTag::K2, graphs::complete(2)}, {SpecialTag::C3, graphs::cycle(3)},
      {SpecialTag::C4, graphs::cycle(4)},    {SpecialTag::C5, graphs::cycle(5)},
      {SpecialTag::K4, graphs::complete(4)}, {SpecialTag::K5, graphs::complete(5)},
      {SpecialTag::Hourglass, graphs::hourglass()},
  };
  for (const auto& ref : refs) {
    if (ref.graph.order() != n || ref.graph.size() != g.size()) continue;
    if (!find_isomorphism(LabelledGraph(ref.graph), LabelledGraph(g))) continue;
    SpecialKind kind{ref.tag, 0, std::nullopt};
    if (ref.tag == SpecialTag::Hourglass)
      for (Vertex v = 0; v < n; ++v)
        if (g.degree(v) == 4) kind.centre = v;
    return kind;
  }
  return {};
}

}  // namespace stardist
