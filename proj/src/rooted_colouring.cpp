#include "stardist/rooted_colouring.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "stardist/automorphism.hpp"
#include "stardist/star_free.hpp"

namespace stardist {

std::string to_string(Theorem3Case c) {
  switch (c) {
    case Theorem3Case::C1: return "C1";
    case Theorem3Case::C2: return "C2";
    case Theorem3Case::C3: return "C3";
    case Theorem3Case::C4: return "C4";
  }
  return "C1";
}

std::string to_string(Theorem3Exception e) {
  switch (e) {
    case Theorem3Exception::HourglassCentre: return "HourglassCentre";
    case Theorem3Exception::StarCentre: return "StarCentre";
    case Theorem3Exception::K1: return "K1";
  }
  return "K1";
}

namespace {

Theorem3Case classify_unchecked(const Graph& g, Vertex r, int n) {
  const auto kind = classify_special(g);
  if (kind.tag == SpecialTag::K1) return Theorem3Case::C4;
  if (kind.tag == SpecialTag::Star && kind.star_leaves == n - 1 && kind.centre == r) return Theorem3Case::C3;
  if (n == 3 && kind.tag == SpecialTag::Hourglass && kind.centre == r) return Theorem3Case::C2;
  return Theorem3Case::C1;
}

void check_root(const Graph& g, Vertex r, int n) {
  if (n < 3) throw PreconditionError("n must be at least 3");
  if (r < 0 || r >= g.order()) throw PreconditionError("root " + std::to_string(r) + " is not a vertex");
  if (!is_connected(g)) throw PreconditionError("graph is not connected");
}

bool in_base_list(const Graph& g) {
  if (g.order() < 2) return false;
  switch (classify_special(g).tag) {
    case SpecialTag::K2:
    case SpecialTag::C3:
    case SpecialTag::C4:
    case SpecialTag::C5:
    case SpecialTag::K4:
    case SpecialTag::K5: return true;
    default: return false;
  }
}

bool hamiltonian_path(const Graph& g, std::vector<Vertex>& path, std::vector<bool>& used) {
  if (static_cast<int>(path.size()) == g.order()) return true;
  for (Vertex w : g.neighbours(path.back())) {
    if (used[w]) continue;
    used[w] = true;
    path.push_back(w);
    if (hamiltonian_path(g, path, used)) return true;
    path.pop_back();
    used[w] = false;
  }
  return false;
}

void lift(const InducedSubgraph& sub, const EdgeColouring& c, EdgeColouring& into) {
  for (const auto& [e, col] : c.assignment()) into.set(sub.to_old[e.u], sub.to_old[e.v], col);
}

LabelledGraph rooted_labels(const Graph& g, Vertex r) {
  LabelledGraph lg(g);
  lg.vertex_colour.assign(g.order(), 0);
  lg.vertex_colour[r] = 1;
  return lg;
}

struct Solved {
  std::optional<Theorem3Exception> exception;
  std::vector<EdgeColouring> colourings;
  std::string branch;
  int oracle_filled = 0;
};

class Builder {
 public:
  Builder(int n, const RootedOptions& opts) : n_(n), k_(n - 1), opts_(opts) {}

  Solved solve(const Graph& g, Vertex r) {
    if (auto hit = recall(g, r)) return *hit;
    Solved s = construct(g, r);
    memo_.push_back({g, r, s});
    return s;
  }

 private:
  struct MemoEntry {
    Graph graph;
    Vertex root;
    Solved result;
  };

  // Cached result for a rooted-isomorphic instance, carried over to g.
  std::optional<Solved> recall(const Graph& g, Vertex r) const {
    for (const auto& entry : memo_) {
      if (entry.graph.order() != g.order() || entry.graph.size() != g.size()) continue;
      const auto phi = find_isomorphism(rooted_labels(entry.graph, entry.root), rooted_labels(g, r));
      if (!phi) continue;
      Solved out = entry.result;
      for (auto& c : out.colourings) {
        EdgeColouring moved(k_);
        for (const auto& [e, col] : c.assignment()) moved.set(phi->apply(e), col);
        c = std::move(moved);
      }
      return out;
    }
    return std::nullopt;
  }

  Solved construct(const Graph& g, Vertex r) {
    switch (classify_unchecked(g, r, n_)) {
      case Theorem3Case::C4: return {Theorem3Exception::K1, {}, "exception", 0};
      case Theorem3Case::C3: return {Theorem3Exception::StarCentre, {}, "exception", 0};
      case Theorem3Case::C2: return {Theorem3Exception::HourglassCentre, {}, "exception", 0};
      case Theorem3Case::C1: break;
    }
    if (in_base_list(g)) return select(g, r, base_case_colouring(g, r, n_), "base");
    if (g.degree(r) == g.order() - 1) return neighbourhood(g, r);
    return outer(g, r);
  }

  // Some distinguishing colouring of (g, r), also for the exceptional shapes.
  EdgeColouring single(const Graph& g, Vertex r, const Solved& s) {
    if (!s.colourings.empty()) return s.colourings.front();
    EdgeColouring c(k_);
    if (s.exception == Theorem3Exception::K1) return c;
    if (s.exception == Theorem3Exception::StarCentre) {
      Colour col = 1;
      for (Vertex v : g.neighbours(r)) c.set(r, v, col++);
      return c;
    }
    const std::vector<Vertex> root{r};
    auto found = first_distinguishing(g, root, k_, opts_.budget);
    if (!found) throw std::logic_error("no distinguishing colouring for a rooted exceptional graph");
    found->set_palette(k_);
    return *found;
  }

  // r adjacent to every other vertex.
  Solved neighbourhood(const Graph& g, Vertex r) {
    const std::vector<Vertex> root{r};
    const auto rep = pointwise_stabilizer(g, root).orbit_representatives();
    const auto& nbrs = g.neighbours(r);
    const Vertex x = nbrs.front();
    std::vector<Vertex> orbit{r}, rest{r};
    for (Vertex v : nbrs) (rep[v] == rep[x] ? orbit : rest).push_back(v);
    if (rest.size() > 1) return split(g, r, orbit, rest);
    return components_case(g, r);
  }

  Solved split(const Graph& g, Vertex r, std::vector<Vertex> orbit, std::vector<Vertex> rest) {
    std::sort(orbit.begin(), orbit.end());
    std::sort(rest.begin(), rest.end());
    const auto s1 = induced_subgraph(g, orbit);
    const auto s2 = induced_subgraph(g, rest);
    const Vertex r1 = s1.to_new[r], r2 = s2.to_new[r];
    const Solved o1 = solve(s1.graph, r1);
    const Solved o2 = solve(s2.graph, r2);

    auto join = [&](const EdgeColouring& c1, const EdgeColouring& c2, Colour cross) {
      EdgeColouring c(k_);
      lift(s1, c1, c);
      lift(s2, c2, c);
      for (const auto& e : g.edges())
        if (!c.contains(e)) c.set(e, cross);
      return c;
    };

    std::vector<EdgeColouring> cands;
    if (!o1.colourings.empty()) {
      const auto d2 = single(s2.graph, r2, o2);
      for (const auto& c1 : o1.colourings) cands.push_back(join(c1, d2, 1));
      return select(g, r, std::move(cands), "split");
    }
    if (!o2.colourings.empty()) {
      const auto d1 = single(s1.graph, r1, o1);
      for (const auto& c2 : o2.colourings) cands.push_back(join(d1, c2, 1));
      return select(g, r, std::move(cands), "split");
    }
    const auto d1 = single(s1.graph, r1, o1);
    const auto d2 = single(s2.graph, r2, o2);
    for (Colour j = 1; j <= k_; ++j) cands.push_back(join(d1, d2, j));
    return select(g, r, std::move(cands), "split-cross");
  }

  // r adjacent to everything and N(r) a single orbit: the components of g − r
  // are pairwise isomorphic.
  Solved components_case(const Graph& g, Vertex r) {
    const std::vector<Vertex> removed{r};
    const auto minus = remove_vertices(g, removed);
    std::vector<InducedSubgraph> xs;
    std::vector<Vertex> roots;
    for (const auto& comp : components(minus.graph)) {
      std::vector<Vertex> old;
      for (Vertex v : comp) old.push_back(minus.to_old[v]);
      xs.push_back(induced_subgraph(g, old));
      roots.push_back(0);  // lowest id of the component
    }
    const int k = static_cast<int>(xs.size());
    std::vector<EdgeColouring> cands;

    if (k <= n_ - 2) {
      std::vector<EdgeColouring> inner;
      for (int i = 0; i < k; ++i) inner.push_back(single(xs[i].graph, roots[i], solve(xs[i].graph, roots[i])));
      for (int j = 0; j < k_; ++j) {
        EdgeColouring c(k_);
        for (int i = 0; i < k; ++i) {
          lift(xs[i], inner[i], c);
          const Vertex xi = xs[i].to_old[roots[i]];
          for (Vertex v : xs[i].to_old) c.set(r, v, v == xi ? (i + j) % k_ + 1 : (n_ - 2 + j) % k_ + 1);
        }
        cands.push_back(std::move(c));
      }
      return select(g, r, std::move(cands), "components");
    }

    // k = n − 1: each component is complete and not K1.
    std::vector<Solved> inner;
    for (int i = 0; i < k; ++i) inner.push_back(solve(xs[i].graph, roots[i]));
    if (inner[0].colourings.size() >= 2) {
      for (int j = 0; j < k_; ++j) {
        EdgeColouring c(k_);
        for (int i = 0; i < k; ++i) {
          const Vertex xi = xs[i].to_old[roots[i]];
          const int shift = i == 0 ? j : 0;
          auto put = [&](Vertex a, Vertex b, int zero_based) { c.set(a, b, (zero_based + shift) % k_ + 1); };
          const auto& own = i == 0 ? inner[0].colourings[1] : inner[i].colourings[0];
          for (const auto& [e, col] : own.assignment()) put(xs[i].to_old[e.u], xs[i].to_old[e.v], col - 1);
          for (Vertex v : xs[i].to_old) put(r, v, v == xi ? 0 : (i == 0 ? 1 : i));
        }
        cands.push_back(std::move(c));
      }
    }
    return select(g, r, std::move(cands), "complete-components");
  }

  // Colours the edges of g outside `sub` so that only the identity fixes
  // `fixed` pointwise and preserves them.
  std::optional<EdgeColouring> outside(const Graph& g, const std::vector<Vertex>& fixed, const InducedSubgraph& sub) {
    auto c = first_distinguishing(g, fixed, k_, opts_.budget);
    if (!c) return std::nullopt;
    for (const auto& e : g.edges())
      if (sub.to_new[e.u] >= 0 && sub.to_new[e.v] >= 0) c->erase(e);
    c->set_palette(k_);
    return c;
  }

  // N[r] is a proper subgraph.
  Solved outer(const Graph& g, Vertex r) {
    std::vector<Vertex> closed = g.neighbours(r);
    closed.push_back(r);
    std::sort(closed.begin(), closed.end());
    const auto h = induced_subgraph(g, closed);
    const Solved oh = solve(h.graph, h.to_new[r]);
    std::vector<EdgeColouring> cands;
    if (!oh.colourings.empty()) {
      if (const auto rest = outside(g, closed, h)) {
        for (const auto& c : oh.colourings) {
          EdgeColouring d = *rest;
          lift(h, c, d);
          cands.push_back(std::move(d));
        }
      }
      return select(g, r, std::move(cands), "outer");
    }

    // (N[r], r) is exceptional: work around a neighbour of r with neighbours beyond N[r].
    std::vector<Vertex> local;
    for (Vertex x : g.neighbours(r)) {
      local.clear();
      for (Vertex w : g.neighbours(x))
        if (!std::binary_search(closed.begin(), closed.end(), w)) local.push_back(w);
      if (local.empty()) continue;
      local.push_back(x);
      std::sort(local.begin(), local.end());
      const auto hp = induced_subgraph(g, local);
      const Solved op = solve(hp.graph, hp.to_new[x]);
      std::vector<Vertex> fixed = local;
      fixed.push_back(r);
      std::sort(fixed.begin(), fixed.end());
      if (const auto rest = outside(g, fixed, hp)) {
        for (const auto& c : op.colourings) {
          EdgeColouring d = *rest;
          lift(hp, c, d);
          cands.push_back(std::move(d));
        }
      }
      break;
    }
    return select(g, r, std::move(cands), "outer-local");
  }

  // Keeps the candidates that are distinguishing and new up to isomorphism;
  // any shortfall is filled by oracle search.
  Solved select(const Graph& g, Vertex r, std::vector<EdgeColouring> cands, std::string branch) {
    Solved s;
    s.branch = std::move(branch);
    const std::vector<Vertex> root{r};
    auto is_new = [&](const EdgeColouring& c) {
      return std::none_of(s.colourings.begin(), s.colourings.end(),
                          [&](const EdgeColouring& prev) { return are_colourings_isomorphic(g, root, prev, c); });
    };
    for (auto& c : cands) {
      if (static_cast<int>(s.colourings.size()) == k_) break;
      if (!c.is_total_on(g) || c.max_colour() > k_) continue;
      c.set_palette(k_);
      if (!is_distinguishing(g, c, root) || !is_new(c)) continue;
      s.colourings.push_back(std::move(c));
    }
    if (static_cast<int>(s.colourings.size()) < k_) {
      for_each_distinguishing(
          g, root, k_,
          [&](const std::vector<Colour>& vec) {
            auto c = EdgeColouring::from_vector(g, vec, k_);
            if (is_new(c)) {
              s.colourings.push_back(std::move(c));
              ++s.oracle_filled;
            }
            return static_cast<int>(s.colourings.size()) < k_;
          },
          opts_.budget);
    }
    if (static_cast<int>(s.colourings.size()) < k_)
      throw std::logic_error("fewer than n-1 distinguishing colourings for a non-exceptional rooted graph");
    return s;
  }

  int n_;
  int k_;
  RootedOptions opts_;
  std::vector<MemoEntry> memo_;
};

}  // namespace

Theorem3Case theorem3_classify(const Graph& g, Vertex r, int n) {
  check_root(g, r, n);
  if (!is_k1n_free(g, n)) throw PreconditionError("graph contains an induced K_{1," + std::to_string(n) + "}");
  return classify_unchecked(g, r, n);
}

std::vector<EdgeColouring> base_case_colouring(const Graph& g, Vertex r, int n) {
  check_root(g, r, n);
  if (!in_base_list(g)) throw PreconditionError("base case needs K2, K3, K4, K5, C4 or C5");
  std::vector<Vertex> path{r};
  std::vector<bool> used(g.order(), false);
  used[r] = true;
  if (!hamiltonian_path(g, path, used)) throw std::logic_error("no Hamiltonian path from the root");
  std::set<Edge> on_path;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) on_path.insert(Edge(path[i], path[i + 1]));

  const int k = n - 1;
  std::vector<EdgeColouring> out;
  for (Colour j = 1; j <= k; ++j) {
    EdgeColouring c(k);
    for (const auto& e : g.edges()) c.set(e, on_path.contains(e) ? j : j % k + 1);
    out.push_back(std::move(c));
  }
  return out;
}

Theorem3Outcome theorem3_colourings(const Graph& g, Vertex r, int n, const RootedOptions& opts) {
  theorem3_classify(g, r, n);
  if (g.order() > opts.max_vertices)
    throw PreconditionError("graph has " + std::to_string(g.order()) + " vertices, above the limit of " +
                            std::to_string(opts.max_vertices));
  Builder builder(n, opts);
  Solved s = builder.solve(g, r);
  return {s.exception, std::move(s.colourings), std::move(s.branch), s.oracle_filled};
}

}  // namespace stardist
