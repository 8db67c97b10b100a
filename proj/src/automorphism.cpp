#include "stardist/automorphism.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

namespace stardist {

Permutation Permutation::identity(int n) {
  Permutation p;
  p.image.resize(n);
  std::iota(p.image.begin(), p.image.end(), 0);
  return p;
}

bool Permutation::is_identity() const {
  for (std::size_t v = 0; v < image.size(); ++v)
    if (image[v] != static_cast<Vertex>(v)) return false;
  return true;
}

Permutation Permutation::compose(const Permutation& other) const {
  Permutation p;
  p.image.resize(other.image.size());
  for (std::size_t v = 0; v < other.image.size(); ++v) p.image[v] = image[other.image[v]];
  return p;
}

Permutation Permutation::inverse() const {
  Permutation p;
  p.image.resize(image.size());
  for (std::size_t v = 0; v < image.size(); ++v) p.image[image[v]] = static_cast<Vertex>(v);
  return p;
}

std::string Permutation::to_string() const {
  std::ostringstream os;
  for (std::size_t v = 0; v < image.size(); ++v) {
    if (v) os << ' ';
    os << image[v];
  }
  return os.str();
}

bool is_automorphism(const Graph& g, const Permutation& p) {
  if (p.degree() != g.order()) return false;
  std::vector<char> hit(g.order(), 0);
  for (Vertex v : p.image) {
    if (v < 0 || v >= g.order() || hit[v]) return false;
    hit[v] = 1;
  }
  for (const auto& e : g.edges())
    if (!g.has_edge(p(e.u), p(e.v))) return false;
  return true;
}

PermGroup::PermGroup(int degree, std::vector<Permutation> generators, std::vector<Vertex> base,
                     std::vector<std::size_t> orbit_lengths)
    : degree_(degree),
      generators_(std::move(generators)),
      base_(std::move(base)),
      orbit_lengths_(std::move(orbit_lengths)) {}

BigInt PermGroup::order() const {
  BigInt o = 1;
  for (auto len : orbit_lengths_) o *= len;
  return o;
}

std::uint64_t PermGroup::order_u64() const {
  const BigInt o = order();
  if (o > BigInt(std::numeric_limits<std::uint64_t>::max()))
    throw std::overflow_error("group order does not fit in 64 bits");
  return static_cast<std::uint64_t>(o);
}

namespace {

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent_[a] = b;  // the smaller id stays the root
  }

 private:
  std::vector<int> parent_;
};

}  // namespace

std::vector<Vertex> PermGroup::orbit_representatives() const {
  UnionFind uf(degree_);
  for (const auto& g : generators_)
    for (int v = 0; v < degree_; ++v) uf.unite(v, g(v));
  std::vector<Vertex> rep(degree_);
  for (int v = 0; v < degree_; ++v) rep[v] = uf.find(v);
  return rep;
}

std::vector<std::vector<Vertex>> PermGroup::orbits() const {
  const auto rep = orbit_representatives();
  std::map<Vertex, std::vector<Vertex>> by_rep;
  for (int v = 0; v < degree_; ++v) by_rep[rep[v]].push_back(v);
  std::vector<std::vector<Vertex>> out;
  for (auto& [r, members] : by_rep) out.push_back(std::move(members));
  return out;
}

namespace {

struct VectorHash {
  std::size_t operator()(const std::vector<Vertex>& v) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (Vertex x : v) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ULL;
    return h;
  }
};

}  // namespace

std::vector<Permutation> PermGroup::elements(std::size_t limit) const {
  if (order() > BigInt(limit))
    throw BudgetExceeded("group of order " + order().str() + " exceeds element limit " + std::to_string(limit));
  std::vector<Permutation> out{Permutation::identity(degree_)};
  std::unordered_set<std::vector<Vertex>, VectorHash> seen{out.front().image};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const auto& g : generators_) {
      Permutation next = g.compose(out[i]);
      if (seen.insert(next.image).second) out.push_back(std::move(next));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Individualization-refinement search.

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return h ^ x;
}

/// Ordered partition: cell[v] is the position of v's cell.
struct Partition {
  std::vector<int> cell;
  int ncells = 0;
};

/// Flattened view of a labelled graph used by the refiner and leaf checks.
class Prepared {
 public:
  explicit Prepared(const LabelledGraph& lg) : g_(*lg.graph) {
    const int n = g_.order();
    offset_.assign(n + 1, 0);
    for (int v = 0; v < n; ++v) offset_[v + 1] = offset_[v] + g_.degree(v);
    nbr_.resize(offset_[n]);
    lab_.resize(offset_[n]);
    max_label_ = 1;
    for (int v = 0; v < n; ++v) {
      int k = offset_[v];
      for (Vertex u : g_.neighbours(v)) {
        nbr_[k] = u;
        lab_[k] = lg.edge_label.empty() ? 1 : lg.edge_label[g_.edge_index(v, u)];
        max_label_ = std::max(max_label_, lab_[k]);
        ++k;
      }
    }
    vcol_ = lg.vertex_colour.empty() ? std::vector<int>(n, 0) : lg.vertex_colour;
    elab_ = lg.edge_label;
  }

  const Graph& graph() const { return g_; }
  const std::vector<int>& vertex_colour() const { return vcol_; }
  int edge_label(int idx) const { return elab_.empty() ? 1 : elab_[idx]; }

  /// Initial ordered partition: cells ordered by vertex colour value.
  Partition initial() const {
    std::vector<int> values = vcol_;
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    Partition p;
    p.cell.resize(vcol_.size());
    for (std::size_t v = 0; v < vcol_.size(); ++v)
      p.cell[v] = static_cast<int>(std::lower_bound(values.begin(), values.end(), vcol_[v]) - values.begin());
    p.ncells = static_cast<int>(values.size());
    return p;
  }

  /// Refines p to the coarsest equitable ordered refinement and returns a
  /// trace hash that is invariant under relabelling.
  std::uint64_t refine(Partition& p) const {
    const int n = g_.order();
    std::uint64_t trace = mix(0x51ed270b27f1ULL, static_cast<std::uint64_t>(p.ncells));
    std::vector<std::int64_t> keys(nbr_.size());
    std::vector<int> order(n);
    std::vector<int> next(n);
    const std::int64_t width = max_label_ + 1;
    while (true) {
      for (int v = 0; v < n; ++v) {
        for (int k = offset_[v]; k < offset_[v + 1]; ++k)
          keys[k] = static_cast<std::int64_t>(p.cell[nbr_[k]]) * width + lab_[k];
        std::sort(keys.begin() + offset_[v], keys.begin() + offset_[v + 1]);
      }
      std::iota(order.begin(), order.end(), 0);
      auto less = [&](int a, int b) {
        if (p.cell[a] != p.cell[b]) return p.cell[a] < p.cell[b];
        return std::lexicographical_compare(keys.begin() + offset_[a], keys.begin() + offset_[a + 1],
                                            keys.begin() + offset_[b], keys.begin() + offset_[b + 1]);
      };
      std::stable_sort(order.begin(), order.end(), less);
      int rank = -1;
      std::uint64_t sig = 0;
      std::uint64_t members = 0;
      for (int i = 0; i < n; ++i) {
        const int v = order[i];
        if (i == 0 || less(order[i - 1], v)) {
          if (rank >= 0) trace = mix(trace, mix(sig, members));
          ++rank;
          members = 0;
          sig = mix(static_cast<std::uint64_t>(p.cell[v]), static_cast<std::uint64_t>(offset_[v + 1] - offset_[v]));
          for (int k = offset_[v]; k < offset_[v + 1]; ++k) sig = mix(sig, static_cast<std::uint64_t>(keys[k]));
        }
        ++members;
        next[v] = rank;
      }
      if (rank >= 0) trace = mix(trace, mix(sig, members));
      const int count = rank + 1;
      trace = mix(trace, static_cast<std::uint64_t>(count));
      const bool split = count != p.ncells;
      p.cell.swap(next);
      p.ncells = count;
      if (!split) break;
    }
    return trace;
  }

 private:
  const Graph& g_;
  std::vector<int> offset_;
  std::vector<Vertex> nbr_;
  std::vector<int> lab_;
  int max_label_ = 1;
  std::vector<int> vcol_;
  std::vector<int> elab_;
};

void individualize(Partition& p, Vertex v) {
  const int c = p.cell[v];
  for (auto& x : p.cell) {
    if (x > c) ++x;
    else if (x == c) x = c + 1;
  }
  p.cell[v] = c;
  ++p.ncells;
}

/// First largest non-singleton cell, or -1 when p is discrete.
int target_cell(const Partition& p) {
  std::vector<int> size(p.ncells, 0);
  for (int c : p.cell) ++size[c];
  int best = -1;
  for (int c = 0; c < p.ncells; ++c)
    if (size[c] > 1 && (best < 0 || size[c] > size[best])) best = c;
  return best;
}

struct Level {
  Partition part;
  std::uint64_t trace = 0;
  int target = -1;
  Vertex base = -1;
};

/// Search tree whose leftmost path is computed on `left`; right-hand nodes
/// are compared against it to produce isomorphisms left -> right.
class Search {
 public:
  using Leaf = std::function<bool(const Permutation&)>;  // return true to stop
  using NodeCheck = std::function<bool(const Partition& left, const Partition& right)>;

  Search(const Prepared& left, const Prepared& right) : left_(left), right_(right) {
    Level root;
    root.part = left_.initial();
    root.trace = left_.refine(root.part);
    path_.push_back(std::move(root));
    while (true) {
      Level& cur = path_.back();
      cur.target = target_cell(cur.part);
      if (cur.target < 0) break;
      for (Vertex v = 0; v < static_cast<Vertex>(cur.part.cell.size()); ++v)
        if (cur.part.cell[v] == cur.target) {
          cur.base = v;
          break;
        }
      Level next;
      next.part = cur.part;
      individualize(next.part, cur.base);
      next.trace = left_.refine(next.part);
      path_.push_back(std::move(next));
    }
  }

  int depth() const { return static_cast<int>(path_.size()) - 1; }
  const Level& level(int i) const { return path_[i]; }

  /// Right-hand root, or nullopt when it cannot match the left root.
  std::optional<Partition> right_root() const {
    Partition p = right_.initial();
    const auto tr = right_.refine(p);
    if (tr != path_[0].trace || p.ncells != path_[0].part.ncells) return std::nullopt;
    return p;
  }

  /// Explores right-hand children of `right` (a node at `lvl` matching the
  /// left path) in vertex order; calls `leaf` at each matching discrete leaf.
  bool extend(int lvl, const Partition& right, const Leaf& leaf, const NodeCheck* check) const {
    if (lvl == depth()) return leaf(leaf_map(path_[lvl].part, right));
    const int t = path_[lvl].target;
    for (Vertex w = 0; w < static_cast<Vertex>(right.cell.size()); ++w) {
      if (right.cell[w] != t) continue;
      Partition q = right;
      if (!child(lvl, q, w)) continue;
      if (check && !(*check)(path_[lvl + 1].part, q)) continue;
      if (extend(lvl + 1, q, leaf, check)) return true;
    }
    return false;
  }

  /// Individualizes w in q (a right node at lvl) and compares with the left path.
  bool child(int lvl, Partition& q, Vertex w) const {
    individualize(q, w);
    const auto tr = right_.refine(q);
    return tr == path_[lvl + 1].trace && q.ncells == path_[lvl + 1].part.ncells;
  }

  static Permutation leaf_map(const Partition& l, const Partition& r) {
    const int n = static_cast<int>(l.cell.size());
    std::vector<Vertex> right_at(n);
    for (int v = 0; v < n; ++v) right_at[r.cell[v]] = v;
    Permutation p;
    p.image.resize(n);
    for (int v = 0; v < n; ++v) p.image[v] = right_at[l.cell[v]];
    return p;
  }

  /// Exact label-preserving isomorphism test for a leaf map.
  bool preserves_labels(const Permutation& p) const {
    const Graph& a = left_.graph();
    const Graph& b = right_.graph();
    for (int v = 0; v < a.order(); ++v)
      if (left_.vertex_colour()[v] != right_.vertex_colour()[p(v)]) return false;
    for (std::size_t i = 0; i < a.edges().size(); ++i) {
      const auto& e = a.edges()[i];
      const int j = b.edge_index(p(e.u), p(e.v));
      if (j < 0 || left_.edge_label(static_cast<int>(i)) != right_.edge_label(j)) return false;
    }
    return true;
  }

 private:
  const Prepared& left_;
  const Prepared& right_;
  std::vector<Level> path_;
};

PermGroup search_group(const Prepared& prep) {
  const Search s(prep, prep);
  const int n = prep.graph().order();
  std::vector<Permutation> gens;
  std::vector<std::size_t> lengths(s.depth(), 1);
  std::vector<Vertex> base;
  for (int i = 0; i < s.depth(); ++i) base.push_back(s.level(i).base);

  UnionFind orbits(n);
  for (int i = s.depth() - 1; i >= 0; --i) {
    const Level& lv = s.level(i);
    for (Vertex w = 0; w < n; ++w) {
      if (lv.part.cell[w] != lv.target || w == lv.base) continue;
      if (orbits.find(w) == orbits.find(lv.base)) continue;
      Partition q = lv.part;
      if (!s.child(i, q, w)) continue;
      std::optional<Permutation> found;
      s.extend(i + 1, q,
               [&](const Permutation& p) {
                 if (!s.preserves_labels(p)) return false;
                 found = p;
                 return true;
               },
               nullptr);
      if (found) {
        for (Vertex v = 0; v < n; ++v) orbits.unite(v, (*found)(v));
        gens.push_back(std::move(*found));
      }
    }
    std::size_t len = 0;
    for (Vertex w = 0; w < n; ++w)
      if (orbits.find(w) == orbits.find(lv.base)) ++len;
    lengths[i] = len;
  }
  return PermGroup(n, std::move(gens), std::move(base), std::move(lengths));
}

/// Vertex colours singling out each fixed vertex, plus a class per
/// membership pattern of the stabilized sets.
std::vector<int> query_colours(int n, const SymmetryQuery& q) {
  std::vector<std::vector<int>> key(n);
  for (std::size_t i = 0; i < q.fixed.size(); ++i) {
    const Vertex v = q.fixed[i];
    if (v < 0 || v >= n) throw PreconditionError("fixed vertex " + std::to_string(v) + " out of range");
    key[v].push_back(-1 - static_cast<int>(v));
  }
  for (std::size_t s = 0; s < q.stabilized_sets.size(); ++s)
    for (Vertex v : q.stabilized_sets[s]) {
      if (v < 0 || v >= n) throw PreconditionError("stabilized vertex out of range");
      key[v].push_back(static_cast<int>(s));
    }
  std::map<std::vector<int>, int> ids;
  for (const auto& k : key) ids.emplace(k, 0);
  int next = 0;
  for (auto& [k, id] : ids) id = next++;
  std::vector<int> out(n);
  for (int v = 0; v < n; ++v) out[v] = ids[key[v]];
  return out;
}

std::vector<int> fixed_colours(int n, std::span<const Vertex> fixed) {
  SymmetryQuery q;
  q.fixed.assign(fixed.begin(), fixed.end());
  return query_colours(n, q);
}

}  // namespace

PermGroup labelled_automorphism_group(const LabelledGraph& lg) {
  const Prepared prep(lg);
  return search_group(prep);
}

std::optional<Permutation> find_isomorphism(const LabelledGraph& a, const LabelledGraph& b) {
  if (a.graph->order() != b.graph->order() || a.graph->size() != b.graph->size()) return std::nullopt;
  const Prepared pa(a);
  const Prepared pb(b);
  auto ca = pa.vertex_colour();
  auto cb = pb.vertex_colour();
  std::sort(ca.begin(), ca.end());
  std::sort(cb.begin(), cb.end());
  if (ca != cb) return std::nullopt;
  const Search s(pa, pb);
  auto root = s.right_root();
  if (!root) return std::nullopt;
  std::optional<Permutation> found;
  s.extend(0, *root,
           [&](const Permutation& p) {
             if (!s.preserves_labels(p)) return false;
             found = p;
             return true;
           },
           nullptr);
  return found;
}

PermGroup automorphism_group(const Graph& g) {
  if (g.order() < 1) throw PreconditionError("automorphism_group needs at least one vertex");
  return labelled_automorphism_group(LabelledGraph(g));
}

PermGroup pointwise_stabilizer(const Graph& g, std::span<const Vertex> fixed) {
  LabelledGraph lg(g);
  lg.vertex_colour = fixed_colours(g.order(), fixed);
  return labelled_automorphism_group(lg);
}

PermGroup colour_preserving_group(const Graph& g, const EdgeColouring& c, const SymmetryQuery& q) {
  if (!c.is_total_on(g)) throw PreconditionError("colour_preserving_group needs a total colouring");
  LabelledGraph lg(g);
  lg.vertex_colour = query_colours(g.order(), q);
  lg.edge_label = c.to_vector(g);
  return labelled_automorphism_group(lg);
}

void for_each_automorphism(const Graph& g, std::span<const Vertex> fixed,
                           const std::function<bool(const Permutation&)>& visit) {
  LabelledGraph lg(g);
  lg.vertex_colour = fixed_colours(g.order(), fixed);
  const Prepared prep(lg);
  const Search s(prep, prep);
  auto root = s.right_root();
  s.extend(0, *root, [&](const Permutation& p) { return s.preserves_labels(p) && !visit(p); }, nullptr);
}

std::optional<Permutation> find_colour_preserving(const Graph& g, const EdgeColouring& c,
                                                  std::span<const Vertex> fixed) {
  if (c.is_total_on(g)) {
    SymmetryQuery q;
    q.fixed.assign(fixed.begin(), fixed.end());
    auto group = colour_preserving_group(g, c, q);
    if (group.is_trivial()) return std::nullopt;
    return group.generators().front();
  }

  const auto colours = c.to_vector(g);
  auto colour_of = [&](Vertex a, Vertex b) {
    const int idx = g.edge_index(a, b);
    return idx < 0 ? -1 : colours[idx];  // -1 non-edge, 0 uncoloured
  };
  // φ maps a->x and b->y: adjacency must agree, and defined colours must match.
  auto compatible = [&](Vertex a, Vertex b, Vertex x, Vertex y) {
    const int ca = colour_of(a, b);
    const int cx = colour_of(x, y);
    if ((ca < 0) != (cx < 0)) return false;
    return ca <= 0 || cx <= 0 || ca == cx;
  };

  LabelledGraph lg(g);
  lg.vertex_colour = fixed_colours(g.order(), fixed);
  const Prepared prep(lg);
  const Search s(prep, prep);
  auto root = s.right_root();

  Search::NodeCheck check = [&](const Partition& l, const Partition& r) {
    std::vector<int> size(l.ncells, 0);
    for (int cidx : l.cell) ++size[cidx];
    std::vector<Vertex> lv(l.ncells, -1);
    std::vector<Vertex> rv(l.ncells, -1);
    for (Vertex v = 0; v < static_cast<Vertex>(l.cell.size()); ++v) {
      if (size[l.cell[v]] == 1) lv[l.cell[v]] = v;
      if (size[r.cell[v]] == 1) rv[r.cell[v]] = v;
    }
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (int cidx = 0; cidx < l.ncells; ++cidx)
      if (lv[cidx] >= 0) pairs.emplace_back(lv[cidx], rv[cidx]);
    for (std::size_t i = 0; i < pairs.size(); ++i)
      for (std::size_t j = i + 1; j < pairs.size(); ++j)
        if (!compatible(pairs[i].first, pairs[j].first, pairs[i].second, pairs[j].second)) return false;
    return true;
  };

  std::optional<Permutation> found;
  s.extend(0, *root,
           [&](const Permutation& p) {
             if (p.is_identity() || !s.preserves_labels(p)) return false;
             for (const auto& e : g.edges())
               if (!compatible(e.u, e.v, p(e.u), p(e.v))) return false;
             found = p;
             return true;
           },
           &check);
  return found;
}

bool is_distinguishing(const Graph& g, const EdgeColouring& c, std::span<const Vertex> fixed) {
  return !find_colour_preserving(g, c, fixed).has_value();
}

ComponentOrbits component_orbits(const Graph& g, std::span<const Vertex> f) {
  std::vector<char> in_f(g.order(), 0);
  for (Vertex v : f) {
    if (v < 0 || v >= g.order()) throw PreconditionError("vertex " + std::to_string(v) + " out of range");
    in_f[v] = 1;
  }
  const auto rest = remove_vertices(g, f);
  ComponentOrbits out;
  for (const auto& comp : components(rest.graph)) {
    std::vector<Vertex> ids;
    for (Vertex v : comp) ids.push_back(rest.to_old[v]);
    out.components.push_back(std::move(ids));
  }

  // Attachment label of a vertex: its exact neighbour set inside f.
  std::map<std::vector<Vertex>, int> attachment_ids;
  auto attachment = [&](Vertex v) {
    std::vector<Vertex> att;
    for (Vertex w : g.neighbours(v))
      if (in_f[w]) att.push_back(w);
    return attachment_ids.emplace(att, static_cast<int>(attachment_ids.size())).first->second;
  };

  struct Local {
    InducedSubgraph sub;
    std::vector<int> colours;
    std::vector<int> sorted_colours;
  };
  std::vector<Local> locals;
  for (const auto& comp : out.components) {
    Local l{induced_subgraph(g, comp), {}, {}};
    for (Vertex v : l.sub.to_old) l.colours.push_back(attachment(v));
    l.sorted_colours = l.colours;
    std::sort(l.sorted_colours.begin(), l.sorted_colours.end());
    locals.push_back(std::move(l));
  }

  for (std::size_t i = 0; i < locals.size(); ++i) {
    bool placed = false;
    for (auto& cls : out.classes) {
      const Local& rep = locals[cls.front()];
      const Local& cur = locals[i];
      if (rep.sorted_colours != cur.sorted_colours || rep.sub.graph.size() != cur.sub.graph.size()) continue;
      LabelledGraph a(rep.sub.graph);
      a.vertex_colour = rep.colours;
      LabelledGraph b(cur.sub.graph);
      b.vertex_colour = cur.colours;
      if (find_isomorphism(a, b)) {
        cls.push_back(static_cast<int>(i));
        placed = true;
        break;
      }
    }
    if (!placed) out.classes.push_back({static_cast<int>(i)});
  }
  return out;
}

bool are_colourings_isomorphic(const Graph& g, std::span<const Vertex> fixed, const EdgeColouring& c,
                               const EdgeColouring& d) {
  if (!c.is_total_on(g) || !d.is_total_on(g))
    throw PreconditionError("are_colourings_isomorphic needs total colourings");
  LabelledGraph a(g);
  a.vertex_colour = fixed_colours(g.order(), fixed);
  a.edge_label = c.to_vector(g);
  LabelledGraph b(g);
  b.vertex_colour = a.vertex_colour;
  b.edge_label = d.to_vector(g);
  return find_isomorphism(a, b).has_value();
}

}  // namespace stardist
