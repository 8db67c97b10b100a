#include "stardist/infinite.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "stardist/star_free.hpp"

namespace stardist {

std::string to_string(RayKind k) { return k == RayKind::R0 ? "R0" : "RInf"; }

std::string to_string(EdgeSupport s) {
  switch (s) {
    case EdgeSupport::Supported: return "Supported";
    case EdgeSupport::Supporting: return "Supporting";
    case EdgeSupport::Plain: return "Plain";
  }
  return "Plain";
}

VertexOrigin RayDescription::at(std::size_t j) const {
  if (j < start.size()) return start[j];
  const std::size_t t = j - start.size();
  VertexOrigin o = pattern[t % pattern.size()];
  o.copy += static_cast<int>(t / pattern.size()) * period;
  return o;
}

namespace {

int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

struct Node {
  int copy = 0;
  Vertex unit = 0;
  auto operator<=>(const Node&) const = default;
};

// The arm extended to copies of every integer index.
class ArmLift {
 public:
  explicit ArmLift(const ArmDescription& arm) : arm_(arm), splices_(arm.splice_unit.begin(), arm.splice_unit.end()) {}

  int units() const { return arm_.unit.order(); }

  bool adjacent(Node a, Node b) const {
    if (a.copy == b.copy) return a.unit != b.unit && arm_.unit.has_edge(a.unit, b.unit);
    if (b.copy == a.copy + 1) return splices_.contains({a.unit, b.unit});
    if (a.copy == b.copy + 1) return splices_.contains({b.unit, a.unit});
    return false;
  }

  std::vector<Node> neighbours(Node x) const {
    std::vector<Node> out;
    for (Vertex w : arm_.unit.neighbours(x.unit)) out.push_back({x.copy, w});
    for (const auto& [a, b] : arm_.splice_unit) {
      if (a == x.unit) out.push_back({x.copy + 1, b});
      if (b == x.unit) out.push_back({x.copy - 1, a});
    }
    return out;
  }

 private:
  const ArmDescription& arm_;
  std::set<VertexPair> splices_;
};

// Four consecutive repetitions contain every possible chord, since edges
// only join copies at distance at most one.
bool lifted_induced(const ArmLift& lift, const std::vector<Node>& pattern, int period) {
  std::vector<Node> seq;
  for (int t = 0; t < 4; ++t)
    for (const Node& x : pattern) seq.push_back({x.copy + t * period, x.unit});
  for (std::size_t a = 0; a < seq.size(); ++a) {
    if (a + 1 < seq.size() && !lift.adjacent(seq[a], seq[a + 1])) return false;
    for (std::size_t b = a + 2; b < seq.size(); ++b)
      if (lift.adjacent(seq[a], seq[b])) return false;
  }
  return true;
}

std::vector<std::vector<Node>> ray_patterns(const ArmLift& lift, int period) {
  std::vector<std::vector<Node>> found;
  const std::size_t max_len = static_cast<std::size_t>(lift.units() * period);
  std::vector<Node> path;
  std::function<void(Vertex)> dfs = [&](Vertex u0) {
    const Node last = path.back();
    if (lift.adjacent(last, {period, u0}) && lifted_induced(lift, path, period)) found.push_back(path);
    if (path.size() == max_len || found.size() > 4000) return;
    for (const Node& y : lift.neighbours(last)) {
      if (y.copy < 0 || y.copy >= period) continue;
      if (std::find(path.begin(), path.end(), y) != path.end()) continue;
      bool chord = false;
      for (std::size_t i = 0; i + 1 < path.size(); ++i) chord = chord || lift.adjacent(path[i], y);
      if (chord) continue;
      path.push_back(y);
      dfs(u0);
      path.pop_back();
    }
  };
  for (Vertex u0 = 0; u0 < lift.units(); ++u0) {
    path = {{0, u0}};
    dfs(u0);
  }
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return found;
}

// Components of the lifted arm minus the used nodes are finite iff the
// voltages around every closed walk of the quotient cancel.
bool leftover_finite(const ArmLift& lift, int period, const std::set<Node>& used) {
  std::map<Node, int> potential;
  for (int rho = 0; rho < period; ++rho) {
    for (Vertex u = 0; u < lift.units(); ++u) {
      const Node s{rho, u};
      if (used.contains(s) || potential.contains(s)) continue;
      potential[s] = 0;
      std::queue<Node> queue;
      queue.push(s);
      while (!queue.empty()) {
        const Node x = queue.front();
        queue.pop();
        for (const Node& y : lift.neighbours(x)) {
          const int shift = floor_div(y.copy, period);
          const Node q{y.copy - shift * period, y.unit};
          if (used.contains(q)) continue;
          const int p = potential[x] + shift;
          const auto it = potential.find(q);
          if (it == potential.end()) {
            potential[q] = p;
            queue.push(q);
          } else if (it->second != p) {
            return false;
          }
        }
      }
    }
  }
  return true;
}

bool choose_patterns(const ArmLift& lift, int period, const std::vector<std::vector<Node>>& cands,
                     std::vector<std::vector<Node>>& chosen, std::set<Node>& used) {
  if (!chosen.empty() && leftover_finite(lift, period, used)) return true;
  if (chosen.size() == 3) return false;
  for (const auto& c : cands) {
    if (std::any_of(c.begin(), c.end(), [&](const Node& x) { return used.contains(x); })) continue;
    chosen.push_back(c);
    used.insert(c.begin(), c.end());
    if (choose_patterns(lift, period, cands, chosen, used)) return true;
    for (const Node& x : c) used.erase(x);
    chosen.pop_back();
  }
  return false;
}

std::vector<Vertex> ray_ids(const Truncation& t, const RayDescription& r) {
  std::vector<Vertex> out;
  for (std::size_t j = 0;; ++j) {
    const Vertex v = t.id(r.at(j));
    if (v < 0) break;
    out.push_back(v);
  }
  return out;
}

constexpr Colour kNoColour = 0;

}  // namespace

RayFamily ray_family(const PeriodicGraphDescription& d) {
  validate(d);
  RayFamily f;
  for (int a = 0; a < static_cast<int>(d.arms.size()); ++a) {
    const ArmLift lift(d.arms[a]);
    std::vector<std::vector<Node>> chosen;
    int period = 0;
    for (int p : {1, 2}) {
      std::set<Node> used;
      chosen.clear();
      if (choose_patterns(lift, p, ray_patterns(lift, p), chosen, used)) {
        period = p;
        break;
      }
    }
    if (period == 0)
      throw PreconditionError("arm '" + d.arms[a].name + "': no family of periodic induced rays leaves finite components");
    for (const auto& pattern : chosen) {
      RayDescription r;
      r.arm = a;
      r.period = period;
      for (const Node& x : pattern) r.pattern.push_back({a, x.copy, x.unit});
      f.rays.push_back(std::move(r));
    }
  }
  for (std::size_t i = 0; i < f.rays.size(); ++i) f.rays[i].index = static_cast<int>(i) + 2;

  // Extend starts backwards while an outside vertex sees exactly the start of F.
  const Truncation t = truncate(d, 6);
  std::vector<bool> in_f(t.graph.order(), false);
  for (const auto& r : f.rays)
    for (Vertex v : ray_ids(t, r)) in_f[v] = true;
  for (auto& r : f.rays) {
    while (true) {
      const Vertex s = t.id(r.at(0));
      Vertex pick = -1;
      for (Vertex w : t.graph.neighbours(s)) {
        if (in_f[w] || t.origin[w].depth() > 3) continue;
        if (t.origin[w].arm >= 0 && t.origin[w].arm != r.arm) continue;
        const auto& nb = t.graph.neighbours(w);
        if (std::count_if(nb.begin(), nb.end(), [&](Vertex x) { return in_f[x]; }) != 1) continue;
        pick = w;
        break;
      }
      if (pick < 0) break;
      r.start.insert(r.start.begin(), t.origin[pick]);
      in_f[pick] = true;
    }
  }
  const auto kinds = classify_rays(d, f);
  for (std::size_t i = 0; i < f.rays.size(); ++i) f.rays[i].kind = kinds[i];
  return f;
}

std::vector<RayKind> classify_rays(const PeriodicGraphDescription& d, const RayFamily& f) {
  const RayWindow w(d, f, 16);
  std::vector<RayKind> out;
  for (int i = 0; i < w.ray_count(); ++i) {
    const auto& r = f.rays[i];
    const auto& ids = w.ray(i);
    const std::size_t first = r.start.size() + 2 * r.pattern.size();
    RayKind kind = RayKind::R0;
    for (std::size_t j = first; j < first + r.pattern.size() && j < ids.size(); ++j)
      for (Vertex x : w.graph().neighbours(ids[j]))
        if (!w.in_f(x)) kind = RayKind::RInf;
    out.push_back(kind);
  }
  return out;
}

RayWindow::RayWindow(const PeriodicGraphDescription& d, const RayFamily& f, int depth)
    : t_(truncate(d, depth)), family_(f) {
  const int order = t_.graph.order();
  ray_of_.assign(order, -1);
  position_.assign(order, -1);
  component_of_.assign(order, -1);
  for (int i = 0; i < static_cast<int>(f.rays.size()); ++i) {
    rays_.push_back(ray_ids(t_, f.rays[i]));
    for (int p = 0; p < static_cast<int>(rays_[i].size()); ++p) {
      const Vertex v = rays_[i][p];
      if (ray_of_[v] >= 0) throw std::logic_error("rays of the family overlap");
      ray_of_[v] = i;
      position_[v] = p;
      f_.push_back(v);
    }
  }
  std::sort(f_.begin(), f_.end());

  const auto orbits = component_orbits(t_.graph, f_);
  components_ = orbits.components;
  orbit_class_.assign(components_.size(), -1);
  for (int c = 0; c < static_cast<int>(orbits.classes.size()); ++c) {
    class_size_.push_back(static_cast<int>(orbits.classes[c].size()));
    for (int b : orbits.classes[c]) orbit_class_[b] = c;
  }
  for (int b = 0; b < static_cast<int>(components_.size()); ++b) {
    int lo = depth, hi = 0;
    for (Vertex v : components_[b]) {
      component_of_[v] = b;
      lo = std::min(lo, depth_of(v));
      hi = std::max(hi, depth_of(v));
    }
    if (hi < depth) span_ = std::max(span_, hi - lo);
  }
}

std::optional<Vertex> RayWindow::successor(Vertex v) const {
  if (ray_of_[v] < 0) return std::nullopt;
  const auto& r = rays_[ray_of_[v]];
  if (position_[v] + 1 >= static_cast<int>(r.size())) return std::nullopt;
  return r[position_[v] + 1];
}

std::optional<Vertex> RayWindow::predecessor(Vertex v) const {
  if (ray_of_[v] < 0 || position_[v] == 0) return std::nullopt;
  return rays_[ray_of_[v]][position_[v] - 1];
}

int RayWindow::orbit_size(int component) const { return class_size_[orbit_class_[component]]; }

std::vector<int> RayWindow::attached(Vertex v) const {
  std::vector<int> out;
  for (Vertex w : t_.graph.neighbours(v))
    if (component_of_[w] >= 0) out.push_back(component_of_[w]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

EdgeSupport edge_support(const RayWindow& w, Vertex v, Vertex x) {
  if (!w.in_f(v) || w.in_f(x)) throw PreconditionError("edge_support needs v on a ray and x off F");
  if (!w.graph().has_edge(v, x)) throw PreconditionError("edge_support needs an edge");
  if (const auto s = w.successor(v); s && w.graph().has_edge(*s, x)) return EdgeSupport::Supported;
  if (const auto p = w.predecessor(v); p && w.graph().has_edge(*p, x)) return EdgeSupport::Supporting;
  return EdgeSupport::Plain;
}

namespace {

bool has_supported_edge(const RayWindow& w, Vertex v) {
  for (Vertex x : w.graph().neighbours(v))
    if (!w.in_f(x) && edge_support(w, v, x) == EdgeSupport::Supported) return true;
  return false;
}

bool k4_clear(const RayWindow& w, int i, int ki, int j, int kj) {
  const auto& ri = w.ray(i);
  const auto& rj = w.ray(j);
  for (int a : {ki, 2 * ki + 1})
    for (int b : {kj - 1, 2 * kj})
      if (w.graph().has_edge(ri[a], rj[b])) return false;
  return true;
}

}  // namespace

std::vector<std::optional<int>> select_k(const RayWindow& w, int trusted) {
  std::vector<std::optional<int>> out(w.ray_count());
  std::vector<std::pair<int, int>> chosen;
  for (int i = 0; i < w.ray_count(); ++i) {
    if (w.family().rays[i].kind != RayKind::R0) continue;
    const auto& r = w.ray(i);
    auto trusted_pos = [&](int p) { return p < static_cast<int>(r.size()) && w.depth_of(r[p]) <= trusted; };
    for (int k = 4;; k += 2) {
      if (!trusted_pos(2 * k + 1)) throw WindowTooShort("k(" + std::to_string(i + 2) + ") beyond the window");
      bool ok = true;
      for (int p = k / 2; ok && trusted_pos(p); ++p)
        for (Vertex x : w.graph().neighbours(r[p])) ok = ok && w.in_f(x);
      for (const auto& [j, kj] : chosen) ok = ok && kj != k && k4_clear(w, i, k, j, kj) && k4_clear(w, j, kj, i, k);
      if (ok) {
        out[i] = k;
        chosen.emplace_back(i, k);
        break;
      }
    }
  }
  return out;
}

std::vector<std::optional<Favourite>> select_favourites(const RayWindow& w, int n, int trusted) {
  std::vector<std::optional<Favourite>> out(w.ray_count());
  std::vector<std::vector<int>> taken;
  int max_m = 1;
  auto meets = [](const std::vector<int>& a, const std::vector<int>& b) {
    return std::any_of(a.begin(), a.end(), [&](int x) { return std::binary_search(b.begin(), b.end(), x); });
  };
  for (int l = 0; l < w.ray_count(); ++l) {
    if (w.family().rays[l].kind != RayKind::RInf) continue;
    const auto& r = w.ray(l);
    std::vector<int> vp;
    for (int p = 0; p < static_cast<int>(r.size()) && w.depth_of(r[p]) <= trusted; ++p)
      if (!w.attached(r[p]).empty()) vp.push_back(p);
    const auto b0 = w.attached(r[0]);
    int last_bad = -1;
    for (int j = 0; j < static_cast<int>(vp.size()); ++j) {
      const auto bj = w.attached(r[vp[j]]);
      bool bad = meets(bj, b0);
      for (const auto& t : taken) bad = bad || meets(bj, t);
      if (bad) last_bad = j;
    }
    const int jp = std::max(max_m + 1, last_bad + 1);
    if (jp + 4 >= static_cast<int>(vp.size())) throw WindowTooShort("favourite of ray " + std::to_string(l + 2) + " beyond the window");
    const Vertex v = r[vp[jp]];
    const bool direct = static_cast<int>(w.attached(v).size()) <= n - 3 || has_supported_edge(w, v);
    const int m = direct ? jp : jp + 1;
    out[l] = Favourite{m, vp[m]};
    max_m = std::max(max_m, m);
    taken.push_back(w.attached(r[vp[m]]));
  }
  return out;
}

const std::vector<Colour>& PeriodicColouring::copy_slots(int arm, int copy) const {
  const auto& a = arms[arm];
  if (copy < a.preperiod) return a.copies[copy];
  return a.copies[a.preperiod + (copy - a.preperiod) % a.period];
}

EdgeColouring expand(const PeriodicGraphDescription& d, const PeriodicColouring& c, const Truncation& t) {
  EdgeColouring out(c.palette);
  std::size_t slot = 0;
  for (const auto& e : d.prefix.edges()) out.set(e, c.prefix.at(slot++));
  for (int a = 0; a < static_cast<int>(d.arms.size()); ++a)
    for (const auto& [p, u] : d.arms[a].splice_prefix) out.set(p, t.id({a, 0, u}), c.prefix.at(slot++));
  for (int a = 0; a < static_cast<int>(d.arms.size()); ++a) {
    const auto& arm = d.arms[a];
    for (int copy = 0; copy < t.depth; ++copy) {
      const auto& slots = c.copy_slots(a, copy);
      std::size_t s = 0;
      for (const auto& e : arm.unit.edges()) out.set(t.id({a, copy, e.u}), t.id({a, copy, e.v}), slots.at(s++));
      for (const auto& [x, y] : arm.splice_unit) {
        const Colour col = slots.at(s++);
        if (copy + 1 < t.depth) out.set(t.id({a, copy, x}), t.id({a, copy + 1, y}), col);
      }
    }
  }
  return out;
}

namespace {

// Deterministic c(B, w_B, 0) and c(B, w_B, 1), shared across rooted-isomorphic components.
class RootedCache {
 public:
  RootedCache(int n, const RootedOptions& opts) : n_(n), opts_(opts) {}

  // Colourings of (sub, root) in sub's ids; nullopt for an exceptional shape.
  std::optional<std::pair<EdgeColouring, EdgeColouring>> get(const Graph& sub, Vertex root) {
    for (const auto& e : entries_) {
      if (e.graph.order() != sub.order() || e.graph.size() != sub.size()) continue;
      const auto phi = find_isomorphism(labels(e.graph, e.root), labels(sub, root));
      if (!phi) continue;
      if (!e.pair) return std::nullopt;
      return std::make_pair(move(e.pair->first, *phi), move(e.pair->second, *phi));
    }
    Entry fresh{sub, root, std::nullopt};
    const auto out = theorem3_colourings(sub, root, n_, opts_);
    if (!out.exception) fresh.pair = std::make_pair(out.colourings[0], out.colourings[1]);
    entries_.push_back(fresh);
    return fresh.pair;
  }

 private:
  struct Entry {
    Graph graph;
    Vertex root;
    std::optional<std::pair<EdgeColouring, EdgeColouring>> pair;
  };

  static LabelledGraph labels(const Graph& g, Vertex r) {
    LabelledGraph lg(g);
    lg.vertex_colour.assign(g.order(), 0);
    lg.vertex_colour[r] = 1;
    return lg;
  }

  EdgeColouring move(const EdgeColouring& c, const Permutation& phi) const {
    EdgeColouring out(n_ - 1);
    for (const auto& [e, col] : c.assignment()) out.set(phi.apply(e), col);
    return out;
  }

  int n_;
  RootedOptions opts_;
  std::vector<Entry> entries_;
};

class Colourer {
 public:
  Colourer(const RayWindow& w, int n, int trusted, const std::vector<std::optional<int>>& k,
           const std::vector<std::optional<Favourite>>& fav, RootedCache& cache)
      : w_(w), g_(w.graph()), n_(n), trusted_(trusted), k_(k), col_(n - 1), cache_(cache) {
    favourite_of_.assign(g_.order(), -1);
    for (int i = 0; i < w.ray_count(); ++i)
      if (fav[i]) favourite_of_[w.ray(i)[fav[i]->position]] = i;
    central_.assign(w.components().size(), -2);
  }

  void run(Construction& out) {
    colour_f_edges();
    for (int i = 0; i < w_.ray_count(); ++i)
      for (Vertex v : w_.ray(i)) colour_at(v);
    colour_components(out);
    out.colouring = col_;
    out.anomalies = anomalies_;
  }

 private:
  void colour_f_edges() {
    for (const auto& e : g_.edges()) {
      if (!w_.in_f(e.u) || !w_.in_f(e.v)) continue;
      const int ru = w_.ray_of(e.u), rv = w_.ray_of(e.v);
      if (ru != rv) {
        col_.set(e, kRed);
        continue;
      }
      const int p = std::min(w_.position(e.u), w_.position(e.v));
      if (std::abs(w_.position(e.u) - w_.position(e.v)) != 1) note("chord inside ray " + std::to_string(ru + 2));
      if (const auto k = k_[ru]) col_.set(e, p == *k - 1 || p == 2 * *k ? kRed : kBlue);
      else col_.set(e, kBlue);
    }
  }

  // Vertex of component b that chosen edges must avoid, or -1.
  Vertex central(int b) {
    if (central_[b] != -2) return central_[b];
    central_[b] = -1;
    const auto& comp = w_.components()[b];
    if (comp.size() >= 3) {
      const auto sub = induced_subgraph(g_, comp);
      const auto kind = classify_special(sub.graph);
      const bool star = kind.tag == SpecialTag::Star && kind.star_leaves == n_ - 1;
      const bool hourglass = n_ == 3 && kind.tag == SpecialTag::Hourglass;
      if (star || hourglass) central_[b] = sub.to_old[*kind.centre];
    }
    return central_[b];
  }

  static int rank(EdgeSupport s) { return s == EdgeSupport::Supported ? 0 : s == EdgeSupport::Supporting ? 1 : 2; }

  bool touches_other_favourite(int b, Vertex v) const {
    for (Vertex x : w_.components()[b])
      for (Vertex u : g_.neighbours(x))
        if (u != v && favourite_of_[u] >= 0) return true;
    return false;
  }

  bool has_non_red_f_edge(int b) const {
    for (Vertex x : w_.components()[b])
      for (Vertex u : g_.neighbours(x))
        if (w_.in_f(u)) {
          const auto c = col_.get(x, u);
          if (c && *c != kRed) return true;
        }
    return false;
  }

  struct Chosen {
    int comp;
    Vertex w;
    EdgeSupport support;
  };

  void colour_at(Vertex v) {
    const auto bv = w_.attached(v);
    std::vector<int> classes;
    for (int b : bv)
      if (std::find(classes.begin(), classes.end(), w_.orbit_class(b)) == classes.end()) classes.push_back(w_.orbit_class(b));
    const int i = w_.ray_of(v);
    const bool endvertex = w_.position(v) == 0;
    const bool is_favourite = favourite_of_[v] == i;
    const bool in_trust = w_.depth_of(v) <= trusted_;

    for (int cls : classes) {
      std::vector<int> orbit;
      for (int b : bv)
        if (w_.orbit_class(b) == cls) orbit.push_back(b);
      std::vector<Chosen> chosen;
      for (int b : orbit) {
        std::optional<Chosen> best;
        const Vertex avoid = central(b);
        for (Vertex x : w_.components()[b]) {
          if (!g_.has_edge(v, x) || x == avoid) continue;
          const Chosen c{b, x, edge_support(w_, v, x)};
          if (!best || std::pair(rank(c.support), c.w) < std::pair(rank(best->support), best->w)) best = c;
        }
        if (!best) {
          if (in_trust) note("only the central vertex of component " + std::to_string(b) + " meets vertex " + std::to_string(v));
          best = Chosen{b, avoid, edge_support(w_, v, avoid)};
        }
        chosen.push_back(*best);
      }
      std::sort(chosen.begin(), chosen.end(), [](const Chosen& a, const Chosen& b) {
        return std::pair(rank(a.support), a.w) < std::pair(rank(b.support), b.w);
      });

      const int s = static_cast<int>(orbit.size());
      const bool k1 = w_.components()[orbit.front()].size() == 1;
      std::vector<Colour> intent(chosen.size(), kRed);
      auto fill_rest = [&](std::size_t from, Colour first) {
        for (std::size_t q = from; q < chosen.size(); ++q) intent[q] = first++;
      };
      if (s <= n_ - 3) {
        intent[0] = kYellow;
        fill_rest(1, 4);
      } else if (s == n_ - 2) {
        if (endvertex && (k1 || n_ == 3)) {
          intent[0] = kBlue;
          fill_rest(1, 2);
        } else if (endvertex) {
          intent[0] = intent[1] = kBlue;
          fill_rest(2, 3);
          sibling_.insert(chosen[1].comp);
        } else if (chosen[0].support == EdgeSupport::Supported) {
          intent[0] = kBlue;
          fill_rest(1, 3);
        } else if (chosen[0].support == EdgeSupport::Supporting) {
          intent[0] = kRed;
          fill_rest(1, 3);
        } else if (in_trust) {
          note("orbit of size n-2 at vertex " + std::to_string(v) + " without supported or supporting edge");
        }
      } else if (in_trust) {
        note("orbit of size " + std::to_string(s) + " at vertex " + std::to_string(v));
      }

      for (std::size_t q = 0; q < chosen.size(); ++q) {
        Colour c = intent[q];
        const int b = chosen[q].comp;
        const bool r3 = w_.components()[b].size() == 1 && !is_favourite && !endvertex;
        if (c != kRed && (touches_other_favourite(b, v) || has_non_red_f_edge(b))) c = kRed;
        if (c == kBlue && r3) c = kRed;
        if (c == kYellow && r3 && s <= n_ - 3) c = kRed;
        col_.set(v, chosen[q].w, c);
      }
      for (int b : orbit)
        for (Vertex x : w_.components()[b])
          if (g_.has_edge(v, x) && !col_.contains(Edge(v, x))) col_.set(v, x, kRed);
    }
  }

  void colour_components(Construction& out) {
    const auto& comps = w_.components();
    out.components.clear();
    out.rooted.assign(comps.size(), {});
    for (int b = 0; b < static_cast<int>(comps.size()); ++b) {
      ComponentRecord rec;
      rec.vertices = comps[b];
      std::vector<Vertex> roots;
      for (Vertex x : comps[b]) {
        for (Vertex u : g_.neighbours(x)) {
          if (w_.in_f(u) && favourite_of_[u] >= 0) rec.favourite = true;
          if (w_.in_f(u) && col_.get(x, u) != kRed) {
            if (roots.empty() || roots.back() != x) roots.push_back(x);
          }
        }
      }
      const bool trusted_comp = std::all_of(comps[b].begin(), comps[b].end(), [&](Vertex x) { return w_.depth_of(x) <= trusted_; });
      if (comps[b].size() == 1) {
        rec.root = comps[b][0];
        out.components.push_back(std::move(rec));
        continue;
      }
      if (roots.size() != 1 && trusted_comp)
        note("component " + std::to_string(b) + " has " + std::to_string(roots.size()) + " vertices with non-red edges to F");
      rec.root = roots.empty() ? comps[b][0] : roots[0];
      rec.sibling = sibling_.contains(b);
      rec.variant = rec.favourite || rec.sibling ? 1 : 0;

      const auto sub = induced_subgraph(g_, comps[b]);
      const auto pair = cache_.get(sub.graph, sub.to_new[rec.root]);
      if (!pair) {
        if (trusted_comp) note("component " + std::to_string(b) + " is exceptional at its root");
        for (const auto& e : sub.graph.edges()) col_.set(sub.to_old[e.u], sub.to_old[e.v], kBlue);
        out.components.push_back(std::move(rec));
        continue;
      }
      auto lift = [&](const EdgeColouring& c) {
        EdgeColouring lifted(n_ - 1);
        for (const auto& [e, colour] : c.assignment()) lifted.set(sub.to_old[e.u], sub.to_old[e.v], colour);
        return lifted;
      };
      out.rooted[b] = {lift(pair->first), lift(pair->second)};
      const auto& use = rec.variant == 1 ? out.rooted[b].second : out.rooted[b].first;
      for (const auto& [e, colour] : use.assignment()) col_.set(e, colour);
      out.components.push_back(std::move(rec));
    }
  }

  void note(const std::string& s) { anomalies_.push_back(s); }

  const RayWindow& w_;
  const Graph& g_;
  int n_;
  int trusted_;
  const std::vector<std::optional<int>>& k_;
  EdgeColouring col_;
  RootedCache& cache_;
  std::vector<int> favourite_of_;
  std::vector<Vertex> central_;
  std::set<int> sibling_;
  std::vector<std::string> anomalies_;
};

std::vector<Colour> copy_colours(const ArmDescription& arm, const Truncation& t, const EdgeColouring& c, int a, int copy) {
  std::vector<Colour> out;
  for (const auto& e : arm.unit.edges()) out.push_back(c.get(t.id({a, copy, e.u}), t.id({a, copy, e.v})).value_or(kNoColour));
  for (const auto& [x, y] : arm.splice_unit) {
    const Vertex p = t.id({a, copy, x}), q = t.id({a, copy + 1, y});
    out.push_back(q < 0 ? kNoColour : c.get(p, q).value_or(kNoColour));
  }
  return out;
}

PeriodicColouring extract_periodic(const PeriodicGraphDescription& d, const Truncation& t, const EdgeColouring& c,
                                   int trusted, int palette) {
  PeriodicColouring pc;
  pc.palette = palette;
  for (const auto& e : d.prefix.edges()) pc.prefix.push_back(c.get(e).value_or(kNoColour));
  for (int a = 0; a < static_cast<int>(d.arms.size()); ++a)
    for (const auto& [p, u] : d.arms[a].splice_prefix) pc.prefix.push_back(c.get(p, t.id({a, 0, u})).value_or(kNoColour));

  // Copy c is reliable when it and copy c+1 lie at depth ≤ trusted.
  const int last = trusted - 2;
  for (int a = 0; a < static_cast<int>(d.arms.size()); ++a) {
    std::vector<std::vector<Colour>> slots;
    for (int copy = 0; copy <= last; ++copy) slots.push_back(copy_colours(d.arms[a], t, c, a, copy));
    int best_h = -1, best_q = 0;
    for (int q = 1; q <= 12 && q <= last; ++q) {
      int h = 0;
      for (int copy = last - q; copy >= 0; --copy)
        if (slots[copy] != slots[copy + q]) {
          h = copy + 1;
          break;
        }
      if (last - h + 1 < 3 * q) continue;
      if (best_h < 0 || h + q < best_h + best_q) {
        best_h = h;
        best_q = q;
      }
    }
    if (best_h < 0) throw WindowTooShort("no periodic colour pattern in arm " + std::to_string(a));
    PeriodicColouring::Arm arm;
    arm.preperiod = best_h;
    arm.period = best_q;
    arm.copies.assign(slots.begin(), slots.begin() + best_h + best_q);
    pc.arms.push_back(std::move(arm));
  }
  return pc;
}

int max_period(const RayFamily& f) {
  int p = 1;
  for (const auto& r : f.rays) p = std::max(p, r.period);
  return p;
}

}  // namespace

Construction construct_colouring(const PeriodicGraphDescription& d, int n, const ConstructionOptions& opts) {
  if (n < 3) throw PreconditionError("n must be at least 3");
  validate(d);
  if (const auto star = find_star_in_description(d, n))
    throw PreconditionError("description contains an induced K_{1," + std::to_string(n) + "} (depth-3 truncation ids) " +
                            star->to_string());
  const RayFamily family = ray_family(d);
  RootedCache cache(n, opts.rooted);
  for (int depth = opts.min_window; depth <= opts.max_window; depth *= 2) {
    Construction c;
    c.n = n;
    c.window = RayWindow(d, family, depth);
    const int margin = (c.window.component_span() + 2) * (c.window.ray_count() + 1) + 2 * max_period(family) + 2;
    c.trusted = depth - margin;
    if (c.trusted < 4) continue;
    try {
      c.k = select_k(c.window, c.trusted);
      c.favourites = select_favourites(c.window, n, c.trusted);
      Colourer(c.window, n, c.trusted, c.k, c.favourites, cache).run(c);
      c.periodic = extract_periodic(d, c.window.truncation(), c.colouring, c.trusted, n - 1);
      return c;
    } catch (const WindowTooShort&) {
    }
  }
  throw PreconditionError("construction did not settle within a window of depth " + std::to_string(opts.max_window));
}

namespace {

class LawBook {
 public:
  void fail(const std::string& law, const std::string& why) {
    auto& e = entry(law);
    if (e.pass) e.detail = why;
    e.pass = false;
  }
  void touch(const std::string& law) { entry(law); }
  std::vector<LawCheck> take() { return std::move(laws_); }

 private:
  LawCheck& entry(const std::string& law) {
    for (auto& l : laws_)
      if (l.name == law) return l;
    laws_.push_back({law, true, ""});
    return laws_.back();
  }
  std::vector<LawCheck> laws_;
};

}  // namespace

std::vector<LawCheck> check_laws(const PeriodicGraphDescription& d, const Construction& c) {
  LawBook book;
  const RayWindow& w = c.window;
  const Graph& g = w.graph();
  const int n = c.n;
  auto trusted = [&](Vertex v) { return w.depth_of(v) <= c.trusted; };
  auto colour = [&](Vertex a, Vertex b) { return c.colouring.get(a, b).value_or(kNoColour); };
  auto vstr = [](Vertex v) { return std::to_string(v); };
  for (const char* law : {"a", "b", "c", "d", "e", "M1", "M2", "M3", "K1", "K2", "K3", "K4", "orbit-size", "B-bound",
                          "P-lengths", "palette", "periodic", "anomalies"})
    book.touch(law);

  for (const auto& e : g.edges()) {
    const auto col = c.colouring.get(e);
    if (!col || *col < 1 || *col > n - 1) book.fail("palette", "edge " + vstr(e.u) + "-" + vstr(e.v));
    if (!trusted(e.u) || !trusted(e.v) || !w.in_f(e.u) || !w.in_f(e.v)) continue;
    if (w.ray_of(e.u) != w.ray_of(e.v)) {
      if (col != kRed) book.fail("a", "edge " + vstr(e.u) + "-" + vstr(e.v));
      continue;
    }
    const int i = w.ray_of(e.u);
    const int p = std::min(w.position(e.u), w.position(e.v));
    if (w.family().rays[i].kind == RayKind::RInf) {
      if (col != kBlue) book.fail("b", "ray " + std::to_string(i + 2) + " position " + std::to_string(p));
    } else if (c.k[i]) {
      const bool red = p == *c.k[i] - 1 || p == 2 * *c.k[i];
      if (col != (red ? kRed : kBlue)) book.fail("c", "ray " + std::to_string(i + 2) + " position " + std::to_string(p));
    }
  }

  // P(i) and P'(i) as maximal blue runs from the endvertex.
  for (int i = 0; i < w.ray_count(); ++i) {
    if (!c.k[i]) continue;
    const auto& r = w.ray(i);
    std::vector<int> runs(1, 0);
    for (int p = 0; p + 1 < static_cast<int>(r.size()) && trusted(r[p + 1]) && runs.size() <= 2; ++p) {
      if (colour(r[p], r[p + 1]) == kBlue) ++runs.back();
      else runs.push_back(0);
    }
    if (runs.size() < 3 || runs[0] + 1 != runs[1] || runs[1] != *c.k[i])
      book.fail("P-lengths", "ray " + std::to_string(i + 2));
  }

  // (d) and (e) on components inside the trusted part.
  for (int b = 0; b < static_cast<int>(w.components().size()); ++b) {
    const auto& comp = w.components()[b];
    if (!std::all_of(comp.begin(), comp.end(), trusted)) continue;
    const auto& rec = c.components[b];
    if (comp.size() == 1) continue;
    int non_red = 0;
    for (Vertex x : comp)
      for (Vertex u : g.neighbours(x))
        if (w.in_f(u) && colour(x, u) != kRed) ++non_red;
    if (non_red != 1) book.fail("d", "component at " + vstr(comp[0]) + " has " + std::to_string(non_red) + " non-red F-edges");

    const bool want_one = rec.favourite || rec.sibling;
    if (rec.variant != (want_one ? 1 : 0)) book.fail("e", "component at " + vstr(comp[0]) + " uses the wrong variant");
    const auto& [c0, c1] = c.rooted[b];
    const auto& expected = rec.variant == 1 ? c1 : c0;
    for (const auto& [e, col] : expected.assignment())
      if (colour(e.u, e.v) != col) book.fail("e", "component at " + vstr(comp[0]) + " differs from its rooted colouring");
    if (c0.size() != 0 || c1.size() != 0) {
      const auto sub = induced_subgraph(g, comp);
      auto local = [&](const EdgeColouring& x) {
        EdgeColouring y(n - 1);
        for (const auto& [e, col] : x.assignment()) y.set(sub.to_new[e.u], sub.to_new[e.v], col);
        return y;
      };
      const std::vector<Vertex> root{sub.to_new[rec.root]};
      const auto l0 = local(c0), l1 = local(c1);
      if (!is_distinguishing(sub.graph, l0, root) || !is_distinguishing(sub.graph, l1, root) ||
          are_colourings_isomorphic(sub.graph, root, l0, l1))
        book.fail("e", "rooted colourings of component at " + vstr(comp[0]) + " are not two distinct classes");
    }
  }

  // Orbit sizes along the rays.
  for (int i = 0; i < w.ray_count(); ++i) {
    for (Vertex v : w.ray(i)) {
      if (!trusted(v)) continue;
      const auto bv = w.attached(v);
      if (static_cast<int>(bv.size()) > n - 1) book.fail("B-bound", "vertex " + vstr(v));
      for (int b : bv) {
        const int s = w.orbit_size(b);
        if (s > n - 2) book.fail("orbit-size", "orbit of size " + std::to_string(s) + " at vertex " + vstr(v));
        if (s != n - 2 || w.position(v) == 0) continue;
        bool found = false;
        for (int b2 : bv) {
          if (w.orbit_class(b2) != w.orbit_class(b)) continue;
          for (Vertex x : w.components()[b2])
            if (g.has_edge(v, x) && edge_support(w, v, x) != EdgeSupport::Plain) found = true;
        }
        if (!found) book.fail("orbit-size", "vertex " + vstr(v) + " lacks a supported or supporting edge");
      }
    }
  }

  // (M1)–(M3).
  std::vector<std::pair<int, Vertex>> favs;
  for (int i = 0; i < w.ray_count(); ++i) {
    if (w.family().rays[i].kind == RayKind::RInf && !c.favourites[i]) book.fail("M1", "ray " + std::to_string(i + 2) + " has no favourite");
    if (c.favourites[i]) favs.emplace_back(i, w.ray(i)[c.favourites[i]->position]);
  }
  for (std::size_t a = 0; a < favs.size(); ++a) {
    const auto ba = w.attached(favs[a].second);
    for (std::size_t b = a + 1; b < favs.size(); ++b) {
      const auto bb = w.attached(favs[b].second);
      for (int x : ba)
        if (std::binary_search(bb.begin(), bb.end(), x)) book.fail("M1", "favourites " + vstr(favs[a].second) + " and " + vstr(favs[b].second));
    }
    const auto b0 = w.attached(w.ray(favs[a].first)[0]);
    for (int x : ba)
      if (std::binary_search(b0.begin(), b0.end(), x)) book.fail("M2", "favourite " + vstr(favs[a].second));
    bool supported = false;
    for (Vertex x : g.neighbours(favs[a].second))
      if (!w.in_f(x) && edge_support(w, favs[a].second, x) == EdgeSupport::Supported) supported = true;
    for (int x : ba)
      if (w.orbit_size(x) > n - 3 && !supported) book.fail("M3", "favourite " + vstr(favs[a].second));
  }

  // (K1)–(K4).
  for (int i = 0; i < w.ray_count(); ++i) {
    if (w.family().rays[i].kind == RayKind::R0 && !c.k[i]) book.fail("K1", "ray " + std::to_string(i + 2) + " has no k");
    if (!c.k[i]) continue;
    const int k = *c.k[i];
    if (k <= 2 || k % 2 != 0) book.fail("K1", "k(" + std::to_string(i + 2) + ") = " + std::to_string(k));
    const auto& r = w.ray(i);
    for (int p = k / 2; p < static_cast<int>(r.size()) && trusted(r[p]); ++p)
      for (Vertex x : g.neighbours(r[p]))
        if (!w.in_f(x)) book.fail("K2", "ray " + std::to_string(i + 2) + " vertex " + vstr(r[p]));
    for (int j = 0; j < w.ray_count(); ++j) {
      if (j == i || !c.k[j]) continue;
      if (*c.k[j] == k) book.fail("K3", "rays " + std::to_string(i + 2) + " and " + std::to_string(j + 2));
      if (!k4_clear(w, i, k, j, *c.k[j])) book.fail("K4", "rays " + std::to_string(i + 2) + " and " + std::to_string(j + 2));
    }
  }

  // Periodic form against the window.
  const Truncation t = truncate(d, c.trusted);
  const auto expanded = expand(d, c.periodic, t);
  for (const auto& [e, col] : expanded.assignment()) {
    const Vertex a = w.truncation().id(t.origin[e.u]), b = w.truncation().id(t.origin[e.v]);
    if (colour(a, b) != col) book.fail("periodic", "edge " + vstr(a) + "-" + vstr(b));
  }

  if (!c.anomalies.empty()) book.fail("anomalies", c.anomalies.front());
  return book.take();
}

FixedCoreReport verify_fixed_core(const PeriodicGraphDescription& d, const PeriodicColouring& c, int depth, int margin) {
  if (margin < 1 || depth <= margin) throw PreconditionError("verify_fixed_core needs depth > margin >= 1");
  const Truncation t = truncate(d, depth);
  const auto colouring = expand(d, c, t);
  SymmetryQuery q;
  q.stabilized_sets.push_back(t.boundary);
  const auto group = colour_preserving_group(t.graph, colouring, q);

  FixedCoreReport rep;
  rep.depth = depth;
  rep.margin = margin;
  rep.group_order = group.order();
  const auto orbits = group.orbits();
  std::vector<int> orbit_size(t.graph.order(), 0);
  for (const auto& o : orbits)
    for (Vertex v : o) orbit_size[v] = static_cast<int>(o.size());
  for (Vertex v = 0; v < t.graph.order(); ++v) {
    if (orbit_size[v] == 1) rep.core.push_back(v);
    else if (t.origin[v].depth() <= depth - margin) rep.uncovered.push_back(v);
  }
  rep.pass = rep.uncovered.empty();
  if (!rep.pass) {
    for (const auto& gen : group.generators())
      if (std::any_of(rep.uncovered.begin(), rep.uncovered.end(), [&](Vertex v) { return gen(v) != v; })) {
        rep.witness = gen;
        break;
      }
  }
  return rep;
}

}  // namespace stardist
