#include "stardist/dist_oracle.hpp"

#include <algorithm>
#include <chrono>
#include <set>

namespace stardist {

namespace {

/// Non-identity elements of Aut(g, root) acting on edge indices.
struct EdgeAction {
  std::vector<std::vector<int>> perm;  // perm[el][i] = index of φ(e_i)
  std::vector<int> moved_max;          // largest moved edge index, -1 if none
  std::size_t group_order = 1;
};

EdgeAction edge_action(const Graph& g, std::span<const Vertex> root, const OracleBudget& budget) {
  const auto group = pointwise_stabilizer(g, root);
  const auto elements = group.elements(budget.max_group);
  EdgeAction act;
  act.group_order = elements.size();
  std::vector<std::pair<int, std::vector<int>>> items;
  for (const auto& p : elements) {
    if (p.is_identity()) continue;
    std::vector<int> ep(g.size());
    int moved = -1;
    for (int i = 0; i < g.size(); ++i) {
      const auto& e = g.edges()[i];
      ep[i] = g.edge_index(p(e.u), p(e.v));
      if (ep[i] != i) moved = i;
    }
    items.emplace_back(moved, std::move(ep));
  }
  std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [m, ep] : items) {
    act.moved_max.push_back(m);
    act.perm.push_back(std::move(ep));
  }
  return act;
}

class Enumerator {
 public:
  Enumerator(const Graph& g, const EdgeAction& act, int k, const OracleBudget& budget,
             const std::function<bool(const std::vector<Colour>&)>& visit)
      : m_(g.size()), k_(k), act_(act), budget_(budget), visit_(visit), col_(m_, 0), alive_(m_ + 1) {
    inverse_.resize(act.perm.size());
    for (std::size_t el = 0; el < act.perm.size(); ++el) {
      inverse_[el].resize(m_);
      for (int i = 0; i < m_; ++i) inverse_[el][act.perm[el][i]] = i;
    }
    start_ = std::chrono::steady_clock::now();
  }

  void run() {
    alive_[0].resize(act_.perm.size());
    for (std::size_t el = 0; el < act_.perm.size(); ++el) alive_[0][el] = static_cast<int>(el);
    if (!alive_[0].empty() && act_.moved_max[alive_[0].front()] < 0) return;
    descend(0);
  }

 private:
  // alive_[t]: elements not yet broken by the first t colours, by moved_max.
  bool descend(int t) {
    tick();
    if (t == m_) return !visit_(col_);
    for (Colour c = 1; c <= k_; ++c) {
      col_[t] = c;
      auto& next = alive_[t + 1];
      next.clear();
      for (int el : alive_[t]) {
        const int img = act_.perm[el][t];
        const int pre = inverse_[el][t];
        const bool broken = (img <= t && col_[img] != c) || (pre <= t && col_[pre] != c);
        if (!broken) next.push_back(el);
      }
      // An unbroken element that moves only coloured edges survives every completion.
      if (!next.empty() && act_.moved_max[next.front()] <= t) continue;
      if (descend(t + 1)) return true;
    }
    col_[t] = 0;
    return false;
  }

  void tick() {
    if (++nodes_ > budget_.max_nodes)
      throw BudgetExceeded("oracle search exceeded " + std::to_string(budget_.max_nodes) + " nodes");
    if (budget_.max_seconds > 0 && (nodes_ & 0xfff) == 0) {
      const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start_;
      if (dt.count() > budget_.max_seconds)
        throw BudgetExceeded("oracle search exceeded " + std::to_string(budget_.max_seconds) + " s");
    }
  }

  int m_;
  int k_;
  const EdgeAction& act_;
  const OracleBudget& budget_;
  const std::function<bool(const std::vector<Colour>&)>& visit_;
  std::vector<Colour> col_;
  std::vector<std::vector<int>> alive_;
  std::vector<std::vector<int>> inverse_;
  std::uint64_t nodes_ = 0;
  std::chrono::steady_clock::time_point start_;
};

void run_enumeration(const Graph& g, const EdgeAction& act, int k, const OracleBudget& budget,
                     const std::function<bool(const std::vector<Colour>&)>& visit) {
  if (k < 1) throw PreconditionError("palette size must be at least 1");
  Enumerator(g, act, k, budget, visit).run();
}

/// Least image of a colour vector under the group: a class invariant.
std::vector<Colour> canonical_vector(const EdgeAction& act, const std::vector<Colour>& col) {
  std::vector<Colour> best = col;
  std::vector<Colour> img(col.size());
  for (const auto& perm : act.perm) {
    for (std::size_t i = 0; i < col.size(); ++i) img[perm[i]] = col[i];
    if (img < best) best = img;
  }
  return best;
}

}  // namespace

void for_each_distinguishing(const Graph& g, std::span<const Vertex> root, int k,
                             const std::function<bool(const std::vector<Colour>&)>& visit,
                             const OracleBudget& budget) {
  const auto act = edge_action(g, root, budget);
  run_enumeration(g, act, k, budget, visit);
}

std::vector<EdgeColouring> enumerate_distinguishing(const Graph& g, int k, const OracleBudget& budget) {
  std::vector<EdgeColouring> out;
  for_each_distinguishing(
      g, {}, k,
      [&](const std::vector<Colour>& col) {
        out.push_back(EdgeColouring::from_vector(g, col, k));
        return true;
      },
      budget);
  return out;
}

std::optional<EdgeColouring> first_distinguishing(const Graph& g, std::span<const Vertex> root, int k,
                                                  const OracleBudget& budget) {
  std::optional<EdgeColouring> found;
  for_each_distinguishing(
      g, root, k,
      [&](const std::vector<Colour>& col) {
        found = EdgeColouring::from_vector(g, col, k);
        return false;
      },
      budget);
  return found;
}

std::vector<EdgeColouring> nonisomorphic_distinguishing(const Graph& g, std::span<const Vertex> root, int k,
                                                        std::size_t limit, const OracleBudget& budget) {
  std::vector<EdgeColouring> out;
  if (limit == 0) return out;
  const auto act = edge_action(g, root, budget);
  std::set<std::vector<Colour>> seen;
  run_enumeration(g, act, k, budget, [&](const std::vector<Colour>& col) {
    if (seen.insert(canonical_vector(act, col)).second) out.push_back(EdgeColouring::from_vector(g, col, k));
    return out.size() < limit;
  });
  return out;
}

std::size_t count_nonisomorphic_distinguishing(const Graph& g, std::span<const Vertex> root, int k,
                                               const OracleBudget& budget, std::optional<std::size_t> stop_at) {
  const auto act = edge_action(g, root, budget);
  std::set<std::vector<Colour>> seen;
  run_enumeration(g, act, k, budget, [&](const std::vector<Colour>& col) {
    seen.insert(canonical_vector(act, col));
    return !stop_at || seen.size() < *stop_at;
  });
  return seen.size();
}

DistResult distinguishing_index(const Graph& g, int max_k, const OracleBudget& budget) {
  if (!is_connected(g)) throw PreconditionError("distinguishing_index needs a connected graph");
  if (g.size() < 1) throw PreconditionError("distinguishing_index needs at least one edge");
  const auto act = edge_action(g, {}, budget);

  // An automorphism fixing every edge survives all colourings.
  if (!act.moved_max.empty() && act.moved_max.front() < 0) return {DistStatus::NoFinite, 0, std::nullopt};

  const int top = std::min(max_k, g.size());
  for (int k = 1; k <= top; ++k) {
    std::optional<EdgeColouring> found;
    run_enumeration(g, act, k, budget, [&](const std::vector<Colour>& col) {
      found = EdgeColouring::from_vector(g, col, k);
      return false;
    });
    if (found) return {DistStatus::Finite, k, std::move(found)};
  }
  return {DistStatus::AboveLimit, 0, std::nullopt};
}

}  // namespace stardist
