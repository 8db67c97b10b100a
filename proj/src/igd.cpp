#include "stardist/igd.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace stardist {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw ParseError("igd line " + std::to_string(line) + ": " + what);
}

int parse_int(std::string_view s, int line) {
  int v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || v < 0) fail(line, "expected a non-negative integer, got '" + std::string(s) + "'");
  return v;
}

std::vector<VertexPair> parse_pairs(std::string_view s, int line) {
  std::vector<VertexPair> out;
  std::string text(s);
  std::replace(text.begin(), text.end(), ',', ' ');
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    const auto dash = tok.find('-');
    if (dash == std::string::npos) fail(line, "expected a pair a-b, got '" + tok + "'");
    const std::string_view t(tok);
    out.emplace_back(parse_int(t.substr(0, dash), line), parse_int(t.substr(dash + 1), line));
  }
  return out;
}

struct RawSection {
  std::string name;  // empty for the prefix
  bool is_prefix = false;
  int line = 0;
  std::optional<int> vertices;
  std::vector<VertexPair> edges, splice_prefix, splice_unit;
};

Graph build_graph(int order, const std::vector<VertexPair>& pairs, int line, const std::string& where) {
  std::vector<Edge> edges;
  for (const auto& [a, b] : pairs) {
    if (a >= order || b >= order) fail(line, where + " edge " + std::to_string(a) + "-" + std::to_string(b) + " out of range");
    if (a == b) fail(line, where + " has a loop at " + std::to_string(a));
    edges.emplace_back(a, b);
  }
  try {
    return Graph(order, edges);
  } catch (const std::invalid_argument& e) {
    fail(line, where + ": " + e.what());
  }
}

}  // namespace

Vertex Truncation::id(const VertexOrigin& o) const {
  if (o.arm < 0) return o.unit >= 0 && o.unit < prefix_order_ ? o.unit : -1;
  if (o.arm >= static_cast<int>(arm_offset_.size()) || o.copy < 0 || o.copy >= depth) return -1;
  if (o.unit < 0 || o.unit >= unit_order_[o.arm]) return -1;
  return arm_offset_[o.arm] + o.copy * unit_order_[o.arm] + o.unit;
}

PeriodicGraphDescription parse_igd(std::string_view text) {
  std::vector<RawSection> sections;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view s(raw);
    if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') fail(line, "unterminated section header");
      const auto inner = trim(s.substr(1, s.size() - 2));
      RawSection sec;
      sec.line = line;
      if (inner == "prefix") {
        sec.is_prefix = true;
        if (std::any_of(sections.begin(), sections.end(), [](const RawSection& r) { return r.is_prefix; }))
          fail(line, "second [prefix] section");
      } else if (inner.substr(0, 3) == "arm" && (inner.size() == 3 || inner[3] == ' ' || inner[3] == '\t')) {
        sec.name = std::string(trim(inner.substr(3)));
        if (sec.name.empty()) fail(line, "arm needs a name");
        for (const auto& r : sections)
          if (!r.is_prefix && r.name == sec.name) fail(line, "duplicate arm '" + sec.name + "'");
      } else {
        fail(line, "unknown section '" + std::string(inner) + "'");
      }
      sections.push_back(std::move(sec));
      continue;
    }
    const auto colon = s.find(':');
    if (colon == std::string_view::npos) fail(line, "expected key: value");
    if (sections.empty()) fail(line, "key outside of a section");
    auto& sec = sections.back();
    const auto key = trim(s.substr(0, colon));
    const auto value = trim(s.substr(colon + 1));
    if (key == "vertices") {
      if (sec.vertices) fail(line, "vertices given twice");
      sec.vertices = parse_int(value, line);
    } else if (sec.is_prefix && key == "edges") {
      auto p = parse_pairs(value, line);
      sec.edges.insert(sec.edges.end(), p.begin(), p.end());
    } else if (!sec.is_prefix && key == "unit") {
      auto p = parse_pairs(value, line);
      sec.edges.insert(sec.edges.end(), p.begin(), p.end());
    } else if (!sec.is_prefix && key == "splice_prefix") {
      auto p = parse_pairs(value, line);
      sec.splice_prefix.insert(sec.splice_prefix.end(), p.begin(), p.end());
    } else if (!sec.is_prefix && key == "splice_unit") {
      auto p = parse_pairs(value, line);
      sec.splice_unit.insert(sec.splice_unit.end(), p.begin(), p.end());
    } else {
      fail(line, "unknown key '" + std::string(key) + "'");
    }
  }

  PeriodicGraphDescription d;
  for (const auto& sec : sections) {
    if (!sec.vertices) fail(sec.line, "section is missing 'vertices:'");
    if (sec.is_prefix) {
      d.prefix = build_graph(*sec.vertices, sec.edges, sec.line, "prefix");
      continue;
    }
    if (*sec.vertices < 1) fail(sec.line, "arm '" + sec.name + "' needs at least one vertex");
    ArmDescription arm;
    arm.name = sec.name;
    arm.unit = build_graph(*sec.vertices, sec.edges, sec.line, "arm '" + sec.name + "'");
    arm.splice_prefix = sec.splice_prefix;
    arm.splice_unit = sec.splice_unit;
    d.arms.push_back(std::move(arm));
  }
  validate(d);
  return d;
}

PeriodicGraphDescription load_igd(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_igd(ss.str());
}

std::string write_igd(const PeriodicGraphDescription& d) {
  auto pairs = [](const std::vector<VertexPair>& ps) {
    std::string s;
    for (const auto& [a, b] : ps) s += (s.empty() ? "" : " ") + std::to_string(a) + "-" + std::to_string(b);
    return s;
  };
  auto edges = [&](const Graph& g) {
    std::vector<VertexPair> ps;
    for (const auto& e : g.edges()) ps.emplace_back(e.u, e.v);
    return pairs(ps);
  };
  std::ostringstream os;
  os << "[prefix]\nvertices: " << d.prefix.order() << "\nedges: " << edges(d.prefix) << "\n";
  for (const auto& arm : d.arms) {
    os << "\n[arm " << arm.name << "]\nvertices: " << arm.unit.order() << "\nunit: " << edges(arm.unit)
       << "\nsplice_prefix: " << pairs(arm.splice_prefix) << "\nsplice_unit: " << pairs(arm.splice_unit) << "\n";
  }
  return os.str();
}

void validate(const PeriodicGraphDescription& d) {
  if (d.arms.empty()) throw PreconditionError("description has no arm");
  for (const auto& arm : d.arms) {
    const std::string where = "arm '" + arm.name + "'";
    if (arm.unit.order() < 1) throw PreconditionError(where + " has an empty unit");
    if (arm.splice_unit.empty()) throw PreconditionError(where + " has no splice_unit pair, so it is finite");
    for (const auto& [p, u] : arm.splice_prefix)
      if (p >= d.prefix.order() || u >= arm.unit.order())
        throw PreconditionError(where + ": splice_prefix pair out of range");
    for (const auto& [a, b] : arm.splice_unit)
      if (a >= arm.unit.order() || b >= arm.unit.order())
        throw PreconditionError(where + ": splice_unit pair out of range");
    if (std::set<VertexPair>(arm.splice_prefix.begin(), arm.splice_prefix.end()).size() != arm.splice_prefix.size() ||
        std::set<VertexPair>(arm.splice_unit.begin(), arm.splice_unit.end()).size() != arm.splice_unit.size())
      throw PreconditionError(where + " repeats a splice pair");
  }
  // Every vertex of copy k+1 reaches copy k inside copies k and k+1 iff it
  // does so for k = 0, so connectivity at depth 2 settles all depths.
  if (!is_connected(truncate(d, 2).graph)) throw PreconditionError("described graph is not connected");
}

Truncation truncate(const PeriodicGraphDescription& d, int depth) {
  if (depth < 1) throw PreconditionError("truncation depth must be at least 1");
  Truncation t;
  t.depth = depth;
  t.prefix_order_ = d.prefix.order();
  int next = t.prefix_order_;
  for (const auto& arm : d.arms) {
    t.arm_offset_.push_back(next);
    t.unit_order_.push_back(arm.unit.order());
    next += depth * arm.unit.order();
  }
  t.origin.resize(next);
  for (Vertex v = 0; v < t.prefix_order_; ++v) t.origin[v] = {-1, -1, v};

  std::vector<Edge> edges(d.prefix.edges().begin(), d.prefix.edges().end());
  for (int a = 0; a < static_cast<int>(d.arms.size()); ++a) {
    const auto& arm = d.arms[a];
    for (int c = 0; c < depth; ++c)
      for (Vertex u = 0; u < arm.unit.order(); ++u) t.origin[t.id({a, c, u})] = {a, c, u};
    for (const auto& [p, u] : arm.splice_prefix) edges.emplace_back(p, t.id({a, 0, u}));
    for (int c = 0; c < depth; ++c) {
      for (const auto& e : arm.unit.edges()) edges.emplace_back(t.id({a, c, e.u}), t.id({a, c, e.v}));
      if (c + 1 < depth)
        for (const auto& [x, y] : arm.splice_unit) edges.emplace_back(t.id({a, c, x}), t.id({a, c + 1, y}));
    }
    for (Vertex u = 0; u < arm.unit.order(); ++u) t.boundary.push_back(t.id({a, depth - 1, u}));
  }
  t.graph = Graph(next, edges);
  std::sort(t.boundary.begin(), t.boundary.end());
  return t;
}

std::optional<StarWitness> find_star_in_description(const PeriodicGraphDescription& d, int n) {
  const auto t = truncate(d, 3);
  std::vector<Vertex> centres;
  for (Vertex v = 0; v < t.graph.order(); ++v)
    if (t.origin[v].depth() <= 2) centres.push_back(v);
  return find_induced_star(t.graph, n, centres);
}

}  // namespace stardist
