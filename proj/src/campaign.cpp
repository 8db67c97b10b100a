#include "stardist/campaign.hpp"

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "stardist/enumerate.hpp"
#include "stardist/infinite.hpp"
#include "stardist/rooted_colouring.hpp"
#include "stardist/star_free.hpp"

namespace stardist {

using Json = nlohmann::ordered_json;

namespace {

const std::vector<std::pair<Task, std::string>> kTaskNames{
    {Task::StarFree, "starfree"},  {Task::DIndex, "dindex"},
    {Task::Rooted, "rooted"},      {Task::Infinite, "infinite"},
    {Task::Theorem1Replay, "theorem1-replay"}, {Task::Theorem3Replay, "theorem3-replay"}};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ','))
    if (auto t = trim(item); !t.empty()) out.push_back(t);
  return out;
}

template <class T>
T number(const std::string& key, const std::string& value) {
  std::istringstream in(value);
  T x{};
  in >> x;
  if (!in || !(in >> std::ws).eof()) throw ParseError("config key '" + key + "': not a number: '" + value + "'");
  return x;
}

Json colouring_json(const Graph& g, const EdgeColouring& c) {
  Json edges = Json::array();
  for (const auto& e : g.edges()) edges.push_back({e.u, e.v, c.get(e).value_or(0)});
  return edges;
}

Json star_json(const StarWitness& s) { return {{"centre", s.centre}, {"leaves", s.leaves}}; }

std::vector<Vertex> root_representatives(const Graph& g) {
  const auto rep = automorphism_group(g).orbit_representatives();
  std::vector<Vertex> out;
  for (Vertex v = 0; v < g.order(); ++v)
    if (rep[v] == v) out.push_back(v);
  return out;
}

// Why a graph lies outside a theorem task, or nullopt when it applies.
std::optional<std::string> theorem_scope(const Graph& g, int n) {
  if (!is_connected(g)) return "disconnected";
  if (find_induced_star(g, n)) return "contains K_{1," + std::to_string(n) + "}";
  return std::nullopt;
}

void run_starfree(const CampaignConfig& cfg, const Graph& g, ReportRecord& r) {
  const auto star = find_induced_star(g, cfg.n);
  r.metrics["k1n_free"] = !star;
  r.verdict = star ? Verdict::Fail : Verdict::Pass;
  if (star) r.witness = star_json(*star);
}

void run_dindex(const CampaignConfig& cfg, const Graph& g, ReportRecord& r) {
  const auto res = distinguishing_index(g, cfg.max_k, cfg.budget);
  switch (res.status) {
    case DistStatus::Finite:
      r.metrics["dindex"] = res.value;
      r.metrics["colouring"] = colouring_json(g, *res.witness);
      r.verdict = Verdict::Pass;
      break;
    case DistStatus::NoFinite:
      r.metrics["dindex"] = "infinity";
      r.verdict = Verdict::Pass;
      break;
    case DistStatus::AboveLimit:
      r.metrics["dindex"] = "above " + std::to_string(cfg.max_k);
      r.verdict = Verdict::Skip;
      break;
  }
}

// Checks one theorem3_colourings outcome; returns a failure description.
std::optional<Json> check_rooted(const CampaignConfig& cfg, const Graph& g, Vertex root, const Theorem3Outcome& out,
                                 bool against_oracle) {
  const std::vector<Vertex> fixed{root};
  const std::size_t want = static_cast<std::size_t>(cfg.n - 1);
  if (against_oracle) {
    const bool expect_exception = theorem3_classify(g, root, cfg.n) != Theorem3Case::C1;
    if (expect_exception != out.exception.has_value())
      return Json{{"root", root}, {"reason", "exception does not match the classification"}};
    if (out.exception) {
      if (count_nonisomorphic_distinguishing(g, fixed, cfg.n - 1, cfg.budget, want) >= want)
        return Json{{"root", root}, {"reason", "exception reported but the oracle finds n-1 classes"}};
      return std::nullopt;
    }
  }
  if (out.exception) return std::nullopt;
  if (out.colourings.size() != want) return Json{{"root", root}, {"reason", "wrong number of colourings"}};
  for (std::size_t i = 0; i < out.colourings.size(); ++i) {
    const auto& c = out.colourings[i];
    if (!c.is_total_on(g) || c.max_colour() > cfg.n - 1)
      return Json{{"root", root}, {"reason", "colouring is not total on palette n-1"}, {"colouring", colouring_json(g, c)}};
    if (!is_distinguishing(g, c, fixed))
      return Json{{"root", root}, {"reason", "colouring is not distinguishing"}, {"colouring", colouring_json(g, c)}};
    for (std::size_t j = 0; j < i; ++j)
      if (are_colourings_isomorphic(g, fixed, out.colourings[j], c))
        return Json{{"root", root},
                    {"reason", "isomorphic colourings"},
                    {"colourings", {colouring_json(g, out.colourings[j]), colouring_json(g, c)}}};
  }
  if (against_oracle && count_nonisomorphic_distinguishing(g, fixed, cfg.n - 1, cfg.budget, want) < want)
    return Json{{"root", root}, {"reason", "oracle finds fewer than n-1 classes"}};
  return std::nullopt;
}

void run_rooted(const CampaignConfig& cfg, const Graph& g, ReportRecord& r, bool against_oracle) {
  if (const auto why = theorem_scope(g, cfg.n)) {
    r.verdict = Verdict::Skip;
    r.metrics["skipped"] = *why;
    return;
  }
  if (g.order() > cfg.rooted_max_vertices) {
    r.verdict = Verdict::Skip;
    r.metrics["skipped"] = "order above rooted_max_vertices";
    return;
  }
  RootedOptions opts;
  opts.budget = cfg.budget;
  opts.max_vertices = cfg.rooted_max_vertices;
  Json roots = Json::array();
  r.verdict = Verdict::Pass;
  for (Vertex root : root_representatives(g)) {
    const auto out = theorem3_colourings(g, root, cfg.n, opts);
    Json entry{{"root", root}};
    if (out.exception) entry["exception"] = to_string(*out.exception);
    else {
      entry["branch"] = out.branch;
      entry["oracle_filled"] = out.oracle_filled;
    }
    roots.push_back(entry);
    if (const auto bad = check_rooted(cfg, g, root, out, against_oracle); bad && r.verdict == Verdict::Pass) {
      r.verdict = Verdict::Fail;
      r.witness = *bad;
    }
  }
  r.metrics["roots"] = roots;
}

void run_theorem1(const CampaignConfig& cfg, const Graph& g, ReportRecord& r) {
  if (auto why = theorem_scope(g, cfg.n); why || g.order() < cfg.min_order) {
    r.verdict = Verdict::Skip;
    r.metrics["skipped"] = why ? *why : "order below min_order";
    return;
  }
  const auto c = first_distinguishing(g, {}, cfg.n - 1, cfg.budget);
  if (c) {
    r.verdict = Verdict::Pass;
    r.metrics["colouring"] = colouring_json(g, *c);
  } else {
    r.verdict = Verdict::Fail;
    r.witness = {{"graph6", write_graph6(g)}, {"reason", "no distinguishing colouring with palette n-1"}};
  }
}

void run_infinite(const CampaignConfig& cfg, const std::string& path, ReportRecord& r) {
  const auto d = load_igd(path);
  ConstructionOptions opts;
  opts.rooted.budget = cfg.budget;
  opts.rooted.max_vertices = cfg.rooted_max_vertices;
  opts.max_window = cfg.max_window;
  const auto c = construct_colouring(d, cfg.n, opts);
  r.metrics["construction"] = construction_json(c);
  r.metrics["periodic"] = to_json(c.periodic);
  r.verdict = Verdict::Pass;
  Json failed = Json::array();
  for (const auto& law : check_laws(d, c))
    if (!law.pass) failed.push_back({{"law", law.name}, {"detail", law.detail}});
  r.metrics["failed_laws"] = failed;
  if (!failed.empty()) {
    r.verdict = Verdict::Fail;
    r.witness = failed.front();
  }
  Json cores = Json::array();
  for (int depth : cfg.depths) {
    const auto rep = verify_fixed_core(d, c.periodic, depth, cfg.margin);
    cores.push_back(to_json(rep));
    if (!rep.pass && r.verdict == Verdict::Pass) {
      r.verdict = Verdict::Fail;
      r.witness = {{"depth", depth}, {"automorphism", rep.witness ? Json(rep.witness->image) : Json()}};
    }
  }
  r.metrics["fixed_core"] = cores;
}

}  // namespace

std::string to_string(Task t) {
  for (const auto& [task, name] : kTaskNames)
    if (task == t) return name;
  return "?";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Skip: return "SKIP";
    case Verdict::Error: return "ERROR";
  }
  return "?";
}

Task parse_task(const std::string& s) {
  for (const auto& [task, name] : kTaskNames)
    if (name == s) return task;
  throw ParseError("unknown task '" + s + "'");
}

Json to_json(const PeriodicColouring& c) {
  Json arms = Json::array();
  for (const auto& a : c.arms) arms.push_back({{"preperiod", a.preperiod}, {"period", a.period}, {"copies", a.copies}});
  return {{"palette", c.palette}, {"prefix", c.prefix}, {"arms", arms}};
}

Json to_json(const FixedCoreReport& r) {
  Json out{{"depth", r.depth},       {"margin", r.margin},          {"pass", r.pass},
           {"group_order", r.group_order.str()}, {"core_size", r.core.size()}, {"uncovered", r.uncovered}};
  if (r.witness) out["witness"] = r.witness->image;
  return out;
}

Json construction_json(const Construction& c) {
  Json rays = Json::array();
  const auto& f = c.window.family();
  for (std::size_t i = 0; i < f.rays.size(); ++i) {
    Json ray{{"index", f.rays[i].index}, {"arm", f.rays[i].arm}, {"kind", to_string(f.rays[i].kind)}};
    if (c.k[i]) ray["k"] = *c.k[i];
    if (c.favourites[i]) ray["favourite"] = c.favourites[i]->position;
    rays.push_back(ray);
  }
  return {{"n", c.n},
          {"window", c.window.truncation().depth},
          {"trusted", c.trusted},
          {"rays", rays},
          {"components", c.components.size()},
          {"anomalies", c.anomalies}};
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("config line " + std::to_string(no) + ": expected key = value");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

void apply_config(CampaignConfig& cfg, const std::map<std::string, std::string>& kv) {
  for (const auto& [key, value] : kv) {
    if (key == "task") cfg.task = parse_task(value);
    else if (key == "n") cfg.n = number<int>(key, value);
    else if (key == "inputs") cfg.inputs = split_list(value);
    else if (key == "max_nodes") cfg.budget.max_nodes = number<std::uint64_t>(key, value);
    else if (key == "max_seconds") cfg.budget.max_seconds = number<double>(key, value);
    else if (key == "max_group") cfg.budget.max_group = number<std::size_t>(key, value);
    else if (key == "max_k") cfg.max_k = number<int>(key, value);
    else if (key == "min_order") cfg.min_order = number<int>(key, value);
    else if (key == "rooted_max_vertices") cfg.rooted_max_vertices = number<int>(key, value);
    else if (key == "depths") {
      cfg.depths.clear();
      for (const auto& d : split_list(value)) cfg.depths.push_back(number<int>(key, d));
    } else if (key == "margin") cfg.margin = number<int>(key, value);
    else if (key == "max_window") cfg.max_window = number<int>(key, value);
    else if (key == "threads") cfg.threads = number<int>(key, value);
    else if (key == "out") cfg.out = value;
    else throw ParseError("unknown config key '" + key + "'");
  }
}

void validate(const CampaignConfig& cfg) {
  const bool theorem = cfg.task != Task::StarFree && cfg.task != Task::DIndex;
  if (theorem && cfg.n < 3) throw PreconditionError("n must be at least 3 for theorem tasks");
  if (cfg.n < 1) throw PreconditionError("n must be positive");
  if (cfg.budget.max_nodes == 0 || cfg.budget.max_seconds < 0 || cfg.budget.max_group == 0)
    throw PreconditionError("budgets must be positive");
  if (cfg.max_k < 1) throw PreconditionError("max_k must be positive");
  if (cfg.threads < 0) throw PreconditionError("threads must be non-negative");
  if (cfg.task == Task::Infinite) {
    if (cfg.depths.empty()) throw PreconditionError("infinite task needs depths");
    for (int d : cfg.depths)
      if (d <= cfg.margin || cfg.margin < 1) throw PreconditionError("each depth must exceed margin >= 1");
  }
}

Json to_json(const ReportRecord& r, bool with_timing) {
  Json j{{"input", r.input}, {"task", to_string(r.task)}, {"verdict", to_string(r.verdict)}, {"metrics", r.metrics}};
  if (!r.witness.is_null()) j["witness"] = r.witness;
  if (!r.error.empty()) j["error"] = r.error;
  if (with_timing) j["runtime_ms"] = r.runtime_ms;
  return j;
}

std::vector<CampaignInput> expand_inputs(const CampaignConfig& cfg) {
  std::vector<CampaignInput> out;
  for (const auto& src : cfg.inputs) {
    if (src.starts_with("enum:")) {
      const int order = number<int>("inputs", src.substr(5));
      const auto graphs = connected_graphs(order);
      for (std::size_t i = 0; i < graphs.size(); ++i) out.push_back({src + "#" + std::to_string(i), write_graph6(graphs[i])});
      continue;
    }
    if (cfg.task == Task::Infinite) {
      out.push_back({src, src});
      continue;
    }
    std::ifstream in(src);
    if (!in) {
      out.push_back({src, ""});  // reported as ERROR by run_one
      continue;
    }
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
      ++no;
      line = trim(line);
      if (line.empty() || line.starts_with(">>graph6<<")) continue;
      out.push_back({src + ":" + std::to_string(no), line});
    }
  }
  return out;
}

ReportRecord run_one(const CampaignConfig& cfg, const CampaignInput& input) {
  ReportRecord r;
  r.input = input.id;
  r.task = cfg.task;
  const auto start = std::chrono::steady_clock::now();
  try {
    if (cfg.task == Task::Infinite) {
      run_infinite(cfg, input.payload, r);
    } else {
      if (input.payload.empty()) throw ParseError("cannot read " + input.id);
      const Graph g = parse_graph6(input.payload);
      r.metrics["graph6"] = input.payload;
      switch (cfg.task) {
        case Task::StarFree: run_starfree(cfg, g, r); break;
        case Task::DIndex: run_dindex(cfg, g, r); break;
        case Task::Rooted: run_rooted(cfg, g, r, false); break;
        case Task::Theorem1Replay: run_theorem1(cfg, g, r); break;
        case Task::Theorem3Replay: run_rooted(cfg, g, r, true); break;
        case Task::Infinite: break;
      }
    }
  } catch (const std::exception& e) {
    r.verdict = Verdict::Error;
    r.error = e.what();
    r.witness = nullptr;
  }
  r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

void run_campaign(const CampaignConfig& cfg, const std::function<void(const ReportRecord&)>& sink) {
  validate(cfg);
  const auto inputs = expand_inputs(cfg);
  std::vector<std::optional<ReportRecord>> slots(inputs.size());
  std::mutex m;
  std::condition_variable ready;
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next++) < inputs.size();) {
      auto rec = run_one(cfg, inputs[i]);
      std::lock_guard lock(m);
      slots[i] = std::move(rec);
      ready.notify_all();
    }
  };
  unsigned threads = cfg.threads > 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, std::max<std::size_t>(1, inputs.size()));
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    std::unique_lock lock(m);
    ready.wait(lock, [&] { return slots[i].has_value(); });
    ReportRecord rec = std::move(*slots[i]);
    slots[i].reset();
    lock.unlock();
    sink(rec);
  }
}

std::vector<ReportRecord> run_campaign(const CampaignConfig& cfg) {
  std::vector<ReportRecord> out;
  run_campaign(cfg, [&](const ReportRecord& r) { out.push_back(r); });
  return out;
}

Json summary(const std::vector<ReportRecord>& records) {
  std::map<Verdict, std::size_t> counts;
  for (const auto& r : records) ++counts[r.verdict];
  return {{"summary",
           {{"total", records.size()},
            {"PASS", counts[Verdict::Pass]},
            {"FAIL", counts[Verdict::Fail]},
            {"SKIP", counts[Verdict::Skip]},
            {"ERROR", counts[Verdict::Error]}}}};
}

void emit_report(const std::vector<ReportRecord>& records, std::ostream& out, bool with_timing) {
  for (const auto& r : records) out << to_json(r, with_timing).dump() << '\n';
  out << summary(records).dump() << '\n';
}

}  // namespace stardist
