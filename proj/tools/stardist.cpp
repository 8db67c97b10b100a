#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "stardist/campaign.hpp"
#include "stardist/enumerate.hpp"
#include "stardist/infinite.hpp"
#include "stardist/rooted_colouring.hpp"
#include "stardist/star_free.hpp"

using namespace stardist;

namespace {

int check_starfree(const std::string& g6, int n) {
  const Graph g = parse_graph6(g6);
  if (const auto star = find_induced_star(g, n)) {
    std::cout << "induced K_{1," << n << "}: " << star->to_string() << "\n";
    return 1;
  }
  std::cout << "K_{1," << n << "}-free\n";
  return 0;
}

int dindex(const std::string& g6, int max_k, const OracleBudget& budget) {
  const Graph g = parse_graph6(g6);
  const auto res = distinguishing_index(g, max_k, budget);
  switch (res.status) {
    case DistStatus::Finite:
      std::cout << "D'=" << res.value << "\nwitness: " << format_colouring(*res.witness) << "\n";
      return 0;
    case DistStatus::NoFinite:
      std::cout << "D'=infinity\n";
      return 0;
    case DistStatus::AboveLimit:
      std::cout << "D'>" << max_k << "\n";
      return 1;
  }
  return 2;
}

int colour_rooted(const std::string& g6, Vertex root, int n, const RootedOptions& opts) {
  const Graph g = parse_graph6(g6);
  const auto out = theorem3_colourings(g, root, n, opts);
  if (out.exception) {
    std::cout << "exception: " << to_string(*out.exception) << "\n";
    return 0;
  }
  const std::vector<Vertex> fixed{root};
  bool ok = static_cast<int>(out.colourings.size()) == n - 1;
  for (std::size_t i = 0; i < out.colourings.size(); ++i) {
    std::cout << "colouring " << i << ": " << format_colouring(out.colourings[i]) << "\n";
    ok = ok && is_distinguishing(g, out.colourings[i], fixed);
    for (std::size_t j = 0; j < i; ++j) ok = ok && !are_colourings_isomorphic(g, fixed, out.colourings[j], out.colourings[i]);
  }
  std::cout << "verified: " << (ok ? "true" : "false") << "\n";
  return ok ? 0 : 1;
}

int colour_infinite(const std::string& path, int n, const std::vector<int>& depths, int margin,
                    const ConstructionOptions& opts) {
  const auto d = load_igd(path);
  const auto c = construct_colouring(d, n, opts);
  std::cout << nlohmann::ordered_json{{"construction", construction_json(c)}}.dump() << "\n";
  std::cout << nlohmann::ordered_json{{"periodic_colouring", to_json(c.periodic)}}.dump() << "\n";
  bool ok = true;
  nlohmann::ordered_json laws = nlohmann::ordered_json::array();
  for (const auto& law : check_laws(d, c)) {
    laws.push_back({{"law", law.name}, {"pass", law.pass}, {"detail", law.detail}});
    ok = ok && law.pass;
  }
  std::cout << nlohmann::ordered_json{{"laws", laws}}.dump() << "\n";
  for (int depth : depths) {
    const auto rep = verify_fixed_core(d, c.periodic, depth, margin);
    std::cout << nlohmann::ordered_json{{"fixed_core", to_json(rep)}}.dump() << "\n";
    ok = ok && rep.pass;
  }
  return ok ? 0 : 1;
}

int verify(const std::string& config_path, const std::map<std::string, std::string>& overrides) {
  CampaignConfig cfg;
  std::ifstream in(config_path);
  if (!in) throw ParseError("cannot open " + config_path);
  std::stringstream text;
  text << in.rdbuf();
  apply_config(cfg, parse_config_text(text.str()));
  apply_config(cfg, overrides);

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!cfg.out.empty()) {
    file.open(cfg.out);
    if (!file) throw ParseError("cannot write " + cfg.out);
    out = &file;
  }
  std::vector<ReportRecord> records;
  run_campaign(cfg, [&](const ReportRecord& r) {
    *out << to_json(r).dump() << '\n';
    records.push_back(r);
  });
  const auto s = summary(records);
  *out << s.dump() << '\n';
  if (out != &std::cout) std::cout << s.dump() << '\n';
  const auto& counts = s["summary"];
  return counts["FAIL"] == 0 && counts["ERROR"] == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distinguishing edge colourings of K_{1,n}-free graphs"};
  app.require_subcommand(1);

  std::string g6, igd, config;
  int n = 3, max_k = 6, root = 0, margin = 2, order = 6;
  std::vector<int> depths{4, 6, 8};
  OracleBudget budget;

  auto* sf = app.add_subcommand("check-starfree", "Report an induced K_{1,n} or certify none exists");
  sf->add_option("--n", n, "Star size")->required();
  sf->add_option("--graph6", g6, "Graph in graph6")->required();

  auto* di = app.add_subcommand("dindex", "Distinguishing index with a witness colouring");
  di->add_option("--graph6", g6, "Graph in graph6")->required();
  di->add_option("--max-k", max_k, "Largest palette tried");
  di->add_option("--max-nodes", budget.max_nodes, "Search node budget");

  auto* cr = app.add_subcommand("colour-rooted", "n-1 non-isomorphic distinguishing colourings of a rooted graph");
  cr->add_option("--graph6", g6, "Graph in graph6")->required();
  cr->add_option("--root", root, "Root vertex")->required();
  cr->add_option("--n", n, "Star size")->required();

  auto* ci = app.add_subcommand("colour-infinite", "Colour a periodic infinite graph and check rigidity");
  ci->add_option("--igd", igd, "IGD description")->required()->check(CLI::ExistingFile);
  ci->add_option("--n", n, "Star size")->required();
  ci->add_option("--depth", depths, "Truncation depths for the fixed-core check");
  ci->add_option("--margin", margin, "Margin below the boundary");

  std::string task, out_path, n_override, threads;
  auto* vf = app.add_subcommand("verify", "Run a campaign from a key=value config");
  vf->add_option("--config", config, "Config file")->required()->check(CLI::ExistingFile);
  vf->add_option("--task", task, "Override the task");
  vf->add_option("--n", n_override, "Override n");
  vf->add_option("--out", out_path, "Report path (JSON lines)");
  vf->add_option("--threads", threads, "Worker count");

  auto* en = app.add_subcommand("enumerate", "Print connected K_{1,n}-free graphs of an order in graph6");
  en->add_option("--order", order, "Number of vertices (at most 8)")->required();
  en->add_option("--n", n, "Star size (default 3); 0 keeps every connected graph");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*sf) return check_starfree(g6, n);
    if (*di) return dindex(g6, max_k, budget);
    if (*cr) return colour_rooted(g6, root, n, {});
    if (*ci) return colour_infinite(igd, n, depths, margin, {});
    if (*vf) {
      std::map<std::string, std::string> kv;
      if (!task.empty()) kv["task"] = task;
      if (!n_override.empty()) kv["n"] = n_override;
      if (!out_path.empty()) kv["out"] = out_path;
      if (!threads.empty()) kv["threads"] = threads;
      return verify(config, kv);
    }
    if (*en) {
      for (const auto& g : connected_graphs(order))
        if (n == 0 || is_k1n_free(g, n)) std::cout << write_graph6(g) << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
