#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "stardist/dist_oracle.hpp"
#include "stardist/infinite.hpp"

namespace stardist {

enum class Task { StarFree, DIndex, Rooted, Infinite, Theorem1Replay, Theorem3Replay };
enum class Verdict { Pass, Fail, Skip, Error };

std::string to_string(Task t);
std::string to_string(Verdict v);
Task parse_task(const std::string& s);

/// Graph inputs are graph6 files (one graph per line) or `enum:N` for every
/// connected graph on N vertices; infinite tasks take IGD files.
struct CampaignConfig {
  Task task = Task::Theorem1Replay;
  int n = 3;
  std::vector<std::string> inputs;
  OracleBudget budget;
  int max_k = 6;             // dindex palette ceiling
  int min_order = 6;         // theorem1-replay skips smaller graphs
  int rooted_max_vertices = 16;
  std::vector<int> depths{4, 6, 8};
  int margin = 2;
  int max_window = 128;
  int threads = 0;  // 0: hardware concurrency
  std::string out;  // empty: standard output
};

/// Flat `key = value` lines; `#` starts a comment. Keys mirror the fields
/// above, with `inputs` and `depths` comma separated.
std::map<std::string, std::string> parse_config_text(const std::string& text);
/// Applies key/value settings on top of `cfg`. Unknown keys throw ParseError.
void apply_config(CampaignConfig& cfg, const std::map<std::string, std::string>& kv);
/// Throws PreconditionError for settings outside the invariants.
void validate(const CampaignConfig& cfg);

struct ReportRecord {
  std::string input;
  Task task = Task::StarFree;
  Verdict verdict = Verdict::Skip;
  nlohmann::ordered_json metrics = nlohmann::ordered_json::object();
  nlohmann::ordered_json witness;  // null unless something needs showing
  std::string error;
  double runtime_ms = 0;
};

nlohmann::ordered_json to_json(const ReportRecord& r, bool with_timing = true);
nlohmann::ordered_json to_json(const PeriodicColouring& c);
nlohmann::ordered_json to_json(const FixedCoreReport& r);
/// Rays with their k / favourite data, window sizes and anomalies.
nlohmann::ordered_json construction_json(const Construction& c);

/// A single unit of work: one graph or one description.
struct CampaignInput {
  std::string id;
  std::string payload;  // graph6 text or IGD path
};

std::vector<CampaignInput> expand_inputs(const CampaignConfig& cfg);
ReportRecord run_one(const CampaignConfig& cfg, const CampaignInput& input);

/// Runs every input on a worker pool; `sink` receives records in input order.
void run_campaign(const CampaignConfig& cfg, const std::function<void(const ReportRecord&)>& sink);
std::vector<ReportRecord> run_campaign(const CampaignConfig& cfg);

nlohmann::ordered_json summary(const std::vector<ReportRecord>& records);
/// One JSON line per record, then the summary line.
void emit_report(const std::vector<ReportRecord>& records, std::ostream& out, bool with_timing = true);

}  // namespace stardist
