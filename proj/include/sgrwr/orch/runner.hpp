#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sgrwr/orch/episodes.hpp"

namespace sgrwr::orch {

enum class Method { Rwr, RwrLimit, React, ReactLimit, FullgraphZeroshot, FullgraphCot };

const char* method_name(Method m);
Method method_from_name(const std::string& name);  // throws Error on unknown names

// Infrastructure problems that should stop a run before any episode
// executes (bad backend selection, missing API key, unreadable script).
struct MisconfigError : Error {
    explicit MisconfigError(const std::string& what) : Error(what) {}
};

struct BackendChoice {
    enum class Kind { Reference, Scripted, Live };
    Kind kind = Kind::Reference;
    std::string script_path;     // Kind::Scripted
    agents::BackendConfig live;  // Kind::Live
};

struct RunConfig {
    Method method = Method::Rwr;
    std::string env = "numqa";
    std::uint64_t seed_begin = 0;
    std::uint64_t seed_end = 0;  // inclusive
    BackendChoice backend;
    EpisodeLimits limits;
    int parallel = 1;
    std::string out_dir;  // empty: keep traces in memory only
};

struct ReportRow {
    std::string method;
    std::string env;
    int trials = 0;
    int successes = 0;
    double success_rate = 0.0;
    std::map<std::string, int> failures;  // failure_reason -> count
    double mean_iterations = 0.0;
    double mean_tokens_per_iteration = 0.0;
};

struct Report {
    std::vector<ReportRow> rows;  // sorted by (method, env)
};

Report report_from_traces(const std::vector<EpisodeTrace>& traces);
nlohmann::json report_to_json(const Report& report);
Report report_from_json(const nlohmann::json& j);
std::string render_report(const Report& report);  // aligned text table

struct RunResult {
    Report report;
    std::vector<EpisodeTrace> traces;  // in seed order
};

// Runs every seed in [seed_begin, seed_end] with fresh per-episode
// backends, writes one trace file per episode plus report.json when
// out_dir is set, and aggregates the report after all workers join.
RunResult run_benchmark(const RunConfig& config);

// Reads every .jsonl trace under the given directories (sorted by path)
// and recomputes the aggregate report; counts over several directories
// are additive.
Report report_from_dirs(const std::vector<std::string>& dirs);

}  // namespace sgrwr::orch
