#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sgrwr/attr_value.hpp"

namespace sgrwr::orch {

struct TraceFormatError : Error {
    explicit TraceFormatError(const std::string& what) : Error(what) {}
};

struct PlannerTurnRecord {
    std::string explanation;
    std::string mode;  // QUERY | TOOL | SOLUTION | ACTION
    std::string content;
    bool operator==(const PlannerTurnRecord&) const = default;
};

// One planner-visible step of an episode.
struct IterationRecord {
    int t = 0;
    PlannerTurnRecord planner_turn;
    int retrieval_attempts = 0;   // code-writer drafts consumed by this QUERY
    int retrieval_api_calls = 0;  // budgeted-API calls consumed by this QUERY
    std::string tool_results;     // observation text fed back to the planner
    int tokens_in = 0;            // across every agent call in this iteration
    int tokens_out = 0;
    int planner_tokens_in = 0;    // the planner's own prompt share
    bool operator==(const IterationRecord&) const = default;
};

struct EpisodeOutcome {
    bool success = false;
    // wrong_answer | iteration_cap | format | backend | plan_invalid | goal_unmet
    std::string failure_reason;
    std::string detail;
    bool operator==(const EpisodeOutcome&) const = default;
};

struct EpisodeTrace {
    std::string task_id;
    std::string method;
    std::string env;
    std::uint64_t seed = 0;
    std::string instruction;
    int graph_token_count = 0;
    std::vector<IterationRecord> iterations;
    EpisodeOutcome outcome;
    std::string solution_text;  // empty when no solution was produced
    long long wall_time_ms = 0;
    // The planner's chat transcript, one "role: content" entry per
    // message, for context-separation assertions.
    std::vector<std::string> planner_history;
};

// JSONL with one header record, one record per iteration, and one footer
// record. Canonical: sorted keys, no insignificant whitespace.
std::string trace_to_jsonl(const EpisodeTrace& trace);
// Errors mention the offending 1-based line number.
EpisodeTrace trace_from_jsonl(const std::string& text);
void save_trace_file(const EpisodeTrace& trace, const std::string& path);
EpisodeTrace load_trace_file(const std::string& path);

// The serialized trace with wall_time_ms zeroed: equal fingerprints mean
// equal traces up to timing.
std::string trace_fingerprint(const EpisodeTrace& trace);

}  // namespace sgrwr::orch
