#include "sgrwr/orch/trace.hpp"

#include <fstream>
#include <sstream>

namespace sgrwr::orch {

namespace {

nlohmann::json header_record(const EpisodeTrace& t) {
    nlohmann::json j;
    j["record"] = "header";
    j["task_id"] = t.task_id;
    j["method"] = t.method;
    j["env"] = t.env;
    j["seed"] = t.seed;
    j["instruction"] = t.instruction;
    j["graph_token_count"] = t.graph_token_count;
    return j;
}

nlohmann::json iteration_record(const IterationRecord& r) {
    nlohmann::json j;
    j["record"] = "iteration";
    j["t"] = r.t;
    j["planner_turn"] = {{"explanation", r.planner_turn.explanation},
                         {"mode", r.planner_turn.mode},
                         {"content", r.planner_turn.content}};
    j["retrieval_attempts"] = r.retrieval_attempts;
    j["retrieval_api_calls"] = r.retrieval_api_calls;
    j["tool_results"] = r.tool_results;
    j["tokens_in"] = r.tokens_in;
    j["tokens_out"] = r.tokens_out;
    j["planner_tokens_in"] = r.planner_tokens_in;
    return j;
}

nlohmann::json footer_record(const EpisodeTrace& t) {
    nlohmann::json j;
    j["record"] = "footer";
    j["outcome"] = {{"success", t.outcome.success},
                    {"failure_reason", t.outcome.failure_reason},
                    {"detail", t.outcome.detail}};
    j["solution"] = t.solution_text;
    j["wall_time_ms"] = t.wall_time_ms;
    j["planner_history"] = t.planner_history;
    return j;
}

[[noreturn]] void bad_line(size_t lineno, const std::string& what) {
    throw TraceFormatError("line " + std::to_string(lineno) + ": " + what);
}

}  // namespace

std::string trace_to_jsonl(const EpisodeTrace& trace) {
    std::ostringstream out;
    out << header_record(trace).dump() << "\n";
    for (const IterationRecord& r : trace.iterations) out << iteration_record(r).dump() << "\n";
    out << footer_record(trace).dump() << "\n";
    return out.str();
}

EpisodeTrace trace_from_jsonl(const std::string& text) {
    EpisodeTrace trace;
    std::istringstream in(text);
    std::string line;
    size_t lineno = 0;
    bool saw_header = false, saw_footer = false;
    int next_t = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            bad_line(lineno, std::string("not valid JSON: ") + e.what());
        }
        std::string kind;
        try {
            kind = j.at("record").get<std::string>();
            if (kind == "header") {
                if (saw_header) bad_line(lineno, "duplicate header record");
                saw_header = true;
                trace.task_id = j.at("task_id").get<std::string>();
                trace.method = j.at("method").get<std::string>();
                trace.env = j.at("env").get<std::string>();
                trace.seed = j.at("seed").get<std::uint64_t>();
                trace.instruction = j.at("instruction").get<std::string>();
                trace.graph_token_count = j.at("graph_token_count").get<int>();
            } else if (kind == "iteration") {
                if (!saw_header) bad_line(lineno, "iteration record before the header");
                if (saw_footer) bad_line(lineno, "iteration record after the footer");
                IterationRecord r;
                r.t = j.at("t").get<int>();
                if (r.t != next_t)
                    bad_line(lineno, "iteration t=" + std::to_string(r.t) + ", expected t=" +
                                         std::to_string(next_t));
                ++next_t;
                const nlohmann::json& pt = j.at("planner_turn");
                r.planner_turn.explanation = pt.at("explanation").get<std::string>();
                r.planner_turn.mode = pt.at("mode").get<std::string>();
                r.planner_turn.content = pt.at("content").get<std::string>();
                r.retrieval_attempts = j.at("retrieval_attempts").get<int>();
                r.retrieval_api_calls = j.at("retrieval_api_calls").get<int>();
                r.tool_results = j.at("tool_results").get<std::string>();
                r.tokens_in = j.at("tokens_in").get<int>();
                r.tokens_out = j.at("tokens_out").get<int>();
                r.planner_tokens_in = j.at("planner_tokens_in").get<int>();
                if (r.tokens_in < 0 || r.tokens_out < 0 || r.planner_tokens_in < 0)
                    bad_line(lineno, "token counts must be nonnegative");
                trace.iterations.push_back(std::move(r));
            } else if (kind == "footer") {
                if (!saw_header) bad_line(lineno, "footer record before the header");
                if (saw_footer) bad_line(lineno, "duplicate footer record");
                saw_footer = true;
                const nlohmann::json& oc = j.at("outcome");
                trace.outcome.success = oc.at("success").get<bool>();
                trace.outcome.failure_reason = oc.at("failure_reason").get<std::string>();
                trace.outcome.detail = oc.at("detail").get<std::string>();
                trace.solution_text = j.at("solution").get<std::string>();
                trace.wall_time_ms = j.at("wall_time_ms").get<long long>();
                trace.planner_history =
                    j.at("planner_history").get<std::vector<std::string>>();
            } else {
                bad_line(lineno, "unknown record kind: " + kind);
            }
        } catch (const nlohmann::json::exception& e) {
            bad_line(lineno, std::string("missing or mistyped field: ") + e.what());
        }
    }
    if (!saw_header) throw TraceFormatError("line 1: the trace has no header record");
    if (!saw_footer)
        throw TraceFormatError("line " + std::to_string(lineno) + ": the trace has no footer record");
    return trace;
}

void save_trace_file(const EpisodeTrace& trace, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open trace file for writing: " + path);
    out << trace_to_jsonl(trace);
    if (!out) throw Error("failed while writing trace file: " + path);
}

EpisodeTrace load_trace_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open trace file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return trace_from_jsonl(buf.str());
    } catch (const TraceFormatError& e) {
        throw TraceFormatError(path + ": " + e.what());
    }
}

std::string trace_fingerprint(const EpisodeTrace& trace) {
    EpisodeTrace copy = trace;
    copy.wall_time_ms = 0;
    return trace_to_jsonl(copy);
}

}  // namespace sgrwr::orch
