#include "sgrwr/orch/episodes.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "sgrwr/env/babyai.hpp"
#include "sgrwr/query/eval.hpp"

namespace sgrwr::orch {

namespace {

using Clock = std::chrono::steady_clock;

long long ms_since(Clock::time_point start) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

std::vector<std::string> render_history(const agents::Messages& history) {
    std::vector<std::string> out;
    out.reserve(history.size());
    for (const agents::ChatMessage& m : history)
        out.push_back(std::string(agents::role_name(m.role)) + ": " + m.content);
    return out;
}

EpisodeTrace start_trace(const TaskInstance& task, const std::string& method,
                         const agents::TokenCounter& counter) {
    if (!task.graph) throw Error("task has no graph attached: " + task.id);
    EpisodeTrace trace;
    trace.task_id = task.id;
    trace.method = method;
    trace.env = task.env;
    trace.seed = task.seed;
    trace.instruction = task.instruction;
    Schema schema = schema_for_profile(task.graph->profile);
    trace.graph_token_count = counter(textualize(*task.graph, schema));
    return trace;
}

void require_backend(const std::shared_ptr<agents::Backend>& b, const char* role) {
    if (!b) throw Error(std::string("episode needs a backend for the ") + role + " role");
}

// Parses a SOLUTION turn and grades it, folding format problems into the
// outcome taxonomy.
EpisodeOutcome grade_content(const TaskInstance& task, const std::string& content,
                             std::string* solution_text) {
    Solution sol;
    try {
        sol = parse_solution(task.family, content);
    } catch (const SolutionFormatError& e) {
        return EpisodeOutcome{false, "format", e.what()};
    }
    *solution_text = solution_to_text(sol);
    Grade g = grade_solution(task, sol);
    return EpisodeOutcome{g.success, g.failure_reason, g.detail};
}

bool is_backend_error(const Error& e) {
    return dynamic_cast<const agents::BackendUnavailable*>(&e) != nullptr ||
           dynamic_cast<const agents::BackendRejected*>(&e) != nullptr ||
           dynamic_cast<const agents::ScriptExhausted*>(&e) != nullptr;
}

// Shared driver for the two schema-guided variants; `run_query` hides
// which retriever answers QUERY turns.
template <typename RunQuery>
EpisodeTrace run_planner_loop(const TaskInstance& task, const std::string& method,
                              agents::Backend& planner, const EpisodeBackends& backends,
                              const TaskSurfaces& surf, const EpisodeLimits& limits,
                              const agents::TokenCounter& counter, RunQuery run_query) {
    auto start = Clock::now();
    EpisodeTrace trace = start_trace(task, method, counter);
    agents::Messages history{
        agents::system_msg(agents::assemble_planner_prompt(surf.inputs)),
        agents::user_msg("Task: " + task.instruction)};

    bool terminated = false;
    for (int t = 0; t < limits.max_iterations && !terminated; ++t) {
        IterationRecord rec;
        rec.t = t;
        agents::TokenTally tally;
        agents::PlannerTurn turn;
        try {
            turn = reasoner::planner_step(history, planner, &tally, counter);
        } catch (const agents::FormatError& e) {
            trace.outcome = EpisodeOutcome{false, "format", e.what()};
            terminated = true;
            break;
        } catch (const Error& e) {
            trace.outcome = EpisodeOutcome{false, "backend", e.what()};
            terminated = true;
            break;
        }
        rec.planner_turn = PlannerTurnRecord{turn.explanation, agents::mode_name(turn.mode),
                                             turn.content};
        rec.planner_tokens_in = tally.in;

        if (turn.mode == agents::PlannerMode::Solution) {
            trace.outcome = grade_content(task, turn.content, &trace.solution_text);
            rec.tokens_in = tally.in;
            rec.tokens_out = tally.out;
            trace.iterations.push_back(std::move(rec));
            terminated = true;
            break;
        }

        std::string observation;
        if (turn.mode == agents::PlannerMode::Query) {
            retriever::RetrieveOutcome ro;
            try {
                ro = run_query(turn.content);
            } catch (const Error& e) {
                trace.outcome = EpisodeOutcome{false, is_backend_error(e) ? "backend" : "format",
                                               e.what()};
                terminated = true;
                break;
            }
            rec.retrieval_attempts = static_cast<int>(ro.attempts.size());
            rec.retrieval_api_calls = ro.api_calls;
            tally.in += ro.tokens.in;
            tally.out += ro.tokens.out;
            observation = ro.ok ? ro.summary : "RETRIEVAL FAILED: " + ro.failure;
        } else {  // TOOL
            if (surf.tools.empty()) {
                observation = "TOOL ERROR: no tools are available for this task";
            } else {
                require_backend(backends.toolcaller, "toolcaller");
                agents::TokenTally tool_tally;
                reasoner::ToolCallOutcome oc;
                try {
                    oc = reasoner::call_tool(
                        surf.tools, turn.content, *backends.toolcaller,
                        agents::assemble_toolcaller_prompt(surf.tools.annotations_text()),
                        &tool_tally, counter);
                } catch (const Error& e) {
                    trace.outcome = EpisodeOutcome{false, "backend", e.what()};
                    terminated = true;
                    break;
                }
                tally.in += tool_tally.in;
                tally.out += tool_tally.out;
                observation = oc.observation();
            }
        }
        history.push_back(agents::user_msg(observation));
        rec.tool_results = observation;
        rec.tokens_in = tally.in;
        rec.tokens_out = tally.out;
        trace.iterations.push_back(std::move(rec));
    }
    if (!terminated)
        trace.outcome = EpisodeOutcome{
            false, "iteration_cap",
            "no solution within " + std::to_string(limits.max_iterations) + " iterations"};
    trace.planner_history = render_history(history);
    trace.wall_time_ms = ms_since(start);
    return trace;
}

}  // namespace

TaskSurfaces surfaces_for(const TaskInstance& task) {
    if (!task.graph) throw Error("task has no graph attached: " + task.id);
    TaskSurfaces surf;
    Schema schema = schema_for_profile(task.graph->profile);
    surf.inputs.schema_text = render_schema(schema);
    switch (task.family) {
        case TaskFamily::Numqa:
            surf.inputs.env_explanation = babyai::numqa_env_explanation();
            surf.inputs.few_shot = babyai::numqa_few_shot();
            surf.answer_format = "Answer with a single color word on the last line.";
            break;
        case TaskFamily::Trv1:
        case TaskFamily::Trv2:
            surf.inputs.env_explanation = babyai::trv_env_explanation();
            surf.inputs.action_space = babyai::trv_action_space();
            surf.inputs.few_shot = babyai::trv_few_shot();
            surf.tools = babyai::trv_tool_registry();
            surf.inputs.tool_annotations = surf.tools.annotations_text();
            surf.answer_format = "Answer with the plan, one action per line, and nothing else.";
            break;
        case TaskFamily::Household:
            surf.inputs.env_explanation = household::household_env_explanation();
            surf.inputs.action_space = household::household_action_space();
            surf.inputs.few_shot = household::household_few_shot();
            surf.answer_format = "Answer with the plan, one action per line, and nothing else.";
            break;
    }
    return surf;
}

EpisodeTrace run_rwr_episode(const TaskInstance& task, const EpisodeBackends& backends,
                             const EpisodeLimits& limits, const agents::TokenCounter& counter) {
    require_backend(backends.planner, "planner");
    require_backend(backends.codewriter, "codewriter");
    require_backend(backends.verifier, "verifier");
    TaskSurfaces surf = surfaces_for(task);
    Schema schema = schema_for_profile(task.graph->profile);
    return run_planner_loop(
        task, "rwr", *backends.planner, backends, surf, limits, counter,
        [&](const std::string& question) {
            return retriever::retrieve(question, *task.graph, schema, surf.inputs,
                                       *backends.codewriter, *backends.verifier, limits.retrieve,
                                       counter);
        });
}

EpisodeTrace run_rwr_limit_episode(const TaskInstance& task, const EpisodeBackends& backends,
                                   const EpisodeLimits& limits,
                                   const agents::TokenCounter& counter) {
    require_backend(backends.planner, "planner");
    require_backend(backends.retrieval_agent, "retrieval_agent");
    TaskSurfaces surf = surfaces_for(task);
    return run_planner_loop(
        task, "rwr-limit", *backends.planner, backends, surf, limits, counter,
        [&](const std::string& question) {
            return retriever::limit_retrieve(question, *task.graph, surf.inputs.env_explanation,
                                             *backends.retrieval_agent, limits.api_budget,
                                             counter);
        });
}

// ---------------------------------------------------------------------------
// single-agent baselines

namespace {

std::string render_get_neighbors(const SceneGraph& graph, const std::string& id) {
    std::ostringstream o;
    o << id << " neighbors:";
    for (const std::string& n : query::get_neighbors(graph, id)) o << " " << n;
    return o.str();
}

std::string render_get_attrs(const SceneGraph& graph, const std::string& id) {
    return query::render_row(query::Row{id, query::get_attrs(graph, id)});
}

// The unrestricted ReAct API: the node's attributes, its incident edges,
// and each neighbor's attributes, in one observation.
std::string render_expand(const SceneGraph& graph, const std::string& id) {
    std::ostringstream o;
    o << render_get_attrs(graph, id);
    std::vector<Edge> incident;
    for (const Edge& e : graph.edges)
        if (e.from == id || e.to == id) incident.push_back(e);
    std::sort(incident.begin(), incident.end(), [](const Edge& a, const Edge& b) {
        return std::tie(a.from, a.relationship, a.to) < std::tie(b.from, b.relationship, b.to);
    });
    for (const Edge& e : incident)
        o << "\nedge: " << e.from << " -" << e.relationship << "-> " << e.to;
    for (const std::string& n : query::get_neighbors(graph, id))
        o << "\n" << render_get_attrs(graph, n);
    return o.str();
}

std::string expand_annotation() {
    return "- expand(node_id): list the node's attributes, its edges, and the attributes of "
           "every neighboring node.";
}

// First "Thought:" line of a reply, for the trace record.
std::string extract_thought(const std::string& reply) {
    std::istringstream in(reply);
    std::string line;
    while (std::getline(in, line)) {
        std::string t = agents::trim(line);
        if (t.rfind("Thought:", 0) == 0) return agents::trim(t.substr(8));
    }
    return "";
}

}  // namespace

EpisodeTrace run_react_episode(const TaskInstance& task, agents::Backend& backend,
                               bool api_limited, const EpisodeLimits& limits,
                               const agents::TokenCounter& counter) {
    auto start = Clock::now();
    EpisodeTrace trace = start_trace(task, api_limited ? "react-limit" : "react", counter);
    TaskSurfaces surf = surfaces_for(task);
    std::string api = api_limited ? retriever::limited_api_annotations() : expand_annotation();
    agents::Messages history{
        agents::system_msg(agents::assemble_react_prompt(surf.inputs, api)),
        agents::user_msg("Task: " + task.instruction)};

    bool terminated = false;
    for (int t = 0; t < limits.max_iterations && !terminated; ++t) {
        IterationRecord rec;
        rec.t = t;
        rec.tokens_in = agents::messages_tokens(history, counter);
        rec.planner_tokens_in = rec.tokens_in;
        std::string reply;
        try {
            reply = agents::complete(backend, history);
        } catch (const Error& e) {
            trace.outcome = EpisodeOutcome{false, "backend", e.what()};
            terminated = true;
            break;
        }
        rec.tokens_out = counter(reply);
        history.push_back(agents::assistant_msg(reply));
        rec.planner_turn.explanation = extract_thought(reply);
        rec.planner_turn.mode = "ACTION";

        std::optional<retriever::ApiCall> call = retriever::parse_action_line(reply);
        std::string observation;
        if (!call) {
            rec.planner_turn.content = agents::trim(reply);
            observation = "INVALID ACTION: reply with one line 'Action: name(arguments)'; use "
                          "finish(solution) when done.";
        } else if (call->name == "finish") {
            rec.planner_turn.mode = "SOLUTION";
            rec.planner_turn.content = call->arg;
            trace.outcome = grade_content(task, call->arg, &trace.solution_text);
            trace.iterations.push_back(std::move(rec));
            terminated = true;
            break;
        } else {
            rec.planner_turn.content = "Action: " + call->name + "(" + call->arg + ")";
            bool graph_api = !api_limited ? call->name == "expand"
                                          : (call->name == "get_neighbors" ||
                                             call->name == "get_attrs");
            if (graph_api) {
                try {
                    if (call->name == "expand")
                        observation = render_expand(*task.graph, agents::trim(call->arg));
                    else if (call->name == "get_neighbors")
                        observation = render_get_neighbors(*task.graph, agents::trim(call->arg));
                    else
                        observation = render_get_attrs(*task.graph, agents::trim(call->arg));
                } catch (const Error& e) {
                    observation = std::string("ERROR: ") + e.what();
                }
            } else if (const reasoner::ToolSpec* tool = surf.tools.find(call->name)) {
                nlohmann::json args;
                bool parsed = true;
                try {
                    args = nlohmann::json::parse(call->arg);
                } catch (const nlohmann::json::exception&) {
                    parsed = false;
                }
                if (!parsed || !args.is_object()) {
                    observation =
                        "INVALID ACTION: arguments to " + tool->name + " must be a JSON object";
                } else {
                    observation =
                        reasoner::execute_invocation(surf.tools, call->name, args).observation();
                }
            } else {
                observation = "INVALID ACTION: unknown call '" + call->name + "'";
            }
        }
        history.push_back(agents::user_msg("Observation: " + observation));
        rec.tool_results = observation;
        trace.iterations.push_back(std::move(rec));
    }
    if (!terminated)
        trace.outcome = EpisodeOutcome{
            false, "iteration_cap",
            "no finish(solution) within " + std::to_string(limits.max_iterations) + " steps"};
    trace.planner_history = render_history(history);
    trace.wall_time_ms = ms_since(start);
    return trace;
}

namespace {

// Pulls a Solution out of a free-form completion: the last non-empty
// line for answer tasks, every action-parsable line for plan tasks.
std::string extract_fullgraph_solution(const TaskInstance& task, const std::string& reply) {
    std::istringstream in(reply);
    std::string line;
    if (task.family == TaskFamily::Numqa) {
        std::string last;
        while (std::getline(in, line)) {
            std::string t = agents::trim(line);
            if (!t.empty()) last = t;
        }
        return last;
    }
    std::vector<std::string> actions;
    while (std::getline(in, line)) {
        std::string t = agents::trim(line);
        if (t.empty()) continue;
        try {
            if (task.family == TaskFamily::Household)
                household::parse_vh_action(t);
            else
                babyai::parse_trv_action(t);
            actions.push_back(t);
        } catch (const Error&) {
            // prose around the plan; skip
        }
    }
    std::string out;
    for (size_t i = 0; i < actions.size(); ++i) {
        if (i) out += "\n";
        out += actions[i];
    }
    return out;
}

}  // namespace

EpisodeTrace run_fullgraph_episode(const TaskInstance& task, agents::Backend& backend,
                                   bool chain_of_thought, const agents::TokenCounter& counter) {
    auto start = Clock::now();
    EpisodeTrace trace =
        start_trace(task, chain_of_thought ? "fullgraph-cot" : "fullgraph-zeroshot", counter);
    TaskSurfaces surf = surfaces_for(task);
    Schema schema = schema_for_profile(task.graph->profile);
    agents::Messages history{
        agents::system_msg(agents::assemble_fullgraph_prompt(
            surf.inputs, textualize(*task.graph, schema), surf.answer_format, chain_of_thought)),
        agents::user_msg("Task: " + task.instruction)};

    IterationRecord rec;
    rec.t = 0;
    rec.tokens_in = agents::messages_tokens(history, counter);
    rec.planner_tokens_in = rec.tokens_in;
    std::string reply;
    try {
        reply = agents::complete(backend, history);
    } catch (const Error& e) {
        trace.outcome = EpisodeOutcome{false, "backend", e.what()};
        trace.planner_history = render_history(history);
        trace.wall_time_ms = ms_since(start);
        return trace;
    }
    rec.tokens_out = counter(reply);
    history.push_back(agents::assistant_msg(reply));
    std::string content = extract_fullgraph_solution(task, reply);
    rec.planner_turn.mode = "SOLUTION";
    rec.planner_turn.content = content;
    trace.outcome = grade_content(task, content, &trace.solution_text);
    trace.iterations.push_back(std::move(rec));
    trace.planner_history = render_history(history);
    trace.wall_time_ms = ms_since(start);
    return trace;
}

}  // namespace sgrwr::orch
