#include "sgrwr/retriever/retriever.hpp"

#include <sstream>

#include "sgrwr/agents/turns.hpp"
#include "sgrwr/query/parser.hpp"

namespace sgrwr::retriever {

namespace {

// Verifier input: the original request plus every result retrieved so
// far in this call, oldest first. Attempts are addressed by index; the
// attempt vector keeps growing while rounds run.
std::string verifier_user_message(const std::string& question,
                                  const std::vector<RetrievalAttempt>& attempts,
                                  const std::vector<size_t>& accepted) {
    std::ostringstream out;
    out << "Query:\n" << question << "\n";
    int n = 0;
    for (size_t i : accepted) {
        const RetrievalAttempt& a = attempts[i];
        out << "\nResult " << ++n << " (query `" << a.program_source << "`):\n" << a.rendered
            << "\n";
    }
    return out.str();
}

}  // namespace

RetrieveOutcome retrieve(const std::string& question, const SceneGraph& graph,
                         const Schema& schema, const agents::PromptInputs& inputs,
                         agents::Backend& codewriter, agents::Backend& verifier,
                         const RetrieveLimits& limits, const agents::TokenCounter& counter) {
    RetrieveOutcome out;
    agents::Messages history{
        agents::system_msg(agents::assemble_retriever_prompt(inputs, query::grammar_text())),
        agents::user_msg(question)};
    std::vector<size_t> accepted;  // indices of successful executions, in order

    for (int round = 1; round <= limits.max_verify_rounds; ++round) {
        bool round_executed = false;
        for (int attempt = 1; attempt <= limits.max_code_attempts; ++attempt) {
            std::string reply = agents::complete(codewriter, history);
            out.tokens.add_call(history, reply, counter);
            ++out.codewriter_calls;
            history.push_back(agents::assistant_msg(reply));

            RetrievalAttempt rec;
            rec.round = round;
            try {
                rec.program_source = agents::extract_fenced(reply, "sgq");
                query::Pipe pipe = query::parse(rec.program_source, schema);
                query::RetrievalResult result = query::evaluate(pipe, graph);
                rec.rendered = query::render_result(result);
                rec.executed = true;
            } catch (const Error& e) {
                rec.error = e.what();
            }
            out.attempts.push_back(std::move(rec));
            if (out.attempts.back().executed) {
                round_executed = true;
                break;
            }
            if (attempt < limits.max_code_attempts)
                history.push_back(agents::user_msg("EXECUTION ERROR: " + out.attempts.back().error +
                                                   "\nPlease re-write the query."));
        }
        if (!round_executed) {
            out.failure = "no executable query after " + std::to_string(limits.max_code_attempts) +
                          " attempts (last error: " + out.attempts.back().error + ")";
            return out;
        }

        accepted.push_back(out.attempts.size() - 1);
        agents::Messages check{agents::system_msg(agents::assemble_verifier_prompt()),
                               agents::user_msg(verifier_user_message(question, out.attempts, accepted))};
        std::string verdict = agents::complete(verifier, check);
        out.tokens.add_call(check, verdict, counter);
        ++out.verifier_calls;
        if (!agents::is_not_addressed_reply(verdict)) {
            out.ok = true;
            out.summary = agents::trim(verdict);
            return out;
        }
        if (round < limits.max_verify_rounds)
            history.push_back(agents::user_msg(
                "VERIFIER: the results did not address the query. Please re-write the query."));
    }
    out.failure = "verifier did not accept the results after " +
                  std::to_string(limits.max_verify_rounds) + " rounds";
    return out;
}

std::optional<ApiCall> parse_action_line(const std::string& reply) {
    std::istringstream lines(reply);
    std::string line;
    while (std::getline(lines, line)) {
        std::string t = agents::trim(line);
        if (t.rfind("Action:", 0) != 0) continue;
        std::string body = agents::trim(t.substr(7));
        size_t open = body.find('(');
        if (open == std::string::npos || open == 0) return std::nullopt;
        int depth = 0;
        size_t close = std::string::npos;
        for (size_t i = open; i < body.size(); ++i) {
            if (body[i] == '(') ++depth;
            if (body[i] == ')' && --depth == 0) {
                close = i;
                break;
            }
        }
        if (close == std::string::npos) return std::nullopt;
        ApiCall call;
        call.name = agents::trim(body.substr(0, open));
        call.arg = agents::trim(body.substr(open + 1, close - open - 1));
        // ids are sometimes quoted; strings keep their quotes only if
        // they are part of the payload (finish summaries).
        if (call.arg.size() >= 2 && (call.arg.front() == '"' || call.arg.front() == '\'') &&
            call.arg.back() == call.arg.front() && call.name != "finish")
            call.arg = call.arg.substr(1, call.arg.size() - 2);
        return call;
    }
    return std::nullopt;
}

std::string limited_api_annotations() {
    return "- get_neighbors(node_id): list the ids of every node connected to node_id by an "
           "edge.\n"
           "- get_attrs(node_id): list every attribute of the node node_id.";
}

RetrieveOutcome limit_retrieve(const std::string& question, const SceneGraph& graph,
                               const std::string& env_explanation, agents::Backend& agent,
                               int api_budget, const agents::TokenCounter& counter) {
    RetrieveOutcome out;
    agents::Messages history{
        agents::system_msg(
            agents::assemble_limit_retriever_prompt(env_explanation, limited_api_annotations())),
        agents::user_msg(question + "\nYou may make at most " + std::to_string(api_budget) +
                         " API calls.")};

    const int step_cap = 2 * api_budget;
    for (int step = 0; step < step_cap; ++step) {
        std::string reply = agents::complete(agent, history);
        out.tokens.add_call(history, reply, counter);
        history.push_back(agents::assistant_msg(reply));

        std::optional<ApiCall> call = parse_action_line(reply);
        std::string observation;
        if (!call) {
            observation = "INVALID ACTION: reply one line 'Action: <call>' using get_neighbors, "
                          "get_attrs, or finish.";
        } else if (call->name == "finish") {
            out.ok = true;
            out.summary = call->arg;
            return out;
        } else if (call->name != "get_neighbors" && call->name != "get_attrs") {
            observation = "INVALID ACTION: unknown call '" + call->name + "'.";
        } else if (out.api_calls >= api_budget) {
            out.failure =
                "API budget (" + std::to_string(api_budget) + " calls) exhausted before finish";
            return out;
        } else {
            ++out.api_calls;
            try {
                if (call->name == "get_neighbors") {
                    std::ostringstream o;
                    o << call->arg << " neighbors:";
                    for (const std::string& id : query::get_neighbors(graph, call->arg))
                        o << " " << id;
                    observation = o.str();
                } else {
                    query::Row row{call->arg, query::get_attrs(graph, call->arg)};
                    observation = query::render_row(row);
                }
            } catch (const Error& e) {
                observation = std::string("ERROR: ") + e.what();
            }
        }
        history.push_back(agents::user_msg("Observation: " + observation));
    }
    out.failure = "budgeted retrieval agent never finished within " + std::to_string(step_cap) +
                  " steps";
    return out;
}

}  // namespace sgrwr::retriever
