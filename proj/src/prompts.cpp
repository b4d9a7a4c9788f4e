#include "sgrwr/agents/prompts.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "sgrwr/agents/turns.hpp"

namespace sgrwr::agents {

namespace {

void require(const std::string& value, const char* what) {
    if (trim(value).empty()) throw Error(std::string("prompt assembly is missing ") + what);
}

}  // namespace

std::string assemble_planner_prompt(const PromptInputs& in) {
    require(in.env_explanation, "the environment explanation");
    require(in.schema_text, "the schema text");
    std::ostringstream out;
    out << "Given the description of a scene graph schema, scene information, and potentially the "
           "action space of an agent in the scene, please collaborate with a retriever and a tool "
           "executor in natural language to solve the given tasks.\n"
           "You don't know about any graph information. Please always query the retriever for any "
           "information you need.\n\n";
    out << "[Environment]\n" << trim(in.env_explanation) << "\n\n";
    out << "[Scene graph schema]\n" << trim(in.schema_text) << "\n\n";
    if (!trim(in.action_space).empty())
        out << "[Action space]\n" << trim(in.action_space) << "\n\n";
    out << "[Response modes]\n"
           "You can only respond in three modes:\n"
           "1. Query mode. Reason about what information you need to solve the task, and query the "
           "retriever for it.\n"
           "2. Tool mode. Call a function from the given function set to address a substep.\n"
           "3. Solution mode. Give the solution to the task.\n\n";
    out << "[Available tools]\n"
        << (trim(in.tool_annotations).empty() ? "(none)" : trim(in.tool_annotations)) << "\n\n";
    out << "Please always format your responses as follows.\n\n"
           "[Explanation]\n"
           "Explain your reasoning process succinctly.\n\n"
           "[Mode]\n"
           "Only one of QUERY or SOLUTION or TOOL.\n"
           "Note that the SOLUTION mode will terminate the conversation, so only use it when you "
           "have the entire solution.\n\n"
           "[Content]\n"
           "If QUERY, give one query here in one sentence. Be explicit about the attributes you "
           "need, based on the schema.\n"
           "If TOOL, give the function to call. Clearly list the function name and every argument "
           "value. All argument values must be queried from the scene graph first.\n"
           "If SOLUTION, give the solution here.";
    if (!trim(in.few_shot).empty()) out << "\n\n[Examples]\n" << trim(in.few_shot);
    return out.str();
}

std::string assemble_retriever_prompt(const PromptInputs& in, const std::string& grammar) {
    require(in.env_explanation, "the environment explanation");
    require(in.schema_text, "the schema text");
    require(grammar, "the query grammar");
    std::ostringstream out;
    out << "Given the description of a scene graph schema, please write graph queries that address "
           "information retrieval requests over a scene graph you cannot see directly.\n\n";
    out << "[Environment]\n" << trim(in.env_explanation) << "\n\n";
    out << "[Scene graph schema]\n" << trim(in.schema_text) << "\n\n";
    out << "For each request, write exactly one query in the sgq graph query language:\n\n"
        << trim(grammar) << "\n\n";
    out << "Please respond only with the query, wrapped in a code block:\n"
           "```sgq\nYOUR QUERY\n```\n"
           "If an execution error is reported back, please re-write the query.";
    if (!trim(in.few_shot).empty()) out << "\n\n[Examples]\n" << trim(in.few_shot);
    return out.str();
}

std::string assemble_verifier_prompt() {
    return "Given an information retrieval query and the results of executing graph queries "
           "written for it, determine whether the results address the query.\n"
           "If the query is addressed or partially answered, please only summarize the result.\n"
           "If the query is not addressed, please only respond 'NOT ADDRESSED'.";
}

std::string assemble_toolcaller_prompt(const std::string& tool_annotations) {
    require(tool_annotations, "the tool annotations");
    std::ostringstream out;
    out << "You are provided with a list of tool functions and their annotations.\n"
           "Given a message naming the tool to use and its argument values, convert it into a "
           "structured invocation.\n\n[Available tools]\n"
        << trim(tool_annotations)
        << "\n\nPlease respond with only a JSON object of the form {\"tool\": TOOL_NAME, \"args\": "
           "{ARGUMENT: VALUE, ...}}, wrapped in a code block:\n```json\nYOUR JSON\n```";
    return out.str();
}

std::string assemble_react_prompt(const PromptInputs& in, const std::string& api_annotations) {
    require(in.env_explanation, "the environment explanation");
    require(api_annotations, "the API annotations");
    std::ostringstream out;
    out << "Solve the given task by interleaving Thought, Action, and Observation steps.\n\n";
    out << "[Environment]\n" << trim(in.env_explanation) << "\n\n";
    if (!trim(in.action_space).empty())
        out << "[Action space]\n" << trim(in.action_space) << "\n\n";
    out << "[Available actions]\n" << trim(api_annotations) << "\n";
    if (!trim(in.tool_annotations).empty()) out << trim(in.tool_annotations) << "\n";
    out << "finish(solution): finish the task and return the solution.\n\n";
    out << "At every step, respond with:\n"
           "Thought: your reasoning about the next step.\n"
           "Action: exactly one action, formatted as name(arguments).\n\n"
           "After each action you will receive an Observation with the result. Tool arguments are "
           "given as a JSON object.";
    if (!trim(in.few_shot).empty()) out << "\n\n[Examples]\n" << trim(in.few_shot);
    return out.str();
}

std::string assemble_limit_retriever_prompt(const std::string& env_explanation,
                                            const std::string& api_annotations) {
    require(env_explanation, "the environment explanation");
    require(api_annotations, "the API annotations");
    std::ostringstream out;
    out << "You retrieve scene graph information to answer a given query, using only the APIs "
           "below.\n\n[Environment]\n"
        << trim(env_explanation) << "\n\n[Available actions]\n"
        << trim(api_annotations)
        << "\nfinish(summary): stop and return a concise summary answering the query.\n\n"
           "At every step, respond with:\n"
           "Thought: your reasoning about the next step.\n"
           "Action: exactly one action, formatted as name(arguments).\n\n"
           "After each action you will receive an Observation with the result. Finish as soon as "
           "you can answer the query.";
    return out.str();
}

std::string assemble_fullgraph_prompt(const PromptInputs& in, const std::string& graph_text,
                                      const std::string& answer_format, bool chain_of_thought) {
    require(in.env_explanation, "the environment explanation");
    require(graph_text, "the graph text");
    std::ostringstream out;
    out << "Solve the given task using the scene graph below.\n\n";
    out << "[Environment]\n" << trim(in.env_explanation) << "\n\n";
    if (!trim(in.schema_text).empty())
        out << "[Scene graph schema]\n" << trim(in.schema_text) << "\n\n";
    if (!trim(in.action_space).empty())
        out << "[Action space]\n" << trim(in.action_space) << "\n\n";
    out << "[Scene graph]\n" << graph_text << "\n";
    out << trim(answer_format);
    if (chain_of_thought) out << "\nLet's think step by step.";
    return out.str();
}

bool is_not_addressed_reply(const std::string& reply) {
    std::string t = trim(reply);
    while (!t.empty() && (t.back() == '.' || t.back() == '!' || t.back() == '?' || t.back() == '\'' ||
                          t.back() == '"'))
        t.pop_back();
    while (!t.empty() && (t.front() == '\'' || t.front() == '"')) t.erase(t.begin());
    std::transform(t.begin(), t.end(), t.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return t == "not addressed";
}

}  // namespace sgrwr::agents
