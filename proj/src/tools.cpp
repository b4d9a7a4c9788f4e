#include "sgrwr/reasoner/tools.hpp"

#include <sstream>

namespace sgrwr::reasoner {

const char* value_kind_name(ValueKind k) {
    switch (k) {
        case ValueKind::String: return "string";
        case ValueKind::Int: return "int";
        case ValueKind::Bool: return "bool";
        case ValueKind::IntList: return "int list";
        case ValueKind::StringList: return "string list";
        default: return "json";
    }
}

void ToolRegistry::add(ToolSpec spec) {
    if (tools_.count(spec.name)) throw Error("duplicate tool name: " + spec.name);
    for (const ToolArg& a : spec.args)
        if (spec.annotation.find(a.name) == std::string::npos)
            throw Error("tool '" + spec.name + "' annotation does not mention argument '" + a.name +
                        "'");
    std::string name = spec.name;
    tools_.emplace(std::move(name), std::move(spec));
}

const ToolSpec* ToolRegistry::find(const std::string& name) const {
    auto it = tools_.find(name);
    return it == tools_.end() ? nullptr : &it->second;
}

std::string ToolRegistry::annotations_text() const {
    std::ostringstream out;
    bool first = true;
    for (const auto& [name, spec] : tools_) {
        if (!first) out << "\n";
        out << spec.annotation;
        first = false;
    }
    return out.str();
}

namespace {

bool value_matches_kind(const nlohmann::json& v, ValueKind kind) {
    switch (kind) {
        case ValueKind::String: return v.is_string();
        case ValueKind::Int: return v.is_number_integer() || v.is_number_unsigned();
        case ValueKind::Bool: return v.is_boolean();
        case ValueKind::IntList: {
            if (!v.is_array()) return false;
            for (const auto& e : v)
                if (!(e.is_number_integer() || e.is_number_unsigned())) return false;
            return true;
        }
        case ValueKind::StringList: {
            if (!v.is_array()) return false;
            for (const auto& e : v)
                if (!e.is_string()) return false;
            return true;
        }
        default: return true;
    }
}

}  // namespace

ToolCallOutcome execute_invocation(const ToolRegistry& registry, const std::string& tool_name,
                                   const nlohmann::json& args) {
    const ToolSpec* spec = registry.find(tool_name);
    if (!spec)
        return {false, "no tool named '" + tool_name + "'", "tool_not_found"};
    if (!args.is_object())
        return {false, "arguments must be a JSON object", "tool_arg_error"};
    for (const ToolArg& a : spec->args) {
        if (!args.contains(a.name))
            return {false, "missing argument '" + a.name + "'", "tool_arg_error"};
        if (!value_matches_kind(args[a.name], a.kind))
            return {false,
                    "argument '" + a.name + "' must be a " + value_kind_name(a.kind),
                    "tool_arg_error"};
    }
    for (auto it = args.begin(); it != args.end(); ++it) {
        bool known = false;
        for (const ToolArg& a : spec->args)
            if (a.name == it.key()) known = true;
        if (!known) return {false, "unexpected argument '" + it.key() + "'", "tool_arg_error"};
    }
    try {
        return {true, spec->handler(args), ""};
    } catch (const Error& e) {
        return {false, e.what(), "tool_runtime_error"};
    }
}

ToolCallOutcome call_tool(const ToolRegistry& registry, const std::string& invocation_text,
                          agents::Backend& toolcaller, const std::string& toolcaller_prompt,
                          agents::TokenTally* tally, const agents::TokenCounter& counter) {
    agents::Messages messages{agents::system_msg(toolcaller_prompt),
                              agents::user_msg(invocation_text)};
    std::string reply = agents::complete(toolcaller, messages);
    if (tally) tally->add_call(messages, reply, counter);

    std::string payload;
    try {
        payload = agents::extract_fenced(reply, "json");
    } catch (const agents::NoFenceError&) {
        payload = agents::trim(reply);
    }
    nlohmann::json invocation;
    try {
        invocation = nlohmann::json::parse(payload);
    } catch (const nlohmann::json::parse_error& e) {
        return {false, std::string("invocation is not valid JSON: ") + e.what(), "bad_invocation"};
    }
    if (!invocation.is_object() || !invocation.contains("tool") || !invocation["tool"].is_string())
        return {false, "invocation needs a string field 'tool'", "bad_invocation"};
    nlohmann::json args = invocation.value("args", nlohmann::json::object());
    return execute_invocation(registry, invocation["tool"].get<std::string>(), args);
}

agents::PlannerTurn planner_step(agents::Messages& history, agents::Backend& planner,
                                 agents::TokenTally* tally, const agents::TokenCounter& counter) {
    std::string reply = agents::complete(planner, history);
    if (tally) tally->add_call(history, reply, counter);
    history.push_back(agents::assistant_msg(reply));
    try {
        return agents::parse_planner_turn(reply);
    } catch (const agents::FormatError& e) {
        history.push_back(agents::user_msg(
            std::string("FORMAT ERROR: ") + e.what() +
            ". Please answer again using exactly the sections [Explanation], [Mode], [Content]."));
        std::string retry = agents::complete(planner, history);
        if (tally) tally->add_call(history, retry, counter);
        history.push_back(agents::assistant_msg(retry));
        return agents::parse_planner_turn(retry);  // second failure propagates
    }
}

}  // namespace sgrwr::reasoner
