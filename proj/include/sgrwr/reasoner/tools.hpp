#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sgrwr/agents/backend.hpp"
#include "sgrwr/agents/tokens.hpp"
#include "sgrwr/agents/turns.hpp"

namespace sgrwr::reasoner {

enum class ValueKind { String, Int, Bool, IntList, StringList, Json };

const char* value_kind_name(ValueKind k);

struct ToolArg {
    std::string name;
    ValueKind kind = ValueKind::String;
};

// A deterministic function over explicit arguments; handlers never see
// the scene graph.
struct ToolSpec {
    std::string name;
    std::string annotation;  // must mention every argument by name
    std::vector<ToolArg> args;
    std::function<std::string(const nlohmann::json& args)> handler;
};

class ToolRegistry {
  public:
    void add(ToolSpec spec);
    const ToolSpec* find(const std::string& name) const;
    bool empty() const { return tools_.empty(); }
    // One annotation line per tool, deterministic order.
    std::string annotations_text() const;

  private:
    std::map<std::string, ToolSpec> tools_;
};

struct ToolCallOutcome {
    bool ok = false;
    std::string text;        // result or error detail
    std::string error_kind;  // tool_not_found | tool_arg_error | tool_runtime_error | bad_invocation
    std::string observation() const {
        return ok ? "TOOL RESULT: " + text : "TOOL ERROR: " + error_kind + ": " + text;
    }
};

// Validates an invocation against the registry and runs the tool.
ToolCallOutcome execute_invocation(const ToolRegistry& registry, const std::string& tool_name,
                                   const nlohmann::json& args);

// Full tool-calling step: ask the tool-caller agent to convert the
// planner's content into a JSON invocation, then validate and execute.
// All failures come back as outcomes, never as exceptions.
ToolCallOutcome call_tool(const ToolRegistry& registry, const std::string& invocation_text,
                          agents::Backend& toolcaller, const std::string& toolcaller_prompt,
                          agents::TokenTally* tally = nullptr,
                          const agents::TokenCounter& counter = agents::default_token_counter());

// One planner turn: complete, parse the three-section format, and on a
// format error re-prompt once with the error appended before giving up.
agents::PlannerTurn planner_step(agents::Messages& history, agents::Backend& planner,
                                 agents::TokenTally* tally = nullptr,
                                 const agents::TokenCounter& counter = agents::default_token_counter());

}  // namespace sgrwr::reasoner
