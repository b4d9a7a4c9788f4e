#pragma once

#include <string>

#include "sgrwr/attr_value.hpp"

namespace sgrwr::agents {

// Inputs for prompt assembly. Everything here is schema- or
// environment-level text; no prompt ever embeds data from a concrete
// graph instance.
struct PromptInputs {
    std::string env_explanation;   // required
    std::string schema_text;       // required for planner/retriever
    std::string action_space;      // planning tasks only; may be empty
    std::string tool_annotations;  // may be empty
    std::string few_shot;          // may be empty
};

std::string assemble_planner_prompt(const PromptInputs& in);
std::string assemble_retriever_prompt(const PromptInputs& in, const std::string& grammar);
std::string assemble_verifier_prompt();
std::string assemble_toolcaller_prompt(const std::string& tool_annotations);

// Single-agent baselines.
std::string assemble_react_prompt(const PromptInputs& in, const std::string& api_annotations);
std::string assemble_limit_retriever_prompt(const std::string& env_explanation,
                                            const std::string& api_annotations);
std::string assemble_fullgraph_prompt(const PromptInputs& in, const std::string& graph_text,
                                      const std::string& answer_format, bool chain_of_thought);

// The sentinel the verifier must emit verbatim when a result does not
// address the query, and its normalizer (trim, lowercase, strip trailing
// punctuation).
inline const char* kNotAddressedSentinel = "NOT ADDRESSED";
bool is_not_addressed_reply(const std::string& reply);

}  // namespace sgrwr::agents
