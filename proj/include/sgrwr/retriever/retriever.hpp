#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sgrwr/agents/backend.hpp"
#include "sgrwr/agents/prompts.hpp"
#include "sgrwr/agents/tokens.hpp"
#include "sgrwr/query/eval.hpp"
#include "sgrwr/scene_graph.hpp"
#include "sgrwr/schema.hpp"

namespace sgrwr::retriever {

struct RetrieveLimits {
    int max_code_attempts = 3;  // query drafts per verification round
    int max_verify_rounds = 2;  // verifier rejections tolerated
};

// One code-writer draft and what happened to it.
struct RetrievalAttempt {
    int round = 1;
    std::string program_source;  // the fenced query text, if any was found
    std::string error;           // parse/eval/fence failure; empty on success
    std::string rendered;        // rendered result on success
    bool executed = false;
};

struct RetrieveOutcome {
    bool ok = false;
    std::string summary;  // verifier's summary of the accepted results
    std::string failure;  // reason when !ok
    std::vector<RetrievalAttempt> attempts;
    int codewriter_calls = 0;
    int verifier_calls = 0;
    int api_calls = 0;  // budgeted-API agent only
    agents::TokenTally tokens;
};

// Runs the code-writer / verifier pair against one natural-language
// retrieval request. The code writer gets execution errors fed back and
// may redraft up to max_code_attempts times per round; a verifier
// rejection ("NOT ADDRESSED") starts a fresh round, up to
// max_verify_rounds. Neither agent's transcript leaks to the caller:
// only the outcome does.
RetrieveOutcome retrieve(const std::string& question, const SceneGraph& graph,
                         const Schema& schema, const agents::PromptInputs& inputs,
                         agents::Backend& codewriter, agents::Backend& verifier,
                         const RetrieveLimits& limits = {},
                         const agents::TokenCounter& counter = agents::default_token_counter());

// A Thought/Action line such as "Action: get_attrs(door_1)" parsed into
// a call name and its raw (balanced-paren) argument text. Returns
// nothing when the reply has no well-formed Action line.
struct ApiCall {
    std::string name;
    std::string arg;
};
std::optional<ApiCall> parse_action_line(const std::string& reply);

// Annotations for the fixed retrieval APIs available to the budgeted
// agent below (and to the restricted single-agent baseline).
std::string limited_api_annotations();

// Ablation: replaces the code-writing retriever with a single agent
// restricted to get_neighbors / get_attrs calls, at most api_budget of
// them, that must end with finish(summary).
RetrieveOutcome limit_retrieve(const std::string& question, const SceneGraph& graph,
                               const std::string& env_explanation, agents::Backend& agent,
                               int api_budget = 25,
                               const agents::TokenCounter& counter = agents::default_token_counter());

}  // namespace sgrwr::retriever
