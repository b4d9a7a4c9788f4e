#pragma once

#include <memory>

#include "sgrwr/agents/backend.hpp"
#include "sgrwr/agents/prompts.hpp"
#include "sgrwr/agents/tokens.hpp"
#include "sgrwr/orch/task.hpp"
#include "sgrwr/orch/trace.hpp"
#include "sgrwr/reasoner/tools.hpp"
#include "sgrwr/retriever/retriever.hpp"

namespace sgrwr::orch {

struct EpisodeLimits {
    int max_iterations = 20;
    retriever::RetrieveLimits retrieve{};
    int api_budget = 25;  // budgeted-API retrieval variant
};

// The agent roles an episode may need. Multi-agent methods read the
// roles they use; single-agent methods use only `planner`.
struct EpisodeBackends {
    std::shared_ptr<agents::Backend> planner;
    std::shared_ptr<agents::Backend> codewriter;
    std::shared_ptr<agents::Backend> verifier;
    std::shared_ptr<agents::Backend> toolcaller;
    std::shared_ptr<agents::Backend> retrieval_agent;  // budgeted-API variant
};

// Environment-level prompt surfaces and tools for a task. Everything is
// schema/template text: nothing from the concrete graph instance.
struct TaskSurfaces {
    agents::PromptInputs inputs;
    reasoner::ToolRegistry tools;
    std::string answer_format;  // instruction suffix for the full-graph baseline
};
TaskSurfaces surfaces_for(const TaskInstance& task);

// The schema-guided loop: planner turns in QUERY/TOOL/SOLUTION modes,
// retrieval through the code-writing retriever, observations appended as
// user messages. The planner never sees the graph or the retriever's
// working; the retriever never sees the planner's reasoning.
EpisodeTrace run_rwr_episode(const TaskInstance& task, const EpisodeBackends& backends,
                             const EpisodeLimits& limits = {},
                             const agents::TokenCounter& counter = agents::default_token_counter());

// Same loop with the code-writing retriever swapped for the budgeted
// get_neighbors/get_attrs agent.
EpisodeTrace run_rwr_limit_episode(const TaskInstance& task, const EpisodeBackends& backends,
                                   const EpisodeLimits& limits = {},
                                   const agents::TokenCounter& counter = agents::default_token_counter());

// Single-agent Thought/Action/Observation baseline over the whole
// accumulating transcript. api_limited=false exposes expand();
// api_limited=true exposes get_neighbors/get_attrs instead.
EpisodeTrace run_react_episode(const TaskInstance& task, agents::Backend& backend,
                               bool api_limited, const EpisodeLimits& limits = {},
                               const agents::TokenCounter& counter = agents::default_token_counter());

// Single-completion baseline over the fully textualized graph.
EpisodeTrace run_fullgraph_episode(const TaskInstance& task, agents::Backend& backend,
                                   bool chain_of_thought,
                                   const agents::TokenCounter& counter = agents::default_token_counter());

}  // namespace sgrwr::orch
