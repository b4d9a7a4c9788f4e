#pragma once

#include "sgrwr/orch/episodes.hpp"

namespace sgrwr::orch {

// Deterministic drop-in agents for offline end-to-end runs: a planner,
// code writer, verifier, tool caller, and budgeted retrieval agent that
// solve the grid-world tasks by parsing nothing but their own
// transcripts. They honor the same prompt/observation protocol as a
// live model, so episodes run through the ordinary loops unchanged.
// Supported for the schema-guided method on numqa, trv1, and trv2.
EpisodeBackends make_reference_backends(TaskFamily family);

}  // namespace sgrwr::orch
