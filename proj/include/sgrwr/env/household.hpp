#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sgrwr/scene_graph.hpp"

namespace sgrwr::household {

// One object reference inside an action line: `<class_name> (id)`.
struct ObjectRef {
    std::string class_name;
    int64_t id = 0;
    bool operator==(const ObjectRef&) const = default;
};

// A single household action. putin/putback carry two refs, all other
// verbs exactly one.
struct HouseholdAction {
    std::string verb;
    std::vector<ObjectRef> refs;
    bool operator==(const HouseholdAction&) const = default;
};

struct ParseError : Error {
    size_t column;  // 1-based position of the offending character
    ParseError(const std::string& what, size_t col) : Error(what), column(col) {}
};

struct PreconditionError : Error {
    explicit PreconditionError(const std::string& what) : Error(what) {}
};

struct UnknownObject : Error {
    explicit UnknownObject(const std::string& what) : Error(what) {}
};

// Parses one line of the form `[verb] <class_name> (id)` or the
// two-object form `[putin] <class_name1> (id1) <class_name2> (id2)`.
// Whitespace between tokens is free; anything else raises ParseError.
HouseholdAction parse_vh_action(const std::string& line);
std::string format_vh_action(const HouseholdAction& action);

// Graph-state simulator. Owns a private copy of the scene graph and
// mutates it as actions are applied; the input graph is never touched.
class Simulator {
  public:
    // agent_id defaults to the lowest-numbered node whose class_name is
    // "character".
    explicit Simulator(const SceneGraph& initial,
                       std::optional<int64_t> agent_id = std::nullopt);

    // Applies one action. Throws UnknownObject when a ref does not
    // resolve (or its class_name does not match), PreconditionError when
    // the action is not allowed in the current state.
    void apply(const HouseholdAction& action);

    const SceneGraph& state() const { return state_; }
    const std::string& agent_id() const { return agent_; }

  private:
    const Node& resolve(const ObjectRef& ref) const;
    bool agent_close_to(const std::string& id) const;
    void require_walked(const std::string& verb, const Node& target) const;
    void require_property(const std::string& verb, const Node& target,
                          const std::string& property) const;

    SceneGraph state_;
    std::string agent_;
};

// Desired final-state predicate. `relation` is one of ON_state,
// OFF_state, OPEN, CLOSED, HEATED, INSIDE, ON_top; the last two name an
// `object` class. Subjects and objects are class names, satisfied by any
// instance of the class.
struct GoalPredicate {
    std::string subject;
    std::string relation;
    std::optional<std::string> object;
    bool operator==(const GoalPredicate&) const = default;
};

// JSON form {"subject":..., "relation":..., "object"?:...}. The state
// relations serialize with the table-style spellings "ON"/"OFF": a bare
// "ON" means ON_state, while "ON" with an object means ON_top. The
// canonical names are accepted on input too.
GoalPredicate goal_from_json(const nlohmann::json& j);
nlohmann::json goal_to_json(const GoalPredicate& goal);
std::string render_goal(const GoalPredicate& goal);  // e.g. "plum INSIDE garbagecan"

bool goal_holds(const SceneGraph& graph, const GoalPredicate& goal);

struct GradeResult {
    bool success = false;
    std::string reason;           // empty when success
    std::optional<size_t> step;   // index of the failing action, if one failed
};

// Applies the plan on a private copy of `initial` and checks the goals
// against the final state. Stops at the first failing action.
GradeResult grade_plan(const SceneGraph& initial, const std::vector<HouseholdAction>& plan,
                       const std::vector<GoalPredicate>& goals);

struct HouseholdTask {
    std::string name;
    std::string instruction;
    std::vector<GoalPredicate> goals;
    std::vector<std::string> golden_plan;  // action lines
    bool few_shot = false;                 // demonstration tasks are excluded from testing
    bool operator==(const HouseholdTask&) const = default;
};

nlohmann::json household_task_to_json(const HouseholdTask& task);
HouseholdTask household_task_from_json(const nlohmann::json& j);

// Bundled environments: "vh1" and "vh2". Each fixture is a deterministic
// hand-authored household graph; each task list holds 10 entries, the
// first 2 flagged few_shot.
SceneGraph load_household_fixture(const std::string& name);
std::vector<HouseholdTask> household_tasks(const std::string& name);

// The node acting as the agent: lowest-numbered "character".
int64_t household_agent_id(const SceneGraph& graph);

// Prompt surfaces (no instance data; demonstration ids use the 9000
// range, which the fixtures never allocate).
std::string household_env_explanation();
std::string household_action_space();
std::string household_few_shot();

}  // namespace sgrwr::household
