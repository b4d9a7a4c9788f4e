#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sgrwr/env/household.hpp"
#include "sgrwr/scene_graph.hpp"

namespace sgrwr::orch {

enum class TaskFamily { Numqa, Trv1, Trv2, Household };

const char* family_name(TaskFamily f);
TaskFamily family_from_name(const std::string& name);
// Maps an environment name (numqa, trv1, trv2, vh1, vh2) to its family.
TaskFamily family_of_env(const std::string& env);

// One benchmark episode's problem statement. The oracle field that is
// meaningful depends on the family: expected_answer for numqa, trv_target
// for the traversal tasks, goals for household plans.
struct TaskInstance {
    std::string id;
    TaskFamily family = TaskFamily::Numqa;
    std::string env;  // numqa | trv1 | trv2 | vh1 | vh2
    std::uint64_t seed = 0;
    std::string instruction;
    std::shared_ptr<const SceneGraph> graph;

    std::string expected_answer;                  // numqa: the unique color
    std::string trv_target;                       // trv: node id that must end up held
    std::vector<household::GoalPredicate> goals;  // household: final-state predicates
    std::vector<std::string> reference_plan;      // trv bookkeeping; not used for grading
};

// Deterministic task construction. numqa takes any seed; trv1/trv2 take
// any seed; vh1/vh2 seeds index the 8 bundled test tasks (0..7).
TaskInstance gen_task(const std::string& env, std::uint64_t seed);

nlohmann::json task_to_json(const TaskInstance& task);
TaskInstance task_from_json(const nlohmann::json& j);
void save_task_file(const TaskInstance& task, const std::string& path);
TaskInstance load_task_file(const std::string& path);

// What a finished episode hands back: either a one-word answer or a plan
// of action lines.
struct Solution {
    enum class Kind { Answer, Plan };
    Kind kind = Kind::Answer;
    std::string answer;
    std::vector<std::string> plan;
};

struct SolutionFormatError : Error {
    explicit SolutionFormatError(const std::string& what) : Error(what) {}
};

// Turns the planner's SOLUTION content into a Solution. numqa expects a
// single color word; the planning families expect one action line per
// non-empty line. Structural problems raise SolutionFormatError; whether
// the lines are valid actions is the grader's business.
Solution parse_solution(TaskFamily family, const std::string& content);
std::string solution_to_text(const Solution& s);

struct Grade {
    bool success = false;
    std::string failure_reason;  // wrong_answer | plan_invalid | goal_unmet
    std::string detail;
};

Grade grade_solution(const TaskInstance& task, const Solution& solution);

}  // namespace sgrwr::orch
