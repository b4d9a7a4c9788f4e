#include "sgrwr/orch/task.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "sgrwr/agents/turns.hpp"
#include "sgrwr/env/babyai.hpp"

namespace sgrwr::orch {

const char* family_name(TaskFamily f) {
    switch (f) {
        case TaskFamily::Numqa: return "numqa";
        case TaskFamily::Trv1: return "trv1";
        case TaskFamily::Trv2: return "trv2";
        default: return "household";
    }
}

TaskFamily family_from_name(const std::string& name) {
    if (name == "numqa") return TaskFamily::Numqa;
    if (name == "trv1") return TaskFamily::Trv1;
    if (name == "trv2") return TaskFamily::Trv2;
    if (name == "household") return TaskFamily::Household;
    throw Error("unknown task family: " + name);
}

TaskFamily family_of_env(const std::string& env) {
    if (env == "vh1" || env == "vh2") return TaskFamily::Household;
    return family_from_name(env);
}

namespace {

std::string padded_seed(std::uint64_t seed) {
    std::string s = std::to_string(seed);
    while (s.size() < 4) s.insert(s.begin(), '0');
    return s;
}

TaskInstance household_instance(const std::string& env, std::uint64_t seed) {
    std::vector<household::HouseholdTask> all = household::household_tasks(env);
    std::vector<household::HouseholdTask> test;
    for (household::HouseholdTask& t : all)
        if (!t.few_shot) test.push_back(std::move(t));
    if (seed >= test.size())
        throw Error(env + " has " + std::to_string(test.size()) +
                    " test tasks; seeds must lie in 0.." + std::to_string(test.size() - 1));
    const household::HouseholdTask& picked = test[seed];
    TaskInstance task;
    task.id = env + "_" + picked.name;
    task.family = TaskFamily::Household;
    task.env = env;
    task.seed = seed;
    task.instruction = picked.instruction;
    task.graph = std::make_shared<SceneGraph>(household::load_household_fixture(env));
    task.goals = picked.goals;
    return task;
}

}  // namespace

TaskInstance gen_task(const std::string& env, std::uint64_t seed) {
    if (env == "vh1" || env == "vh2") return household_instance(env, seed);
    TaskInstance task;
    task.env = env;
    task.seed = seed;
    task.id = env + "_" + padded_seed(seed);
    if (env == "numqa") {
        task.family = TaskFamily::Numqa;
        babyai::NumqaInstance inst = babyai::gen_numqa(seed);
        task.instruction = inst.instruction;
        task.graph = std::make_shared<SceneGraph>(babyai::build_scene_graph(inst.world));
        task.expected_answer = inst.answer;
        return task;
    }
    if (env == "trv1" || env == "trv2") {
        task.family = env == "trv1" ? TaskFamily::Trv1 : TaskFamily::Trv2;
        babyai::TrvInstance inst = babyai::gen_trv(seed, env == "trv2");
        task.instruction = inst.instruction;
        task.graph = std::make_shared<SceneGraph>(babyai::build_scene_graph(inst.world));
        task.trv_target = inst.target_id;
        for (const babyai::TrvAction& a : inst.reference_plan)
            task.reference_plan.push_back(babyai::format_trv_action(a));
        return task;
    }
    throw Error("unknown environment: " + env + " (expected numqa, trv1, trv2, vh1, or vh2)");
}

nlohmann::json task_to_json(const TaskInstance& task) {
    nlohmann::json j;
    j["id"] = task.id;
    j["family"] = family_name(task.family);
    j["env"] = task.env;
    j["seed"] = task.seed;
    j["instruction"] = task.instruction;
    if (!task.graph) throw Error("task has no graph attached: " + task.id);
    j["graph"] = graph_to_json(*task.graph);
    nlohmann::json oracle;
    switch (task.family) {
        case TaskFamily::Numqa:
            oracle["answer"] = task.expected_answer;
            break;
        case TaskFamily::Trv1:
        case TaskFamily::Trv2:
            oracle["target_id"] = task.trv_target;
            oracle["reference_plan"] = task.reference_plan;
            break;
        case TaskFamily::Household: {
            nlohmann::json goals = nlohmann::json::array();
            for (const household::GoalPredicate& g : task.goals)
                goals.push_back(household::goal_to_json(g));
            oracle["goals"] = std::move(goals);
            break;
        }
    }
    j["oracle"] = std::move(oracle);
    return j;
}

TaskInstance task_from_json(const nlohmann::json& j) {
    TaskInstance task;
    task.id = j.at("id").get<std::string>();
    task.family = family_from_name(j.at("family").get<std::string>());
    task.env = j.at("env").get<std::string>();
    task.seed = j.at("seed").get<std::uint64_t>();
    task.instruction = j.at("instruction").get<std::string>();
    task.graph = std::make_shared<SceneGraph>(graph_from_json(j.at("graph")));
    const nlohmann::json& oracle = j.at("oracle");
    switch (task.family) {
        case TaskFamily::Numqa:
            task.expected_answer = oracle.at("answer").get<std::string>();
            break;
        case TaskFamily::Trv1:
        case TaskFamily::Trv2:
            task.trv_target = oracle.at("target_id").get<std::string>();
            task.reference_plan =
                oracle.value("reference_plan", std::vector<std::string>{});
            break;
        case TaskFamily::Household:
            for (const auto& gj : oracle.at("goals"))
                task.goals.push_back(household::goal_from_json(gj));
            break;
    }
    return task;
}

void save_task_file(const TaskInstance& task, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open task file for writing: " + path);
    out << task_to_json(task).dump(2) << "\n";
    if (!out) throw Error("failed while writing task file: " + path);
}

TaskInstance load_task_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open task file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error("task file " + path + " is not valid JSON: " + e.what());
    }
    return task_from_json(j);
}

namespace {

std::string strip_trailing_punct(std::string s) {
    while (!s.empty() && (s.back() == '.' || s.back() == '!' || s.back() == ',')) s.pop_back();
    return s;
}

std::string lowercase(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::vector<std::string> non_empty_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        line = agents::trim(line);
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

}  // namespace

Solution parse_solution(TaskFamily family, const std::string& content) {
    if (family == TaskFamily::Numqa) {
        std::string word = strip_trailing_punct(agents::trim(content));
        if (word.empty()) throw SolutionFormatError("the solution is empty; expected a color word");
        if (word.find_first_of(" \t\n") != std::string::npos)
            throw SolutionFormatError("the solution must be a single color word, got: " + word);
        Solution s;
        s.kind = Solution::Kind::Answer;
        s.answer = lowercase(word);
        return s;
    }
    Solution s;
    s.kind = Solution::Kind::Plan;
    s.plan = non_empty_lines(content);
    if (s.plan.empty())
        throw SolutionFormatError("the solution is empty; expected one action per line");
    return s;
}

std::string solution_to_text(const Solution& s) {
    if (s.kind == Solution::Kind::Answer) return s.answer;
    std::string out;
    for (size_t i = 0; i < s.plan.size(); ++i) {
        if (i) out += "\n";
        out += s.plan[i];
    }
    return out;
}

namespace {

Grade grade_numqa(const TaskInstance& task, const Solution& sol) {
    if (lowercase(sol.answer) == lowercase(task.expected_answer)) return Grade{true, "", ""};
    return Grade{false, "wrong_answer",
                 "expected '" + task.expected_answer + "', got '" + sol.answer + "'"};
}

Grade grade_trv(const TaskInstance& task, const Solution& sol) {
    std::vector<babyai::TrvAction> plan;
    for (const std::string& line : sol.plan) {
        try {
            plan.push_back(babyai::parse_trv_action(line));
        } catch (const Error& e) {
            return Grade{false, "plan_invalid", std::string("unparsable action: ") + e.what()};
        }
    }
    babyai::GridWorld world = babyai::world_from_graph(*task.graph);
    babyai::GradeResult r = babyai::grade_trv_plan(world, task.trv_target, plan);
    if (r.success) return Grade{true, "", ""};
    if (r.failed_step >= 0) return Grade{false, "plan_invalid", r.reason};
    return Grade{false, "goal_unmet", r.reason};
}

Grade grade_household(const TaskInstance& task, const Solution& sol) {
    std::vector<household::HouseholdAction> plan;
    for (const std::string& line : sol.plan) {
        try {
            plan.push_back(household::parse_vh_action(line));
        } catch (const Error& e) {
            return Grade{false, "plan_invalid", std::string("unparsable action: ") + e.what()};
        }
    }
    household::GradeResult r = household::grade_plan(*task.graph, plan, task.goals);
    if (r.success) return Grade{true, "", ""};
    if (r.step.has_value()) return Grade{false, "plan_invalid", r.reason};
    return Grade{false, "goal_unmet", r.reason};
}

}  // namespace

Grade grade_solution(const TaskInstance& task, const Solution& solution) {
    bool want_answer = task.family == TaskFamily::Numqa;
    bool is_answer = solution.kind == Solution::Kind::Answer;
    if (want_answer != is_answer)
        return Grade{false, "plan_invalid",
                     want_answer ? "this task expects a one-word answer, not a plan"
                                 : "this task expects a plan, not a bare answer"};
    if (!task.graph) throw Error("task has no graph attached: " + task.id);
    switch (task.family) {
        case TaskFamily::Numqa: return grade_numqa(task, solution);
        case TaskFamily::Trv1:
        case TaskFamily::Trv2: return grade_trv(task, solution);
        default: return grade_household(task, solution);
    }
}

}  // namespace sgrwr::orch
