#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "doctest.h"
#include "sgrwr/env/household.hpp"
#include "sgrwr/schema.hpp"

using namespace sgrwr;
using namespace sgrwr::household;

namespace {

HouseholdAction act(const std::string& line) { return parse_vh_action(line); }

std::vector<HouseholdAction> plan_of(const std::vector<std::string>& lines) {
    std::vector<HouseholdAction> out;
    for (const std::string& line : lines) out.push_back(parse_vh_action(line));
    return out;
}

bool node_has_state(const SceneGraph& g, const std::string& id, const std::string& st) {
    const AttrValue* v = g.nodes.at(id).get("states");
    if (!v || !std::holds_alternative<StringList>(*v)) return false;
    const StringList& states = std::get<StringList>(*v);
    return std::find(states.begin(), states.end(), st) != states.end();
}

bool has_edge(const SceneGraph& g, const std::string& from, const std::string& to,
              const std::string& rel) {
    for (const Edge& e : g.edges)
        if (e.from == from && e.to == to && e.relationship == rel) return true;
    return false;
}

int count_edges_from(const SceneGraph& g, const std::string& from, const std::string& rel) {
    int n = 0;
    for (const Edge& e : g.edges)
        if (e.from == from && e.relationship == rel) ++n;
    return n;
}

}  // namespace

TEST_CASE("bundled fixtures are large, conforming, and deterministic") {
    for (const char* name : {"vh1", "vh2"}) {
        CAPTURE(name);
        SceneGraph g = load_household_fixture(name);
        CHECK(g.profile == "household");
        CHECK(g.nodes.size() >= 115);
        CHECK(validate(g, household_schema()).empty());
        CHECK(load_household_fixture(name) == g);

        // every relationship the schema knows actually occurs
        std::set<std::string> rels;
        for (const Edge& e : g.edges) rels.insert(e.relationship);
        for (const char* rel : {"ON", "INSIDE", "BETWEEN", "CLOSE", "FACING", "HOLDS_RH",
                                "HOLD_LH", "SITTING"})
            CHECK(rels.count(rel) == 1);
    }
    CHECK(household_agent_id(load_household_fixture("vh1")) == 1);
    CHECK(household_agent_id(load_household_fixture("vh2")) == 3);
    CHECK_THROWS_WITH(load_household_fixture("vh9"),
                      "unknown household fixture: vh9 (expected vh1 or vh2)");
}

TEST_CASE("action lines parse, print, and reject malformed input with columns") {
    CHECK(act("[walk] <tv> (22)") == HouseholdAction{"walk", {{"tv", 22}}});
    CHECK(act("  [putin]  <plum> (52)  <garbagecan> (46)  ") ==
          HouseholdAction{"putin", {{"plum", 52}, {"garbagecan", 46}}});
    CHECK(format_vh_action({"putback", {{"plate", 51}, {"kitchentable", 41}}}) ==
          "[putback] <plate> (51) <kitchentable> (41)");
    CHECK(act(format_vh_action({"grab", {{"mug", 60}}})) == HouseholdAction{"grab", {{"mug", 60}}});

    auto parse_error = [](const std::string& line, const std::string& what, size_t column) {
        CAPTURE(line);
        try {
            parse_vh_action(line);
            FAIL("expected a parse error for: " << line);
        } catch (const ParseError& e) {
            CHECK(e.what() == what);
            CHECK(e.column == column);
        }
    };
    parse_error("", "empty action line", 1);
    parse_error("walk <tv> (22)", "expected '[' before the verb at column 1", 1);
    parse_error("[fly] <tv> (22)", "unknown verb 'fly' at column 2", 2);
    parse_error("[walk] tv (22)", "expected '<' before a class name at column 8", 8);
    parse_error("[walk] <my tv> (22)",
                "class names are single lowercase words; got 'my tv' at column 9", 9);
    parse_error("[walk] <tv> (twenty)", "ids are unsigned integers; got 'twenty' at column 14",
                14);
    parse_error("[walk] <tv> (22", "unterminated id; expected ')' at column 16", 16);
    parse_error("[putin] <plum> (52)", "[putin] needs a second object reference at column 20",
                20);
    parse_error("[walk] <tv> (22) again", "unexpected text after the action at column 18", 18);
}

TEST_CASE("goal predicates round-trip through their table spellings") {
    GoalPredicate on_state = goal_from_json({{"subject", "tv"}, {"relation", "ON"}});
    CHECK(on_state == GoalPredicate{"tv", "ON_state", std::nullopt});
    CHECK(goal_to_json(on_state) == nlohmann::json{{"subject", "tv"}, {"relation", "ON"}});

    GoalPredicate on_top = goal_from_json(
        {{"subject", "plate"}, {"relation", "ON"}, {"object", "kitchentable"}});
    CHECK(on_top == GoalPredicate{"plate", "ON_top", "kitchentable"});
    CHECK(goal_to_json(on_top)["relation"] == "ON");
    CHECK(goal_to_json(on_top)["object"] == "kitchentable");

    CHECK(goal_from_json({{"subject", "lamp"}, {"relation", "OFF"}}).relation == "OFF_state");
    // canonical spellings are accepted too
    CHECK(goal_from_json({{"subject", "tv"}, {"relation", "ON_state"}}) == on_state);
    CHECK(goal_from_json({{"subject", "plate"}, {"relation", "ON_top"},
                          {"object", "kitchentable"}}) == on_top);

    for (const char* rel : {"ON_state", "OFF_state", "OPEN", "CLOSED", "HEATED"}) {
        GoalPredicate g{"thing", rel, std::nullopt};
        CHECK(goal_from_json(goal_to_json(g)) == g);
    }
    for (const char* rel : {"INSIDE", "ON_top"}) {
        GoalPredicate g{"thing", rel, std::string("box")};
        CHECK(goal_from_json(goal_to_json(g)) == g);
    }

    CHECK(render_goal({"plum", "INSIDE", "garbagecan"}) == "plum INSIDE garbagecan");
    CHECK(render_goal({"tv", "ON_state", std::nullopt}) == "tv ON");
    CHECK(render_goal({"plate", "ON_top", "kitchentable"}) == "plate ON kitchentable");

    CHECK_THROWS_WITH(goal_from_json({{"subject", "plum"}, {"relation", "INSIDE"}}),
                      "goal relation INSIDE needs an object class");
    CHECK_THROWS_WITH(
        goal_from_json({{"subject", "door"}, {"relation", "OPEN"}, {"object", "room"}}),
        "goal relation OPEN does not take an object");
    CHECK_THROWS_WITH(goal_from_json({{"subject", "a"}, {"relation", "NEAR"}}),
                      "unknown goal relation: NEAR");
}

TEST_CASE("goal predicates match any instance of the class") {
    SceneGraph g = load_household_fixture("vh1");
    CHECK(goal_holds(g, {"apple", "INSIDE", "fridge"}));        // stocked from the start
    CHECK(goal_holds(g, {"book", "ON_top", "bookshelf"}));      // any of the three books
    CHECK(goal_holds(g, {"tablelamp", "ON_state", std::nullopt}));
    CHECK(!goal_holds(g, {"tv", "ON_state", std::nullopt}));
    CHECK(!goal_holds(g, {"plum", "INSIDE", "garbagecan"}));
    CHECK(!goal_holds(g, {"milk", "HEATED", std::nullopt}));
}

TEST_CASE("the simulator enforces walk, property, and hand preconditions") {
    SceneGraph initial = load_household_fixture("vh1");
    Simulator sim(initial);
    CHECK(sim.agent_id() == "1");

    SUBCASE("walking re-targets the only interaction edge and moves rooms") {
        CHECK(has_edge(sim.state(), "1", "21", "CLOSE"));
        sim.apply(act("[walk] <plum> (52)"));
        CHECK(!has_edge(sim.state(), "1", "21", "CLOSE"));
        CHECK(has_edge(sim.state(), "1", "52", "CLOSE"));
        CHECK(has_edge(sim.state(), "1", "12", "INSIDE"));  // followed the plum to the kitchen
        CHECK(!has_edge(sim.state(), "1", "11", "INSIDE"));
        CHECK(count_edges_from(sim.state(), "1", "CLOSE") == 1);
    }
    SUBCASE("grab requires proximity, the property, and a free hand") {
        CHECK_THROWS_AS(sim.apply(act("[grab] <plum> (52)")), PreconditionError);
        CHECK_THROWS_WITH(sim.apply(act("[grab] <plum> (52)")),
                          "[grab] requires that the agent has walked to that object first");
        sim.apply(act("[walk] <tv> (22)"));
        CHECK_THROWS_WITH(sim.apply(act("[grab] <tv> (22)")),
                          "[grab] requires an object with the GRABBABLE property; tv lacks it");

        sim.apply(act("[walk] <plum> (52)"));
        sim.apply(act("[grab] <plum> (52)"));
        CHECK(has_edge(sim.state(), "1", "52", "HOLDS_RH"));
        CHECK(!has_edge(sim.state(), "52", "42", "ON"));  // lifted off the counter
        CHECK_THROWS_WITH(sim.apply(act("[grab] <plum> (52)")),
                          "the agent already holds that object");

        sim.apply(act("[walk] <breadslice> (53)"));
        sim.apply(act("[grab] <breadslice> (53)"));
        CHECK(has_edge(sim.state(), "1", "53", "HOLD_LH"));
        sim.apply(act("[walk] <mug> (60)"));
        CHECK_THROWS_WITH(sim.apply(act("[grab] <mug> (60)")),
                          "[grab] requires a free hand; both hands are full");
    }
    SUBCASE("objects in another character's hands cannot be taken") {
        sim.apply(act("[walk] <book> (27)"));
        CHECK_THROWS_WITH(sim.apply(act("[grab] <book> (27)")),
                          "another character is holding that object");
    }
    SUBCASE("open and close flip states exactly once") {
        sim.apply(act("[walk] <fridge> (43)"));
        sim.apply(act("[open] <fridge> (43)"));
        CHECK(node_has_state(sim.state(), "43", "OPEN"));
        CHECK(!node_has_state(sim.state(), "43", "CLOSED"));
        CHECK_THROWS_WITH(sim.apply(act("[open] <fridge> (43)")),
                          "[open] the object is already open");
        sim.apply(act("[close] <fridge> (43)"));
        CHECK(node_has_state(sim.state(), "43", "CLOSED"));
        CHECK_THROWS_WITH(sim.apply(act("[close] <fridge> (43)")),
                          "[close] the object is already closed");
    }
    SUBCASE("switches require the property and reject repeats") {
        sim.apply(act("[walk] <sofa> (21)"));
        CHECK_THROWS_WITH(sim.apply(act("[switchon] <sofa> (21)")),
                          "[switchon] requires an object with the HAS_SWITCH property; sofa "
                          "lacks it");
        sim.apply(act("[walk] <tv> (22)"));
        sim.apply(act("[switchon] <tv> (22)"));
        CHECK(node_has_state(sim.state(), "22", "ON"));
        CHECK_THROWS_WITH(sim.apply(act("[switchon] <tv> (22)")),
                          "[switchon] the object is already on");
        sim.apply(act("[switchoff] <tv> (22)"));
        CHECK(node_has_state(sim.state(), "22", "OFF"));
    }
    SUBCASE("sitting sticks until the agent walks away") {
        sim.apply(act("[walk] <sofa> (21)"));
        sim.apply(act("[sit] <sofa> (21)"));
        CHECK(has_edge(sim.state(), "1", "21", "SITTING"));
        CHECK_THROWS_WITH(sim.apply(act("[sit] <sofa> (21)")),
                          "[sit] the agent is already sitting");
        sim.apply(act("[walk] <chair> (30)"));
        CHECK(!has_edge(sim.state(), "1", "21", "SITTING"));
        sim.apply(act("[sit] <chair> (30)"));
        CHECK(has_edge(sim.state(), "1", "30", "SITTING"));
    }
    SUBCASE("putin needs the held object, proximity, and an open container") {
        CHECK_THROWS_WITH(sim.apply(act("[putin] <plum> (52) <garbagecan> (46)")),
                          "[putin] requires that the agent is holding object 1");
        sim.apply(act("[walk] <plum> (52)"));
        sim.apply(act("[grab] <plum> (52)"));
        CHECK_THROWS_WITH(sim.apply(act("[putin] <plum> (52) <garbagecan> (46)")),
                          "[putin] requires that the agent has walked to the object 2 first");
        sim.apply(act("[walk] <garbagecan> (46)"));
        CHECK_THROWS_WITH(sim.apply(act("[putin] <plum> (52) <garbagecan> (46)")),
                          "[putin] requires that the container is open");
        sim.apply(act("[open] <garbagecan> (46)"));
        sim.apply(act("[putin] <plum> (52) <garbagecan> (46)"));
        CHECK(has_edge(sim.state(), "52", "46", "INSIDE"));
        CHECK(!has_edge(sim.state(), "1", "52", "HOLDS_RH"));
    }
    SUBCASE("putback rests the object on top without an open check") {
        sim.apply(act("[walk] <plate> (51)"));
        sim.apply(act("[grab] <plate> (51)"));
        sim.apply(act("[walk] <kitchentable> (41)"));
        sim.apply(act("[putback] <plate> (51) <kitchentable> (41)"));
        CHECK(has_edge(sim.state(), "51", "41", "ON"));
    }
    SUBCASE("heat sources heat their contents when running") {
        // switched on around the food
        for (const char* line : {"[walk] <breadslice> (53)", "[grab] <breadslice> (53)",
                                 "[walk] <toaster> (45)",
                                 "[putin] <breadslice> (53) <toaster> (45)",
                                 "[switchon] <toaster> (45)"})
            sim.apply(act(line));
        CHECK(node_has_state(sim.state(), "53", "HEATED"));

        // already running when the food drops in
        for (const char* line : {"[walk] <chips> (69)", "[grab] <chips> (69)",
                                 "[walk] <toaster> (45)", "[putin] <chips> (69) <toaster> (45)"})
            sim.apply(act(line));
        CHECK(node_has_state(sim.state(), "69", "HEATED"));
    }
    SUBCASE("references must resolve to the named class") {
        CHECK_THROWS_AS(sim.apply(act("[walk] <tv> (999)")), UnknownObject);
        CHECK_THROWS_WITH(sim.apply(act("[walk] <tv> (999)")), "no object with id 999");
        CHECK_THROWS_WITH(sim.apply(act("[walk] <lamp> (22)")),
                          "object 22 is a 'tv', not a 'lamp'");
        CHECK_THROWS_WITH(sim.apply(act("[walk] <character> (1)")),
                          "the agent cannot act on itself");
    }
    SUBCASE("the input graph is never mutated") {
        sim.apply(act("[walk] <tv> (22)"));
        sim.apply(act("[switchon] <tv> (22)"));
        CHECK(initial == load_household_fixture("vh1"));
    }
    SUBCASE("a different agent can be selected") {
        Simulator other(initial, 2);
        CHECK(other.agent_id() == "2");
        // character 2 already holds two objects
        CHECK_THROWS_WITH(other.apply(act("[grab] <cushion> (38)")),
                          "[grab] requires that the agent has walked to that object first");
    }
    SUBCASE("non-household graphs are rejected") {
        SceneGraph wrong;
        wrong.profile = "babyai";
        CHECK_THROWS_WITH(Simulator{wrong},
                          "the household simulator needs a household-profile graph, got "
                          "'babyai'");
    }
}

TEST_CASE("every bundled golden plan reaches its goals") {
    for (const char* name : {"vh1", "vh2"}) {
        CAPTURE(name);
        SceneGraph g = load_household_fixture(name);
        std::vector<HouseholdTask> tasks = household_tasks(name);
        REQUIRE(tasks.size() == 10);
        CHECK(tasks[0].few_shot);
        CHECK(tasks[1].few_shot);
        int graded = 0;
        for (const HouseholdTask& task : tasks) {
            CAPTURE(task.name);
            if (!task.few_shot) ++graded;
            GradeResult r = grade_plan(g, plan_of(task.golden_plan), task.goals);
            CHECK(r.success);
            CHECK(r.reason.empty());
            CHECK(!r.step.has_value());
        }
        CHECK(graded == 8);
    }
}

TEST_CASE("dropping the open step fails the plan at the putin action") {
    SceneGraph g = load_household_fixture("vh1");
    std::vector<HouseholdTask> tasks = household_tasks("vh1");
    const HouseholdTask* plum = nullptr;
    for (const HouseholdTask& t : tasks)
        if (t.name == "throw_away_plum") plum = &t;
    REQUIRE(plum != nullptr);

    std::vector<std::string> lines = plum->golden_plan;
    std::erase_if(lines, [](const std::string& l) { return l.rfind("[open]", 0) == 0; });
    REQUIRE(lines.size() == plum->golden_plan.size() - 1);

    GradeResult r = grade_plan(g, plan_of(lines), plum->goals);
    CHECK(!r.success);
    REQUIRE(r.step.has_value());
    CHECK(*r.step == 3);
    CHECK(r.reason ==
          "action 4 ([putin] <plum> (52) <garbagecan> (46)): [putin] requires that the "
          "container is open");

    SUBCASE("a plan that runs clean but misses the goal reports it") {
        std::vector<std::string> noop{"[walk] <plum> (52)", "[grab] <plum> (52)"};
        GradeResult miss = grade_plan(g, plan_of(noop), plum->goals);
        CHECK(!miss.success);
        CHECK(!miss.step.has_value());
        CHECK(miss.reason == "goal not met: plum INSIDE garbagecan");
    }
}

TEST_CASE("random action sequences preserve the world invariants") {
    SceneGraph initial = load_household_fixture("vh1");
    const std::string agent = std::to_string(household_agent_id(initial));

    struct Target {
        std::string cls;
        int64_t id;
    };
    std::vector<Target> targets;
    for (const auto& [id, node] : initial.nodes) {
        const std::string* cls = node.get_str("class_name");
        targets.push_back({*cls, std::stoll(id)});
    }
    const char* verbs[] = {"walk", "walk", "walk", "grab", "open", "close",
                           "switchon", "switchoff", "sit", "putin", "putback"};

    std::mt19937_64 rng(99);
    auto below = [&](size_t n) { return static_cast<size_t>(rng() % n); };

    Simulator sim(initial);
    int applied = 0;
    for (int round = 0; round < 400; ++round) {
        HouseholdAction a{verbs[below(std::size(verbs))], {}};
        const Target& t = targets[below(targets.size())];
        a.refs.push_back({t.cls, t.id});
        if (a.verb == "putin" || a.verb == "putback") {
            const Target& t2 = targets[below(targets.size())];
            a.refs.push_back({t2.cls, t2.id});
        }
        try {
            sim.apply(a);
        } catch (const Error&) {
            continue;  // rejected actions must leave no trace; checked below anyway
        }
        ++applied;
        CAPTURE(round);
        CAPTURE(format_vh_action(a));
        const SceneGraph& s = sim.state();

        // still a conforming household graph, with no duplicated edges
        CHECK(validate(s, household_schema()).empty());
        std::set<std::tuple<std::string, std::string, std::string>> seen;
        for (const Edge& e : s.edges)
            CHECK(seen.insert({e.from, e.to, e.relationship}).second);

        // one interaction target, one room, at most one seat
        CHECK(count_edges_from(s, agent, "CLOSE") == 1);
        CHECK(count_edges_from(s, agent, "INSIDE") == 1);
        CHECK(count_edges_from(s, agent, "SITTING") <= 1);
        CHECK(count_edges_from(s, agent, "HOLDS_RH") <= 1);
        CHECK(count_edges_from(s, agent, "HOLD_LH") <= 1);

        for (const auto& [id, node] : s.nodes) {
            // state lists never contradict themselves
            CHECK(!(node_has_state(s, id, "ON") && node_has_state(s, id, "OFF")));
            CHECK(!(node_has_state(s, id, "OPEN") && node_has_state(s, id, "CLOSED")));
            // a held object rests nowhere
            bool held = false;
            for (const Edge& e : s.edges)
                if (e.to == id && (e.relationship == "HOLDS_RH" || e.relationship == "HOLD_LH"))
                    held = true;
            if (held) {
                CHECK(count_edges_from(s, id, "ON") == 0);
                CHECK(count_edges_from(s, id, "INSIDE") == 0);
            }
        }
    }
    // the walk bias keeps plenty of actions landing
    CHECK(applied > 60);
}

TEST_CASE("tasks serialize losslessly") {
    for (const char* name : {"vh1", "vh2"})
        for (const HouseholdTask& task : household_tasks(name)) {
            CAPTURE(task.name);
            CHECK(household_task_from_json(household_task_to_json(task)) == task);
        }
    HouseholdTask sparse = household_task_from_json(
        {{"task_name", "t"}, {"instruction", "do it"}, {"goals", nlohmann::json::array()}});
    CHECK(sparse.golden_plan.empty());
    CHECK(!sparse.few_shot);
}

TEST_CASE("prompt surfaces describe the household setting") {
    CHECK(household_env_explanation().find("household") != std::string::npos);
    std::string space = household_action_space();
    for (const char* verb : {"[walk]", "[grab]", "[open]", "[close]", "[switchon]",
                             "[switchoff]", "[sit]", "[putin]", "[putback]"})
        CHECK(space.find(verb) != std::string::npos);
    CHECK(household_few_shot().find("[Mode]") != std::string::npos);
    CHECK(household_few_shot().find("(9003)") != std::string::npos);
}
