#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "sgrwr/env/babyai.hpp"
#include "sgrwr/reasoner/tools.hpp"
#include "support/astar_oracle.hpp"

using namespace sgrwr;
using namespace sgrwr::babyai;

namespace {

std::string pluralize(const std::string& type) {
    return type == "box" ? "boxes" : type + "s";
}

// A fixed two-room layout for the grading tests so every failure mode
// can be triggered on purpose.
//
//   room_A: columns 1..5, rows 1..5      room_B: columns 7..11, rows 1..5
//   door_1 (yellow, locked) on the wall cell (6,3); box_1 sits on (5,3),
//   the only cell from which the door can be opened from the left side.
GridWorld grading_world() {
    GridWorld w;
    w.rooms.push_back(RoomSpec{"room_A", {1, 1}, {5, 5}});
    w.rooms.push_back(RoomSpec{"room_B", {7, 1}, {5, 5}});
    w.doors.push_back(DoorSpec{"door_1", "yellow", true, {6, 3}, {"room_A", "room_B"}});
    w.items.push_back(ItemSpec{"key_1", "key", "yellow", {3, 1}, "room_A"});
    w.items.push_back(ItemSpec{"key_2", "key", "red", {1, 5}, "room_A"});
    w.items.push_back(ItemSpec{"box_1", "box", "blue", {5, 3}, "room_A"});
    w.items.push_back(ItemSpec{"ball_1", "ball", "green", {9, 3}, "room_B"});
    w.agent = AgentSpec{{1, 3}, "room_A"};
    return w;
}

std::vector<TrvAction> actions(std::initializer_list<const char*> lines) {
    std::vector<TrvAction> out;
    for (const char* line : lines) out.push_back(parse_trv_action(line));
    return out;
}

}  // namespace

TEST_CASE("generated worlds convert to conforming graphs and back") {
    NumqaInstance inst = gen_numqa(3);
    SceneGraph g = build_scene_graph(inst.world);

    CHECK(g.profile == "babyai");
    CHECK(g.root_id == "root_0");
    CHECK(validate(g, babyai_schema()).empty());
    // one root + nine rooms + twelve doors + one agent + every item
    CHECK(g.nodes.size() == 1 + 9 + 12 + 1 + inst.world.items.size());

    GridWorld back = world_from_graph(g);
    CHECK(build_scene_graph(back) == g);

    SUBCASE("conversion requires an agent") {
        SceneGraph no_agent = g;
        no_agent.nodes.erase("agent_0");
        CHECK_THROWS_WITH(world_from_graph(no_agent), "graph has no agent node");
    }
    SUBCASE("doors must join exactly two rooms") {
        SceneGraph bad = g;
        std::erase_if(bad.edges, [](const Edge& e) {
            return e.from == "door_1" && e.relationship == "connects";
        });
        CHECK_THROWS_WITH(world_from_graph(bad),
                          "door door_1 must connect exactly two rooms");
    }
}

TEST_CASE("question instances satisfy their own clause when recounted") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        CAPTURE(seed);
        NumqaInstance inst = gen_numqa(seed);
        const GridWorld& w = inst.world;

        // world shape: a fixed 3x3 arrangement of 5x5 rooms
        REQUIRE(w.rooms.size() == 9);
        REQUIRE(w.doors.size() == 12);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) {
                const RoomSpec* room = w.room_by_id(std::string("room_") + char('A' + r * 3 + c));
                REQUIRE(room != nullptr);
                CHECK(room->top_left == Cell{1 + 6 * c, 1 + 6 * r});
                CHECK(room->size == Cell{5, 5});
            }

        std::set<std::string> ids;
        std::set<Cell> occupied{w.agent.cell};
        std::map<std::string, int> per_room_items;
        for (const ItemSpec& i : w.items) {
            CHECK(ids.insert(i.id).second);
            CHECK(occupied.insert(i.cell).second);  // one object per cell
            const RoomSpec* room = w.room_by_id(i.room);
            REQUIRE(room != nullptr);
            CHECK(room->contains(i.cell));
            ++per_room_items[i.room];
        }
        for (const auto& [room, n] : per_room_items) {
            CHECK(n >= 9);
            CHECK(n <= 12);
        }
        CHECK(w.room_by_id(w.agent.room)->contains(w.agent.cell));

        // Recount the identifier clause from scratch: the named room must
        // be the only one holding exactly that many matching items.
        std::map<std::string, int> matching;
        for (const ItemSpec& i : w.items)
            if (i.color == inst.ident_color && i.type == inst.ident_type) ++matching[i.room];
        CHECK(matching[inst.ident_room] == inst.ident_num);
        int rooms_with_count = 0;
        for (const auto& [room, n] : matching)
            if (n == inst.ident_num) ++rooms_with_count;
        CHECK(rooms_with_count == 1);

        // The target clause: exactly one item of the target type across
        // the rooms adjacent to the identified room, and the answer is
        // that item's color.
        std::set<std::string> neighbors;
        for (const DoorSpec& d : w.doors) {
            if (d.room_pair.first == inst.ident_room) neighbors.insert(d.room_pair.second);
            if (d.room_pair.second == inst.ident_room) neighbors.insert(d.room_pair.first);
        }
        int targets = 0;
        std::string target_color;
        for (const ItemSpec& i : w.items)
            if (i.type == inst.target_type && neighbors.count(i.room)) {
                ++targets;
                target_color = i.color;
            }
        CHECK(targets == 1);
        CHECK(target_color == inst.answer);

        std::string expected_instruction =
            "find the color of the " + inst.target_type + " in a room next to the room with " +
            std::to_string(inst.ident_num) + " " + inst.ident_color + " " +
            (inst.ident_num == 1 ? inst.ident_type : pluralize(inst.ident_type));
        CHECK(inst.instruction == expected_instruction);
    }
}

TEST_CASE("traversal instances place the key, obstacles, and a graded plan") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        for (bool two_obstacles : {false, true}) {
            CAPTURE(seed);
            CAPTURE(two_obstacles);
            TrvInstance inst = gen_trv(seed, two_obstacles);
            const GridWorld& w = inst.world;

            REQUIRE(w.rooms.size() == 2);
            CHECK(w.room_by_id("room_A")->top_left == Cell{1, 1});
            CHECK(w.room_by_id("room_B")->top_left == Cell{7, 1});
            REQUIRE(w.doors.size() == 1);
            const DoorSpec& door = w.doors[0];
            CHECK(door.is_locked);
            CHECK(door.cell.first == 6);
            CHECK(door.cell.second >= 1);
            CHECK(door.cell.second <= 5);

            // exactly one key of the door's color, two decoys of other colors
            int door_keys = 0, decoys = 0;
            for (const ItemSpec& i : w.items) {
                if (i.type != "key") continue;
                CHECK(i.room == "room_A");
                if (i.color == door.color)
                    ++door_keys;
                else
                    ++decoys;
            }
            CHECK(door_keys == 1);
            CHECK(decoys == 2);

            // the door-adjacent cell on the agent's side is always blocked
            auto item_at = [&](Cell c) -> const ItemSpec* {
                for (const ItemSpec& i : w.items)
                    if (i.cell == c) return &i;
                return nullptr;
            };
            REQUIRE(item_at({5, door.cell.second}) != nullptr);
            if (two_obstacles) REQUIRE(item_at({7, door.cell.second}) != nullptr);

            const ItemSpec* target = w.item_by_id(inst.target_id);
            REQUIRE(target != nullptr);
            CHECK(target->room == "room_B");
            CHECK(inst.instruction.find(target->color + " " + target->type) !=
                  std::string::npos);

            // the shipped plan really works, starts with the key, and
            // ends by picking up the target
            GradeResult grade = grade_trv_plan(w, inst.target_id, inst.reference_plan);
            CHECK(grade.success);
            CHECK(grade.reason.empty());
            CHECK(grade.failed_step == -1);
            REQUIRE(!inst.reference_plan.empty());
            CHECK(inst.reference_plan.front().verb == "pickup");
            CHECK(w.item_by_id(inst.reference_plan.front().node_id)->color == door.color);
            CHECK(inst.reference_plan.back() == TrvAction{"pickup", inst.target_id});
            bool opens_door = false;
            for (const TrvAction& a : inst.reference_plan)
                if (a == TrvAction{"open", door.id}) opens_door = true;
            CHECK(opens_door);
        }
    }
}

TEST_CASE("room traversal reports the removals the cheapest path crosses") {
    SUBCASE("a free straight line needs no removals") {
        CHECK(traverse_room({1, 1}, {5, 5}, {}, {1, 1}, {5, 1}).empty());
    }
    SUBCASE("the goal cell counts, the start cell never does") {
        std::vector<BlockedCell> blocked{{{1, 1}, "s"}, {{3, 3}, "g"}};
        CHECK(traverse_room({1, 1}, {3, 3}, blocked, {1, 1}, {3, 3}) ==
              std::vector<std::string>{"g"});
    }
    SUBCASE("several items on one cell collapse to the smallest id") {
        std::vector<BlockedCell> blocked{{{1, 2}, "z"}, {{1, 2}, "b"}};
        CHECK(traverse_room({1, 1}, {1, 3}, blocked, {1, 1}, {1, 3}) ==
              std::vector<std::string>{"b"});
    }
    SUBCASE("equal-cost paths break the tie toward the smaller id sequence") {
        // both exits from the corner are blocked; crossing "a" and
        // crossing "m" cost the same, so "a" wins
        std::vector<BlockedCell> blocked{{{2, 1}, "m"}, {{1, 2}, "a"}};
        CHECK(traverse_room({1, 1}, {3, 3}, blocked, {1, 1}, {3, 3}) ==
              std::vector<std::string>{"a"});
    }
    SUBCASE("removals come back in path order, not sorted") {
        std::vector<BlockedCell> blocked{{{1, 2}, "q"}, {{1, 4}, "c"}};
        CHECK(traverse_room({1, 1}, {1, 5}, blocked, {1, 1}, {1, 5}) ==
              std::vector<std::string>{"q", "c"});
    }
    SUBCASE("cells outside the rectangle are rejected") {
        CHECK_THROWS_WITH_AS(traverse_room({1, 1}, {5, 5}, {}, {0, 3}, {3, 3}),
                             "start cell (0, 3) lies outside the room", Unreachable);
        CHECK_THROWS_WITH_AS(traverse_room({1, 1}, {5, 5}, {}, {3, 3}, {3, 6}),
                             "goal cell (3, 6) lies outside the room", Unreachable);
    }
    SUBCASE("degenerate room sizes are errors") {
        CHECK_THROWS_WITH(traverse_room({1, 1}, {0, 5}, {}, {1, 1}, {1, 1}),
                          "room size must be between 1x1 and 64x64");
        CHECK_THROWS_WITH(traverse_room({1, 1}, {5, 65}, {}, {1, 1}, {1, 1}),
                          "room size must be between 1x1 and 64x64");
    }
    SUBCASE("blockers outside the room are ignored") {
        std::vector<BlockedCell> blocked{{{9, 9}, "far"}};
        CHECK(traverse_room({1, 1}, {3, 3}, blocked, {1, 1}, {3, 3}).empty());
    }
}

TEST_CASE("random rooms agree with a brute-force removal search") {
    std::mt19937_64 rng(21);
    for (int round = 0; round < 120; ++round) {
        CAPTURE(round);
        pathcheck::PathWorld w = pathcheck::random_path_world(rng);
        std::vector<std::string> removals =
            traverse_room(w.top_left, w.size, w.blocked, w.start, w.goal);

        CHECK(static_cast<int>(removals.size()) == pathcheck::min_removals(w));
        CHECK(pathcheck::removal_set_works(w, removals));

        std::set<std::string> blocker_ids;
        for (const BlockedCell& b : w.blocked) blocker_ids.insert(b.node_id);
        std::set<std::string> seen;
        for (const std::string& id : removals) {
            CHECK(blocker_ids.count(id) == 1);
            CHECK(seen.insert(id).second);
        }
    }
}

TEST_CASE("plan actions parse and print exactly") {
    CHECK(parse_trv_action("pickup(key_1)") == TrvAction{"pickup", "key_1"});
    CHECK(parse_trv_action("  open ( door_1 )  ") == TrvAction{"open", "door_1"});
    CHECK(parse_trv_action("remove(box_2)") == TrvAction{"remove", "box_2"});
    CHECK(format_trv_action({"pickup", "key_1"}) == "pickup(key_1)");
    CHECK(parse_trv_action(format_trv_action({"remove", "ball_7"})) ==
          TrvAction{"remove", "ball_7"});

    CHECK_THROWS_WITH_AS(parse_trv_action("grab(key_1)"),
                         "unknown action verb 'grab' in 'grab(key_1)'", TrvParseError);
    CHECK_THROWS_WITH_AS(parse_trv_action("pickup key_1"),
                         "expected '(' after the verb in 'pickup key_1'", TrvParseError);
    CHECK_THROWS_WITH_AS(parse_trv_action("pickup()"),
                         "expected a node id in 'pickup()'", TrvParseError);
    CHECK_THROWS_WITH_AS(parse_trv_action("pickup(key_1"),
                         "expected ')' after the node id in 'pickup(key_1'", TrvParseError);
    CHECK_THROWS_WITH_AS(parse_trv_action("pickup(key_1) now"),
                         "unexpected text after ')' in 'pickup(key_1) now'", TrvParseError);
}

TEST_CASE("plan grading enforces every precondition in order") {
    GridWorld w = grading_world();

    SUBCASE("the intended plan succeeds") {
        GradeResult r = grade_trv_plan(
            w, "ball_1",
            actions({"pickup(key_1)", "remove(box_1)", "open(door_1)", "pickup(ball_1)"}));
        CHECK(r.success);
        CHECK(r.reason.empty());
        CHECK(r.failed_step == -1);
    }
    SUBCASE("a decoy key does not open the door") {
        GradeResult r = grade_trv_plan(
            w, "ball_1", actions({"pickup(key_2)", "remove(box_1)", "open(door_1)"}));
        CHECK(!r.success);
        CHECK(r.failed_step == 2);
        CHECK(r.reason == "open(door_1): the door is locked and the agent holds no yellow key");
    }
    SUBCASE("skipping the blocking item leaves no cell to open from") {
        GradeResult r = grade_trv_plan(w, "ball_1", actions({"pickup(key_1)", "open(door_1)"}));
        CHECK(!r.success);
        CHECK(r.failed_step == 1);
        CHECK(r.reason == "open(door_1): no reachable cell next to the door");
    }
    SUBCASE("items behind the closed door are unreachable") {
        GradeResult r = grade_trv_plan(w, "ball_1", actions({"pickup(ball_1)"}));
        CHECK(!r.success);
        CHECK(r.failed_step == 0);
        CHECK(r.reason == "pickup(ball_1): the item is not reachable from the agent's position");
    }
    SUBCASE("unknown ids and verbs fail with their step index") {
        GradeResult missing_item = grade_trv_plan(w, "ball_1", actions({"pickup(ghost_9)"}));
        CHECK(missing_item.reason == "pickup(ghost_9): no such item on the grid");
        CHECK(missing_item.failed_step == 0);

        GradeResult missing_door =
            grade_trv_plan(w, "ball_1", actions({"pickup(key_1)", "open(door_9)"}));
        CHECK(missing_door.reason == "open(door_9): no such door");
        CHECK(missing_door.failed_step == 1);

        GradeResult bad_verb = grade_trv_plan(w, "ball_1", {{"dance", "key_1"}});
        CHECK(bad_verb.reason == "dance(key_1): unknown verb");
        CHECK(bad_verb.failed_step == 0);
    }
    SUBCASE("a plan that never grabs the target fails without a step") {
        GradeResult r = grade_trv_plan(
            w, "ball_1", actions({"pickup(key_1)", "remove(box_1)", "open(door_1)"}));
        CHECK(!r.success);
        CHECK(r.failed_step == -1);
        CHECK(r.reason == "the plan does not end with the target item held");
    }
    SUBCASE("removing an item twice fails the second time") {
        GradeResult r =
            grade_trv_plan(w, "ball_1", actions({"remove(box_1)", "remove(box_1)"}));
        CHECK(r.failed_step == 1);
        CHECK(r.reason == "remove(box_1): no such item on the grid");
    }
    SUBCASE("opening an already open door is harmless") {
        GradeResult r = grade_trv_plan(
            w, "ball_1",
            actions({"pickup(key_1)", "remove(box_1)", "open(door_1)", "open(door_1)",
                     "pickup(ball_1)"}));
        CHECK(r.success);
    }
}

TEST_CASE("prompt surfaces describe the two environments") {
    CHECK(numqa_env_explanation().find("room") != std::string::npos);
    CHECK(numqa_env_explanation().find("color") != std::string::npos);
    CHECK(trv_env_explanation().find("door") != std::string::npos);

    std::string space = trv_action_space();
    CHECK(space.find("pickup(") != std::string::npos);
    CHECK(space.find("remove(") != std::string::npos);
    CHECK(space.find("open(") != std::string::npos);

    CHECK(numqa_few_shot().find("[Mode]") != std::string::npos);
    CHECK(trv_few_shot().find("[Mode]") != std::string::npos);
    CHECK(trv_few_shot().find("traverse_room") != std::string::npos);
}

TEST_CASE("the pathfinding tool validates its arguments") {
    reasoner::ToolRegistry reg = trv_tool_registry();
    CHECK(reg.annotations_text().find("traverse_room(") != std::string::npos);
    auto args = [](const char* text) { return nlohmann::json::parse(text); };

    reasoner::ToolCallOutcome clear = reasoner::execute_invocation(
        reg, "traverse_room",
        args(R"({"top_left": [1,1], "size": [3,3], "start": [1,1], "goal": [3,3],
                 "blocked": []})"));
    CHECK(clear.ok);
    CHECK(clear.observation() == "TOOL RESULT: remove: none");

    reasoner::ToolCallOutcome forced = reasoner::execute_invocation(
        reg, "traverse_room",
        args(R"({"top_left": [1,1], "size": [3,3], "start": [1,1], "goal": [3,3],
                 "blocked": [{"cell": [2,1], "id": "m"}, {"cell": [1,2], "id": "a"}]})"));
    CHECK(forced.observation() == "TOOL RESULT: remove: a");

    auto error_text = [&](const char* json_args) {
        reasoner::ToolCallOutcome out =
            reasoner::execute_invocation(reg, "traverse_room", args(json_args));
        CHECK(!out.ok);
        CHECK(out.error_kind == "tool_runtime_error");
        return out.text;
    };
    CHECK(error_text(R"({"top_left": [1,1], "size": [3,3], "start": [1], "goal": [3,3],
                         "blocked": []})") == "start must be a [column, row] pair");
    CHECK(error_text(R"({"top_left": [1,1], "size": [3,3], "start": [1,1], "goal": [3,3],
                         "blocked": 42})") == "blocked must be a list");
    CHECK(error_text(R"({"top_left": [1,1], "size": [3,3], "start": [1,1], "goal": [3,3],
                         "blocked": [{"cell": [2,1]}]})") ==
          "each blocked entry needs a cell and an id");
    CHECK(error_text(R"({"top_left": [1,1], "size": [0,0], "start": [1,1], "goal": [1,1],
                         "blocked": []})") == "room size must be between 1x1 and 64x64");
    CHECK(error_text(R"({"top_left": [1,1], "size": [3,3], "start": [9,9], "goal": [3,3],
                         "blocked": []})") == "start cell (9, 9) lies outside the room");

    reasoner::ToolCallOutcome missing = reasoner::execute_invocation(
        reg, "traverse_room", args(R"({"top_left": [1,1], "size": [3,3], "start": [1,1],
                                       "blocked": []})"));
    CHECK(missing.error_kind == "tool_arg_error");
    CHECK(missing.text == "missing argument 'goal'");
}
