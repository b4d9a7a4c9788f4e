#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sgrwr/reasoner/tools.hpp"
#include "sgrwr/scene_graph.hpp"

namespace sgrwr::babyai {

// Grid cells are (column, row) with the origin at the top left.
using Cell = std::pair<int, int>;

struct RoomSpec {
    std::string id;
    Cell top_left;  // first interior cell
    Cell size;      // interior width, height
    bool contains(Cell c) const {
        return c.first >= top_left.first && c.first < top_left.first + size.first &&
               c.second >= top_left.second && c.second < top_left.second + size.second;
    }
};

struct DoorSpec {
    std::string id;
    std::string color;
    bool is_locked = false;
    Cell cell;  // the shared wall cell
    std::pair<std::string, std::string> room_pair;
};

struct ItemSpec {
    std::string id;
    std::string type;  // key | box | ball
    std::string color;
    Cell cell;
    std::string room;
};

struct AgentSpec {
    Cell cell;
    std::string room;
};

struct GridWorld {
    std::vector<RoomSpec> rooms;
    std::vector<DoorSpec> doors;
    std::vector<ItemSpec> items;
    AgentSpec agent;

    const RoomSpec* room_by_id(const std::string& id) const;
    const RoomSpec* room_containing(Cell c) const;
    const ItemSpec* item_by_id(const std::string& id) const;
    const DoorSpec* door_by_id(const std::string& id) const;
};

// Hierarchical graph: rooms inside the root, items and the agent inside
// their rooms, doors connected to both rooms they join.
SceneGraph build_scene_graph(const GridWorld& world);
GridWorld world_from_graph(const SceneGraph& graph);

struct Unreachable : Error {
    explicit Unreachable(const std::string& what) : Error(what) {}
};

struct BlockedCell {
    Cell cell;
    std::string node_id;
};

// Minimal-removal pathing inside one room rectangle: A* over the room's
// cells with 4-connectivity where stepping onto a blocked cell costs
// 10^6 and a free step costs 1. Returns the ids of the blocked cells the
// optimal path crosses, in path order (the start cell is never counted,
// the goal cell is). Ties break toward fewer removals, then shorter
// paths, then the lexicographically smallest id sequence.
std::vector<std::string> traverse_room(Cell room_top_left, Cell room_size,
                                       const std::vector<BlockedCell>& blocked, Cell start,
                                       Cell goal);

// ---- traversal plans ----

struct TrvAction {
    std::string verb;  // pickup | remove | open
    std::string node_id;
    bool operator==(const TrvAction&) const = default;
};

struct TrvParseError : Error {
    explicit TrvParseError(const std::string& what) : Error(what) {}
};

TrvAction parse_trv_action(const std::string& line);  // e.g. "pickup(key_1)"
std::string format_trv_action(const TrvAction& a);

struct GradeResult {
    bool success = false;
    std::string reason;   // empty on success
    int failed_step = -1; // 0-based index of the failing action, -1 otherwise
};

// Simulates the plan on a copy of the world. Walking never crosses
// walls, closed doors, or item cells; pickup/remove require a path to
// the object and leave the agent on its cell; open requires a reachable
// adjacent cell and, for locked doors, a held key of the door's color.
// Success means every precondition held and the target ends up held.
GradeResult grade_trv_plan(const GridWorld& world, const std::string& target_id,
                           const std::vector<TrvAction>& plan);

// ---- task generation ----

struct NumqaInstance {
    GridWorld world;
    std::string instruction;
    std::string answer;       // the unique color
    int ident_num = 0;        // the identifier clause: ident_num ident_color ident_types
    std::string ident_color;
    std::string ident_type;
    std::string target_type;
    std::string ident_room;   // the unique room matching the identifier clause
};

// Nine-room world plus one instance of the question template "find the
// color of the X in a room next to the room with N C Y"; regenerates
// internally until exactly one room matches the identifier clause and
// exactly one target-type item exists across that room's neighbors.
NumqaInstance gen_numqa(std::uint64_t seed);

struct TrvInstance {
    GridWorld world;
    std::string instruction;
    std::string target_id;
    std::vector<TrvAction> reference_plan;  // validated against grade_trv_plan at build time
};

// Two rooms joined by a locked door, the matching key plus two decoy
// keys on the agent's side, an obstacle on the door-adjacent cell of the
// agent's side (and of the target's side when two_obstacles is set), and
// the pickup target in the far room.
TrvInstance gen_trv(std::uint64_t seed, bool two_obstacles);

// ---- prompt surfaces ----

std::string numqa_env_explanation();
std::string trv_env_explanation();
std::string trv_action_space();
std::string numqa_few_shot();
std::string trv_few_shot();

// The pathfinding tool exposed to the planner.
reasoner::ToolRegistry trv_tool_registry();

}  // namespace sgrwr::babyai
