#include "sgrwr/env/babyai.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <sstream>

namespace sgrwr::babyai {

namespace {

const std::vector<std::string>& color_palette() {
    static const std::vector<std::string> colors{"red", "green", "blue",
                                                 "yellow", "purple", "grey"};
    return colors;
}

const std::vector<std::string>& item_types() {
    static const std::vector<std::string> types{"key", "box", "ball"};
    return types;
}

// Deterministic across platforms, unlike std::shuffle / distributions.
std::uint64_t rand_below(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

template <typename T>
void fisher_yates(std::vector<T>& v, std::mt19937_64& rng) {
    for (size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[rand_below(rng, i)]);
}

std::string plural(const std::string& type) { return type == "box" ? "boxes" : type + "s"; }

}  // namespace

const RoomSpec* GridWorld::room_by_id(const std::string& id) const {
    for (const RoomSpec& r : rooms)
        if (r.id == id) return &r;
    return nullptr;
}

const RoomSpec* GridWorld::room_containing(Cell c) const {
    for (const RoomSpec& r : rooms)
        if (r.contains(c)) return &r;
    return nullptr;
}

const ItemSpec* GridWorld::item_by_id(const std::string& id) const {
    for (const ItemSpec& i : items)
        if (i.id == id) return &i;
    return nullptr;
}

const DoorSpec* GridWorld::door_by_id(const std::string& id) const {
    for (const DoorSpec& d : doors)
        if (d.id == id) return &d;
    return nullptr;
}

SceneGraph build_scene_graph(const GridWorld& world) {
    SceneGraph g;
    g.profile = "babyai";
    g.root_id = "root_0";
    g.add_node(Node{"root_0", {{"type", attr_str("root")}}});
    for (const RoomSpec& r : world.rooms) {
        g.add_node(Node{r.id,
                        {{"type", attr_str("room")},
                         {"coordinate", attr_ints({r.top_left.first, r.top_left.second})},
                         {"size", attr_ints({r.size.first, r.size.second})}}});
        g.add_edge(r.id, "root_0", "inside");
    }
    for (const DoorSpec& d : world.doors) {
        g.add_node(Node{d.id,
                        {{"type", attr_str("door")},
                         {"color", attr_str(d.color)},
                         {"coordinate", attr_ints({d.cell.first, d.cell.second})},
                         {"is_locked", attr_bool(d.is_locked)}}});
        g.add_edge(d.id, d.room_pair.first, "connects");
        g.add_edge(d.id, d.room_pair.second, "connects");
    }
    for (const ItemSpec& i : world.items) {
        g.add_node(Node{i.id,
                        {{"type", attr_str(i.type)},
                         {"color", attr_str(i.color)},
                         {"coordinate", attr_ints({i.cell.first, i.cell.second})}}});
        g.add_edge(i.id, i.room, "inside");
    }
    g.add_node(Node{"agent_0",
                    {{"type", attr_str("agent")},
                     {"coordinate",
                      attr_ints({world.agent.cell.first, world.agent.cell.second})}}});
    g.add_edge("agent_0", world.agent.room, "inside");
    return g;
}

GridWorld world_from_graph(const SceneGraph& graph) {
    GridWorld w;
    std::map<std::string, std::string> container;  // node -> room, from inside edges
    std::map<std::string, std::vector<std::string>> door_rooms;
    for (const Edge& e : graph.edges) {
        if (e.relationship == "inside") container[e.from] = e.to;
        if (e.relationship == "connects") door_rooms[e.from].push_back(e.to);
    }
    auto cell_of = [](const Node& n) {
        const IntList& c = std::get<IntList>(n.attrs.at("coordinate"));
        return Cell{static_cast<int>(c[0]), static_cast<int>(c[1])};
    };
    bool saw_agent = false;
    for (const auto& [id, node] : graph.nodes) {
        const std::string* type = node.get_str("type");
        if (!type) throw Error("node " + id + " has no type");
        if (*type == "root") continue;
        if (*type == "room") {
            const IntList& sz = std::get<IntList>(node.attrs.at("size"));
            w.rooms.push_back(RoomSpec{id, cell_of(node),
                                       {static_cast<int>(sz[0]), static_cast<int>(sz[1])}});
        } else if (*type == "door") {
            std::vector<std::string> rooms = door_rooms[id];
            std::sort(rooms.begin(), rooms.end());
            if (rooms.size() != 2) throw Error("door " + id + " must connect exactly two rooms");
            w.doors.push_back(DoorSpec{id, *node.get_str("color"),
                                       std::get<bool>(node.attrs.at("is_locked")), cell_of(node),
                                       {rooms[0], rooms[1]}});
        } else if (*type == "agent") {
            w.agent = AgentSpec{cell_of(node), container[id]};
            saw_agent = true;
        } else {
            w.items.push_back(ItemSpec{id, *type, *node.get_str("color"), cell_of(node),
                                       container[id]});
        }
    }
    if (!saw_agent) throw Error("graph has no agent node");
    return w;
}

// ---- pathfinding ----

std::vector<std::string> traverse_room(Cell tl, Cell size, const std::vector<BlockedCell>& blocked,
                                       Cell start, Cell goal) {
    if (size.first <= 0 || size.second <= 0 || size.first > 64 || size.second > 64)
        throw Error("room size must be between 1x1 and 64x64");
    auto inside = [&](Cell c) {
        return c.first >= tl.first && c.first < tl.first + size.first && c.second >= tl.second &&
               c.second < tl.second + size.second;
    };
    if (!inside(start))
        throw Unreachable("start cell (" + std::to_string(start.first) + ", " +
                          std::to_string(start.second) + ") lies outside the room");
    if (!inside(goal))
        throw Unreachable("goal cell (" + std::to_string(goal.first) + ", " +
                          std::to_string(goal.second) + ") lies outside the room");

    std::map<Cell, std::string> obstacle;
    for (const BlockedCell& b : blocked) {
        if (!inside(b.cell)) continue;
        auto it = obstacle.find(b.cell);
        if (it == obstacle.end() || b.node_id < it->second) obstacle[b.cell] = b.node_id;
    }

    const int w = size.first, h = size.second;
    auto index = [&](Cell c) { return (c.second - tl.second) * w + (c.first - tl.first); };
    // Entering an obstacle cell costs 10^6 versus 1 for a free cell, so
    // the search minimizes (removals, path length) lexicographically;
    // the start cell is never charged.
    struct Dist {
        long long k = -1;  // obstacles entered
        long long len = 0;
    };
    std::vector<Dist> dist(static_cast<size_t>(w) * h);
    using QItem = std::tuple<long long, long long, int, int>;  // k, len, col, row
    std::priority_queue<QItem, std::vector<QItem>, std::greater<>> queue;
    dist[index(start)] = {0, 0};
    queue.emplace(0, 0, start.first, start.second);
    const int dx[4] = {1, -1, 0, 0};
    const int dy[4] = {0, 0, 1, -1};
    while (!queue.empty()) {
        auto [k, len, col, row] = queue.top();
        queue.pop();
        Cell c{col, row};
        if (dist[index(c)].k != k || dist[index(c)].len != len) continue;
        for (int d = 0; d < 4; ++d) {
            Cell nc{col + dx[d], row + dy[d]};
            if (!inside(nc)) continue;
            long long nk = k + (obstacle.count(nc) ? 1 : 0);
            long long nlen = len + 1;
            Dist& cur = dist[index(nc)];
            if (cur.k == -1 || nk < cur.k || (nk == cur.k && nlen < cur.len)) {
                cur = {nk, nlen};
                queue.emplace(nk, nlen, nc.first, nc.second);
            }
        }
    }
    if (dist[index(goal)].k == -1)
        throw Unreachable("no path reaches the goal cell");  // cannot happen inside one rectangle

    // Among optimal paths, pick the lexicographically smallest removal
    // sequence: dynamic programming backward over the shortest-path DAG
    // (acyclic because len increases by one per transition).
    std::vector<Cell> cells;
    for (int row = tl.second; row < tl.second + h; ++row)
        for (int col = tl.first; col < tl.first + w; ++col) cells.push_back({col, row});
    std::sort(cells.begin(), cells.end(), [&](Cell a, Cell b) {
        return dist[index(a)].len > dist[index(b)].len;  // farthest first
    });
    std::map<Cell, std::vector<std::string>> best_seq;
    best_seq[goal] = {};
    for (Cell c : cells) {
        if (dist[index(c)].k == -1 || best_seq.count(c)) continue;
        if (dist[index(c)].len >= dist[index(goal)].len) continue;
        std::optional<std::vector<std::string>> best;
        for (int d = 0; d < 4; ++d) {
            Cell nc{c.first + dx[d], c.second + dy[d]};
            if (!inside(nc) || !best_seq.count(nc)) continue;
            long long step_k = obstacle.count(nc) ? 1 : 0;
            if (dist[index(nc)].k != dist[index(c)].k + step_k ||
                dist[index(nc)].len != dist[index(c)].len + 1)
                continue;
            std::vector<std::string> cand;
            if (step_k) cand.push_back(obstacle[nc]);
            cand.insert(cand.end(), best_seq[nc].begin(), best_seq[nc].end());
            if (!best || cand < *best) best = std::move(cand);
        }
        if (best) best_seq[c] = std::move(*best);
    }
    if (!best_seq.count(start)) throw Unreachable("no path reaches the goal cell");
    return best_seq[start];
}

// ---- plan grammar ----

TrvAction parse_trv_action(const std::string& line) {
    size_t i = 0;
    auto skip_ws = [&] {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    };
    skip_ws();
    size_t verb_start = i;
    while (i < line.size() && (std::isalnum(static_cast<unsigned char>(line[i])) || line[i] == '_'))
        ++i;
    std::string verb = line.substr(verb_start, i - verb_start);
    if (verb != "pickup" && verb != "remove" && verb != "open")
        throw TrvParseError("unknown action verb '" + verb + "' in '" + line + "'");
    skip_ws();
    if (i >= line.size() || line[i] != '(')
        throw TrvParseError("expected '(' after the verb in '" + line + "'");
    ++i;
    skip_ws();
    size_t id_start = i;
    while (i < line.size() && (std::isalnum(static_cast<unsigned char>(line[i])) || line[i] == '_'))
        ++i;
    std::string id = line.substr(id_start, i - id_start);
    if (id.empty()) throw TrvParseError("expected a node id in '" + line + "'");
    skip_ws();
    if (i >= line.size() || line[i] != ')')
        throw TrvParseError("expected ')' after the node id in '" + line + "'");
    ++i;
    skip_ws();
    if (i != line.size()) throw TrvParseError("unexpected text after ')' in '" + line + "'");
    return TrvAction{verb, id};
}

std::string format_trv_action(const TrvAction& a) { return a.verb + "(" + a.node_id + ")"; }

// ---- plan grading ----

namespace {

struct SimState {
    const GridWorld* world;
    std::map<std::string, ItemSpec> items;
    std::map<std::string, DoorSpec> doors;
    std::set<std::string> open_doors;
    std::map<std::string, ItemSpec> held;
    Cell agent;

    explicit SimState(const GridWorld& w) : world(&w), agent(w.agent.cell) {
        for (const ItemSpec& i : w.items) items.emplace(i.id, i);
        for (const DoorSpec& d : w.doors) doors.emplace(d.id, d);
    }

    bool walkable(Cell c) const {
        for (const auto& [id, item] : items)
            if (item.cell == c) return false;
        if (world->room_containing(c)) return true;
        for (const auto& [id, door] : doors)
            if (door.cell == c) return open_doors.count(id) != 0;
        return false;  // wall
    }

    // 4-connected search from the agent; `dest` itself is exempt from
    // the item-collision rule so objects can be walked to.
    bool reachable(Cell dest) const {
        if (agent == dest) return true;
        std::set<Cell> seen{agent};
        std::queue<Cell> frontier;
        frontier.push(agent);
        const int dx[4] = {1, -1, 0, 0};
        const int dy[4] = {0, 0, 1, -1};
        while (!frontier.empty()) {
            Cell c = frontier.front();
            frontier.pop();
            for (int d = 0; d < 4; ++d) {
                Cell nc{c.first + dx[d], c.second + dy[d]};
                if (seen.count(nc)) continue;
                if (nc == dest) return true;
                if (!walkable(nc)) continue;
                seen.insert(nc);
                frontier.push(nc);
            }
        }
        return false;
    }
};

}  // namespace

GradeResult grade_trv_plan(const GridWorld& world, const std::string& target_id,
                           const std::vector<TrvAction>& plan) {
    SimState sim(world);
    for (size_t step = 0; step < plan.size(); ++step) {
        const TrvAction& a = plan[step];
        auto fail = [&](const std::string& reason) {
            return GradeResult{false, format_trv_action(a) + ": " + reason,
                               static_cast<int>(step)};
        };
        if (a.verb == "pickup" || a.verb == "remove") {
            auto it = sim.items.find(a.node_id);
            if (it == sim.items.end()) return fail("no such item on the grid");
            Cell cell = it->second.cell;
            ItemSpec spec = it->second;
            sim.items.erase(it);  // the destination cell must not self-block
            if (!sim.reachable(cell)) {
                return fail("the item is not reachable from the agent's position");
            }
            if (a.verb == "pickup") sim.held.emplace(spec.id, spec);
            sim.agent = cell;
        } else if (a.verb == "open") {
            auto it = sim.doors.find(a.node_id);
            if (it == sim.doors.end()) return fail("no such door");
            const DoorSpec& door = it->second;
            std::vector<Cell> adjacent;
            const int dx[4] = {1, -1, 0, 0};
            const int dy[4] = {0, 0, 1, -1};
            for (int d = 0; d < 4; ++d) {
                Cell nc{door.cell.first + dx[d], door.cell.second + dy[d]};
                if (sim.walkable(nc) && sim.reachable(nc)) adjacent.push_back(nc);
            }
            if (adjacent.empty()) return fail("no reachable cell next to the door");
            if (door.is_locked && !sim.open_doors.count(door.id)) {
                bool has_key = false;
                for (const auto& [id, item] : sim.held)
                    if (item.type == "key" && item.color == door.color) has_key = true;
                if (!has_key)
                    return fail("the door is locked and the agent holds no " + door.color +
                                " key");
            }
            sim.open_doors.insert(door.id);
            sim.agent = *std::min_element(adjacent.begin(), adjacent.end());
        } else {
            return fail("unknown verb");
        }
    }
    if (!sim.held.count(target_id))
        return GradeResult{false, "the plan does not end with the target item held", -1};
    return GradeResult{true, "", -1};
}

// ---- generation ----

namespace {

constexpr int kRoomSide = 5;

// Rectangle of interior cells for a numqa room at grid row r, column c.
Cell numqa_room_tl(int r, int c) { return {1 + 6 * c, 1 + 6 * r}; }

GridWorld make_numqa_world(std::mt19937_64& rng) {
    GridWorld w;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            w.rooms.push_back(RoomSpec{std::string("room_") + char('A' + r * 3 + c),
                                       numqa_room_tl(r, c),
                                       {kRoomSide, kRoomSide}});
    int door_n = 0;
    auto add_door = [&](int ra, int ca, int rb, int cb, Cell cell) {
        ++door_n;
        w.doors.push_back(DoorSpec{"door_" + std::to_string(door_n),
                                   color_palette()[rand_below(rng, color_palette().size())],
                                   false,
                                   cell,
                                   {std::string("room_") + char('A' + ra * 3 + ca),
                                    std::string("room_") + char('A' + rb * 3 + cb)}});
    };
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 2; ++c)
            add_door(r, c, r, c + 1,
                     {6 * (c + 1), 1 + 6 * r + static_cast<int>(rand_below(rng, kRoomSide))});
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 3; ++c)
            add_door(r, c, r + 1, c,
                     {1 + 6 * c + static_cast<int>(rand_below(rng, kRoomSide)), 6 * (r + 1)});

    int agent_room = static_cast<int>(rand_below(rng, 9));

    // Skewed type frequencies make a globally rare type likely, which
    // the question generator needs for a unique target.
    std::vector<int> weights{6, 3, 1};
    fisher_yates(weights, rng);
    auto pick_type = [&] {
        int r = static_cast<int>(rand_below(rng, 10));
        for (size_t t = 0; t < 3; ++t) {
            if (r < weights[t]) return item_types()[t];
            r -= weights[t];
        }
        return item_types()[2];
    };

    std::map<std::string, int> counters;
    for (int ri = 0; ri < 9; ++ri) {
        const RoomSpec& room = w.rooms[ri];
        std::vector<Cell> cells;
        for (int y = 0; y < kRoomSide; ++y)
            for (int x = 0; x < kRoomSide; ++x)
                cells.push_back({room.top_left.first + x, room.top_left.second + y});
        fisher_yates(cells, rng);
        size_t take = 0;
        if (ri == agent_room) {
            w.agent = AgentSpec{cells[take++], room.id};
        }
        int n_items = 9 + static_cast<int>(rand_below(rng, 4));
        for (int k = 0; k < n_items; ++k) {
            std::string type = pick_type();
            w.items.push_back(ItemSpec{type + "_" + std::to_string(++counters[type]), type,
                                       color_palette()[rand_below(rng, color_palette().size())],
                                       cells[take++], room.id});
        }
    }
    return w;
}

std::vector<std::string> neighbor_rooms(const GridWorld& w, const std::string& room) {
    std::set<std::string> out;
    for (const DoorSpec& d : w.doors) {
        if (d.room_pair.first == room) out.insert(d.room_pair.second);
        if (d.room_pair.second == room) out.insert(d.room_pair.first);
    }
    return {out.begin(), out.end()};
}

}  // namespace

NumqaInstance gen_numqa(std::uint64_t seed) {
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ull + 0x6e756d7161ull);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        GridWorld w = make_numqa_world(rng);
        // counts[(color, type)][room]
        std::map<std::pair<std::string, std::string>, std::map<std::string, int>> counts;
        std::map<std::pair<std::string, std::string>, int> type_in_rooms;  // (type, room) -> n
        for (const ItemSpec& i : w.items) {
            ++counts[{i.color, i.type}][i.room];
            ++type_in_rooms[{i.type, i.room}];
        }
        struct Candidate {
            int num;
            std::string color, itype, room, ttype, answer;
        };
        std::vector<Candidate> candidates;
        for (const auto& [key, per_room] : counts) {
            for (const auto& [room, n] : per_room) {
                bool unique_room = true;
                for (const auto& [other, m] : per_room)
                    if (other != room && m == n) unique_room = false;
                if (!unique_room) continue;
                std::vector<std::string> neighbors = neighbor_rooms(w, room);
                for (const std::string& ttype : item_types()) {
                    int total = 0;
                    std::string answer;
                    for (const std::string& nb : neighbors) {
                        auto it = type_in_rooms.find({ttype, nb});
                        if (it != type_in_rooms.end()) total += it->second;
                    }
                    if (total != 1) continue;
                    for (const ItemSpec& i : w.items)
                        if (i.type == ttype &&
                            std::count(neighbors.begin(), neighbors.end(), i.room))
                            answer = i.color;
                    candidates.push_back({n, key.first, key.second, room, ttype, answer});
                }
            }
        }
        if (candidates.empty()) continue;
        const Candidate& pick = candidates[rand_below(rng, candidates.size())];
        NumqaInstance inst;
        inst.world = std::move(w);
        inst.ident_num = pick.num;
        inst.ident_color = pick.color;
        inst.ident_type = pick.itype;
        inst.target_type = pick.ttype;
        inst.ident_room = pick.room;
        inst.answer = pick.answer;
        inst.instruction = "find the color of the " + pick.ttype +
                           " in a room next to the room with " + std::to_string(pick.num) + " " +
                           pick.color + " " + (pick.num == 1 ? pick.itype : plural(pick.itype));
        return inst;
    }
    throw Error("no unique-answer question found within 10000 attempts");
}

TrvInstance gen_trv(std::uint64_t seed, bool two_obstacles) {
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ull + (two_obstacles ? 0x74727632ull : 0x74727631ull));
    for (int attempt = 0; attempt < 10000; ++attempt) {
        GridWorld w;
        w.rooms.push_back(RoomSpec{"room_A", {1, 1}, {kRoomSide, kRoomSide}});
        w.rooms.push_back(RoomSpec{"room_B", {7, 1}, {kRoomSide, kRoomSide}});
        int dy = static_cast<int>(rand_below(rng, kRoomSide));
        Cell door_cell{6, 1 + dy};
        std::string door_color = color_palette()[rand_below(rng, color_palette().size())];
        w.doors.push_back(DoorSpec{"door_1", door_color, true, door_cell, {"room_A", "room_B"}});

        Cell obs1_cell{5, 1 + dy};
        Cell obs2_cell{7, 1 + dy};
        std::vector<Cell> a_cells, b_cells;
        for (int y = 1; y <= kRoomSide; ++y)
            for (int x = 1; x <= kRoomSide; ++x) {
                if (Cell{x, y} != obs1_cell) a_cells.push_back({x, y});
                if (Cell{x + 6, y} != obs2_cell || !two_obstacles) b_cells.push_back({x + 6, y});
            }
        fisher_yates(a_cells, rng);
        fisher_yates(b_cells, rng);
        size_t a_take = 0, b_take = 0;

        w.agent = AgentSpec{a_cells[a_take++], "room_A"};
        std::map<std::string, int> counters;
        auto add_item = [&](const std::string& type, const std::string& color, Cell cell,
                            const std::string& room) {
            std::string id = type + "_" + std::to_string(++counters[type]);
            w.items.push_back(ItemSpec{id, type, color, cell, room});
            return id;
        };
        std::string key_id = add_item("key", door_color, a_cells[a_take++], "room_A");
        std::vector<std::string> decoy_colors;
        for (const std::string& c : color_palette())
            if (c != door_color) decoy_colors.push_back(c);
        fisher_yates(decoy_colors, rng);
        add_item("key", decoy_colors[0], a_cells[a_take++], "room_A");
        add_item("key", decoy_colors[1], a_cells[a_take++], "room_A");

        auto obstacle_type = [&] { return item_types()[1 + rand_below(rng, 2)]; };  // box or ball
        std::string target_type = obstacle_type();
        std::string target_color = color_palette()[rand_below(rng, color_palette().size())];
        auto pick_obstacle = [&]() -> std::pair<std::string, std::string> {
            while (true) {
                std::string t = obstacle_type();
                std::string c = color_palette()[rand_below(rng, color_palette().size())];
                if (t != target_type || c != target_color) return {t, c};
            }
        };
        auto [o1_type, o1_color] = pick_obstacle();
        std::string obs1_id = add_item(o1_type, o1_color, obs1_cell, "room_A");
        std::string target_id = add_item(target_type, target_color, b_cells[b_take++], "room_B");
        if (two_obstacles) {
            auto [o2_type, o2_color] = pick_obstacle();
            add_item(o2_type, o2_color, obs2_cell, "room_B");
        }

        // Reference plan straight from the pathfinding tool, then vetted
        // by the grader; a rare bad layout just triggers another attempt.
        TrvInstance inst;
        inst.world = w;
        inst.target_id = target_id;
        inst.instruction = "pick up the " + target_color + " " + target_type +
                           " in the other room. A locked door opens only with a key of the "
                           "door's color, and you may remove items that block the way.";
        try {
            const ItemSpec* key = w.item_by_id(key_id);
            const ItemSpec* target = w.item_by_id(target_id);
            std::vector<BlockedCell> blocked_a, blocked_b;
            for (const ItemSpec& i : w.items) {
                if (i.room == "room_A" && i.id != key_id) blocked_a.push_back({i.cell, i.id});
                if (i.room == "room_B" && i.id != target_id) blocked_b.push_back({i.cell, i.id});
            }
            std::vector<std::string> leg1 =
                traverse_room({1, 1}, {kRoomSide, kRoomSide}, blocked_a, key->cell, obs1_cell);
            std::vector<std::string> leg2 =
                traverse_room({7, 1}, {kRoomSide, kRoomSide}, blocked_b, target->cell, obs2_cell);
            inst.reference_plan.push_back({"pickup", key_id});
            for (const std::string& id : leg1) inst.reference_plan.push_back({"remove", id});
            inst.reference_plan.push_back({"open", "door_1"});
            for (auto it = leg2.rbegin(); it != leg2.rend(); ++it)
                inst.reference_plan.push_back({"remove", *it});
            inst.reference_plan.push_back({"pickup", target_id});
        } catch (const Unreachable&) {
            continue;
        }
        if (grade_trv_plan(w, target_id, inst.reference_plan).success) return inst;
    }
    throw Error("no solvable traversal layout found within 10000 attempts");
}

// ---- prompt surfaces ----

std::string numqa_env_explanation() {
    return "The world is a 2D grid of nine rectangular rooms arranged three by three and "
           "joined by doors. Keys, boxes, and balls of various colors lie on room cells, and "
           "an agent stands somewhere in the grid. The task is a question about the scene; "
           "the final solution must be a single color word.";
}

std::string trv_env_explanation() {
    return "The world is a 2D grid of two rectangular rooms joined by one door. Keys, boxes, "
           "and balls of various colors lie on room cells; the agent starts in one room and "
           "must pick up a target item in the other. A locked door opens only with a held key "
           "of the door's color, and the agent cannot walk through item cells, so blocking "
           "items may have to be removed.";
}

std::string trv_action_space() {
    return "- pickup(node_id): walk to the item and pick it up.\n"
           "- remove(node_id): walk to the item and remove it from the grid.\n"
           "- open(node_id): walk next to the door and open it; a locked door needs a held "
           "key of the door's color.\n"
           "The final solution must list one action per line in this grammar.";
}

std::string numqa_few_shot() {
    return "Task: find the color of the ball in a room next to the room with 1 red key\n"
           "[Explanation]\nI need the room layout first.\n[Mode]\nQUERY\n[Content]\n"
           "List all rooms and their attributes.\n"
           "(user) Retrieved 2 result(s): room_demoA | coordinate=[1,1], size=[5,5], "
           "type=room; room_demoB | coordinate=[7,1], size=[5,5], type=room\n"
           "[Explanation]\nNow the identifier items; their coordinates tell me which room "
           "holds them.\n[Mode]\nQUERY\n[Content]\nList all red keys and their attributes.\n"
           "(user) Retrieved 1 result(s): key_demo1 | color=red, coordinate=[2,2], type=key\n"
           "[Explanation]\nroom_demoA holds 1 red key; its neighbor is room_demoB, so I check "
           "the balls there.\n[Mode]\nQUERY\n[Content]\nList all balls and their attributes.\n"
           "(user) Retrieved 1 result(s): ball_demo1 | color=grey, coordinate=[8,3], "
           "type=ball\n"
           "[Explanation]\nThe only ball next to the red-key room is grey.\n[Mode]\nSOLUTION\n"
           "[Content]\ngrey";
}

std::string trv_few_shot() {
    return "Task: pick up the blue ball in the other room.\n"
           "[Explanation]\nI need every node to locate rooms, door, key, and target.\n"
           "[Mode]\nQUERY\n[Content]\nList all nodes and their attributes.\n"
           "(user) Retrieved 7 result(s): agent_demo | coordinate=[2,3], type=agent; "
           "ball_demo | color=blue, coordinate=[9,2], type=ball; box_demo | color=red, "
           "coordinate=[5,2], type=box; door_demo | color=yellow, coordinate=[6,2], "
           "is_locked=true, type=door; key_demo | color=yellow, coordinate=[1,4], type=key; "
           "room_demoA | coordinate=[1,1], size=[5,5], type=room; room_demoB | "
           "coordinate=[7,1], size=[5,5], type=room\n"
           "[Explanation]\nFrom the key cell I must reach the cell left of the door; box_demo "
           "sits on it.\n[Mode]\nTOOL\n[Content]\n"
           "Call traverse_room with top_left=[1,1], size=[5,5], start=[1,4], goal=[5,2], "
           "blocked=[{\"cell\": [5,2], \"id\": \"box_demo\"}].\n"
           "(user) TOOL RESULT: remove: box_demo\n"
           "[Explanation]\nPick up the yellow key, clear the box, open the door, then fetch "
           "the ball.\n[Mode]\nSOLUTION\n[Content]\n"
           "pickup(key_demo)\nremove(box_demo)\nopen(door_demo)\npickup(ball_demo)";
}

reasoner::ToolRegistry trv_tool_registry() {
    reasoner::ToolRegistry registry;
    reasoner::ToolSpec spec;
    spec.name = "traverse_room";
    spec.annotation =
        "traverse_room(top_left: int list, size: int list, start: int list, goal: int list, "
        "blocked: json) — searches the room rectangle described by top_left and size for the "
        "cheapest 4-connected path from start to goal (entering a blocked cell costs 10^6, a "
        "free step costs 1) and reports which blocked items must be removed; blocked is a "
        "list of {\"cell\": [x, y], \"id\": node_id} entries.";
    spec.args = {{"top_left", reasoner::ValueKind::IntList},
                 {"size", reasoner::ValueKind::IntList},
                 {"start", reasoner::ValueKind::IntList},
                 {"goal", reasoner::ValueKind::IntList},
                 {"blocked", reasoner::ValueKind::Json}};
    spec.handler = [](const nlohmann::json& args) {
        auto cell_of = [](const nlohmann::json& v, const char* what) {
            if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() ||
                !v[1].is_number_integer())
                throw Error(std::string(what) + " must be a [column, row] pair");
            return Cell{v[0].get<int>(), v[1].get<int>()};
        };
        std::vector<BlockedCell> blocked;
        if (!args["blocked"].is_array()) throw Error("blocked must be a list");
        for (const auto& b : args["blocked"]) {
            if (!b.is_object() || !b.contains("cell") || !b.contains("id") ||
                !b["id"].is_string())
                throw Error("each blocked entry needs a cell and an id");
            blocked.push_back({cell_of(b["cell"], "blocked cell"), b["id"].get<std::string>()});
        }
        std::vector<std::string> removals = traverse_room(
            cell_of(args["top_left"], "top_left"), cell_of(args["size"], "size"), blocked,
            cell_of(args["start"], "start"), cell_of(args["goal"], "goal"));
        if (removals.empty()) return std::string("remove: none");
        std::string out = "remove: ";
        for (size_t i = 0; i < removals.size(); ++i) {
            if (i) out += ", ";
            out += removals[i];
        }
        return out;
    };
    registry.add(std::move(spec));
    return registry;
}

}  // namespace sgrwr::babyai
