#include "sgrwr/orch/reference.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

namespace sgrwr::orch {

namespace {

using Cell = std::pair<int, int>;

std::vector<std::string> split(const std::string& s, const std::string& sep) {
    std::vector<std::string> out;
    size_t pos = 0;
    while (true) {
        size_t next = s.find(sep, pos);
        if (next == std::string::npos) {
            out.push_back(s.substr(pos));
            return out;
        }
        out.push_back(s.substr(pos, next - pos));
        pos = next + sep.size();
    }
}

std::vector<std::string> lines_of(const std::string& s) { return split(s, "\n"); }

Cell parse_cell(const std::string& text) {
    // "[3,4]" as rendered by the attribute printer
    nlohmann::json j = nlohmann::json::parse(text);
    if (!j.is_array() || j.size() != 2) throw Error("expected a [column, row] pair: " + text);
    return {j[0].get<int>(), j[1].get<int>()};
}

std::string plural_type(const std::string& t) { return t == "box" ? "boxes" : t + "s"; }

std::string singular_type(const std::string& w) {
    if (w.size() > 2 && w.compare(w.size() - 3, 3, "xes") == 0) return w.substr(0, w.size() - 2);
    if (!w.empty() && w.back() == 's') return w.substr(0, w.size() - 1);
    return w;
}

// One "id | k=v, ..." row out of a retrieval summary.
struct ParsedRow {
    std::string id;
    std::map<std::string, std::string> attrs;

    const std::string& at(const std::string& key) const {
        auto it = attrs.find(key);
        if (it == attrs.end()) throw Error("row " + id + " has no attribute '" + key + "'");
        return it->second;
    }
};

ParsedRow parse_row(const std::string& text) {
    size_t bar = text.find(" | ");
    if (bar == std::string::npos) throw Error("not a result row: " + text);
    ParsedRow row;
    row.id = text.substr(0, bar);
    std::string rest = text.substr(bar + 3);
    if (rest == "(no attributes)") return row;
    for (const std::string& pair : split(rest, ", ")) {
        size_t eq = pair.find('=');
        if (eq == std::string::npos) throw Error("not a k=v attribute: " + pair);
        row.attrs[pair.substr(0, eq)] = pair.substr(eq + 1);
    }
    return row;
}

// "Retrieved N result(s): row; row; ..." back into rows.
std::vector<ParsedRow> parse_summary(const std::string& observation) {
    const std::string marker = "result(s): ";
    size_t at = observation.find(marker);
    if (at == std::string::npos)
        throw Error("observation carries no result rows: " + observation);
    std::vector<ParsedRow> rows;
    for (const std::string& part : split(observation.substr(at + marker.size()), "; "))
        rows.push_back(parse_row(part));
    return rows;
}

struct Rect {
    Cell tl;
    Cell size;
    bool contains(Cell c) const {
        return c.first >= tl.first && c.first < tl.first + size.first && c.second >= tl.second &&
               c.second < tl.second + size.second;
    }
};

// The transcript pieces every reference agent works from.
struct Transcript {
    std::string instruction;            // first user message, "Task: " stripped
    std::vector<std::string> observations;  // user messages after the task
    int turns = 0;                      // assistant messages so far
};

Transcript read_transcript(const agents::Messages& messages) {
    Transcript t;
    bool task_seen = false;
    for (const agents::ChatMessage& m : messages) {
        if (m.role == agents::Role::Assistant) {
            ++t.turns;
        } else if (m.role == agents::Role::User) {
            if (!task_seen) {
                task_seen = true;
                t.instruction = m.content.rfind("Task: ", 0) == 0 ? m.content.substr(6) : m.content;
            } else {
                t.observations.push_back(m.content);
            }
        }
    }
    return t;
}

std::string emit(const std::string& explanation, agents::PlannerMode mode,
                 const std::string& content) {
    agents::PlannerTurn turn;
    turn.explanation = explanation;
    turn.mode = mode;
    turn.content = content;
    return agents::format_planner_turn(turn);
}

// ---- planner: color question over the nine-room grid ----

struct NumqaQuestion {
    std::string target_type;
    int ident_num = 0;
    std::string ident_color;
    std::string ident_type;
};

NumqaQuestion parse_numqa_instruction(const std::string& instruction) {
    const std::string p1 = "find the color of the ";
    const std::string p2 = " in a room next to the room with ";
    size_t a = instruction.find(p1);
    size_t b = instruction.find(p2);
    if (a != 0 || b == std::string::npos)
        throw Error("unrecognized question: " + instruction);
    NumqaQuestion q;
    q.target_type = instruction.substr(p1.size(), b - p1.size());
    std::vector<std::string> rest = split(instruction.substr(b + p2.size()), " ");
    if (rest.size() != 3) throw Error("unrecognized identifier clause: " + instruction);
    q.ident_num = std::stoi(rest[0]);
    q.ident_color = rest[1];
    q.ident_type = singular_type(rest[2]);
    return q;
}

std::string solve_numqa(const NumqaQuestion& q, const std::vector<std::string>& observations) {
    if (observations.size() < 4) throw Error("expected four retrieval observations");
    std::map<std::string, Rect> rooms;
    for (const ParsedRow& r : parse_summary(observations[0]))
        rooms[r.id] = Rect{parse_cell(r.at("coordinate")), parse_cell(r.at("size"))};
    auto room_of = [&](Cell c) -> std::string {
        for (const auto& [id, rect] : rooms)
            if (rect.contains(c)) return id;
        return "";
    };

    // Door cells sit on the wall between exactly two rooms; probing the
    // four neighboring cells recovers the pair.
    std::vector<std::pair<std::string, std::string>> joined;
    for (const ParsedRow& d : parse_summary(observations[1])) {
        Cell c = parse_cell(d.at("coordinate"));
        std::string left = room_of({c.first - 1, c.second});
        std::string right = room_of({c.first + 1, c.second});
        if (left.empty() || right.empty()) {
            left = room_of({c.first, c.second - 1});
            right = room_of({c.first, c.second + 1});
        }
        if (!left.empty() && !right.empty()) joined.emplace_back(left, right);
    }

    std::map<std::string, int> ident_count;
    for (const ParsedRow& r : parse_summary(observations[2]))
        ++ident_count[room_of(parse_cell(r.at("coordinate")))];
    std::string ident_room;
    for (const auto& [room, n] : ident_count)
        if (n == q.ident_num) ident_room = room;
    if (ident_room.empty()) throw Error("no room holds the identifier items");

    std::vector<std::string> neighbors;
    for (const auto& [a, b] : joined) {
        if (a == ident_room) neighbors.push_back(b);
        if (b == ident_room) neighbors.push_back(a);
    }
    for (const ParsedRow& r : parse_summary(observations[3])) {
        std::string room = room_of(parse_cell(r.at("coordinate")));
        if (std::count(neighbors.begin(), neighbors.end(), room)) return r.at("color");
    }
    throw Error("no target item in a neighboring room");
}

// ---- planner: two-room traversal ----

struct TrvScene {
    Rect agent_room, other_room;
    std::string door_id;
    Cell door_cell;
    std::string key_id, target_id;
    Cell key_cell, target_cell;
    std::vector<std::pair<std::string, Cell>> blocked_agent_side, blocked_target_side;
};

TrvScene parse_trv_scene(const std::string& instruction, const std::string& observation) {
    const std::string p1 = "pick up the ";
    size_t a = instruction.find(p1);
    if (a != 0) throw Error("unrecognized task: " + instruction);
    std::vector<std::string> words = split(instruction.substr(p1.size()), " ");
    if (words.size() < 2) throw Error("unrecognized task: " + instruction);
    const std::string target_color = words[0], target_type = words[1];

    struct Item {
        std::string id, type, color;
        Cell cell;
    };
    std::vector<Item> items;
    std::vector<std::pair<std::string, Rect>> rooms;
    Cell agent_cell{0, 0};
    std::string door_id, door_color;
    Cell door_cell{0, 0};
    for (const ParsedRow& r : parse_summary(observation)) {
        const std::string type = r.at("type");
        if (type == "root") continue;
        if (type == "room") {
            rooms.emplace_back(r.id, Rect{parse_cell(r.at("coordinate")),
                                          parse_cell(r.at("size"))});
        } else if (type == "door") {
            door_id = r.id;
            door_color = r.at("color");
            door_cell = parse_cell(r.at("coordinate"));
        } else if (type == "agent") {
            agent_cell = parse_cell(r.at("coordinate"));
        } else {
            items.push_back({r.id, type, r.at("color"), parse_cell(r.at("coordinate"))});
        }
    }
    if (rooms.size() != 2 || door_id.empty()) throw Error("expected two rooms joined by a door");

    TrvScene s;
    s.door_id = door_id;
    s.door_cell = door_cell;
    bool agent_in_first = rooms[0].second.contains(agent_cell);
    s.agent_room = agent_in_first ? rooms[0].second : rooms[1].second;
    s.other_room = agent_in_first ? rooms[1].second : rooms[0].second;
    for (const Item& i : items) {
        bool near_side = s.agent_room.contains(i.cell);
        if (near_side && i.type == "key" && i.color == door_color) {
            s.key_id = i.id;
            s.key_cell = i.cell;
        } else if (!near_side && i.type == target_type && i.color == target_color) {
            s.target_id = i.id;
            s.target_cell = i.cell;
        } else if (near_side) {
            s.blocked_agent_side.emplace_back(i.id, i.cell);
        } else {
            s.blocked_target_side.emplace_back(i.id, i.cell);
        }
    }
    if (s.key_id.empty()) throw Error("no key matches the door color");
    if (s.target_id.empty()) throw Error("no item matches the requested target");
    return s;
}

// Cell adjacent to the door inside the given room side.
Cell door_approach(const TrvScene& s, const Rect& room) {
    const Cell c = s.door_cell;
    for (Cell n : {Cell{c.first - 1, c.second}, Cell{c.first + 1, c.second},
                   Cell{c.first, c.second - 1}, Cell{c.first, c.second + 1}})
        if (room.contains(n)) return n;
    throw Error("the door touches no cell of that room");
}

std::string traverse_call(const Rect& room, Cell start, Cell goal,
                          const std::vector<std::pair<std::string, Cell>>& blocked) {
    nlohmann::json args;
    args["top_left"] = {room.tl.first, room.tl.second};
    args["size"] = {room.size.first, room.size.second};
    args["start"] = {start.first, start.second};
    args["goal"] = {goal.first, goal.second};
    args["blocked"] = nlohmann::json::array();
    for (const auto& [id, cell] : blocked)
        args["blocked"].push_back({{"cell", {cell.first, cell.second}}, {"id", id}});
    return "Call traverse_room with " + args.dump();
}

// "TOOL RESULT: remove: a, b" -> {a, b}; "remove: none" -> {}.
std::vector<std::string> parse_removals(const std::string& observation) {
    const std::string marker = "remove: ";
    size_t at = observation.find(marker);
    if (at == std::string::npos) throw Error("not a pathing result: " + observation);
    std::string rest = observation.substr(at + marker.size());
    if (rest == "none") return {};
    return split(rest, ", ");
}

class ReferencePlanner : public agents::Backend {
  public:
    explicit ReferencePlanner(TaskFamily family) : family_(family) {}

    std::string complete_raw(const agents::Messages& messages) override {
        Transcript t = read_transcript(messages);
        return family_ == TaskFamily::Numqa ? numqa_turn(t) : trv_turn(t);
    }
    std::string name() const override { return "reference-planner"; }

  private:
    std::string numqa_turn(const Transcript& t) const {
        NumqaQuestion q = parse_numqa_instruction(t.instruction);
        switch (t.turns) {
            case 0:
                return emit("I need the room rectangles to place items.",
                            agents::PlannerMode::Query, "List all rooms and their attributes.");
            case 1:
                return emit("Door cells tell me which rooms are adjacent.",
                            agents::PlannerMode::Query, "List all doors and their attributes.");
            case 2:
                return emit("Counting the identifier items per room pins down the room.",
                            agents::PlannerMode::Query,
                            "List all " + q.ident_color + " " + plural_type(q.ident_type) +
                                " and their attributes.");
            case 3:
                return emit("Now the candidate targets; coordinates give their rooms.",
                            agents::PlannerMode::Query,
                            "List all " + plural_type(q.target_type) + " and their attributes.");
            default:
                return emit("The unique target next to the identified room settles the color.",
                            agents::PlannerMode::Solution, solve_numqa(q, t.observations));
        }
    }

    std::string trv_turn(const Transcript& t) const {
        if (t.turns == 0)
            return emit("I need every node to locate rooms, door, key, and target.",
                        agents::PlannerMode::Query, "List all nodes and their attributes.");
        TrvScene s = parse_trv_scene(t.instruction, t.observations.at(0));
        if (t.turns == 1)
            return emit("First leg: from the matching key to the cell beside the door.",
                        agents::PlannerMode::Tool,
                        traverse_call(s.agent_room, s.key_cell, door_approach(s, s.agent_room),
                                      s.blocked_agent_side));
        if (t.turns == 2)
            return emit("Second leg: from the target back to its side of the door.",
                        agents::PlannerMode::Tool,
                        traverse_call(s.other_room, s.target_cell,
                                      door_approach(s, s.other_room), s.blocked_target_side));
        std::vector<std::string> leg1 = parse_removals(t.observations.at(1));
        std::vector<std::string> leg2 = parse_removals(t.observations.at(2));
        std::vector<std::string> plan;
        plan.push_back("pickup(" + s.key_id + ")");
        for (const std::string& id : leg1) plan.push_back("remove(" + id + ")");
        plan.push_back("open(" + s.door_id + ")");
        // The second leg was searched target-to-door, so clear it in
        // reverse while walking door-to-target.
        for (auto it = leg2.rbegin(); it != leg2.rend(); ++it)
            plan.push_back("remove(" + *it + ")");
        plan.push_back("pickup(" + s.target_id + ")");
        std::string content;
        for (size_t i = 0; i < plan.size(); ++i) {
            if (i) content += "\n";
            content += plan[i];
        }
        return emit("Key first, clear the near leg, open the door, clear the far leg, grab it.",
                    agents::PlannerMode::Solution, content);
    }

    TaskFamily family_;
};

// ---- code writer: canned question-to-query translations ----

class ReferenceCodewriter : public agents::Backend {
  public:
    std::string complete_raw(const agents::Messages& messages) override {
        std::string question;
        for (const agents::ChatMessage& m : messages)
            if (m.role == agents::Role::User) {
                question = agents::trim(m.content);
                break;
            }
        return "```sgq\n" + translate(question) + "\n```";
    }
    std::string name() const override { return "reference-codewriter"; }

  private:
    static std::string translate(const std::string& q) {
        const std::string list_p = "List all ";
        const std::string list_s = " and their attributes.";
        if (q.rfind(list_p, 0) == 0 && q.size() > list_p.size() + list_s.size() &&
            q.compare(q.size() - list_s.size(), list_s.size(), list_s) == 0) {
            std::string what = q.substr(list_p.size(), q.size() - list_p.size() - list_s.size());
            if (what == "nodes") return "nodes()";
            std::vector<std::string> words = split(what, " ");
            if (words.size() == 1) return "nodes(type=\"" + singular_type(words[0]) + "\")";
            if (words.size() == 2)
                return "nodes(type=\"" + singular_type(words[1]) + "\", color=\"" + words[0] +
                       "\")";
        }
        const std::string count_p = "How many ";
        const std::string count_m = " are in ";
        size_t mid = q.find(count_m);
        if (q.rfind(count_p, 0) == 0 && mid != std::string::npos && !q.empty() &&
            q.back() == '?') {
            std::string what = q.substr(count_p.size(), mid - count_p.size());
            std::string room = q.substr(mid + count_m.size(), q.size() - mid - count_m.size() - 1);
            std::vector<std::string> words = split(what, " ");
            std::string filters = words.size() == 2 ? "type=\"" + singular_type(words[1]) +
                                                          "\", color=\"" + words[0] + "\""
                                                    : "type=\"" + singular_type(words[0]) + "\"";
            return "count(nodes(" + filters + ") | in_room(\"" + room + "\"))";
        }
        return "nodes()";
    }
};

// ---- verifier: deterministic result summaries ----

class ReferenceVerifier : public agents::Backend {
  public:
    std::string complete_raw(const agents::Messages& messages) override {
        const std::string& request = messages.back().content;
        std::vector<std::string> lines = lines_of(request);

        std::string question;
        for (size_t i = 0; i + 1 < lines.size(); ++i)
            if (lines[i] == "Query:") {
                question = lines[i + 1];
                break;
            }

        // Summarize the newest result block.
        size_t block = lines.size();
        for (size_t i = 0; i < lines.size(); ++i)
            if (lines[i].rfind("Result ", 0) == 0 && lines[i].size() > 2 &&
                lines[i].compare(lines[i].size() - 2, 2, "):") == 0)
                block = i;
        if (block == lines.size()) return "NOT ADDRESSED";
        std::vector<std::string> rendered;
        for (size_t i = block + 1; i < lines.size() && !lines[i].empty(); ++i)
            rendered.push_back(lines[i]);

        if (rendered.empty()) return "NOT ADDRESSED";
        if (rendered.size() == 1 && rendered[0] == "(no results)") return "No matching results.";
        if (rendered.size() == 1 && rendered[0].rfind("count = ", 0) == 0)
            return count_summary(question, rendered[0].substr(8));
        std::string out = "Retrieved " + std::to_string(rendered.size()) + " result(s): ";
        for (size_t i = 0; i < rendered.size(); ++i) {
            if (i) out += "; ";
            out += rendered[i];
        }
        return out;
    }
    std::string name() const override { return "reference-verifier"; }

  private:
    static std::string count_summary(const std::string& question, const std::string& n) {
        const std::string count_p = "How many ";
        const std::string count_m = " are in ";
        size_t mid = question.find(count_m);
        if (question.rfind(count_p, 0) == 0 && mid != std::string::npos &&
            !question.empty() && question.back() == '?') {
            std::string what = question.substr(count_p.size(), mid - count_p.size());
            std::string room = question.substr(mid + count_m.size(),
                                               question.size() - mid - count_m.size() - 1);
            return room + " contains " + n + " " + what + ".";
        }
        return "The count is " + n + ".";
    }
};

// ---- tool caller: rewrites "Call <tool> with <args>" as an invocation ----

class ReferenceToolcaller : public agents::Backend {
  public:
    std::string complete_raw(const agents::Messages& messages) override {
        std::string text = agents::trim(messages.back().content);
        const std::string call_p = "Call ";
        const std::string call_m = " with ";
        size_t mid = text.find(call_m);
        if (text.rfind(call_p, 0) != 0 || mid == std::string::npos)
            return "I cannot turn that into a tool invocation.";
        std::string tool = text.substr(call_p.size(), mid - call_p.size());
        std::string rest = agents::trim(text.substr(mid + call_m.size()));
        if (!rest.empty() && rest.back() == '.') rest = agents::trim(rest.substr(0, rest.size() - 1));

        nlohmann::json args;
        try {
            args = rest.empty() ? nlohmann::json::object()
                 : rest[0] == '{' ? nlohmann::json::parse(rest)
                                  : parse_pairs(rest);
        } catch (const std::exception&) {
            return "I cannot turn that into a tool invocation.";
        }
        nlohmann::json invocation{{"tool", tool}, {"args", args}};
        return "```json\n" + invocation.dump() + "\n```";
    }
    std::string name() const override { return "reference-toolcaller"; }

  private:
    // "top_left=[1,1], size=[5,5], blocked=[{...}]" with commas split
    // only at bracket depth zero.
    static nlohmann::json parse_pairs(const std::string& rest) {
        nlohmann::json args = nlohmann::json::object();
        int depth = 0;
        size_t start = 0;
        auto take = [&](size_t from, size_t to) {
            std::string piece = agents::trim(rest.substr(from, to - from));
            if (piece.empty()) return;
            size_t eq = piece.find('=');
            if (eq == std::string::npos) throw Error("expected key=value: " + piece);
            args[agents::trim(piece.substr(0, eq))] =
                nlohmann::json::parse(agents::trim(piece.substr(eq + 1)));
        };
        for (size_t i = 0; i < rest.size(); ++i) {
            char c = rest[i];
            if (c == '[' || c == '{') ++depth;
            if (c == ']' || c == '}') --depth;
            if (c == ',' && depth == 0) {
                take(start, i);
                start = i + 1;
            }
        }
        take(start, rest.size());
        return args;
    }
};

// ---- budgeted retrieval agent ----

class ReferenceLimitAgent : public agents::Backend {
  public:
    std::string complete_raw(const agents::Messages& messages) override {
        Transcript t = read_transcript(messages);
        // The budget notice rides on the question message.
        std::string question = t.instruction;
        size_t cut = question.find("\nYou may make at most ");
        if (cut != std::string::npos) question = question.substr(0, cut);

        const std::string mid = "attributes of ";
        const std::string suf = "'s neighbors";
        size_t a = question.find(mid);
        size_t b = question.find(suf);
        if (a == std::string::npos || b == std::string::npos || b < a)
            return "Action: finish(no matching results found)";
        std::string node = question.substr(a + mid.size(), b - a - mid.size());

        if (t.turns == 0) return "Action: get_neighbors(" + node + ")";
        std::vector<std::string> neighbors = parse_neighbors(t.observations.at(0));
        size_t next = static_cast<size_t>(t.turns) - 1;
        if (next < neighbors.size()) return "Action: get_attrs(" + neighbors[next] + ")";

        std::string summary =
            "Retrieved " + std::to_string(neighbors.size()) + " result(s): ";
        for (size_t i = 1; i < t.observations.size(); ++i) {
            if (i > 1) summary += "; ";
            summary += strip_observation(t.observations[i]);
        }
        return "Action: finish(" + summary + ")";
    }
    std::string name() const override { return "reference-retrieval-agent"; }

  private:
    static std::string strip_observation(const std::string& s) {
        return s.rfind("Observation: ", 0) == 0 ? s.substr(13) : s;
    }
    static std::vector<std::string> parse_neighbors(const std::string& observation) {
        const std::string marker = " neighbors:";
        size_t at = strip_observation(observation).find(marker);
        std::string body = strip_observation(observation);
        if (at == std::string::npos) throw Error("not a neighbors listing: " + observation);
        std::string rest = agents::trim(body.substr(at + marker.size()));
        if (rest.empty()) return {};
        return split(rest, " ");
    }
};

}  // namespace

EpisodeBackends make_reference_backends(TaskFamily family) {
    if (family == TaskFamily::Household)
        throw Error("reference agents cover only the grid-world tasks");
    EpisodeBackends b;
    b.planner = std::make_shared<ReferencePlanner>(family);
    b.codewriter = std::make_shared<ReferenceCodewriter>();
    b.verifier = std::make_shared<ReferenceVerifier>();
    b.toolcaller = std::make_shared<ReferenceToolcaller>();
    b.retrieval_agent = std::make_shared<ReferenceLimitAgent>();
    return b;
}

}  // namespace sgrwr::orch
