#include "sgrwr/env/household.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace sgrwr::household {

// ---------------------------------------------------------------------------
// action parsing

namespace {

const char* kVerbs[] = {"walk", "grab",      "open",      "close",  "switchon",
                        "switchoff", "sit", "putin", "putback"};

bool known_verb(const std::string& v) {
    for (const char* k : kVerbs)
        if (v == k) return true;
    return false;
}

bool takes_two_refs(const std::string& verb) { return verb == "putin" || verb == "putback"; }

// Tiny cursor over an action line; columns are 1-based.
struct Cursor {
    const std::string& s;
    size_t pos = 0;

    size_t col() const { return pos + 1; }
    bool eof() const { return pos >= s.size(); }
    char peek() const { return s[pos]; }
    void skip_ws() {
        while (!eof() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    void expect(char c, const std::string& what) {
        if (eof() || s[pos] != c)
            throw ParseError("expected " + what + " at column " + std::to_string(col()), col());
        ++pos;
    }
    // Reads up to (not including) `close`, which must exist.
    std::string until(char close, const std::string& what) {
        size_t start = pos;
        while (!eof() && s[pos] != close) ++pos;
        if (eof())
            throw ParseError("unterminated " + what + "; expected '" + close + "' at column " +
                                 std::to_string(col()),
                             col());
        std::string out = s.substr(start, pos - start);
        ++pos;  // consume the closer
        return out;
    }
};

ObjectRef parse_ref(Cursor& c) {
    c.skip_ws();
    c.expect('<', "'<' before a class name");
    size_t cls_col = c.col();
    std::string cls = c.until('>', "class name");
    if (cls.empty() || cls.find_first_of(" \t") != std::string::npos)
        throw ParseError("class names are single lowercase words; got '" + cls + "' at column " +
                             std::to_string(cls_col),
                         cls_col);
    c.skip_ws();
    c.expect('(', "'(' before an id");
    size_t id_col = c.col();
    std::string digits = c.until(')', "id");
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("ids are unsigned integers; got '" + digits + "' at column " +
                             std::to_string(id_col),
                         id_col);
    return ObjectRef{cls, std::stoll(digits)};
}

}  // namespace

HouseholdAction parse_vh_action(const std::string& line) {
    Cursor c{line};
    c.skip_ws();
    if (c.eof()) throw ParseError("empty action line", c.col());
    c.expect('[', "'[' before the verb");
    size_t verb_col = c.col();
    std::string verb = c.until(']', "verb");
    if (!known_verb(verb))
        throw ParseError("unknown verb '" + verb + "' at column " + std::to_string(verb_col),
                         verb_col);
    HouseholdAction action{verb, {}};
    action.refs.push_back(parse_ref(c));
    c.skip_ws();
    if (takes_two_refs(verb)) {
        if (c.eof())
            throw ParseError("[" + verb + "] needs a second object reference at column " +
                                 std::to_string(c.col()),
                             c.col());
        action.refs.push_back(parse_ref(c));
        c.skip_ws();
    }
    if (!c.eof())
        throw ParseError("unexpected text after the action at column " + std::to_string(c.col()),
                         c.col());
    return action;
}

std::string format_vh_action(const HouseholdAction& action) {
    std::string out = "[" + action.verb + "]";
    for (const ObjectRef& r : action.refs)
        out += " <" + r.class_name + "> (" + std::to_string(r.id) + ")";
    return out;
}

// ---------------------------------------------------------------------------
// simulator

namespace {

StringList list_attr(const Node& n, const std::string& key) {
    const AttrValue* v = n.get(key);
    if (!v || !std::holds_alternative<StringList>(*v)) return {};
    return std::get<StringList>(*v);
}

bool has_property(const Node& n, const std::string& p) {
    StringList props = list_attr(n, "properties");
    return std::find(props.begin(), props.end(), p) != props.end();
}

bool has_state(const Node& n, const std::string& st) {
    StringList states = list_attr(n, "states");
    return std::find(states.begin(), states.end(), st) != states.end();
}

std::string class_of(const Node& n) {
    const std::string* cls = n.get_str("class_name");
    return cls ? *cls : std::string{};
}

std::string category_of(const Node& n) {
    const std::string* cat = n.get_str("category");
    return cat ? *cat : std::string{};
}

// Replaces `drop` with `gain` in the node's state list (either may be
// absent; `gain` is never duplicated).
void swap_state(SceneGraph& g, const std::string& id, const std::string& drop,
                const std::string& gain) {
    Node& n = g.nodes.at(id);
    StringList states = list_attr(n, "states");
    std::erase(states, drop);
    if (std::find(states.begin(), states.end(), gain) == states.end()) states.push_back(gain);
    n.attrs["states"] = attr_strs(std::move(states));
}

void add_state_once(SceneGraph& g, const std::string& id, const std::string& st) {
    Node& n = g.nodes.at(id);
    StringList states = list_attr(n, "states");
    if (std::find(states.begin(), states.end(), st) != states.end()) return;
    states.push_back(st);
    n.attrs["states"] = attr_strs(std::move(states));
}

bool edge_exists(const SceneGraph& g, const std::string& from, const std::string& to,
                 const std::string& rel) {
    for (const Edge& e : g.edges)
        if (e.from == from && e.to == to && e.relationship == rel) return true;
    return false;
}

}  // namespace

Simulator::Simulator(const SceneGraph& initial, std::optional<int64_t> agent_id)
    : state_(initial) {
    if (initial.profile != "household")
        throw Error("the household simulator needs a household-profile graph, got '" +
                    initial.profile + "'");
    int64_t id = agent_id ? *agent_id : household_agent_id(state_);
    agent_ = std::to_string(id);
    const Node* n = state_.find(agent_);
    if (!n) throw UnknownObject("no node with id " + agent_ + " to act as the agent");
}

const Node& Simulator::resolve(const ObjectRef& ref) const {
    const Node* n = state_.find(std::to_string(ref.id));
    if (!n) throw UnknownObject("no object with id " + std::to_string(ref.id));
    std::string cls = class_of(*n);
    if (cls != ref.class_name)
        throw UnknownObject("object " + std::to_string(ref.id) + " is a '" + cls + "', not a '" +
                            ref.class_name + "'");
    return *n;
}

bool Simulator::agent_close_to(const std::string& id) const {
    return edge_exists(state_, agent_, id, "CLOSE") || edge_exists(state_, id, agent_, "CLOSE");
}

void Simulator::require_walked(const std::string& verb, const Node& target) const {
    if (!agent_close_to(target.id))
        throw PreconditionError("[" + verb +
                                "] requires that the agent has walked to that object first");
}

void Simulator::require_property(const std::string& verb, const Node& target,
                                 const std::string& property) const {
    if (!has_property(target, property))
        throw PreconditionError("[" + verb + "] requires an object with the " + property +
                                " property; " + class_of(target) + " lacks it");
}

void Simulator::apply(const HouseholdAction& action) {
    const std::string& verb = action.verb;
    size_t want = takes_two_refs(verb) ? 2u : 1u;
    if (!known_verb(verb)) throw Error("unknown verb: " + verb);
    if (action.refs.size() != want)
        throw Error("[" + verb + "] takes " + std::to_string(want) + " object reference(s)");
    const Node& target = resolve(action.refs[0]);
    for (const ObjectRef& r : action.refs)
        if (std::to_string(r.id) == agent_)
            throw PreconditionError("the agent cannot act on itself");

    if (verb == "walk") {
        // Stand up, leave interaction range of everything, approach the target.
        std::erase_if(state_.edges, [&](const Edge& e) {
            if (e.relationship == "CLOSE" && (e.from == agent_ || e.to == agent_)) return true;
            return e.relationship == "SITTING" && e.from == agent_;
        });
        state_.add_edge(agent_, target.id, "CLOSE");
        // Follow the containment chain to the target's room, if any, and
        // move the agent there.
        std::string cur = target.id;
        std::set<std::string> seen;
        std::string room;
        while (seen.insert(cur).second) {
            const Node* n = state_.find(cur);
            if (n && category_of(*n) == "Rooms") {
                room = cur;
                break;
            }
            std::string next;
            for (const Edge& e : state_.edges)
                if (e.from == cur && e.relationship == "INSIDE") {
                    next = e.to;
                    break;
                }
            if (next.empty()) break;
            cur = next;
        }
        if (!room.empty()) {
            std::erase_if(state_.edges, [&](const Edge& e) {
                if (e.from != agent_ || e.relationship != "INSIDE") return false;
                const Node* n = state_.find(e.to);
                return n && category_of(*n) == "Rooms";
            });
            state_.add_edge(agent_, room, "INSIDE");
        }
        return;
    }

    if (verb == "grab") {
        require_walked(verb, target);
        require_property(verb, target, "GRABBABLE");
        for (const Edge& e : state_.edges) {
            if (e.to != target.id) continue;
            if (e.relationship != "HOLDS_RH" && e.relationship != "HOLD_LH") continue;
            if (e.from == agent_)
                throw PreconditionError("the agent already holds that object");
            throw PreconditionError("another character is holding that object");
        }
        bool right_free = true, left_free = true;
        for (const Edge& e : state_.edges) {
            if (e.from != agent_) continue;
            if (e.relationship == "HOLDS_RH") right_free = false;
            if (e.relationship == "HOLD_LH") left_free = false;
        }
        if (!right_free && !left_free)
            throw PreconditionError("[grab] requires a free hand; both hands are full");
        // Lift the object off whatever it rests on or sits inside.
        std::erase_if(state_.edges, [&](const Edge& e) {
            return e.from == target.id && (e.relationship == "ON" || e.relationship == "INSIDE");
        });
        state_.add_edge(agent_, target.id, right_free ? "HOLDS_RH" : "HOLD_LH");
        return;
    }

    if (verb == "open" || verb == "close") {
        require_walked(verb, target);
        require_property(verb, target, "CAN_OPEN");
        bool opening = verb == "open";
        if (opening && has_state(target, "OPEN"))
            throw PreconditionError("[open] the object is already open");
        if (!opening && has_state(target, "CLOSED"))
            throw PreconditionError("[close] the object is already closed");
        if (opening)
            swap_state(state_, target.id, "CLOSED", "OPEN");
        else
            swap_state(state_, target.id, "OPEN", "CLOSED");
        return;
    }

    if (verb == "switchon" || verb == "switchoff") {
        require_walked(verb, target);
        require_property(verb, target, "HAS_SWITCH");
        bool on = verb == "switchon";
        if (on && has_state(target, "ON"))
            throw PreconditionError("[switchon] the object is already on");
        if (!on && has_state(target, "OFF"))
            throw PreconditionError("[switchoff] the object is already off");
        if (on) {
            swap_state(state_, target.id, "OFF", "ON");
            // A heat source that turns on heats everything inside it.
            if (has_property(target, "HEAT_SOURCE")) {
                std::vector<std::string> contents;
                for (const Edge& e : state_.edges)
                    if (e.to == target.id && e.relationship == "INSIDE") contents.push_back(e.from);
                for (const std::string& id : contents) add_state_once(state_, id, "HEATED");
            }
        } else {
            swap_state(state_, target.id, "ON", "OFF");
        }
        return;
    }

    if (verb == "sit") {
        require_walked(verb, target);
        require_property(verb, target, "SITTABLE");
        for (const Edge& e : state_.edges)
            if (e.from == agent_ && e.relationship == "SITTING")
                throw PreconditionError("[sit] the agent is already sitting");
        state_.add_edge(agent_, target.id, "SITTING");
        return;
    }

    // putin / putback
    const Node& container = resolve(action.refs[1]);
    std::string held_rel;
    for (const Edge& e : state_.edges)
        if (e.from == agent_ && e.to == target.id &&
            (e.relationship == "HOLDS_RH" || e.relationship == "HOLD_LH"))
            held_rel = e.relationship;
    if (held_rel.empty())
        throw PreconditionError("[" + verb + "] requires that the agent is holding object 1");
    if (!agent_close_to(container.id))
        throw PreconditionError("[" + verb +
                                "] requires that the agent has walked to the object 2 first");
    if (verb == "putin" && has_property(container, "CAN_OPEN") && !has_state(container, "OPEN"))
        throw PreconditionError("[putin] requires that the container is open");
    std::erase_if(state_.edges, [&](const Edge& e) {
        return e.from == agent_ && e.to == target.id && e.relationship == held_rel;
    });
    if (verb == "putin") {
        state_.add_edge(target.id, container.id, "INSIDE");
        // Dropping something into a heat source that is already running
        // heats it immediately.
        if (has_property(container, "HEAT_SOURCE") && has_state(container, "ON"))
            add_state_once(state_, target.id, "HEATED");
    } else {
        state_.add_edge(target.id, container.id, "ON");
    }
}

// ---------------------------------------------------------------------------
// goals and grading

namespace {

struct RelationInfo {
    const char* name;
    const char* rendered;  // table-style spelling
    bool needs_object;
};

const RelationInfo kRelations[] = {
    {"ON_state", "ON", false}, {"OFF_state", "OFF", false}, {"OPEN", "OPEN", false},
    {"CLOSED", "CLOSED", false}, {"HEATED", "HEATED", false}, {"INSIDE", "INSIDE", true},
    {"ON_top", "ON", true},
};

const RelationInfo* relation_info(const std::string& name) {
    for (const RelationInfo& r : kRelations)
        if (name == r.name) return &r;
    return nullptr;
}

}  // namespace

GoalPredicate goal_from_json(const nlohmann::json& j) {
    GoalPredicate g;
    g.subject = j.at("subject").get<std::string>();
    std::string rel = j.at("relation").get<std::string>();
    if (j.contains("object") && !j.at("object").is_null())
        g.object = j.at("object").get<std::string>();
    // Table-style spellings: a bare ON/OFF is a state, ON with an object
    // means "rests on top of".
    if (rel == "ON") rel = g.object ? "ON_top" : "ON_state";
    if (rel == "OFF") rel = "OFF_state";
    const RelationInfo* info = relation_info(rel);
    if (!info) throw Error("unknown goal relation: " + rel);
    if (info->needs_object && !g.object)
        throw Error("goal relation " + rel + " needs an object class");
    if (!info->needs_object && g.object)
        throw Error("goal relation " + rel + " does not take an object");
    g.relation = rel;
    return g;
}

nlohmann::json goal_to_json(const GoalPredicate& goal) {
    const RelationInfo* info = relation_info(goal.relation);
    if (!info) throw Error("unknown goal relation: " + goal.relation);
    nlohmann::json j;
    j["subject"] = goal.subject;
    j["relation"] = info->rendered;
    if (goal.object) j["object"] = *goal.object;
    return j;
}

std::string render_goal(const GoalPredicate& goal) {
    const RelationInfo* info = relation_info(goal.relation);
    std::string rel = info ? info->rendered : goal.relation;
    std::string out = goal.subject + " " + rel;
    if (goal.object) out += " " + *goal.object;
    return out;
}

bool goal_holds(const SceneGraph& graph, const GoalPredicate& goal) {
    const RelationInfo* info = relation_info(goal.relation);
    if (!info) throw Error("unknown goal relation: " + goal.relation);
    if (!info->needs_object) {
        // State goals: rendered name doubles as the state string.
        for (const auto& [id, node] : graph.nodes) {
            (void)id;
            if (class_of(node) == goal.subject && has_state(node, info->rendered)) return true;
        }
        return false;
    }
    std::string edge_rel = goal.relation == "INSIDE" ? "INSIDE" : "ON";
    for (const Edge& e : graph.edges) {
        if (e.relationship != edge_rel) continue;
        const Node* a = graph.find(e.from);
        const Node* b = graph.find(e.to);
        if (a && b && class_of(*a) == goal.subject && class_of(*b) == *goal.object) return true;
    }
    return false;
}

GradeResult grade_plan(const SceneGraph& initial, const std::vector<HouseholdAction>& plan,
                       const std::vector<GoalPredicate>& goals) {
    Simulator sim(initial);
    for (size_t i = 0; i < plan.size(); ++i) {
        try {
            sim.apply(plan[i]);
        } catch (const Error& e) {
            return GradeResult{false,
                               "action " + std::to_string(i + 1) + " (" +
                                   format_vh_action(plan[i]) + "): " + e.what(),
                               i};
        }
    }
    for (const GoalPredicate& g : goals)
        if (!goal_holds(sim.state(), g))
            return GradeResult{false, "goal not met: " + render_goal(g), std::nullopt};
    return GradeResult{true, "", std::nullopt};
}

// ---------------------------------------------------------------------------
// task (de)serialization

nlohmann::json household_task_to_json(const HouseholdTask& task) {
    nlohmann::json j;
    j["task_name"] = task.name;
    j["instruction"] = task.instruction;
    j["goals"] = nlohmann::json::array();
    for (const GoalPredicate& g : task.goals) j["goals"].push_back(goal_to_json(g));
    j["golden_plan"] = task.golden_plan;
    j["few_shot"] = task.few_shot;
    return j;
}

HouseholdTask household_task_from_json(const nlohmann::json& j) {
    HouseholdTask t;
    t.name = j.at("task_name").get<std::string>();
    t.instruction = j.at("instruction").get<std::string>();
    for (const auto& gj : j.at("goals")) t.goals.push_back(goal_from_json(gj));
    t.golden_plan = j.value("golden_plan", std::vector<std::string>{});
    t.few_shot = j.value("few_shot", false);
    return t;
}

// ---------------------------------------------------------------------------
// bundled fixtures

namespace {

struct ObjSpec {
    int64_t id;
    const char* category;
    const char* cls;
    StringList props;
    StringList states;
    int64_t room;  // 0 = no containing-room edge (rooms, doors, held items)
};

void add_objects(SceneGraph& g, const std::vector<ObjSpec>& specs) {
    for (const ObjSpec& o : specs) {
        Node n;
        n.id = std::to_string(o.id);
        n.attrs["id"] = attr_int(o.id);
        n.attrs["category"] = attr_str(o.category);
        n.attrs["class_name"] = attr_str(o.cls);
        n.attrs["properties"] = attr_strs(o.props);
        n.attrs["states"] = attr_strs(o.states);
        g.add_node(std::move(n));
        if (o.room != 0) g.add_edge(std::to_string(o.id), std::to_string(o.room), "INSIDE");
    }
}

void rel(SceneGraph& g, int64_t from, const char* relationship, int64_t to) {
    g.add_edge(std::to_string(from), std::to_string(to), relationship);
}

SceneGraph build_vh1() {
    SceneGraph g;
    g.profile = "household";

    const StringList none{};
    const StringList grab{"GRABBABLE"};
    const StringList sit{"SITTABLE"};
    const StringList openable{"CAN_OPEN"};
    const StringList switchable{"HAS_SWITCH"};
    const StringList heater{"CAN_OPEN", "HAS_SWITCH", "HEAT_SOURCE"};
    const StringList open_switch{"CAN_OPEN", "HAS_SWITCH"};

    std::vector<ObjSpec> specs = {
        // rooms and characters
        {11, "Rooms", "livingroom", none, none, 0},
        {12, "Rooms", "kitchen", none, none, 0},
        {13, "Rooms", "bathroom", none, none, 0},
        {14, "Rooms", "bedroom", none, none, 0},
        {1, "Characters", "character", none, none, 11},
        {2, "Characters", "character", none, none, 11},
        // doors sit between rooms, not inside one
        {15, "Doors", "door", openable, {"OPEN"}, 0},
        {16, "Doors", "door", openable, {"OPEN"}, 0},
        {17, "Doors", "door", openable, {"OPEN"}, 0},
        // living room
        {21, "Furniture", "sofa", sit, none, 11},
        {22, "Electronics", "tv", switchable, {"OFF"}, 11},
        {23, "Lamps", "tablelamp", switchable, {"ON"}, 11},
        {24, "Furniture", "coffeetable", none, none, 11},
        {25, "Furniture", "bookshelf", none, none, 11},
        {26, "Electronics", "remotecontrol", grab, none, 0},  // held by character 2
        {27, "Props", "book", grab, none, 0},                 // held by character 2
        {28, "Electronics", "computer", switchable, {"ON"}, 11},
        {29, "Furniture", "desk", none, none, 11},
        {30, "Furniture", "chair", sit, none, 11},
        {31, "Decor", "rug", none, none, 11},
        {32, "Lamps", "ceilinglamp", switchable, {"ON"}, 11},
        {33, "Decor", "wallpictureframe", none, none, 11},
        {34, "Decor", "curtains", none, none, 11},
        {35, "Windows", "window", openable, {"CLOSED"}, 11},
        {36, "Electrical", "powersocket", none, none, 11},
        {37, "Electrical", "lightswitch", switchable, {"ON"}, 11},
        {38, "Props", "cushion", grab, none, 11},
        {39, "Props", "paper", grab, none, 11},
        {40, "Electronics", "cellphone", grab, none, 11},
        // kitchen
        {41, "Furniture", "kitchentable", none, none, 12},
        {42, "Furniture", "kitchencounter", none, none, 12},
        {43, "Appliances", "fridge", openable, {"CLOSED"}, 12},
        {44, "Appliances", "microwave", heater, {"CLOSED", "OFF"}, 12},
        {45, "Appliances", "toaster", {"HAS_SWITCH", "HEAT_SOURCE"}, {"OFF"}, 12},
        {46, "Containers", "garbagecan", openable, {"CLOSED"}, 12},
        {47, "Furniture", "sink", none, none, 12},
        {48, "Appliances", "faucet", switchable, {"OFF"}, 12},
        {49, "Appliances", "stove", heater, {"CLOSED", "OFF"}, 12},
        {50, "Furniture", "kitchencabinet", openable, {"CLOSED"}, 12},
        {51, "Props", "plate", grab, none, 12},
        {52, "Food", "plum", grab, none, 12},
        {53, "Food", "breadslice", grab, none, 12},
        {54, "Drinks", "wine", grab, none, 12},
        {55, "Drinks", "milk", grab, none, 12},
        {56, "Food", "apple", grab, none, 0},   // inside the fridge
        {57, "Food", "banana", grab, none, 0},  // inside the fridge
        {58, "Props", "cutleryknife", grab, none, 12},
        {59, "Props", "cutleryfork", grab, none, 12},
        {60, "Props", "mug", grab, none, 12},
        {61, "Props", "waterglass", grab, none, 12},
        {62, "Props", "dishbowl", grab, none, 12},
        {63, "Props", "fryingpan", grab, none, 12},
        {64, "Props", "cookingpot", grab, none, 12},
        {65, "Appliances", "coffeemaker", switchable, {"OFF"}, 12},
        {66, "Props", "papertowel", grab, none, 12},
        {67, "Props", "condimentbottle", grab, none, 0},  // inside the cabinet
        {68, "Props", "condimentshaker", grab, none, 0},  // inside the cabinet
        {69, "Food", "chips", grab, none, 12},
        {70, "Food", "cereal", grab, none, 0},  // inside the cabinet
        {71, "Furniture", "kitchenchair", sit, none, 12},
        {72, "Furniture", "kitchenchair", sit, none, 12},
        {73, "Furniture", "kitchenchair", sit, none, 12},
        {74, "Furniture", "kitchenchair", sit, none, 12},
        {75, "Lamps", "ceilinglamp", switchable, {"ON"}, 12},
        {76, "Electrical", "powersocket", none, none, 12},
        {77, "Electrical", "lightswitch", switchable, {"ON"}, 12},
        {78, "Windows", "window", openable, {"CLOSED"}, 12},
        {79, "Props", "dishwashingliquid", grab, none, 12},
        {80, "Props", "sponge", grab, none, 12},
        // bathroom
        {81, "Furniture", "bathroomcabinet", openable, {"CLOSED"}, 13},
        {82, "Props", "barsoap", grab, none, 13},
        {83, "Furniture", "bathroomcounter", none, none, 13},
        {84, "Furniture", "toilet", sit, none, 13},
        {85, "Furniture", "showerstall", none, none, 13},
        {86, "Furniture", "towelrack", none, none, 13},
        {87, "Props", "towel", grab, none, 13},
        {88, "Props", "toothbrush", grab, none, 13},
        {89, "Props", "toothpaste", grab, none, 13},
        {90, "Props", "facecream", grab, none, 0},    // inside the cabinet
        {91, "Props", "hairproduct", grab, none, 0},  // inside the cabinet
        {92, "Props", "toiletpaper", grab, none, 13},
        {93, "Decor", "bathroommirror", none, none, 13},
        {94, "Furniture", "bathtub", none, none, 13},
        {95, "Appliances", "washingmachine", open_switch, {"CLOSED", "OFF"}, 13},
        {96, "Furniture", "sink", none, none, 13},
        {97, "Appliances", "faucet", switchable, {"OFF"}, 13},
        {98, "Lamps", "ceilinglamp", switchable, {"ON"}, 13},
        {99, "Electrical", "lightswitch", switchable, {"ON"}, 13},
        {100, "Windows", "window", openable, {"CLOSED"}, 13},
        // bedroom
        {101, "Furniture", "bed", sit, none, 14},
        {102, "Furniture", "nightstand", none, none, 14},
        {103, "Furniture", "closet", openable, {"CLOSED"}, 14},
        {104, "Furniture", "chestofdrawers", openable, {"CLOSED"}, 14},
        {105, "Furniture", "desk", none, none, 14},
        {106, "Furniture", "bookshelf", none, none, 14},
        {107, "Props", "pillow", grab, none, 14},
        {108, "Props", "pillow", grab, none, 14},
        {109, "Electronics", "alarmclock", switchable, {"ON"}, 14},
        {110, "Lamps", "walllamp", switchable, {"OFF"}, 14},
        {111, "Electronics", "cellphone", grab, none, 14},
        {112, "Electronics", "wallphone", none, none, 14},
        {113, "Decor", "wallpictureframe", none, none, 14},
        {114, "Electronics", "laptop", switchable, {"OFF"}, 14},
        {115, "Props", "book", grab, none, 14},
        {116, "Props", "book", grab, none, 14},
        {117, "Props", "book", grab, none, 14},
        {118, "Props", "clothespile", grab, none, 0},   // inside the closet
        {119, "Props", "clothesshirt", grab, none, 0},  // inside the closet
        {120, "Props", "clothespants", grab, none, 0},  // inside the closet
        {121, "Props", "shoes", grab, none, 14},
        {122, "Lamps", "ceilinglamp", switchable, {"ON"}, 14},
        {123, "Electrical", "powersocket", none, none, 14},
        {124, "Electrical", "lightswitch", switchable, {"ON"}, 14},
        {125, "Windows", "window", openable, {"CLOSED"}, 14},
        {126, "Decor", "curtains", none, none, 14},
        {127, "Decor", "rug", none, none, 14},
    };
    add_objects(g, specs);

    // characters: 1 is the agent; 2 is settled on the sofa
    rel(g, 1, "CLOSE", 21);
    rel(g, 1, "FACING", 22);
    rel(g, 2, "CLOSE", 21);
    rel(g, 2, "SITTING", 21);
    rel(g, 2, "FACING", 22);
    rel(g, 2, "HOLDS_RH", 26);
    rel(g, 2, "HOLD_LH", 27);
    // doors
    rel(g, 15, "BETWEEN", 11);
    rel(g, 15, "BETWEEN", 12);
    rel(g, 16, "BETWEEN", 11);
    rel(g, 16, "BETWEEN", 13);
    rel(g, 17, "BETWEEN", 11);
    rel(g, 17, "BETWEEN", 14);
    // placement: living room
    rel(g, 21, "FACING", 22);
    rel(g, 38, "ON", 21);
    rel(g, 39, "ON", 24);
    rel(g, 40, "ON", 24);
    rel(g, 23, "ON", 29);
    // placement: kitchen
    rel(g, 51, "ON", 42);
    rel(g, 52, "ON", 42);
    rel(g, 53, "ON", 42);
    rel(g, 54, "ON", 41);
    rel(g, 55, "ON", 42);
    rel(g, 56, "INSIDE", 43);
    rel(g, 57, "INSIDE", 43);
    rel(g, 58, "ON", 41);
    rel(g, 59, "ON", 41);
    rel(g, 60, "ON", 42);
    rel(g, 61, "ON", 41);
    rel(g, 62, "ON", 42);
    rel(g, 63, "ON", 49);
    rel(g, 64, "ON", 49);
    rel(g, 67, "INSIDE", 50);
    rel(g, 68, "INSIDE", 50);
    rel(g, 70, "INSIDE", 50);
    rel(g, 79, "ON", 47);
    rel(g, 80, "ON", 47);
    for (int64_t chair : {71, 72, 73, 74}) rel(g, chair, "CLOSE", 41);
    // placement: bathroom
    rel(g, 82, "ON", 83);
    rel(g, 87, "ON", 86);
    rel(g, 88, "ON", 83);
    rel(g, 89, "ON", 83);
    rel(g, 90, "INSIDE", 81);
    rel(g, 91, "INSIDE", 81);
    // placement: bedroom
    rel(g, 107, "ON", 101);
    rel(g, 108, "ON", 101);
    rel(g, 109, "ON", 102);
    rel(g, 111, "ON", 102);
    rel(g, 114, "ON", 105);
    rel(g, 115, "ON", 106);
    rel(g, 116, "ON", 106);
    rel(g, 117, "ON", 106);
    rel(g, 118, "INSIDE", 103);
    rel(g, 119, "INSIDE", 103);
    rel(g, 120, "INSIDE", 103);
    return g;
}

SceneGraph build_vh2() {
    SceneGraph g;
    g.profile = "household";

    const StringList none{};
    const StringList grab{"GRABBABLE"};
    const StringList sit{"SITTABLE"};
    const StringList openable{"CAN_OPEN"};
    const StringList switchable{"HAS_SWITCH"};
    const StringList heater{"CAN_OPEN", "HAS_SWITCH", "HEAT_SOURCE"};
    const StringList open_switch{"CAN_OPEN", "HAS_SWITCH"};

    std::vector<ObjSpec> specs = {
        // rooms, characters, doors
        {51, "Rooms", "kitchen", none, none, 0},
        {52, "Rooms", "livingroom", none, none, 0},
        {53, "Rooms", "bedroom", none, none, 0},
        {54, "Rooms", "bathroom", none, none, 0},
        {3, "Characters", "character", none, none, 51},
        {4, "Characters", "character", none, none, 53},
        {55, "Doors", "door", openable, {"OPEN"}, 0},
        {56, "Doors", "door", openable, {"OPEN"}, 0},
        {57, "Doors", "door", openable, {"OPEN"}, 0},
        // kitchen
        {61, "Appliances", "fridge", openable, {"CLOSED"}, 51},
        {62, "Appliances", "microwave", heater, {"CLOSED", "OFF"}, 51},
        {63, "Appliances", "toaster", {"HAS_SWITCH", "HEAT_SOURCE"}, {"OFF"}, 51},
        {64, "Containers", "garbagecan", openable, {"CLOSED"}, 51},
        {65, "Furniture", "kitchentable", none, none, 51},
        {66, "Furniture", "kitchencounter", none, none, 51},
        {67, "Appliances", "coffeemaker", switchable, {"OFF"}, 51},
        {68, "Food", "apple", grab, none, 51},
        {69, "Food", "salmon", grab, none, 51},
        {70, "Food", "breadslice", grab, none, 51},
        {71, "Food", "chips", grab, none, 51},
        {72, "Props", "waterglass", grab, none, 51},
        {73, "Props", "plate", grab, none, 51},
        {74, "Props", "mug", grab, none, 51},
        {75, "Furniture", "sink", none, none, 51},
        {76, "Appliances", "faucet", switchable, {"OFF"}, 51},
        {77, "Appliances", "stove", heater, {"CLOSED", "OFF"}, 51},
        {78, "Furniture", "kitchencabinet", openable, {"CLOSED"}, 51},
        {79, "Food", "cereal", grab, none, 0},  // inside the cabinet
        {80, "Props", "cutleryknife", grab, none, 51},
        {81, "Furniture", "kitchenchair", sit, none, 51},
        {82, "Furniture", "kitchenchair", sit, none, 51},
        {83, "Lamps", "ceilinglamp", switchable, {"ON"}, 51},
        {84, "Electrical", "lightswitch", switchable, {"ON"}, 51},
        {85, "Electrical", "powersocket", none, none, 51},
        {86, "Windows", "window", openable, {"CLOSED"}, 51},
        {87, "Food", "banana", grab, none, 0},   // inside the fridge
        {88, "Drinks", "milk", grab, none, 0},   // inside the fridge
        {89, "Props", "dishbowl", grab, none, 51},
        {90, "Props", "sponge", grab, none, 51},
        {91, "Props", "papertowel", grab, none, 51},
        {92, "Props", "condimentbottle", grab, none, 51},
        {93, "Props", "condimentshaker", grab, none, 51},
        {94, "Props", "fryingpan", grab, none, 51},
        {95, "Props", "cookingpot", grab, none, 51},
        {96, "Food", "cupcake", grab, none, 0},         // inside the fridge
        {97, "Food", "chocolatesyrup", grab, none, 0},  // inside the cabinet
        {98, "Food", "crackers", grab, none, 0},        // inside the cabinet
        // living room
        {101, "Furniture", "sofa", sit, none, 52},
        {102, "Electronics", "tv", switchable, {"ON"}, 52},
        {103, "Electronics", "radio", switchable, {"OFF"}, 52},
        {104, "Furniture", "desk", none, none, 52},
        {105, "Props", "book", grab, none, 52},
        {106, "Furniture", "coffeetable", none, none, 52},
        {107, "Lamps", "tablelamp", switchable, {"OFF"}, 52},
        {108, "Furniture", "bookshelf", none, none, 52},
        {109, "Props", "book", grab, none, 52},
        {110, "Props", "book", grab, none, 52},
        {111, "Electronics", "remotecontrol", grab, none, 52},
        {112, "Furniture", "chair", sit, none, 52},
        {113, "Decor", "rug", none, none, 52},
        {114, "Lamps", "ceilinglamp", switchable, {"ON"}, 52},
        {115, "Electrical", "lightswitch", switchable, {"ON"}, 52},
        {116, "Electrical", "powersocket", none, none, 52},
        {117, "Windows", "window", openable, {"CLOSED"}, 52},
        {118, "Decor", "wallpictureframe", none, none, 52},
        {119, "Decor", "curtains", none, none, 52},
        {120, "Electronics", "cellphone", grab, none, 52},
        {121, "Props", "book", grab, none, 52},
        {122, "Props", "book", grab, none, 52},
        {123, "Props", "book", grab, none, 52},
        {124, "Props", "book", grab, none, 52},
        {125, "Props", "book", grab, none, 52},
        {126, "Props", "book", grab, none, 52},
        {127, "Props", "cushion", grab, none, 52},
        {128, "Props", "paper", grab, none, 52},
        // bedroom
        {131, "Furniture", "bed", sit, none, 53},
        {132, "Furniture", "nightstand", none, none, 53},
        {133, "Furniture", "closet", openable, {"CLOSED"}, 53},
        {134, "Electronics", "alarmclock", switchable, {"ON"}, 53},
        {135, "Lamps", "walllamp", switchable, {"OFF"}, 53},
        {136, "Props", "pillow", grab, none, 53},
        {137, "Furniture", "chestofdrawers", openable, {"CLOSED"}, 53},
        {138, "Props", "clothesshirt", grab, none, 0},  // inside the closet
        {139, "Props", "clothespants", grab, none, 0},  // inside the closet
        {140, "Props", "shoes", grab, none, 53},
        {141, "Lamps", "ceilinglamp", switchable, {"ON"}, 53},
        {142, "Electrical", "lightswitch", switchable, {"ON"}, 53},
        {143, "Electrical", "powersocket", none, none, 53},
        {144, "Windows", "window", openable, {"CLOSED"}, 53},
        {145, "Decor", "wallpictureframe", none, none, 53},
        {146, "Electronics", "laptop", switchable, {"OFF"}, 53},
        {147, "Props", "book", grab, none, 0},           // held by character 4
        {148, "Electronics", "cellphone", grab, none, 0},  // held by character 4
        {149, "Props", "pillow", grab, none, 53},
        {150, "Props", "book", grab, none, 53},
        // bathroom
        {151, "Furniture", "bathroomcabinet", openable, {"CLOSED"}, 54},
        {152, "Props", "toothpaste", grab, none, 54},
        {153, "Furniture", "bathroomcounter", none, none, 54},
        {154, "Props", "toothbrush", grab, none, 54},
        {155, "Props", "barsoap", grab, none, 54},
        {156, "Furniture", "toilet", sit, none, 54},
        {157, "Furniture", "showerstall", none, none, 54},
        {158, "Furniture", "towelrack", none, none, 54},
        {159, "Props", "towel", grab, none, 54},
        {160, "Decor", "bathroommirror", none, none, 54},
        {161, "Furniture", "sink", none, none, 54},
        {162, "Appliances", "faucet", switchable, {"OFF"}, 54},
        {163, "Appliances", "washingmachine", open_switch, {"CLOSED", "OFF"}, 54},
        {164, "Props", "toiletpaper", grab, none, 54},
        {165, "Lamps", "ceilinglamp", switchable, {"ON"}, 54},
        {166, "Electrical", "lightswitch", switchable, {"ON"}, 54},
        {167, "Windows", "window", openable, {"CLOSED"}, 54},
        {168, "Props", "facecream", grab, none, 0},    // inside the cabinet
        {169, "Props", "hairproduct", grab, none, 0},  // inside the cabinet
        {170, "Furniture", "bathtub", none, none, 54},
        {171, "Props", "towel", grab, none, 54},
        {172, "Props", "toiletpaper", grab, none, 54},
    };
    add_objects(g, specs);

    // characters: 3 is the agent by virtue of the lower id; 4 reads in bed
    rel(g, 3, "CLOSE", 66);
    rel(g, 4, "CLOSE", 131);
    rel(g, 4, "SITTING", 131);
    rel(g, 4, "FACING", 135);
    rel(g, 4, "HOLDS_RH", 147);
    rel(g, 4, "HOLD_LH", 148);
    // doors
    rel(g, 55, "BETWEEN", 51);
    rel(g, 55, "BETWEEN", 52);
    rel(g, 56, "BETWEEN", 52);
    rel(g, 56, "BETWEEN", 53);
    rel(g, 57, "BETWEEN", 52);
    rel(g, 57, "BETWEEN", 54);
    // placement: kitchen
    rel(g, 68, "ON", 66);
    rel(g, 69, "ON", 66);
    rel(g, 70, "ON", 66);
    rel(g, 71, "ON", 65);
    rel(g, 72, "ON", 65);
    rel(g, 73, "ON", 66);
    rel(g, 74, "ON", 66);
    rel(g, 79, "INSIDE", 78);
    rel(g, 80, "ON", 66);
    rel(g, 87, "INSIDE", 61);
    rel(g, 88, "INSIDE", 61);
    rel(g, 89, "ON", 66);
    rel(g, 90, "ON", 75);
    rel(g, 91, "ON", 66);
    rel(g, 92, "ON", 65);
    rel(g, 93, "ON", 65);
    rel(g, 94, "ON", 77);
    rel(g, 95, "ON", 77);
    rel(g, 96, "INSIDE", 61);
    rel(g, 97, "INSIDE", 78);
    rel(g, 98, "INSIDE", 78);
    for (int64_t chair : {81, 82}) rel(g, chair, "CLOSE", 65);
    // placement: living room
    rel(g, 101, "FACING", 102);
    rel(g, 105, "ON", 101);
    rel(g, 107, "ON", 106);
    rel(g, 109, "ON", 108);
    rel(g, 110, "ON", 108);
    rel(g, 111, "ON", 106);
    rel(g, 120, "ON", 106);
    for (int64_t book : {121, 122, 123, 124, 125, 126}) rel(g, book, "ON", 108);
    rel(g, 127, "ON", 101);
    rel(g, 128, "ON", 104);
    // placement: bedroom
    rel(g, 134, "ON", 132);
    rel(g, 136, "ON", 131);
    rel(g, 138, "INSIDE", 133);
    rel(g, 139, "INSIDE", 133);
    rel(g, 146, "ON", 132);
    rel(g, 149, "ON", 131);
    rel(g, 150, "ON", 132);
    // placement: bathroom
    rel(g, 152, "ON", 153);
    rel(g, 154, "ON", 153);
    rel(g, 155, "ON", 153);
    rel(g, 159, "ON", 158);
    rel(g, 168, "INSIDE", 151);
    rel(g, 169, "INSIDE", 151);
    rel(g, 171, "ON", 158);
    rel(g, 172, "ON", 153);
    return g;
}

HouseholdTask make_task(const std::string& name, const std::string& instruction,
                        std::vector<GoalPredicate> goals, std::vector<std::string> plan,
                        bool few_shot = false) {
    return HouseholdTask{name, instruction, std::move(goals), std::move(plan), few_shot};
}

GoalPredicate state_goal(const std::string& subject, const std::string& relation) {
    return GoalPredicate{subject, relation, std::nullopt};
}

GoalPredicate edge_goal(const std::string& subject, const std::string& relation,
                        const std::string& object) {
    return GoalPredicate{subject, relation, object};
}

std::vector<HouseholdTask> vh1_tasks() {
    std::vector<HouseholdTask> tasks;
    tasks.push_back(make_task("watch_tv", "Watch TV.", {state_goal("tv", "ON_state")},
                              {"[walk] <tv> (22)", "[switchon] <tv> (22)"}, true));
    tasks.push_back(make_task("open_fridge", "Open the fridge.", {state_goal("fridge", "OPEN")},
                              {"[walk] <fridge> (43)", "[open] <fridge> (43)"}, true));
    tasks.push_back(make_task("turn_off_tablelamp", "Turn off the tablelamp.",
                              {state_goal("tablelamp", "OFF_state")},
                              {"[walk] <tablelamp> (23)", "[switchoff] <tablelamp> (23)"}));
    tasks.push_back(make_task(
        "soap_in_cabinet", "Put the soap in the bathroomcabinet.",
        {edge_goal("barsoap", "INSIDE", "bathroomcabinet")},
        {"[walk] <barsoap> (82)", "[grab] <barsoap> (82)", "[walk] <bathroomcabinet> (81)",
         "[open] <bathroomcabinet> (81)", "[putin] <barsoap> (82) <bathroomcabinet> (81)"}));
    tasks.push_back(make_task(
        "throw_away_plum", "Throw away the plum.", {edge_goal("plum", "INSIDE", "garbagecan")},
        {"[walk] <plum> (52)", "[grab] <plum> (52)", "[walk] <garbagecan> (46)",
         "[open] <garbagecan> (46)", "[putin] <plum> (52) <garbagecan> (46)"}));
    tasks.push_back(make_task(
        "make_toast", "Make toast.",
        {edge_goal("breadslice", "INSIDE", "toaster"), state_goal("breadslice", "HEATED")},
        {"[walk] <breadslice> (53)", "[grab] <breadslice> (53)", "[walk] <toaster> (45)",
         "[putin] <breadslice> (53) <toaster> (45)", "[switchon] <toaster> (45)"}));
    tasks.push_back(make_task(
        "plate_on_table", "Put the plate on the kitchentable.",
        {edge_goal("plate", "ON_top", "kitchentable")},
        {"[walk] <plate> (51)", "[grab] <plate> (51)", "[walk] <kitchentable> (41)",
         "[putback] <plate> (51) <kitchentable> (41)"}));
    tasks.push_back(
        make_task("chill_wine", "Put the wine in the fridge.",
                  {edge_goal("wine", "INSIDE", "fridge")},
                  {"[walk] <wine> (54)", "[grab] <wine> (54)", "[walk] <fridge> (43)",
                   "[open] <fridge> (43)", "[putin] <wine> (54) <fridge> (43)"}));
    tasks.push_back(make_task(
        "heat_milk", "Heat the milk in the microwave.",
        {edge_goal("milk", "INSIDE", "microwave"), state_goal("milk", "HEATED")},
        {"[walk] <milk> (55)", "[grab] <milk> (55)", "[walk] <microwave> (44)",
         "[open] <microwave> (44)", "[putin] <milk> (55) <microwave> (44)",
         "[close] <microwave> (44)", "[switchon] <microwave> (44)"}));
    tasks.push_back(make_task("turn_off_computer", "Turn off the computer.",
                              {state_goal("computer", "OFF_state")},
                              {"[walk] <computer> (28)", "[switchoff] <computer> (28)"}));
    return tasks;
}

std::vector<HouseholdTask> vh2_tasks() {
    std::vector<HouseholdTask> tasks;
    tasks.push_back(make_task("turn_on_radio", "Turn on the radio.",
                              {state_goal("radio", "ON_state")},
                              {"[walk] <radio> (103)", "[switchon] <radio> (103)"}, true));
    tasks.push_back(make_task(
        "open_bathroomcabinet", "Open the bathroomcabinet.",
        {state_goal("bathroomcabinet", "OPEN")},
        {"[walk] <bathroomcabinet> (151)", "[open] <bathroomcabinet> (151)"}, true));
    tasks.push_back(make_task("turn_off_tv", "Turn off the tv.", {state_goal("tv", "OFF_state")},
                              {"[walk] <tv> (102)", "[switchoff] <tv> (102)"}));
    tasks.push_back(make_task("book_on_desk", "Put the book on the desk.",
                              {edge_goal("book", "ON_top", "desk")},
                              {"[walk] <book> (105)", "[grab] <book> (105)", "[walk] <desk> (104)",
                               "[putback] <book> (105) <desk> (104)"}));
    tasks.push_back(
        make_task("apple_in_fridge", "Put the apple in the fridge.",
                  {edge_goal("apple", "INSIDE", "fridge")},
                  {"[walk] <apple> (68)", "[grab] <apple> (68)", "[walk] <fridge> (61)",
                   "[open] <fridge> (61)", "[putin] <apple> (68) <fridge> (61)"}));
    tasks.push_back(make_task(
        "throw_away_chips", "Throw away the chips.", {edge_goal("chips", "INSIDE", "garbagecan")},
        {"[walk] <chips> (71)", "[grab] <chips> (71)", "[walk] <garbagecan> (64)",
         "[open] <garbagecan> (64)", "[putin] <chips> (71) <garbagecan> (64)"}));
    tasks.push_back(make_task(
        "heat_salmon", "Heat the salmon in the microwave.",
        {edge_goal("salmon", "INSIDE", "microwave"), state_goal("salmon", "HEATED")},
        {"[walk] <salmon> (69)", "[grab] <salmon> (69)", "[walk] <microwave> (62)",
         "[open] <microwave> (62)", "[putin] <salmon> (69) <microwave> (62)",
         "[close] <microwave> (62)", "[switchon] <microwave> (62)"}));
    tasks.push_back(make_task(
        "toast_bread", "Toast a breadslice.",
        {edge_goal("breadslice", "INSIDE", "toaster"), state_goal("breadslice", "HEATED")},
        {"[walk] <breadslice> (70)", "[grab] <breadslice> (70)", "[walk] <toaster> (63)",
         "[putin] <breadslice> (70) <toaster> (63)", "[switchon] <toaster> (63)"}));
    tasks.push_back(make_task("brew_coffee", "Turn on the coffeemaker.",
                              {state_goal("coffeemaker", "ON_state")},
                              {"[walk] <coffeemaker> (67)", "[switchon] <coffeemaker> (67)"}));
    tasks.push_back(make_task(
        "toothpaste_in_cabinet", "Put the toothpaste in the bathroomcabinet.",
        {edge_goal("toothpaste", "INSIDE", "bathroomcabinet")},
        {"[walk] <toothpaste> (152)", "[grab] <toothpaste> (152)",
         "[walk] <bathroomcabinet> (151)", "[open] <bathroomcabinet> (151)",
         "[putin] <toothpaste> (152) <bathroomcabinet> (151)"}));
    return tasks;
}

}  // namespace

SceneGraph load_household_fixture(const std::string& name) {
    if (name == "vh1") return build_vh1();
    if (name == "vh2") return build_vh2();
    throw Error("unknown household fixture: " + name + " (expected vh1 or vh2)");
}

std::vector<HouseholdTask> household_tasks(const std::string& name) {
    if (name == "vh1") return vh1_tasks();
    if (name == "vh2") return vh2_tasks();
    throw Error("unknown household fixture: " + name + " (expected vh1 or vh2)");
}

int64_t household_agent_id(const SceneGraph& graph) {
    std::optional<int64_t> best;
    for (const auto& [id, node] : graph.nodes) {
        (void)id;
        if (class_of(node) != "character") continue;
        const AttrValue* v = node.get("id");
        if (!v || !std::holds_alternative<int64_t>(*v)) continue;
        int64_t num = std::get<int64_t>(*v);
        if (!best || num < *best) best = num;
    }
    if (!best) throw Error("the graph has no 'character' node to act as the agent");
    return *best;
}

// ---------------------------------------------------------------------------
// prompt surfaces

std::string household_env_explanation() {
    return "The world is a multi-room household. Every node is an object instance with a "
           "numeric id: rooms, furniture, appliances, food, props, and the characters. One "
           "character acts as the agent. The task names a desired final state of the scene; "
           "the final solution must be a plan, one action per line, that reaches it.";
}

std::string household_action_space() {
    return "- [walk] <class_name> (id): walk to an object.\n"
           "- [grab] <class_name> (id): grab an object. The agent must have walked to the "
           "object first, and the object must be GRABBABLE.\n"
           "- [open] <class_name> (id): open an object. The agent must have walked to the "
           "object first; the object must have the CAN_OPEN property.\n"
           "- [close] <class_name> (id): close an object. Same requirements as open.\n"
           "- [switchon] <class_name> (id): turn an object on. The agent must have walked to "
           "the object first; the object must have the HAS_SWITCH property.\n"
           "- [switchoff] <class_name> (id): turn an object off. Same requirements as "
           "switchon.\n"
           "- [sit] <class_name> (id): sit on an object. The agent must have walked to the "
           "object first; the object must be SITTABLE.\n"
           "- [putin] <class_name1> (id1) <class_name2> (id2): put object 1 inside object 2. "
           "The agent must be holding object 1 and have walked to object 2; if object 2 has "
           "CAN_OPEN it must be open first.\n"
           "- [putback] <class_name1> (id1) <class_name2> (id2): put object 1 on top of "
           "object 2. The agent must be holding object 1 and have walked to object 2.\n"
           "The final solution must list one action per line in this grammar.";
}

std::string household_few_shot() {
    return "Task: Put the pear in the fridge.\n"
           "[Explanation]\nI need the pear's id and state.\n[Mode]\nQUERY\n[Content]\n"
           "List all pears and their attributes.\n"
           "(user) Retrieved 1 result(s): 9003 | category=Food, class_name=pear, "
           "properties=[GRABBABLE], states=[]\n"
           "[Explanation]\nNow the fridge; whether it is open decides if I must open it.\n"
           "[Mode]\nQUERY\n[Content]\nList all fridges and their attributes.\n"
           "(user) Retrieved 1 result(s): 9002 | category=Appliances, class_name=fridge, "
           "properties=[CAN_OPEN], states=[CLOSED]\n"
           "[Explanation]\nThe fridge is closed and can be opened, so I must open it before "
           "putting the pear inside.\n[Mode]\nSOLUTION\n[Content]\n"
           "[walk] <pear> (9003)\n[grab] <pear> (9003)\n[walk] <fridge> (9002)\n"
           "[open] <fridge> (9002)\n[putin] <pear> (9003) <fridge> (9002)";
}

}  // namespace sgrwr::household
