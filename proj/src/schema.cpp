#include "sgrwr/schema.hpp"

#include <sstream>

namespace sgrwr {

const AttrSpec* NodeTypeSpec::find_attr(const std::string& name) const {
    for (const AttrSpec& a : attributes)
        if (a.name == name) return &a;
    return nullptr;
}

const NodeTypeSpec* Schema::find_type(const std::string& type_name) const {
    for (const NodeTypeSpec& t : node_types)
        if (t.type_name == type_name) return &t;
    return nullptr;
}

bool Schema::has_relationship(const std::string& rel) const {
    for (const EdgeTypeSpec& e : edge_types)
        if (e.relationship == rel) return true;
    return false;
}

std::set<std::string> Schema::attribute_names() const {
    std::set<std::string> out;
    for (const NodeTypeSpec& t : node_types)
        for (const AttrSpec& a : t.attributes) out.insert(a.name);
    return out;
}

std::string render_schema(const Schema& schema) {
    std::ostringstream out;
    if (!schema.prose_preamble.empty()) out << schema.prose_preamble << "\n";
    if (!schema.node_types.empty()) {
        out << "\nNode types:\n";
        for (const NodeTypeSpec& t : schema.node_types) {
            out << "- " << t.type_name;
            if (!t.semantics.empty()) out << ": " << t.semantics;
            out << "\n";
            for (const AttrSpec& a : t.attributes) {
                out << "  - " << a.name << " (" << kind_name(a.kind);
                if (!a.required) out << ", optional";
                out << "): " << a.semantics << "\n";
            }
        }
    }
    if (!schema.edge_types.empty()) {
        out << "\nEdge relationships:\n";
        for (const EdgeTypeSpec& e : schema.edge_types)
            out << "- " << e.relationship << ": " << e.endpoint_semantics << "\n";
    }
    return out.str();
}

nlohmann::json schema_to_json(const Schema& schema) {
    nlohmann::json j;
    j["profile_name"] = schema.profile_name;
    j["prose_preamble"] = schema.prose_preamble;
    j["node_types"] = nlohmann::json::array();
    for (const NodeTypeSpec& t : schema.node_types) {
        nlohmann::json tj;
        tj["type_name"] = t.type_name;
        tj["semantics"] = t.semantics;
        tj["attributes"] = nlohmann::json::array();
        for (const AttrSpec& a : t.attributes) {
            tj["attributes"].push_back({{"name", a.name},
                                        {"kind", kind_name(a.kind)},
                                        {"semantics", a.semantics},
                                        {"required", a.required}});
        }
        j["node_types"].push_back(std::move(tj));
    }
    j["edge_types"] = nlohmann::json::array();
    for (const EdgeTypeSpec& e : schema.edge_types)
        j["edge_types"].push_back({{"relationship", e.relationship},
                                   {"endpoint_semantics", e.endpoint_semantics}});
    return j;
}

Schema schema_from_json(const nlohmann::json& j) {
    Schema s;
    s.profile_name = j.at("profile_name").get<std::string>();
    s.prose_preamble = j.value("prose_preamble", std::string{});
    for (const auto& tj : j.value("node_types", nlohmann::json::array())) {
        NodeTypeSpec t;
        t.type_name = tj.at("type_name").get<std::string>();
        t.semantics = tj.value("semantics", std::string{});
        for (const auto& aj : tj.value("attributes", nlohmann::json::array())) {
            AttrSpec a;
            a.name = aj.at("name").get<std::string>();
            a.kind = kind_from_name(aj.at("kind").get<std::string>());
            a.semantics = aj.value("semantics", std::string{});
            a.required = aj.value("required", true);
            t.attributes.push_back(std::move(a));
        }
        s.node_types.push_back(std::move(t));
    }
    for (const auto& ej : j.value("edge_types", nlohmann::json::array())) {
        s.edge_types.push_back(EdgeTypeSpec{ej.at("relationship").get<std::string>(),
                                            ej.value("endpoint_semantics", std::string{})});
    }
    return s;
}

Schema babyai_schema() {
    Schema s;
    s.profile_name = "babyai";
    s.prose_preamble =
        "Scene graphs describe a 2D grid world of rectangular rooms. Nodes are the root, "
        "rooms, doors, items (keys, boxes, balls), and the agent. Coordinates are "
        "[column, row] pairs with the origin at the top left.";
    auto type_attr = AttrSpec{"type", AttrKind::String, "the node type.", true};
    s.node_types.push_back(NodeTypeSpec{
        "root", "the single node every room attaches to.", {type_attr}});
    s.node_types.push_back(NodeTypeSpec{
        "room",
        "a rectangular area of walkable cells.",
        {type_attr,
         AttrSpec{"coordinate", AttrKind::IntList, "the top-left interior cell of the room.", true},
         AttrSpec{"size", AttrKind::IntList, "the [width, height] of the room interior.", true}}});
    s.node_types.push_back(NodeTypeSpec{
        "agent",
        "the embodied agent.",
        {type_attr, AttrSpec{"coordinate", AttrKind::IntList, "the cell the agent stands on.", true}}});
    s.node_types.push_back(NodeTypeSpec{
        "door",
        "a door occupying the wall cell shared by the two rooms it connects.",
        {type_attr,
         AttrSpec{"color", AttrKind::String, "the door color.", true},
         AttrSpec{"coordinate", AttrKind::IntList, "the wall cell the door occupies.", true},
         AttrSpec{"is_locked", AttrKind::Bool, "whether the door is locked; a locked door needs a key of the same color.", true}}});
    for (const char* item : {"key", "box", "ball"}) {
        s.node_types.push_back(NodeTypeSpec{
            item,
            std::string("a ") + item + " lying on a room cell.",
            {type_attr,
             AttrSpec{"color", AttrKind::String, "the item color.", true},
             AttrSpec{"coordinate", AttrKind::IntList, "the cell the item occupies.", true}}});
    }
    s.edge_types.push_back(EdgeTypeSpec{
        "inside", "an item, the agent, or a door lies inside a room; each room lies inside the root."});
    s.edge_types.push_back(EdgeTypeSpec{
        "connects", "a door connects to each of the two rooms it joins (two edges per door)."});
    return s;
}

Schema household_schema() {
    Schema s;
    s.profile_name = "household";
    s.prose_preamble =
        "Scene graphs describe a multi-room household. Every node is an object instance "
        "(rooms, furniture, appliances, items, and characters) identified by a numeric id.";
    s.node_types.push_back(NodeTypeSpec{
        "object",
        "any object instance in the household.",
        {AttrSpec{"id", AttrKind::Int, "the numeric instance id.", true},
         AttrSpec{"category", AttrKind::String, "the coarse category, e.g. Rooms, Furniture, Appliances, Food, Props, Characters.", true},
         AttrSpec{"class_name", AttrKind::String, "the object class, e.g. plum, toaster, tv.", true},
         AttrSpec{"prefab_name", AttrKind::String, "the asset name backing this instance.", false},
         AttrSpec{"obj_transform", AttrKind::Opaque, "placement data (not textualized).", false},
         AttrSpec{"bounding_box", AttrKind::Opaque, "extent data (not textualized).", false},
         AttrSpec{"properties", AttrKind::StringList, "capability flags such as CAN_OPEN, HAS_SWITCH, HEAT_SOURCE, SITTABLE, GRABBABLE.", true},
         AttrSpec{"states", AttrKind::StringList, "current states such as ON, OFF, OPEN, CLOSED, HEATED.", true}}});
    const std::pair<const char*, const char*> rels[] = {
        {"ON", "the first object rests on top of the second."},
        {"INSIDE", "the first object is contained in the second; objects are INSIDE their room."},
        {"BETWEEN", "connector placement, e.g. a door is BETWEEN each room it joins."},
        {"CLOSE", "the first object is within interaction range of the second."},
        {"FACING", "the first object is oriented toward the second."},
        {"HOLDS_RH", "the character holds the object in the right hand."},
        {"HOLD_LH", "the character holds the object in the left hand."},
        {"SITTING", "the character sits on the object."},
    };
    for (const auto& [rel, sem] : rels) s.edge_types.push_back(EdgeTypeSpec{rel, sem});
    return s;
}

Schema schema_for_profile(const std::string& profile) {
    if (profile == "babyai") return babyai_schema();
    if (profile == "household") return household_schema();
    throw Error("no built-in schema for profile: " + profile);
}

}  // namespace sgrwr
