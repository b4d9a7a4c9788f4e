#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sgrwr/attr_value.hpp"

namespace sgrwr {

struct AttrSpec {
    std::string name;
    AttrKind kind = AttrKind::String;
    std::string semantics;
    bool required = true;
};

struct NodeTypeSpec {
    std::string type_name;
    std::string semantics;
    std::vector<AttrSpec> attributes;

    const AttrSpec* find_attr(const std::string& name) const;
};

struct EdgeTypeSpec {
    std::string relationship;
    std::string endpoint_semantics;
};

// The schema is the only graph-shaped thing agents are allowed to see:
// node types, their attributes, and edge relationships, plus a short
// prose preamble. It carries no instance data.
struct Schema {
    std::string profile_name;
    std::string prose_preamble;
    std::vector<NodeTypeSpec> node_types;
    std::vector<EdgeTypeSpec> edge_types;

    const NodeTypeSpec* find_type(const std::string& type_name) const;
    bool has_relationship(const std::string& rel) const;
    // All attribute names across node types (used for query binding).
    std::set<std::string> attribute_names() const;
};

// Deterministic plain-text rendering for prompts. Mentions every node
// type and every relationship.
std::string render_schema(const Schema& schema);

nlohmann::json schema_to_json(const Schema& schema);
Schema schema_from_json(const nlohmann::json& j);

// Built-in profiles.
Schema babyai_schema();
Schema household_schema();
Schema schema_for_profile(const std::string& profile);

}  // namespace sgrwr
