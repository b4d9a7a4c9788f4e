#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sgrwr/attr_value.hpp"
#include "sgrwr/schema.hpp"

namespace sgrwr {

struct Node {
    std::string id;
    std::map<std::string, AttrValue> attrs;

    bool has(const std::string& key) const { return attrs.count(key) != 0; }
    const AttrValue* get(const std::string& key) const;
    const std::string* get_str(const std::string& key) const;
    bool operator==(const Node&) const = default;
};

struct Edge {
    std::string from;
    std::string to;
    std::string relationship;
    bool operator==(const Edge&) const = default;
};

struct GraphFormatError : Error {
    explicit GraphFormatError(const std::string& what) : Error(what) {}
};

struct SceneGraph {
    std::string profile;  // "babyai" or "household"
    std::map<std::string, Node> nodes;
    std::vector<Edge> edges;
    std::optional<std::string> root_id;

    bool has_node(const std::string& id) const { return nodes.count(id) != 0; }
    const Node* find(const std::string& id) const;
    void add_node(Node n);
    void add_edge(const std::string& from, const std::string& to, const std::string& rel);
    // Containment relationship name for this profile.
    std::string containment_rel() const { return profile == "household" ? "INSIDE" : "inside"; }

    // Edge order is not semantic; equality compares edges as a multiset.
    bool operator==(const SceneGraph& other) const;
};

struct Violation {
    std::string subject;  // node id or "from -rel-> to"
    std::string rule;
};

// Schema conformance check. Empty result means the graph conforms.
std::vector<Violation> validate(const SceneGraph& graph, const Schema& schema);

// Canonical JSON: object keys sorted, nodes sorted by id, edges sorted by
// (from, relationship, to), no insignificant whitespace.
std::string save_graph(const SceneGraph& graph);
nlohmann::json graph_to_json(const SceneGraph& graph);
SceneGraph load_graph(const std::string& text);
SceneGraph graph_from_json(const nlohmann::json& j);
SceneGraph load_graph_file(const std::string& path);
void save_graph_file(const SceneGraph& graph, const std::string& path);

// Deterministic line-oriented rendering of the full graph, used only by
// the full-graph baseline prompt and token accounting. One line per node
// (id, type, then remaining attrs in sorted key order; opaque attrs are
// skipped), then one line per edge.
std::string textualize(const SceneGraph& graph, const Schema& schema);

}  // namespace sgrwr
