#include "sgrwr/scene_graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace sgrwr {

const AttrValue* Node::get(const std::string& key) const {
    auto it = attrs.find(key);
    return it == attrs.end() ? nullptr : &it->second;
}

const std::string* Node::get_str(const std::string& key) const {
    const AttrValue* v = get(key);
    if (!v || kind_of(*v) != AttrKind::String) return nullptr;
    return &std::get<std::string>(*v);
}

const Node* SceneGraph::find(const std::string& id) const {
    auto it = nodes.find(id);
    return it == nodes.end() ? nullptr : &it->second;
}

void SceneGraph::add_node(Node n) {
    if (nodes.count(n.id)) throw GraphFormatError("duplicate node id: " + n.id);
    std::string id = n.id;
    nodes.emplace(std::move(id), std::move(n));
}

void SceneGraph::add_edge(const std::string& from, const std::string& to, const std::string& rel) {
    edges.push_back(Edge{from, to, rel});
}

static std::vector<Edge> sorted_edges(const SceneGraph& g) {
    std::vector<Edge> es = g.edges;
    std::sort(es.begin(), es.end(), [](const Edge& a, const Edge& b) {
        return std::tie(a.from, a.relationship, a.to) < std::tie(b.from, b.relationship, b.to);
    });
    return es;
}

bool SceneGraph::operator==(const SceneGraph& other) const {
    return profile == other.profile && root_id == other.root_id && nodes == other.nodes &&
           sorted_edges(*this) == sorted_edges(other);
}

nlohmann::json graph_to_json(const SceneGraph& graph) {
    nlohmann::json j;
    j["profile"] = graph.profile;
    j["nodes"] = nlohmann::json::array();
    for (const auto& [id, node] : graph.nodes) {
        nlohmann::json nj;
        // Household nodes carry a numeric instance id; it doubles as the
        // JSON id field (the string node id is its decimal form).
        auto idattr = node.attrs.find("id");
        if (idattr != node.attrs.end()) {
            if (kind_of(idattr->second) != AttrKind::Int ||
                std::to_string(std::get<std::int64_t>(idattr->second)) != id)
                throw GraphFormatError(
                    "node attribute 'id' must be an integer matching the node id: " + id);
            nj["id"] = std::get<std::int64_t>(idattr->second);
        } else {
            nj["id"] = id;
        }
        for (const auto& [k, v] : node.attrs) {
            if (k == "id") continue;
            nj[k] = attr_to_json(v);
        }
        j["nodes"].push_back(std::move(nj));
    }
    j["edges"] = nlohmann::json::array();
    for (const Edge& e : sorted_edges(graph)) {
        j["edges"].push_back({{"from", e.from}, {"to", e.to}, {"relationship", e.relationship}});
    }
    if (graph.root_id) j["root_id"] = *graph.root_id;
    return j;
}

std::string save_graph(const SceneGraph& graph) { return graph_to_json(graph).dump(); }

SceneGraph graph_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw GraphFormatError("graph JSON must be an object");
    SceneGraph g;
    if (!j.contains("profile") || !j["profile"].is_string())
        throw GraphFormatError("graph JSON missing string field 'profile'");
    g.profile = j["profile"].get<std::string>();
    if (g.profile != "babyai" && g.profile != "household")
        throw GraphFormatError("unknown graph profile: " + g.profile);
    if (!j.contains("nodes") || !j["nodes"].is_array())
        throw GraphFormatError("graph JSON missing array field 'nodes'");
    for (const auto& nj : j["nodes"]) {
        if (!nj.is_object() || !nj.contains("id") ||
            !(nj["id"].is_string() || nj["id"].is_number_integer()))
            throw GraphFormatError("node entries need a string or integer 'id'");
        Node n;
        if (nj["id"].is_string()) {
            n.id = nj["id"].get<std::string>();
        } else {
            std::int64_t numeric = nj["id"].get<std::int64_t>();
            n.id = std::to_string(numeric);
            n.attrs["id"] = attr_int(numeric);
        }
        for (auto it = nj.begin(); it != nj.end(); ++it) {
            if (it.key() == "id") continue;
            n.attrs[it.key()] = attr_from_json(it.value());
        }
        g.add_node(std::move(n));
    }
    if (!j.contains("edges") || !j["edges"].is_array())
        throw GraphFormatError("graph JSON missing array field 'edges'");
    for (const auto& ej : j["edges"]) {
        if (!ej.is_object() || !ej.contains("from") || !ej.contains("to") || !ej.contains("relationship"))
            throw GraphFormatError("edge entries need 'from', 'to', 'relationship'");
        g.add_edge(ej["from"].get<std::string>(), ej["to"].get<std::string>(),
                   ej["relationship"].get<std::string>());
    }
    if (j.contains("root_id")) g.root_id = j["root_id"].get<std::string>();
    return g;
}

SceneGraph load_graph(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw GraphFormatError("graph JSON parse error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    return graph_from_json(j);
}

SceneGraph load_graph_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw GraphFormatError("cannot open graph file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return load_graph(ss.str());
}

void save_graph_file(const SceneGraph& graph, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw GraphFormatError("cannot write graph file: " + path);
    out << save_graph(graph);
}

// ---------------------------------------------------------------------------
// validate

static bool is_grid_item_type(const std::string& t) {
    return t == "key" || t == "box" || t == "ball";
}

std::vector<Violation> validate(const SceneGraph& graph, const Schema& schema) {
    std::vector<Violation> out;
    auto bad = [&out](const std::string& subject, const std::string& rule) {
        out.push_back(Violation{subject, rule});
    };

    if (graph.profile != schema.profile_name)
        bad("(graph)", "graph profile '" + graph.profile + "' does not match schema profile '" +
                           schema.profile_name + "'");

    const bool grid = graph.profile == "babyai";

    if (grid) {
        if (!graph.root_id) {
            bad("(graph)", "grid graphs must declare root_id");
        } else if (!graph.has_node(*graph.root_id)) {
            bad(*graph.root_id, "root_id names a missing node");
        } else {
            const std::string* t = graph.find(*graph.root_id)->get_str("type");
            if (!t || *t != "root") bad(*graph.root_id, "root_id node must have type 'root'");
        }
    } else if (graph.root_id) {
        bad(*graph.root_id, "household graphs do not declare root_id");
    }

    for (const auto& [id, node] : graph.nodes) {
        if (id.empty()) bad("(empty)", "node ids must be non-empty");
        const NodeTypeSpec* spec = nullptr;
        if (grid) {
            const std::string* t = node.get_str("type");
            if (!t) {
                bad(id, "grid nodes need a string 'type' attribute");
                continue;
            }
            spec = schema.find_type(*t);
            if (!spec) {
                bad(id, "unknown node type: " + *t);
                continue;
            }
        } else {
            spec = schema.find_type("object");
            if (!spec) continue;
        }
        for (const AttrSpec& as : spec->attributes) {
            const AttrValue* v = node.get(as.name);
            if (!v) {
                if (as.required) bad(id, "missing required attribute '" + as.name + "'");
                continue;
            }
            if (as.kind != AttrKind::Opaque && kind_of(*v) != as.kind)
                bad(id, "attribute '" + as.name + "' must have kind " + kind_name(as.kind));
        }
        for (const auto& [k, v] : node.attrs) {
            (void)v;
            if (!spec->find_attr(k)) bad(id, "attribute '" + k + "' not in schema for this node type");
        }
    }

    std::map<std::string, int> connects_per_door;
    for (const Edge& e : graph.edges) {
        std::string subject = e.from + " -" + e.relationship + "-> " + e.to;
        const Node* from = graph.find(e.from);
        const Node* to = graph.find(e.to);
        if (!from) bad(subject, "edge endpoint missing: " + e.from);
        if (!to) bad(subject, "edge endpoint missing: " + e.to);
        if (!schema.has_relationship(e.relationship)) {
            bad(subject, "unknown relationship: " + e.relationship);
            continue;
        }
        if (!grid || !from || !to) continue;
        const std::string* ft = from->get_str("type");
        const std::string* tt = to->get_str("type");
        if (!ft || !tt) continue;
        if (e.relationship == "inside") {
            bool item_in_room = (is_grid_item_type(*ft) || *ft == "agent" || *ft == "door") && *tt == "room";
            bool room_in_root = *ft == "room" && *tt == "root";
            if (!item_in_room && !room_in_root)
                bad(subject, "inside edges run item/agent/door->room or room->root");
        } else if (e.relationship == "connects") {
            if (*ft != "door" || *tt != "room") bad(subject, "connects edges run door->room");
            connects_per_door[e.from] += 1;
        }
    }
    if (grid) {
        for (const auto& [id, node] : graph.nodes) {
            const std::string* t = node.get_str("type");
            if (t && *t == "door" && connects_per_door[id] != 2)
                bad(id, "doors need exactly two connects edges");
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// textualize

std::string textualize(const SceneGraph& graph, const Schema& schema) {
    std::vector<Violation> violations = validate(graph, schema);
    if (!violations.empty()) {
        std::string msg = "cannot textualize a non-conforming graph:";
        for (size_t i = 0; i < violations.size() && i < 3; ++i)
            msg += " [" + violations[i].subject + ": " + violations[i].rule + "]";
        if (violations.size() > 3) msg += " (+" + std::to_string(violations.size() - 3) + " more)";
        throw GraphFormatError(msg);
    }
    std::ostringstream out;
    for (const auto& [id, node] : graph.nodes) {
        out << id;
        bool first = true;
        const std::string* t = node.get_str("type");
        if (t) {
            out << " | type=" << *t;
            first = false;
        }
        for (const auto& [k, v] : node.attrs) {
            if (k == "type" || k == "id") continue;
            if (kind_of(v) == AttrKind::Opaque) continue;
            out << (first ? " | " : ", ") << k << "=" << attr_to_text(v);
            first = false;
        }
        out << "\n";
    }
    for (const Edge& e : sorted_edges(graph)) {
        out << e.from << " -" << e.relationship << "-> " << e.to << "\n";
    }
    return out.str();
}

}  // namespace sgrwr
