#include "sgrwr/query/eval.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace sgrwr::query {

namespace {

bool filter_matches_value(const FilterValue& want, const AttrValue& have) {
    if (std::holds_alternative<std::string>(want))
        return kind_of(have) == AttrKind::String &&
               std::get<std::string>(have) == std::get<std::string>(want);
    if (std::holds_alternative<std::int64_t>(want))
        return kind_of(have) == AttrKind::Int &&
               std::get<std::int64_t>(have) == std::get<std::int64_t>(want);
    return kind_of(have) == AttrKind::Bool && std::get<bool>(have) == std::get<bool>(want);
}

bool row_matches(const Row& row, const std::vector<Filter>& filters) {
    for (const Filter& f : filters) {
        // A string id filter matches the row id; integer id filters fall
        // through to the household nodes' numeric id attribute.
        if (f.key == "id" && std::holds_alternative<std::string>(f.value)) {
            if (std::get<std::string>(f.value) != row.id) return false;
            continue;
        }
        auto it = row.attrs.find(f.key);
        if (it == row.attrs.end()) return false;
        if (!filter_matches_value(f.value, it->second)) return false;
    }
    return true;
}

Row node_row(const Node& node) {
    return Row{node.id, node.attrs};
}

Row edge_row(const Edge& e) {
    Row row;
    row.id = e.from + "->" + e.to;
    row.attrs["from"] = attr_str(e.from);
    row.attrs["to"] = attr_str(e.to);
    row.attrs["relationship"] = attr_str(e.relationship);
    return row;
}

void sort_rows(std::vector<Row>& rows) {
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        if (a.id != b.id) return a.id < b.id;
        return render_row(a) < render_row(b);
    });
}

void require_node(const SceneGraph& graph, const std::string& id) {
    if (!graph.has_node(id)) throw NodeNotFoundError(id);
}

std::vector<Row> eval_neighbors(const SceneGraph& graph, const std::string& id,
                                const std::optional<std::string>& via) {
    require_node(graph, id);
    std::set<std::string> seen;
    std::vector<Row> rows;
    for (const Edge& e : graph.edges) {
        if (via && e.relationship != *via) continue;
        std::string other;
        if (e.from == id)
            other = e.to;
        else if (e.to == id)
            other = e.from;
        else
            continue;
        if (!graph.has_node(other) || seen.count(other)) continue;
        seen.insert(other);
        rows.push_back(node_row(*graph.find(other)));
    }
    sort_rows(rows);
    return rows;
}

struct Intermediate {
    std::vector<Row> rows;
    std::optional<std::int64_t> scalar;
};

Intermediate eval_pipe(const Pipe& q, const SceneGraph& graph);

Intermediate eval_primary(const Primary& p, const SceneGraph& graph) {
    Intermediate out;
    switch (p.kind) {
        case PrimaryKind::Nodes: {
            for (const auto& [id, node] : graph.nodes) {
                Row row = node_row(node);
                if (row_matches(row, p.filters)) out.rows.push_back(std::move(row));
            }
            break;
        }
        case PrimaryKind::Edges: {
            for (const Edge& e : graph.edges) {
                Row row = edge_row(e);
                bool ok = true;
                for (const Filter& f : p.filters) {
                    // "rel" is shorthand for "relationship" on edge rows.
                    Filter g = f;
                    if (g.key == "rel") g.key = "relationship";
                    if (!row_matches(row, {g})) {
                        ok = false;
                        break;
                    }
                }
                if (ok) out.rows.push_back(std::move(row));
            }
            break;
        }
        case PrimaryKind::Neighbors:
            out.rows = eval_neighbors(graph, p.id, p.via);
            break;
        case PrimaryKind::Attrs: {
            require_node(graph, p.id);
            Row row = node_row(*graph.find(p.id));
            if (!p.fields.empty()) {
                std::map<std::string, AttrValue> projected;
                for (const std::string& f : p.fields) {
                    auto it = row.attrs.find(f);
                    if (it != row.attrs.end()) projected.insert(*it);
                }
                row.attrs = std::move(projected);
            }
            out.rows.push_back(std::move(row));
            break;
        }
        case PrimaryKind::Count: {
            Intermediate sub = eval_pipe(*p.sub, graph);
            if (sub.scalar) throw EvalError("cannot count a count result");
            out.scalar = static_cast<std::int64_t>(sub.rows.size());
            break;
        }
    }
    sort_rows(out.rows);
    return out;
}

bool has_containment_edge(const SceneGraph& graph, const std::string& child,
                          const std::string& container) {
    const std::string rel = graph.containment_rel();
    for (const Edge& e : graph.edges)
        if (e.relationship == rel && e.from == child && e.to == container) return true;
    return false;
}

void apply_stage(Intermediate& acc, const Stage& s, const SceneGraph& graph) {
    if (acc.scalar)
        throw EvalError("cannot pipe a count result into further stages");
    switch (s.kind) {
        case StageKind::InRoom:
        case StageKind::Inside: {
            require_node(graph, s.id);
            std::vector<Row> kept;
            for (Row& row : acc.rows)
                if (has_containment_edge(graph, row.id, s.id)) kept.push_back(std::move(row));
            acc.rows = std::move(kept);
            break;
        }
        case StageKind::Where: {
            std::vector<Row> kept;
            for (Row& row : acc.rows)
                if (row_matches(row, s.filters)) kept.push_back(std::move(row));
            acc.rows = std::move(kept);
            break;
        }
        case StageKind::Count:
            acc.scalar = static_cast<std::int64_t>(acc.rows.size());
            acc.rows.clear();
            break;
        case StageKind::Project: {
            for (Row& row : acc.rows) {
                std::map<std::string, AttrValue> projected;
                for (const std::string& f : s.fields) {
                    auto it = row.attrs.find(f);
                    if (it != row.attrs.end()) projected.insert(*it);
                }
                row.attrs = std::move(projected);
            }
            sort_rows(acc.rows);
            break;
        }
    }
}

Intermediate eval_pipe(const Pipe& q, const SceneGraph& graph) {
    Intermediate acc = eval_primary(q.primary, graph);
    for (const Stage& s : q.stages) apply_stage(acc, s, graph);
    return acc;
}

}  // namespace

RetrievalResult evaluate(const Pipe& q, const SceneGraph& graph) {
    Intermediate acc = eval_pipe(q, graph);
    RetrievalResult out;
    out.source_query = print_query(q);
    out.scalar = acc.scalar;
    out.rows = std::move(acc.rows);
    if (out.rows.size() > kRowCap) {
        out.rows.resize(kRowCap);
        out.truncated = true;
    }
    return out;
}

RetrievalResult expand(const SceneGraph& graph, const std::string& node_id) {
    require_node(graph, node_id);
    RetrievalResult out;
    out.source_query = "expand(" + node_id + ")";
    std::map<std::string, Row> by_id;
    by_id[node_id] = node_row(*graph.find(node_id));
    for (Row& row : eval_neighbors(graph, node_id, std::nullopt)) by_id[row.id] = std::move(row);
    for (auto& [id, row] : by_id) out.rows.push_back(std::move(row));
    sort_rows(out.rows);
    if (out.rows.size() > kRowCap) {
        out.rows.resize(kRowCap);
        out.truncated = true;
    }
    return out;
}

std::vector<std::string> get_neighbors(const SceneGraph& graph, const std::string& node_id) {
    std::vector<std::string> out;
    for (const Row& row : eval_neighbors(graph, node_id, std::nullopt)) out.push_back(row.id);
    return out;
}

std::map<std::string, AttrValue> get_attrs(const SceneGraph& graph, const std::string& node_id) {
    require_node(graph, node_id);
    return graph.find(node_id)->attrs;
}

std::string render_row(const Row& row) {
    std::ostringstream out;
    out << row.id << " | ";
    bool first = true;
    for (const auto& [k, v] : row.attrs) {
        if (!first) out << ", ";
        out << k << "=" << attr_to_text(v);
        first = false;
    }
    if (row.attrs.empty()) out << "(no attributes)";
    return out.str();
}

std::string render_result(const RetrievalResult& r) {
    if (r.scalar) return "count = " + std::to_string(*r.scalar);
    if (r.rows.empty()) return "(no results)";
    std::ostringstream out;
    for (size_t i = 0; i < r.rows.size(); ++i) {
        if (i) out << "\n";
        out << render_row(r.rows[i]);
    }
    if (r.truncated) out << "\n(truncated to " << kRowCap << " rows)";
    return out.str();
}

}  // namespace sgrwr::query
