#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sgrwr/query/ast.hpp"
#include "sgrwr/scene_graph.hpp"

namespace sgrwr::query {

struct Row {
    std::string id;
    std::map<std::string, AttrValue> attrs;
    bool operator==(const Row&) const = default;
};

constexpr size_t kRowCap = 512;

struct RetrievalResult {
    std::vector<Row> rows;                 // sorted by row id
    std::optional<std::int64_t> scalar;    // set for count results
    std::string source_query;
    bool truncated = false;

    bool is_scalar() const { return scalar.has_value(); }
};

struct NodeNotFoundError : Error {
    std::string id;
    explicit NodeNotFoundError(const std::string& id_)
        : Error("node not found: " + id_), id(id_) {}
};

struct EvalError : Error {
    explicit EvalError(const std::string& what) : Error(what) {}
};

RetrievalResult evaluate(const Pipe& q, const SceneGraph& graph);

// Fixed retrieval APIs used by the single-agent baselines.
RetrievalResult expand(const SceneGraph& graph, const std::string& node_id);
std::vector<std::string> get_neighbors(const SceneGraph& graph, const std::string& node_id);
std::map<std::string, AttrValue> get_attrs(const SceneGraph& graph, const std::string& node_id);

// Deterministic plain-text rendering of a result ("id | k=v, ..." lines,
// "count = N" for scalars, "(no results)" when empty).
std::string render_result(const RetrievalResult& r);
std::string render_row(const Row& row);

}  // namespace sgrwr::query
