#pragma once

// A deliberately naive second interpreter for the query language. It is
// written top-down from the documented semantics with different data
// structures than the production evaluator (set-based neighbor and
// containment lookups instead of per-row edge scans), so agreement
// between the two is meaningful evidence rather than a tautology.

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sgrwr/query/ast.hpp"
#include "sgrwr/query/eval.hpp"
#include "sgrwr/scene_graph.hpp"

namespace oracle {

using sgrwr::AttrValue;
using sgrwr::SceneGraph;
using sgrwr::query::Filter;
using sgrwr::query::Pipe;
using sgrwr::query::Row;

struct Outcome {
    enum class Kind { Ok, NodeNotFound, EvalError } kind = Kind::Ok;
    std::string missing_id;  // set for NodeNotFound
    std::vector<Row> rows;
    std::optional<std::int64_t> scalar;
    bool truncated = false;
};

namespace detail {

struct Missing {
    std::string id;
};
struct Bad {};

inline AttrValue to_attr(const sgrwr::query::FilterValue& v) {
    if (std::holds_alternative<std::string>(v)) return sgrwr::attr_str(std::get<std::string>(v));
    if (std::holds_alternative<std::int64_t>(v)) return sgrwr::attr_int(std::get<std::int64_t>(v));
    return sgrwr::attr_bool(std::get<bool>(v));
}

// edge_context enables the "rel" alias; it applies only to edge-listing
// filters, never to where() stages.
inline bool row_passes(const Row& row, const std::vector<Filter>& filters, bool edge_context) {
    for (const Filter& f : filters) {
        std::string key = (edge_context && f.key == "rel") ? "relationship" : f.key;
        if (key == "id" && std::holds_alternative<std::string>(f.value)) {
            if (row.id != std::get<std::string>(f.value)) return false;
            continue;
        }
        auto it = row.attrs.find(key);
        if (it == row.attrs.end() || !(it->second == to_attr(f.value))) return false;
    }
    return true;
}

inline void sort_like_listing(std::vector<Row>& rows) {
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        if (a.id != b.id) return a.id < b.id;
        return sgrwr::query::render_row(a) < sgrwr::query::render_row(b);
    });
}

inline Row project_row(Row row, const std::vector<std::string>& fields) {
    std::map<std::string, AttrValue> kept;
    for (const auto& [k, v] : row.attrs)
        if (std::find(fields.begin(), fields.end(), k) != fields.end()) kept.emplace(k, v);
    row.attrs = std::move(kept);
    return row;
}

struct Interim {
    std::vector<Row> rows;
    std::optional<std::int64_t> scalar;
};

inline Interim run_pipe(const Pipe& q, const SceneGraph& g);

inline Interim run_primary(const sgrwr::query::Primary& p, const SceneGraph& g) {
    using sgrwr::query::PrimaryKind;
    Interim out;
    switch (p.kind) {
        case PrimaryKind::Nodes:
            for (const auto& [id, node] : g.nodes) {
                Row row{id, node.attrs};
                if (row_passes(row, p.filters, false)) out.rows.push_back(std::move(row));
            }
            break;
        case PrimaryKind::Edges:
            for (const sgrwr::Edge& e : g.edges) {
                Row row;
                row.id = e.from + "->" + e.to;
                row.attrs = {{"from", sgrwr::attr_str(e.from)},
                             {"to", sgrwr::attr_str(e.to)},
                             {"relationship", sgrwr::attr_str(e.relationship)}};
                if (row_passes(row, p.filters, true)) out.rows.push_back(std::move(row));
            }
            break;
        case PrimaryKind::Neighbors: {
            if (!g.has_node(p.id)) throw Missing{p.id};
            for (const auto& [cand, node] : g.nodes) {
                bool adjacent = false;
                for (const sgrwr::Edge& e : g.edges) {
                    if (p.via && e.relationship != *p.via) continue;
                    if ((e.from == p.id && e.to == cand) || (e.to == p.id && e.from == cand)) {
                        adjacent = true;
                        break;
                    }
                }
                if (adjacent) out.rows.push_back(Row{cand, node.attrs});
            }
            break;
        }
        case PrimaryKind::Attrs: {
            if (!g.has_node(p.id)) throw Missing{p.id};
            Row row{p.id, g.find(p.id)->attrs};
            if (!p.fields.empty()) row = project_row(std::move(row), p.fields);
            out.rows.push_back(std::move(row));
            break;
        }
        case PrimaryKind::Count: {
            Interim sub = run_pipe(*p.sub, g);
            if (sub.scalar) throw Bad{};
            out.scalar = static_cast<std::int64_t>(sub.rows.size());
            break;
        }
    }
    sort_like_listing(out.rows);
    return out;
}

inline Interim run_pipe(const Pipe& q, const SceneGraph& g) {
    using sgrwr::query::StageKind;
    Interim acc = run_primary(q.primary, g);
    for (const sgrwr::query::Stage& s : q.stages) {
        if (acc.scalar) throw Bad{};
        switch (s.kind) {
            case StageKind::InRoom:
            case StageKind::Inside: {
                if (!g.has_node(s.id)) throw Missing{s.id};
                std::set<std::string> children;
                for (const sgrwr::Edge& e : g.edges)
                    if (e.relationship == g.containment_rel() && e.to == s.id) children.insert(e.from);
                std::vector<Row> kept;
                for (Row& row : acc.rows)
                    if (children.count(row.id)) kept.push_back(std::move(row));
                acc.rows = std::move(kept);
                break;
            }
            case StageKind::Where: {
                std::vector<Row> kept;
                for (Row& row : acc.rows)
                    if (row_passes(row, s.filters, false)) kept.push_back(std::move(row));
                acc.rows = std::move(kept);
                break;
            }
            case StageKind::Count:
                acc.scalar = static_cast<std::int64_t>(acc.rows.size());
                acc.rows.clear();
                break;
            case StageKind::Project: {
                for (Row& row : acc.rows) row = project_row(std::move(row), s.fields);
                sort_like_listing(acc.rows);
                break;
            }
        }
    }
    return acc;
}

}  // namespace detail

inline Outcome oracle_evaluate(const Pipe& q, const SceneGraph& g) {
    Outcome out;
    try {
        detail::Interim r = detail::run_pipe(q, g);
        out.rows = std::move(r.rows);
        out.scalar = r.scalar;
        if (out.rows.size() > sgrwr::query::kRowCap) {
            out.rows.resize(sgrwr::query::kRowCap);
            out.truncated = true;
        }
    } catch (const detail::Missing& m) {
        out.kind = Outcome::Kind::NodeNotFound;
        out.missing_id = m.id;
    } catch (const detail::Bad&) {
        out.kind = Outcome::Kind::EvalError;
    }
    return out;
}

// Runs the production evaluator and normalizes its result or typed error
// into the same Outcome shape.
inline Outcome production_evaluate(const Pipe& q, const SceneGraph& g) {
    Outcome out;
    try {
        sgrwr::query::RetrievalResult r = sgrwr::query::evaluate(q, g);
        out.rows = std::move(r.rows);
        out.scalar = r.scalar;
        out.truncated = r.truncated;
    } catch (const sgrwr::query::NodeNotFoundError& e) {
        out.kind = Outcome::Kind::NodeNotFound;
        out.missing_id = e.id;
    } catch (const sgrwr::query::EvalError&) {
        out.kind = Outcome::Kind::EvalError;
    }
    return out;
}

inline bool outcomes_equal(const Outcome& a, const Outcome& b) {
    return a.kind == b.kind && a.missing_id == b.missing_id && a.rows == b.rows &&
           a.scalar == b.scalar && a.truncated == b.truncated;
}

inline std::string describe(const Outcome& o) {
    switch (o.kind) {
        case Outcome::Kind::NodeNotFound: return "node_not_found(" + o.missing_id + ")";
        case Outcome::Kind::EvalError: return "eval_error";
        case Outcome::Kind::Ok: break;
    }
    if (o.scalar) return "count=" + std::to_string(*o.scalar);
    std::string s = std::to_string(o.rows.size()) + " rows";
    for (const Row& r : o.rows) s += "\n  " + sgrwr::query::render_row(r);
    if (o.truncated) s += "\n  (truncated)";
    return s;
}

}  // namespace oracle
