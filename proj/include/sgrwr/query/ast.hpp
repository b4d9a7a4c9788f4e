#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sgrwr/attr_value.hpp"

namespace sgrwr::query {

using FilterValue = std::variant<std::string, std::int64_t, bool>;

struct Filter {
    std::string key;
    FilterValue value;
};

enum class PrimaryKind { Nodes, Edges, Neighbors, Attrs, Count };
enum class StageKind { InRoom, Inside, Where, Count, Project };

struct Pipe;

struct Primary {
    PrimaryKind kind = PrimaryKind::Nodes;
    std::vector<Filter> filters;       // Nodes, Edges
    std::string id;                    // Neighbors, Attrs
    std::optional<std::string> via;    // Neighbors
    std::vector<std::string> fields;   // Attrs
    std::unique_ptr<Pipe> sub;         // Count
};

struct Stage {
    StageKind kind = StageKind::Count;
    std::string id;                    // InRoom, Inside
    std::vector<Filter> filters;       // Where
    std::vector<std::string> fields;   // Project
};

struct Pipe {
    Primary primary;
    std::vector<Stage> stages;
};

// Canonical rendering; parse(print_query(q)) reproduces q.
std::string print_query(const Pipe& q);
std::string print_filter_value(const FilterValue& v);

inline bool ast_equal(const Pipe& a, const Pipe& b) { return print_query(a) == print_query(b); }

}  // namespace sgrwr::query
