#pragma once

#include <string>

#include "sgrwr/attr_value.hpp"

namespace sgrwr::agents {

enum class PlannerMode { Query, Tool, Solution };

const char* mode_name(PlannerMode m);

// One planner reply, split into its three template sections. Only the
// content section is ever forwarded to another agent.
struct PlannerTurn {
    std::string explanation;
    PlannerMode mode = PlannerMode::Query;
    std::string content;
};

struct FormatError : Error {
    std::string kind;  // missing_explanation | missing_mode | missing_content | bad_mode
    FormatError(const std::string& what, std::string kind_) : Error(what), kind(std::move(kind_)) {}
};

struct NoFenceError : Error {
    explicit NoFenceError(const std::string& what) : Error(what) {}
};

// Strict section parse: all of [Explanation], [Mode], [Content] must be
// present (headers matched case-insensitively); the mode token itself is
// also case-insensitive.
PlannerTurn parse_planner_turn(const std::string& text);
std::string format_planner_turn(const PlannerTurn& turn);

// First ```tag ... ``` block in the text.
std::string extract_fenced(const std::string& text, const std::string& tag);

std::string trim(const std::string& s);

}  // namespace sgrwr::agents
