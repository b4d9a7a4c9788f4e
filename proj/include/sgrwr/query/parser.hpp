#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sgrwr/query/ast.hpp"
#include "sgrwr/schema.hpp"

namespace sgrwr::query {

struct ParseError : Error {
    int line = 0;
    int col = 0;
    std::vector<std::string> expected;
    ParseError(const std::string& what, int line_, int col_, std::vector<std::string> expected_ = {})
        : Error(what), line(line_), col(col_), expected(std::move(expected_)) {}
};

struct UnknownAttributeError : Error {
    std::string attribute;
    std::optional<std::string> suggestion;
    UnknownAttributeError(const std::string& what, std::string attribute_,
                          std::optional<std::string> suggestion_)
        : Error(what), attribute(std::move(attribute_)), suggestion(std::move(suggestion_)) {}
};

// Parses one query and binds attribute names against the schema. Throws
// ParseError or UnknownAttributeError; never crashes on arbitrary input.
Pipe parse(std::string_view source, const Schema& schema);

// The grammar text embedded in retriever prompts.
std::string grammar_text();

}  // namespace sgrwr::query
