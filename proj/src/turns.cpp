#include "sgrwr/agents/turns.hpp"

#include <algorithm>
#include <cctype>

namespace sgrwr::agents {

const char* mode_name(PlannerMode m) {
    switch (m) {
        case PlannerMode::Query: return "QUERY";
        case PlannerMode::Tool: return "TOOL";
        default: return "SOLUTION";
    }
}

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

namespace {

std::string lower(const std::string& s) {
    std::string out = s;
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

// Case-insensitive search for "[header]".
size_t find_header(const std::string& haystack_lower, const std::string& header, size_t from = 0) {
    return haystack_lower.find("[" + header + "]", from);
}

}  // namespace

PlannerTurn parse_planner_turn(const std::string& text) {
    const std::string low = lower(text);
    struct Section {
        const char* header;
        size_t pos;
        size_t len;
    };
    Section sections[3] = {
        {"explanation", find_header(low, "explanation"), 13},
        {"mode", find_header(low, "mode"), 6},
        {"content", find_header(low, "content"), 9},
    };
    if (sections[0].pos == std::string::npos)
        throw FormatError("planner reply is missing the [Explanation] section", "missing_explanation");
    if (sections[1].pos == std::string::npos)
        throw FormatError("planner reply is missing the [Mode] section", "missing_mode");
    if (sections[2].pos == std::string::npos)
        throw FormatError("planner reply is missing the [Content] section", "missing_content");

    auto body_of = [&](int i) {
        size_t begin = sections[i].pos + sections[i].len;
        size_t end = text.size();
        for (int j = 0; j < 3; ++j)
            if (sections[j].pos != std::string::npos && sections[j].pos >= begin)
                end = std::min(end, sections[j].pos);
        return trim(text.substr(begin, end - begin));
    };

    PlannerTurn turn;
    turn.explanation = body_of(0);
    std::string mode_text = body_of(1);
    // Take the first token; tolerate trailing punctuation.
    size_t sp = mode_text.find_first_of(" \t\r\n");
    std::string token = sp == std::string::npos ? mode_text : mode_text.substr(0, sp);
    while (!token.empty() && (token.back() == '.' || token.back() == ',' || token.back() == '!'))
        token.pop_back();
    std::string token_low = lower(token);
    if (token_low == "query")
        turn.mode = PlannerMode::Query;
    else if (token_low == "tool")
        turn.mode = PlannerMode::Tool;
    else if (token_low == "solution")
        turn.mode = PlannerMode::Solution;
    else
        throw FormatError("planner [Mode] must be one of QUERY, TOOL, SOLUTION; got '" + token + "'",
                          "bad_mode");
    turn.content = body_of(2);
    return turn;
}

std::string format_planner_turn(const PlannerTurn& turn) {
    return "[Explanation]\n" + turn.explanation + "\n\n[Mode]\n" + mode_name(turn.mode) +
           "\n\n[Content]\n" + turn.content;
}

std::string extract_fenced(const std::string& text, const std::string& tag) {
    const std::string open = "```" + tag;
    size_t start = text.find(open);
    if (start == std::string::npos)
        throw NoFenceError("no ```" + tag + " code block found in the reply");
    size_t body = start + open.size();
    // Skip to the end of the fence line.
    while (body < text.size() && text[body] != '\n') {
        if (!std::isspace(static_cast<unsigned char>(text[body])))
            throw NoFenceError("no ```" + tag + " code block found in the reply");
        ++body;
    }
    if (body < text.size()) ++body;
    size_t end = text.find("```", body);
    if (end == std::string::npos)
        throw NoFenceError("unterminated ```" + tag + " code block in the reply");
    return trim(text.substr(body, end - body));
}

}  // namespace sgrwr::agents
