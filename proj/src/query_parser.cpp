#include "sgrwr/query/parser.hpp"

#include <algorithm>
#include <cctype>

namespace sgrwr::query {

namespace {

enum class Tok { Ident, Str, Int, LParen, RParen, Comma, Bar, Eq, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::int64_t int_value = 0;
    int line = 1;
    int col = 1;
};

const char* tok_name(Tok t) {
    switch (t) {
        case Tok::Ident: return "identifier";
        case Tok::Str: return "string";
        case Tok::Int: return "integer";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::Comma: return "','";
        case Tok::Bar: return "'|'";
        case Tok::Eq: return "'='";
        default: return "end of query";
    }
}

class Lexer {
  public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        skip_ws();
        Token t;
        t.line = line_;
        t.col = col_;
        if (pos_ >= src_.size()) {
            t.kind = Tok::End;
            return t;
        }
        char c = src_[pos_];
        if (c == '(') return simple(t, Tok::LParen);
        if (c == ')') return simple(t, Tok::RParen);
        if (c == ',') return simple(t, Tok::Comma);
        if (c == '|') return simple(t, Tok::Bar);
        if (c == '=') return simple(t, Tok::Eq);
        if (c == '"') return lex_string(t);
        if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) return lex_int(t);
        if (c == '_' || std::isalpha(static_cast<unsigned char>(c))) return lex_ident(t);
        throw ParseError("unexpected character '" + std::string(1, c) + "' at " +
                             std::to_string(line_) + ":" + std::to_string(col_),
                         line_, col_);
    }

  private:
    Token& simple(Token& t, Tok kind) {
        t.kind = kind;
        advance();
        return t;
    }

    Token& lex_string(Token& t) {
        t.kind = Tok::Str;
        advance();  // opening quote
        std::string out;
        while (true) {
            if (pos_ >= src_.size())
                throw ParseError("unterminated string starting at " + std::to_string(t.line) + ":" +
                                     std::to_string(t.col),
                                 t.line, t.col);
            char c = src_[pos_];
            if (c == '"') {
                advance();
                break;
            }
            if (c == '\\') {
                advance();
                if (pos_ >= src_.size())
                    throw ParseError("unterminated escape in string", t.line, t.col);
                c = src_[pos_];
            }
            out += c;
            advance();
        }
        t.text = std::move(out);
        return t;
    }

    Token& lex_int(Token& t) {
        t.kind = Tok::Int;
        std::string digits;
        if (src_[pos_] == '-') {
            digits += '-';
            advance();
        }
        if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
            throw ParseError("expected digits after '-' at " + std::to_string(t.line) + ":" +
                                 std::to_string(t.col),
                             t.line, t.col);
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            digits += src_[pos_];
            advance();
        }
        try {
            t.int_value = std::stoll(digits);
        } catch (const std::exception&) {
            throw ParseError("integer literal out of range at " + std::to_string(t.line) + ":" +
                                 std::to_string(t.col),
                             t.line, t.col);
        }
        t.text = digits;
        return t;
    }

    Token& lex_ident(Token& t) {
        t.kind = Tok::Ident;
        std::string out;
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '_' || std::isalnum(static_cast<unsigned char>(c))) {
                out += c;
                advance();
            } else {
                break;
            }
        }
        t.text = std::move(out);
        return t;
    }

    void skip_ws() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n')
                advance();
            else
                break;
        }
    }

    void advance() {
        if (pos_ < src_.size()) {
            if (src_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
    }

    std::string_view src_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

constexpr int kMaxDepth = 16;
constexpr int kMaxStages = 16;

// Names that refer to row structure rather than schema attributes: the
// row id and the fields carried by edge rows.
bool is_structural_name(const std::string& name) {
    return name == "id" || name == "from" || name == "to" || name == "rel" || name == "relationship";
}

size_t edit_distance(const std::string& a, const std::string& b) {
    std::vector<size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (size_t j = 1; j <= b.size(); ++j) {
            size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

class Parser {
  public:
    Parser(std::string_view src, const Schema& schema) : lexer_(src), schema_(schema) {
        attr_names_ = schema_.attribute_names();
        bump();
    }

    Pipe parse_query() {
        Pipe q = parse_pipe(1);
        expect(Tok::End);
        return q;
    }

  private:
    Pipe parse_pipe(int depth) {
        if (depth > kMaxDepth)
            throw ParseError("query too deeply nested (depth limit " + std::to_string(kMaxDepth) + ")",
                             cur_.line, cur_.col);
        Pipe q;
        q.primary = parse_primary(depth);
        while (cur_.kind == Tok::Bar) {
            bump();
            if (static_cast<int>(q.stages.size()) >= kMaxStages)
                throw ParseError("too many pipeline stages (limit " + std::to_string(kMaxStages) + ")",
                                 cur_.line, cur_.col);
            q.stages.push_back(parse_stage());
        }
        return q;
    }

    Primary parse_primary(int depth) {
        Token name = expect(Tok::Ident, {"nodes", "edges", "neighbors", "attrs", "count"});
        Primary p;
        if (name.text == "nodes" || name.text == "edges") {
            p.kind = name.text == "nodes" ? PrimaryKind::Nodes : PrimaryKind::Edges;
            expect(Tok::LParen);
            if (cur_.kind != Tok::RParen) p.filters = parse_filters();
            expect(Tok::RParen);
        } else if (name.text == "neighbors") {
            p.kind = PrimaryKind::Neighbors;
            expect(Tok::LParen);
            p.id = expect(Tok::Str).text;
            if (cur_.kind == Tok::Comma) {
                bump();
                Token via = expect(Tok::Ident, {"via"});
                if (via.text != "via")
                    throw ParseError("expected 'via' at " + pos_of(via), via.line, via.col, {"via"});
                expect(Tok::Eq);
                p.via = expect(Tok::Str).text;
            }
            expect(Tok::RParen);
        } else if (name.text == "attrs") {
            p.kind = PrimaryKind::Attrs;
            expect(Tok::LParen);
            p.id = expect(Tok::Str).text;
            while (cur_.kind == Tok::Comma) {
                bump();
                p.fields.push_back(bind_attr(expect(Tok::Ident)));
            }
            expect(Tok::RParen);
        } else if (name.text == "count") {
            p.kind = PrimaryKind::Count;
            expect(Tok::LParen);
            p.sub = std::make_unique<Pipe>(parse_pipe(depth + 1));
            expect(Tok::RParen);
        } else {
            throw ParseError("expected one of nodes, edges, neighbors, attrs, count at " + pos_of(name),
                             name.line, name.col, {"nodes", "edges", "neighbors", "attrs", "count"});
        }
        return p;
    }

    Stage parse_stage() {
        Token name = expect(Tok::Ident, {"in_room", "inside", "where", "count", "project"});
        Stage s;
        if (name.text == "in_room" || name.text == "inside") {
            s.kind = name.text == "in_room" ? StageKind::InRoom : StageKind::Inside;
            expect(Tok::LParen);
            s.id = expect(Tok::Str).text;
            expect(Tok::RParen);
        } else if (name.text == "where") {
            s.kind = StageKind::Where;
            expect(Tok::LParen);
            s.filters = parse_filters();
            expect(Tok::RParen);
        } else if (name.text == "count") {
            s.kind = StageKind::Count;
            expect(Tok::LParen);
            expect(Tok::RParen);
        } else if (name.text == "project") {
            s.kind = StageKind::Project;
            expect(Tok::LParen);
            s.fields.push_back(bind_attr(expect(Tok::Ident)));
            while (cur_.kind == Tok::Comma) {
                bump();
                s.fields.push_back(bind_attr(expect(Tok::Ident)));
            }
            expect(Tok::RParen);
        } else {
            throw ParseError("expected one of in_room, inside, where, count, project at " + pos_of(name),
                             name.line, name.col, {"in_room", "inside", "where", "count", "project"});
        }
        return s;
    }

    std::vector<Filter> parse_filters() {
        std::vector<Filter> out;
        out.push_back(parse_filter());
        while (cur_.kind == Tok::Comma) {
            bump();
            out.push_back(parse_filter());
        }
        return out;
    }

    Filter parse_filter() {
        Token key = expect(Tok::Ident);
        expect(Tok::Eq);
        Filter f;
        f.key = bind_attr(key);
        if (cur_.kind == Tok::Str) {
            f.value = FilterValue{std::in_place_type<std::string>, cur_.text};
            bump();
        } else if (cur_.kind == Tok::Int) {
            f.value = FilterValue{std::in_place_type<std::int64_t>, cur_.int_value};
            bump();
        } else if (cur_.kind == Tok::Ident && (cur_.text == "true" || cur_.text == "false")) {
            f.value = FilterValue{std::in_place_type<bool>, cur_.text == "true"};
            bump();
        } else {
            throw ParseError("expected a string, integer, or boolean at " + pos_of(cur_), cur_.line,
                             cur_.col, {"string", "integer", "true", "false"});
        }
        return f;
    }

    std::string bind_attr(const Token& tok) {
        const std::string& name = tok.text;
        if (is_structural_name(name) || attr_names_.count(name)) return name;
        std::optional<std::string> best;
        size_t best_dist = 3;
        auto consider = [&](const std::string& candidate) {
            size_t d = edit_distance(name, candidate);
            if (d < best_dist || (d == best_dist && best && candidate < *best)) {
                best_dist = d;
                best = candidate;
            }
        };
        for (const std::string& a : attr_names_) consider(a);
        for (const char* s : {"id", "from", "to", "rel", "relationship"}) consider(s);
        std::string msg = "unknown attribute '" + name + "' at " + pos_of(tok);
        if (best) msg += "; did you mean '" + *best + "'?";
        throw UnknownAttributeError(msg, name, best);
    }

    static std::string pos_of(const Token& t) {
        return std::to_string(t.line) + ":" + std::to_string(t.col);
    }

    Token expect(Tok kind, std::vector<std::string> expected = {}) {
        if (cur_.kind != kind) {
            if (expected.empty()) expected = {tok_name(kind)};
            throw ParseError("expected " + expected_list(expected) + " at " + pos_of(cur_) + ", found " +
                                 tok_name(cur_.kind),
                             cur_.line, cur_.col, expected);
        }
        Token out = cur_;
        bump();
        return out;
    }

    static std::string expected_list(const std::vector<std::string>& expected) {
        std::string out;
        for (size_t i = 0; i < expected.size(); ++i) {
            if (i) out += i + 1 == expected.size() ? " or " : ", ";
            out += expected[i];
        }
        return out;
    }

    void bump() { cur_ = lexer_.next(); }

    Lexer lexer_;
    const Schema& schema_;
    std::set<std::string> attr_names_;
    Token cur_;
};

}  // namespace

Pipe parse(std::string_view source, const Schema& schema) {
    if (source.size() > 64 * 1024)
        throw ParseError("query source exceeds the 64 KiB limit", 1, 1);
    Parser parser(source, schema);
    return parser.parse_query();
}

std::string grammar_text() {
    return
        "query    := pipe\n"
        "pipe     := primary { \"|\" stage }\n"
        "primary  := \"nodes\" \"(\" [filters] \")\" | \"edges\" \"(\" [filters] \")\"\n"
        "          | \"neighbors\" \"(\" id [\",\" \"via\" \"=\" str] \")\"\n"
        "          | \"attrs\" \"(\" id [\",\" fieldlist] \")\"\n"
        "          | \"count\" \"(\" pipe \")\"\n"
        "stage    := \"in_room\" \"(\" id \")\" | \"inside\" \"(\" id \")\"\n"
        "          | \"where\" \"(\" filters \")\" | \"count\" \"(\" \")\"\n"
        "          | \"project\" \"(\" fieldlist \")\"\n"
        "filters  := filter { \",\" filter }\n"
        "filter   := ident \"=\" (str | int | bool)\n"
        "fieldlist := ident { \",\" ident }\n"
        "id       := a double-quoted node id string\n"
        "\n"
        "Semantics:\n"
        "- nodes(filters) selects nodes whose attributes equal every filter value; the\n"
        "  special key id matches the node id.\n"
        "- edges(filters) selects edges as rows with fields from, to, relationship\n"
        "  (key rel is accepted as a shorthand for relationship).\n"
        "- neighbors(id, via=rel) selects the nodes adjacent to id, optionally only\n"
        "  through edges with the given relationship; adjacency ignores direction.\n"
        "- attrs(id, fields) selects the single node id, optionally projected to the\n"
        "  listed attribute fields.\n"
        "- in_room(id) and inside(id) keep rows that have a containment edge to the\n"
        "  given container node.\n"
        "- where(filters) keeps rows whose current fields equal every filter value.\n"
        "- project(fields) narrows rows to the listed fields.\n"
        "- count(...) yields the number of rows; piping a count into further stages is\n"
        "  an error.\n"
        "- Results are sorted by row id and truncated to 512 rows.\n";
}

}  // namespace sgrwr::query
