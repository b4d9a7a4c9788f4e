#include "sgrwr/query/ast.hpp"

#include <sstream>

namespace sgrwr::query {

static std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

std::string print_filter_value(const FilterValue& v) {
    if (std::holds_alternative<std::string>(v)) return quote(std::get<std::string>(v));
    if (std::holds_alternative<std::int64_t>(v)) return std::to_string(std::get<std::int64_t>(v));
    return std::get<bool>(v) ? "true" : "false";
}

static void print_filters(std::ostringstream& out, const std::vector<Filter>& fs) {
    for (size_t i = 0; i < fs.size(); ++i) {
        if (i) out << ", ";
        out << fs[i].key << "=" << print_filter_value(fs[i].value);
    }
}

static void print_fields(std::ostringstream& out, const std::vector<std::string>& fields) {
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ", ";
        out << fields[i];
    }
}

static void print_pipe(std::ostringstream& out, const Pipe& q);

static void print_primary(std::ostringstream& out, const Primary& p) {
    switch (p.kind) {
        case PrimaryKind::Nodes:
            out << "nodes(";
            print_filters(out, p.filters);
            out << ")";
            break;
        case PrimaryKind::Edges:
            out << "edges(";
            print_filters(out, p.filters);
            out << ")";
            break;
        case PrimaryKind::Neighbors:
            out << "neighbors(" << quote(p.id);
            if (p.via) out << ", via=" << quote(*p.via);
            out << ")";
            break;
        case PrimaryKind::Attrs:
            out << "attrs(" << quote(p.id);
            if (!p.fields.empty()) {
                out << ", ";
                print_fields(out, p.fields);
            }
            out << ")";
            break;
        case PrimaryKind::Count:
            out << "count(";
            print_pipe(out, *p.sub);
            out << ")";
            break;
    }
}

static void print_stage(std::ostringstream& out, const Stage& s) {
    switch (s.kind) {
        case StageKind::InRoom: out << "in_room(" << quote(s.id) << ")"; break;
        case StageKind::Inside: out << "inside(" << quote(s.id) << ")"; break;
        case StageKind::Where:
            out << "where(";
            print_filters(out, s.filters);
            out << ")";
            break;
        case StageKind::Count: out << "count()"; break;
        case StageKind::Project:
            out << "project(";
            print_fields(out, s.fields);
            out << ")";
            break;
    }
}

static void print_pipe(std::ostringstream& out, const Pipe& q) {
    print_primary(out, q.primary);
    for (const Stage& s : q.stages) {
        out << " | ";
        print_stage(out, s);
    }
}

std::string print_query(const Pipe& q) {
    std::ostringstream out;
    print_pipe(out, q);
    return out.str();
}

}  // namespace sgrwr::query
