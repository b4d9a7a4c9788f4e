#include "sgrwr/attr_value.hpp"

namespace sgrwr {

AttrKind kind_of(const AttrValue& v) {
    switch (v.index()) {
        case 0: return AttrKind::String;
        case 1: return AttrKind::Int;
        case 2: return AttrKind::Bool;
        case 3: return AttrKind::IntList;
        case 4: return AttrKind::StringList;
        default: return AttrKind::Opaque;
    }
}

const char* kind_name(AttrKind k) {
    switch (k) {
        case AttrKind::String: return "string";
        case AttrKind::Int: return "int";
        case AttrKind::Bool: return "bool";
        case AttrKind::IntList: return "int_list";
        case AttrKind::StringList: return "string_list";
        default: return "opaque";
    }
}

AttrKind kind_from_name(const std::string& name) {
    if (name == "string") return AttrKind::String;
    if (name == "int") return AttrKind::Int;
    if (name == "bool") return AttrKind::Bool;
    if (name == "int_list") return AttrKind::IntList;
    if (name == "string_list") return AttrKind::StringList;
    if (name == "opaque") return AttrKind::Opaque;
    throw Error("unknown attribute kind name: " + name);
}

nlohmann::json attr_to_json(const AttrValue& v) {
    switch (kind_of(v)) {
        case AttrKind::String: return std::get<std::string>(v);
        case AttrKind::Int: return std::get<std::int64_t>(v);
        case AttrKind::Bool: return std::get<bool>(v);
        case AttrKind::IntList: return std::get<IntList>(v);
        case AttrKind::StringList: return std::get<StringList>(v);
        default: return nlohmann::json::parse(std::get<OpaqueBlob>(v).canonical_json);
    }
}

AttrValue attr_from_json(const nlohmann::json& j) {
    if (j.is_string()) return attr_str(j.get<std::string>());
    if (j.is_boolean()) return attr_bool(j.get<bool>());
    if (j.is_number_integer() || j.is_number_unsigned()) return attr_int(j.get<std::int64_t>());
    if (j.is_array()) {
        bool all_int = true, all_str = true;
        for (const auto& e : j) {
            if (!(e.is_number_integer() || e.is_number_unsigned())) all_int = false;
            if (!e.is_string()) all_str = false;
        }
        // Empty arrays load as string lists; integer lists (coordinates,
        // sizes) are never empty in practice.
        if (j.empty()) return attr_strs({});
        if (all_int) {
            IntList out;
            for (const auto& e : j) out.push_back(e.get<std::int64_t>());
            return attr_ints(std::move(out));
        }
        if (all_str) {
            StringList out;
            for (const auto& e : j) out.push_back(e.get<std::string>());
            return attr_strs(std::move(out));
        }
    }
    return AttrValue{OpaqueBlob{j.dump()}};
}

std::string attr_to_text(const AttrValue& v) {
    switch (kind_of(v)) {
        case AttrKind::String: return std::get<std::string>(v);
        case AttrKind::Int: return std::to_string(std::get<std::int64_t>(v));
        case AttrKind::Bool: return std::get<bool>(v) ? "true" : "false";
        case AttrKind::IntList: {
            std::string out = "[";
            const auto& xs = std::get<IntList>(v);
            for (size_t i = 0; i < xs.size(); ++i) {
                if (i) out += ",";
                out += std::to_string(xs[i]);
            }
            return out + "]";
        }
        case AttrKind::StringList: {
            std::string out = "[";
            const auto& xs = std::get<StringList>(v);
            for (size_t i = 0; i < xs.size(); ++i) {
                if (i) out += ",";
                out += xs[i];
            }
            return out + "]";
        }
        default: return "<opaque>";
    }
}

}  // namespace sgrwr
