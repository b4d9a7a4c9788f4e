#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace sgrwr {

// Base error type for everything in this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

using IntList = std::vector<std::int64_t>;
using StringList = std::vector<std::string>;

// Catch-all for structured payloads we carry around but never reason over
// (e.g. household transforms). Holds a canonical JSON rendering.
struct OpaqueBlob {
    std::string canonical_json;
    bool operator==(const OpaqueBlob&) const = default;
};

// Closed set of attribute value shapes a scene graph node may carry.
using AttrValue = std::variant<std::string, std::int64_t, bool, IntList, StringList, OpaqueBlob>;

enum class AttrKind { String, Int, Bool, IntList, StringList, Opaque };

AttrKind kind_of(const AttrValue& v);
const char* kind_name(AttrKind k);
AttrKind kind_from_name(const std::string& name);

// Convenience constructors; the variant's implicit conversions are too
// eager to be trusted (int vs bool in particular).
inline AttrValue attr_str(std::string s) { return AttrValue{std::in_place_type<std::string>, std::move(s)}; }
inline AttrValue attr_int(std::int64_t i) { return AttrValue{std::in_place_type<std::int64_t>, i}; }
inline AttrValue attr_bool(bool b) { return AttrValue{std::in_place_type<bool>, b}; }
inline AttrValue attr_ints(IntList v) { return AttrValue{std::in_place_type<IntList>, std::move(v)}; }
inline AttrValue attr_strs(StringList v) { return AttrValue{std::in_place_type<StringList>, std::move(v)}; }
inline AttrValue attr_blob(const nlohmann::json& j) { return AttrValue{OpaqueBlob{j.dump()}}; }

nlohmann::json attr_to_json(const AttrValue& v);
AttrValue attr_from_json(const nlohmann::json& j);

// Deterministic single-line rendering used by textualize() and query
// result listings. Opaque blobs render as "<opaque>".
std::string attr_to_text(const AttrValue& v);

}  // namespace sgrwr
