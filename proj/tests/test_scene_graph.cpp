#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "sgrwr/scene_graph.hpp"

using namespace sgrwr;

namespace {

Node make_node(const std::string& id, std::map<std::string, AttrValue> attrs) {
    Node n;
    n.id = id;
    n.attrs = std::move(attrs);
    return n;
}

// Smallest graph that passes babyai validation: one room, one agent, one
// ball, and a door connecting the room to itself twice is not legal, so
// use two rooms.
SceneGraph small_world() {
    SceneGraph g;
    g.profile = "babyai";
    g.root_id = "root_0";
    g.add_node(make_node("root_0", {{"type", attr_str("root")}}));
    g.add_node(make_node("room_A", {{"type", attr_str("room")},
                                    {"coordinate", attr_ints({1, 1})},
                                    {"size", attr_ints({5, 5})}}));
    g.add_node(make_node("room_B", {{"type", attr_str("room")},
                                    {"coordinate", attr_ints({7, 1})},
                                    {"size", attr_ints({5, 5})}}));
    g.add_node(make_node("door_1", {{"type", attr_str("door")},
                                    {"color", attr_str("yellow")},
                                    {"coordinate", attr_ints({6, 3})},
                                    {"is_locked", attr_bool(false)}}));
    g.add_node(make_node("ball_1", {{"type", attr_str("ball")},
                                    {"color", attr_str("green")},
                                    {"coordinate", attr_ints({2, 2})}}));
    g.add_node(make_node("agent_0", {{"type", attr_str("agent")},
                                     {"coordinate", attr_ints({3, 4})}}));
    g.add_edge("room_A", "root_0", "inside");
    g.add_edge("room_B", "root_0", "inside");
    g.add_edge("ball_1", "room_A", "inside");
    g.add_edge("agent_0", "room_A", "inside");
    g.add_edge("door_1", "room_A", "inside");
    g.add_edge("door_1", "room_A", "connects");
    g.add_edge("door_1", "room_B", "connects");
    return g;
}

bool has_violation(const std::vector<Violation>& vs, const std::string& subject) {
    for (const Violation& v : vs)
        if (v.subject == subject) return true;
    return false;
}

}  // namespace

TEST_CASE("node lookups and duplicate protection") {
    SceneGraph g = small_world();
    CHECK(g.has_node("ball_1"));
    CHECK_FALSE(g.has_node("ball_9"));
    CHECK(g.find("ball_9") == nullptr);
    REQUIRE(g.find("ball_1") != nullptr);
    CHECK(*g.find("ball_1")->get_str("color") == "green");
    CHECK(g.find("ball_1")->get_str("coordinate") == nullptr);  // wrong kind
    CHECK(g.find("ball_1")->get("nope") == nullptr);
    CHECK_THROWS_AS(g.add_node(make_node("ball_1", {})), GraphFormatError);
}

TEST_CASE("graph equality ignores edge order") {
    SceneGraph a = small_world();
    SceneGraph b = small_world();
    std::reverse(b.edges.begin(), b.edges.end());
    CHECK(a == b);
    b.edges.pop_back();
    CHECK_FALSE(a == b);
}

TEST_CASE("a conforming graph validates cleanly") {
    CHECK(validate(small_world(), babyai_schema()).empty());
}

TEST_CASE("validation catches structural mistakes") {
    Schema schema = babyai_schema();

    SUBCASE("profile mismatch") {
        SceneGraph g = small_world();
        g.profile = "household";
        CHECK(has_violation(validate(g, schema), "(graph)"));
    }
    SUBCASE("missing root") {
        SceneGraph g = small_world();
        g.root_id.reset();
        CHECK(has_violation(validate(g, schema), "(graph)"));
        g.root_id = "nowhere_9";
        CHECK(has_violation(validate(g, schema), "nowhere_9"));
    }
    SUBCASE("unknown node type") {
        SceneGraph g = small_world();
        g.nodes["ball_1"].attrs["type"] = attr_str("pyramid");
        CHECK(has_violation(validate(g, schema), "ball_1"));
    }
    SUBCASE("missing required attribute") {
        SceneGraph g = small_world();
        g.nodes["ball_1"].attrs.erase("color");
        CHECK(has_violation(validate(g, schema), "ball_1"));
    }
    SUBCASE("attribute kind mismatch") {
        SceneGraph g = small_world();
        g.nodes["door_1"].attrs["is_locked"] = attr_str("no");
        CHECK(has_violation(validate(g, schema), "door_1"));
    }
    SUBCASE("attribute outside the schema") {
        SceneGraph g = small_world();
        g.nodes["ball_1"].attrs["weight"] = attr_int(3);
        CHECK(has_violation(validate(g, schema), "ball_1"));
    }
    SUBCASE("edge endpoint missing") {
        SceneGraph g = small_world();
        g.add_edge("ball_1", "room_Z", "inside");
        CHECK(has_violation(validate(g, schema), "ball_1 -inside-> room_Z"));
    }
    SUBCASE("unknown relationship") {
        SceneGraph g = small_world();
        g.add_edge("ball_1", "room_A", "orbits");
        CHECK(has_violation(validate(g, schema), "ball_1 -orbits-> room_A"));
    }
    SUBCASE("inside edge direction matters") {
        SceneGraph g = small_world();
        g.add_edge("room_A", "ball_1", "inside");
        CHECK(has_violation(validate(g, schema), "room_A -inside-> ball_1"));
    }
    SUBCASE("doors need exactly two connects edges") {
        SceneGraph g = small_world();
        g.edges.pop_back();  // drop door_1 -connects-> room_B
        CHECK(has_violation(validate(g, schema), "door_1"));
    }
}

TEST_CASE("serialization round trips and is canonical") {
    SceneGraph g = small_world();
    std::string text = save_graph(g);
    SceneGraph back = load_graph(text);
    CHECK(back == g);
    CHECK(save_graph(back) == text);
    // Canonical form is insensitive to edge insertion order.
    std::reverse(g.edges.begin(), g.edges.end());
    CHECK(save_graph(g) == text);
    CHECK(text.find('\n') == std::string::npos);
    // Nodes appear in id order.
    CHECK(text.find("\"agent_0\"") < text.find("\"ball_1\""));
    CHECK(text.find("\"ball_1\"") < text.find("\"door_1\""));
}

TEST_CASE("numeric node ids survive the round trip as integer attributes") {
    SceneGraph g;
    g.profile = "household";
    g.add_node(make_node("231", {{"id", attr_int(231)},
                                 {"class_name", attr_str("mug")},
                                 {"states", attr_strs({"CLEAN"})}}));
    std::string text = save_graph(g);
    CHECK(text.find("\"id\":231") != std::string::npos);
    SceneGraph back = load_graph(text);
    REQUIRE(back.has_node("231"));
    CHECK(std::get<std::int64_t>(back.nodes["231"].attrs.at("id")) == 231);
    CHECK(back == g);

    // An id attribute that contradicts the node id cannot serialize.
    SceneGraph bad;
    bad.profile = "household";
    bad.add_node(make_node("7", {{"id", attr_int(8)}}));
    CHECK_THROWS_AS(save_graph(bad), GraphFormatError);
}

TEST_CASE("malformed graph JSON is rejected with a reason") {
    CHECK_THROWS_AS(load_graph("not json"), GraphFormatError);
    CHECK_THROWS_AS(load_graph("[]"), GraphFormatError);
    CHECK_THROWS_AS(load_graph(R"({"nodes": [], "edges": []})"), GraphFormatError);
    CHECK_THROWS_AS(load_graph(R"({"profile": "martian", "nodes": [], "edges": []})"),
                    GraphFormatError);
    CHECK_THROWS_AS(load_graph(R"({"profile": "babyai", "nodes": [{}], "edges": []})"),
                    GraphFormatError);
    CHECK_THROWS_AS(
        load_graph(R"({"profile": "babyai", "nodes": [], "edges": [{"from": "a"}]})"),
        GraphFormatError);
    CHECK_THROWS_AS(load_graph_file("/nonexistent/path.json"), GraphFormatError);
}

TEST_CASE("textualize renders one line per node then sorted edges") {
    SceneGraph g = small_world();
    std::string text = textualize(g, babyai_schema());
    CHECK(text.find("ball_1 | type=ball, color=green, coordinate=[2,2]\n") != std::string::npos);
    CHECK(text.find("door_1 -connects-> room_A\n") != std::string::npos);
    CHECK(text.find("room_A -inside-> root_0\n") != std::string::npos);
    // Node lines come before edge lines.
    CHECK(text.find("ball_1 | ") < text.find(" -inside-> "));
    CHECK(text == textualize(small_world(), babyai_schema()));
}

TEST_CASE("textualize refuses non conforming graphs") {
    SceneGraph g = small_world();
    g.nodes["ball_1"].attrs.erase("color");
    CHECK_THROWS_AS(textualize(g, babyai_schema()), GraphFormatError);
}

TEST_CASE("attribute values render and serialize by kind") {
    CHECK(attr_to_text(attr_str("red")) == "red");
    CHECK(attr_to_text(attr_int(-3)) == "-3");
    CHECK(attr_to_text(attr_bool(true)) == "true");
    CHECK(attr_to_text(attr_ints({1, 2})) == "[1,2]");
    CHECK(attr_to_text(attr_strs({"ON", "OPEN"})) == "[ON,OPEN]");
    CHECK(attr_to_text(attr_blob(nlohmann::json{{"k", 1}})) == "<opaque>");

    for (const AttrValue& v : {attr_str("x"), attr_int(9), attr_bool(false), attr_ints({3}),
                               attr_strs({"a", "b"})}) {
        AttrValue back = attr_from_json(attr_to_json(v));
        CHECK(kind_of(back) == kind_of(v));
        CHECK(back == v);
    }
}
