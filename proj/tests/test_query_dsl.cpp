#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "sgrwr/query/eval.hpp"
#include "sgrwr/query/parser.hpp"
#include "support/dsl_oracle.hpp"
#include "support/generators.hpp"

using namespace sgrwr;
using namespace sgrwr::query;

namespace {

SceneGraph tiny_graph() {
    SceneGraph g;
    g.profile = "babyai";
    auto node = [&](const std::string& id, const std::string& type, const std::string& color) {
        Node n;
        n.id = id;
        n.attrs["type"] = attr_str(type);
        if (!color.empty()) n.attrs["color"] = attr_str(color);
        return n;
    };
    g.add_node(node("root_0", "root", ""));
    g.add_node(node("room_A", "room", ""));
    g.add_node(node("room_B", "room", ""));
    g.add_node(node("ball_1", "ball", "green"));
    g.add_node(node("ball_2", "ball", "red"));
    g.add_node(node("key_1", "key", "green"));
    g.add_node(node("door_1", "door", "yellow"));
    g.nodes["door_1"].attrs["is_locked"] = attr_bool(false);
    g.add_edge("room_A", "root_0", "inside");
    g.add_edge("room_B", "root_0", "inside");
    g.add_edge("ball_1", "room_A", "inside");
    g.add_edge("ball_2", "room_B", "inside");
    g.add_edge("key_1", "room_A", "inside");
    g.add_edge("door_1", "room_A", "connects");
    g.add_edge("door_1", "room_B", "connects");
    return g;
}

Pipe parsed(const std::string& text) { return parse(text, babyai_schema()); }

std::vector<std::string> row_ids(const RetrievalResult& r) {
    std::vector<std::string> ids;
    for (const Row& row : r.rows) ids.push_back(row.id);
    return ids;
}

}  // namespace

TEST_CASE("nodes() with filters selects matching nodes sorted by id") {
    SceneGraph g = tiny_graph();
    auto r = evaluate(parsed("nodes(type=\"ball\")"), g);
    CHECK(row_ids(r) == std::vector<std::string>{"ball_1", "ball_2"});
    r = evaluate(parsed("nodes(type=\"ball\", color=\"red\")"), g);
    CHECK(row_ids(r) == std::vector<std::string>{"ball_2"});
    r = evaluate(parsed("nodes()"), g);
    CHECK(r.rows.size() == g.nodes.size());
    CHECK_FALSE(r.truncated);
}

TEST_CASE("a string id filter matches the row id, not an attribute") {
    SceneGraph g = tiny_graph();
    auto r = evaluate(parsed("nodes(id=\"key_1\")"), g);
    CHECK(row_ids(r) == std::vector<std::string>{"key_1"});
    // No node carries an integer id attribute, so an integer id filter
    // matches nothing instead of erroring.
    r = evaluate(parsed("nodes(id=7)"), g);
    CHECK(r.rows.empty());
}

TEST_CASE("filters compare kind strictly") {
    SceneGraph g = tiny_graph();
    CHECK(evaluate(parsed("nodes(is_locked=false)"), g).rows.size() == 1);
    // "false" as a string is not the boolean false.
    CHECK(evaluate(parsed("nodes(is_locked=\"false\")"), g).rows.empty());
    CHECK(evaluate(parsed("nodes(color=3)"), g).rows.empty());
}

TEST_CASE("edges() rows carry from/to/relationship and accept the rel alias") {
    SceneGraph g = tiny_graph();
    auto r = evaluate(parsed("edges(rel=\"connects\")"), g);
    CHECK(row_ids(r) == std::vector<std::string>{"door_1->room_A", "door_1->room_B"});
    auto same = evaluate(parsed("edges(relationship=\"connects\")"), g);
    CHECK(r.rows == same.rows);
    r = evaluate(parsed("edges(from=\"ball_1\")"), g);
    REQUIRE(r.rows.size() == 1);
    CHECK(r.rows[0].id == "ball_1->room_A");
    CHECK(std::get<std::string>(r.rows[0].attrs.at("to")) == "room_A");
}

TEST_CASE("neighbors() walks both edge directions, deduplicates, and can filter by via") {
    SceneGraph g = tiny_graph();
    auto r = evaluate(parsed("neighbors(\"room_A\")"), g);
    CHECK(row_ids(r) == std::vector<std::string>{"ball_1", "door_1", "key_1", "root_0"});
    r = evaluate(parsed("neighbors(\"room_A\", via=\"connects\")"), g);
    CHECK(row_ids(r) == std::vector<std::string>{"door_1"});

    SUBCASE("edges to missing nodes are skipped") {
        g.add_edge("room_A", "nowhere_9", "inside");
        r = evaluate(parsed("neighbors(\"room_A\", via=\"inside\")"), g);
        CHECK(row_ids(r) == std::vector<std::string>{"ball_1", "key_1", "root_0"});
    }
    SUBCASE("a self loop makes a node its own neighbor") {
        g.add_edge("room_A", "room_A", "connects");
        r = evaluate(parsed("neighbors(\"room_A\", via=\"connects\")"), g);
        CHECK(row_ids(r) == std::vector<std::string>{"door_1", "room_A"});
    }
    SUBCASE("duplicate edges yield one row") {
        g.add_edge("door_1", "room_A", "connects");
        r = evaluate(parsed("neighbors(\"room_A\", via=\"connects\")"), g);
        CHECK(row_ids(r) == std::vector<std::string>{"door_1"});
    }
    CHECK_THROWS_AS(evaluate(parsed("neighbors(\"nowhere_9\")"), g), NodeNotFoundError);
}

TEST_CASE("attrs() returns one row, optionally projected to existing fields") {
    SceneGraph g = tiny_graph();
    auto r = evaluate(parsed("attrs(\"door_1\")"), g);
    REQUIRE(r.rows.size() == 1);
    CHECK(r.rows[0].attrs.size() == 3);
    r = evaluate(parsed("attrs(\"door_1\", color, size)"), g);
    REQUIRE(r.rows.size() == 1);
    CHECK(r.rows[0].attrs.size() == 1);  // door_1 has no size attribute
    CHECK(r.rows[0].attrs.count("color") == 1);
    CHECK_THROWS_AS(evaluate(parsed("attrs(\"nowhere_9\")"), g), NodeNotFoundError);
}

TEST_CASE("count() yields a scalar and rejects double counting") {
    SceneGraph g = tiny_graph();
    auto r = evaluate(parsed("count(nodes(type=\"ball\"))"), g);
    REQUIRE(r.is_scalar());
    CHECK(*r.scalar == 2);
    CHECK(r.rows.empty());
    r = evaluate(parsed("nodes(type=\"ball\") | count()"), g);
    CHECK(*r.scalar == 2);
    CHECK_THROWS_AS(evaluate(parsed("count(count(nodes()))"), g), EvalError);
    CHECK_THROWS_AS(evaluate(parsed("count(nodes() | count())"), g), EvalError);
}

TEST_CASE("containment stages keep rows with an inside edge to the container") {
    SceneGraph g = tiny_graph();
    auto r = evaluate(parsed("nodes(type=\"ball\") | in_room(\"room_A\")"), g);
    CHECK(row_ids(r) == std::vector<std::string>{"ball_1"});
    // inside() is a synonym stage with identical behavior.
    auto same = evaluate(parsed("nodes(type=\"ball\") | inside(\"room_A\")"), g);
    CHECK(r.rows == same.rows);
    // connects edges do not count as containment.
    r = evaluate(parsed("nodes(type=\"door\") | in_room(\"room_A\")"), g);
    CHECK(r.rows.empty());
    CHECK_THROWS_AS(evaluate(parsed("nodes() | in_room(\"nowhere_9\")"), g), NodeNotFoundError);
}

TEST_CASE("stage errors follow evaluation order") {
    SceneGraph g = tiny_graph();
    // The scalar check fires before the container lookup, so a count piped
    // into in_room of a missing node reports the pipe misuse.
    CHECK_THROWS_AS(evaluate(parsed("nodes() | count() | in_room(\"nowhere_9\")"), g), EvalError);
    CHECK_THROWS_AS(evaluate(parsed("count(nodes()) | where(type=\"ball\")"), g), EvalError);
    // An empty row set still validates the container id.
    CHECK_THROWS_AS(evaluate(parsed("nodes(type=\"wall\") | in_room(\"nowhere_9\")"), g),
                    NodeNotFoundError);
}

TEST_CASE("where and project narrow rows") {
    SceneGraph g = tiny_graph();
    auto r = evaluate(parsed("neighbors(\"room_A\") | where(color=\"green\")"), g);
    CHECK(row_ids(r) == std::vector<std::string>{"ball_1", "key_1"});
    r = evaluate(parsed("nodes(type=\"ball\") | project(color)"), g);
    REQUIRE(r.rows.size() == 2);
    for (const Row& row : r.rows) {
        CHECK(row.attrs.size() == 1);
        CHECK(row.attrs.count("color") == 1);
    }
    // where() has no rel alias; edge rows carry "relationship" only.
    r = evaluate(parsed("edges() | where(rel=\"connects\")"), g);
    CHECK(r.rows.empty());
    r = evaluate(parsed("edges() | where(relationship=\"connects\")"), g);
    CHECK(r.rows.size() == 2);
}

TEST_CASE("results are capped at 512 rows with a truncation marker") {
    SceneGraph g;
    g.profile = "babyai";
    for (int i = 0; i < 600; ++i) {
        Node n;
        n.id = "ball_" + std::to_string(1000 + i);
        n.attrs["type"] = attr_str("ball");
        g.add_node(std::move(n));
    }
    auto r = evaluate(parsed("nodes(type=\"ball\")"), g);
    CHECK(r.rows.size() == kRowCap);
    CHECK(r.truncated);
    // The cap applies to the final result, not intermediates: counting
    // still sees all 600 rows.
    auto c = evaluate(parsed("count(nodes(type=\"ball\"))"), g);
    CHECK(*c.scalar == 600);
    c = evaluate(parsed("nodes(type=\"ball\") | count()"), g);
    CHECK(*c.scalar == 600);
}

TEST_CASE("rendering is deterministic and readable") {
    SceneGraph g = tiny_graph();
    auto r = evaluate(parsed("attrs(\"ball_1\")"), g);
    CHECK(render_result(r) == "ball_1 | color=green, type=ball");
    CHECK(render_result(evaluate(parsed("nodes(type=\"wall\")"), g)) == "(no results)");
    CHECK(render_result(evaluate(parsed("count(nodes(type=\"ball\"))"), g)) == "count = 2");
    Row bare{"x_1", {}};
    CHECK(render_row(bare) == "x_1 | (no attributes)");
}

TEST_CASE("parse errors carry position and expectations") {
    Schema schema = babyai_schema();
    try {
        parse("nodes(type=\"ball\" color=\"red\")", schema);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 1);
        CHECK(e.col > 1);
        CHECK_FALSE(e.expected.empty());
    }
    CHECK_THROWS_AS(parse("", schema), ParseError);
    CHECK_THROWS_AS(parse("nodes() | ", schema), ParseError);
    CHECK_THROWS_AS(parse("frobnicate()", schema), ParseError);
    CHECK_THROWS_AS(parse("where(type=\"ball\")", schema), ParseError);
    CHECK_THROWS_AS(parse("nodes(type=\"unterminated)", schema), ParseError);
}

TEST_CASE("unknown attributes get an edit distance suggestion") {
    Schema schema = babyai_schema();
    try {
        parse("nodes(colr=\"red\")", schema);
        FAIL("expected an unknown attribute error");
    } catch (const UnknownAttributeError& e) {
        CHECK(e.attribute == "colr");
        REQUIRE(e.suggestion.has_value());
        CHECK(*e.suggestion == "color");
    }
    try {
        parse("nodes(zzqq=\"red\")", schema);
        FAIL("expected an unknown attribute error");
    } catch (const UnknownAttributeError& e) {
        CHECK_FALSE(e.suggestion.has_value());
    }
}

TEST_CASE("canonical printing round trips through the parser") {
    Schema schema = babyai_schema();
    std::mt19937_64 rng(11);
    for (int i = 0; i < 400; ++i) {
        SceneGraph g = testgen::random_graph(rng);
        Pipe q = testgen::random_query(rng, g);
        std::string text = print_query(q);
        Pipe back = parse(text, schema);
        CHECK_MESSAGE(ast_equal(q, back), "round trip changed: ", text);
    }
}

TEST_CASE("random queries agree with the reference interpreter") {
    std::mt19937_64 rng(7);
    int error_cases = 0, scalar_cases = 0;
    for (int i = 0; i < 500; ++i) {
        SceneGraph g = testgen::random_graph(rng);
        Pipe q = testgen::random_query(rng, g);
        oracle::Outcome want = oracle::oracle_evaluate(q, g);
        oracle::Outcome got = oracle::production_evaluate(q, g);
        if (want.kind != oracle::Outcome::Kind::Ok) ++error_cases;
        if (want.scalar) ++scalar_cases;
        CHECK_MESSAGE(oracle::outcomes_equal(want, got), "query: ", print_query(q),
                      "\noracle: ", oracle::describe(want), "\nevaluator: ", oracle::describe(got));
    }
    // The generator must actually exercise the interesting regions.
    CHECK(error_cases > 50);
    CHECK(scalar_cases > 20);
}

TEST_CASE("the grammar text documents every construct") {
    std::string g = grammar_text();
    for (const char* word : {"nodes", "edges", "neighbors", "attrs", "count", "in_room",
                             "inside", "where", "project"})
        CHECK_MESSAGE(g.find(word) != std::string::npos, "missing: ", word);
}
