#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <sstream>

#include "encalc/branches.hpp"
#include "encalc/calculus.hpp"
#include "encalc/graph.hpp"

using namespace encalc;

namespace {

std::string slurp(const std::string& name) {
    std::ifstream in(std::string(TEST_DATA_DIR) + "/" + name);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("parse the five-vertex example file") {
    auto g = parse_graph(slurp("example31.json"));
    CHECK(g.size() == 5);
    CHECK(g.edges().size() == 4);
    CHECK(g.arrows().size() == 1);
    CHECK(g.vertex(g.index_of("E5")).euler == -1);
    CHECK(g.adjacent(g.index_of("E3"), g.index_of("E5")));
    CHECK_FALSE(g.adjacent(g.index_of("E1"), g.index_of("E5")));
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_graph("{"), ParseError);
    CHECK_THROWS_AS(parse_graph("{\"vertices\":[]}"), ParseError);
    CHECK_THROWS_AS(parse_graph("[1,2]"), ParseError);
    CHECK_THROWS_AS(
        parse_graph(R"({"vertices":[{"id":"E1","euler":-1},{"id":"E1","euler":-2}]})"),
        DuplicateId);
    CHECK_THROWS_AS(
        parse_graph(R"({"vertices":[{"id":"E1","euler":-1}],"edges":[["E1","E9"]]})"),
        DanglingEdge);
    CHECK_THROWS_AS(
        parse_graph(R"({"vertices":[{"id":"E1","euler":-1}],"arrows":[{"vertex":"E9"}]})"),
        DanglingEdge);
    CHECK_THROWS_AS(parse_graph(R"({"vertices":[{"id":"E1"}]})"), ParseError);
}

TEST_CASE("serialize then parse is the identity") {
    for (const char* name : {"example31.json", "xsquared.json", "smooth.json"}) {
        auto g = parse_graph(slurp(name));
        auto g2 = parse_graph(serialize_graph(g));
        REQUIRE(g2.size() == g.size());
        for (int i = 0; i < g.size(); ++i) {
            CHECK(g2.vertex(i).id == g.vertex(i).id);
            CHECK(g2.vertex(i).euler == g.vertex(i).euler);
        }
        CHECK(g2.edges() == g.edges());
        REQUIRE(g2.arrows().size() == g.arrows().size());
        for (size_t k = 0; k < g.arrows().size(); ++k) {
            CHECK(g2.arrows()[k].vertex == g.arrows()[k].vertex);
            CHECK(g2.arrows()[k].multiplicity == g.arrows()[k].multiplicity);
        }
        // and the serialization itself is byte-stable
        CHECK(serialize_graph(g2) == serialize_graph(g));
    }
}

TEST_CASE("validate accepts the example graphs") {
    CHECK(validate(parse_graph(slurp("example31.json"))).ok);
    CHECK(validate(parse_graph(slurp("xsquared.json"))).ok);
    CHECK(validate(parse_graph(slurp("smooth.json"))).ok);
}

TEST_CASE("validate rejects broken graphs") {
    // two vertices, no edge
    auto g = parse_graph(
        R"({"vertices":[{"id":"A","euler":-1},{"id":"B","euler":-1}],
            "arrows":[{"vertex":"A","multiplicity":1}]})");
    auto rep = validate(g);
    CHECK_FALSE(rep.ok);
    bool connected_rule = false;
    for (const auto& v : rep.violations) connected_rule |= v.rule == "connected";
    CHECK(connected_rule);

    // euler 0
    auto g2 = parse_graph(
        R"({"vertices":[{"id":"A","euler":0}],"arrows":[{"vertex":"A","multiplicity":1}]})");
    CHECK_FALSE(validate(g2).ok);

    // no arrows
    auto g3 = parse_graph(R"({"vertices":[{"id":"A","euler":-1}]})");
    CHECK_FALSE(validate(g3).ok);

    // |det| != 1
    auto g4 = parse_graph(
        R"({"vertices":[{"id":"A","euler":-2}],"arrows":[{"vertex":"A","multiplicity":1}]})");
    auto rep4 = validate(g4);
    CHECK_FALSE(rep4.ok);
    bool unimod = false;
    for (const auto& v : rep4.violations) unimod |= v.rule == "unimodular";
    CHECK(unimod);

    // negative definiteness: a cycle is caught earlier, so use a chain with
    // positive-definite direction via euler -1,-1 (det = 0)
    auto g5 = parse_graph(
        R"({"vertices":[{"id":"A","euler":-1},{"id":"B","euler":-1}],
            "edges":[["A","B"]],"arrows":[{"vertex":"A","multiplicity":1}]})");
    CHECK_FALSE(validate(g5).ok);
}

TEST_CASE("intersection matrix of the examples") {
    auto g = parse_graph(slurp("xsquared.json"));
    auto m = intersection_matrix(g);
    CHECK(m.at(0, 0) == -2);
    CHECK(m.at(1, 1) == -1);
    CHECK(m.at(0, 1) == 1);
    CHECK(m.at(1, 0) == 1);
    CHECK(linalg::det(m) == 1);

    auto g31 = parse_graph(slurp("example31.json"));
    auto d = linalg::det(intersection_matrix(g31));
    CHECK((d == 1 || d == -1));

    auto gs = parse_graph(slurp("smooth.json"));
    CHECK(intersection_matrix(gs).at(0, 0) == -1);
}

TEST_CASE("trees: vertex count = edge count + 1 on builder output") {
    auto g = resolve_branches({BranchSpec{4, {6, 7}, 1}}, {});
    CHECK(static_cast<int>(g.edges().size()) == g.size() - 1);
}

TEST_CASE("DOT export carries annotations") {
    auto g = parse_graph(slurp("example31.json"));
    auto dec = edge_decorations(g);
    auto nd = numerical_data_linear(g);
    auto dot = export_dot(g, {&dec, &nd});
    CHECK(dot.find("E5(26,11)") != std::string::npos);
    CHECK(dot.find("E3(12,5)") != std::string::npos);
    CHECK(dot.find("taillabel") != std::string::npos);

    auto bare = export_dot(g);
    CHECK(bare.find("E5(") == std::string::npos);
    CHECK(bare.find("\"E5\"") != std::string::npos);

    auto gx = parse_graph(slurp("xsquared.json"));
    auto decx = edge_decorations(gx);
    auto ndx = numerical_data_linear(gx);
    auto dotx = export_dot(gx, {&decx, &ndx});
    CHECK(dotx.find("(2,1)") != std::string::npos); // the multiplicity-2 arrow node
}

TEST_CASE("chain helpers") {
    auto g = parse_graph(slurp("example31.json"));
    int e1 = g.index_of("E1"), e3 = g.index_of("E3"), e4 = g.index_of("E4"),
        e5 = g.index_of("E5");
    CHECK(is_chain_direction(g, e3, e1));
    CHECK(is_chain_direction(g, e5, e4));
    CHECK_FALSE(is_chain_direction(g, e3, e5)); // contains the arrow and a star
    CHECK_FALSE(is_chain_direction(g, e4, e5));
    CHECK(chain_end(g, e3, e1) == e1);
    CHECK(is_e_chain_direction(g, e3, e5)); // arrows ignored: E5-E4 is a chain
}
