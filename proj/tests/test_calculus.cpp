#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <map>
#include <sstream>

#include "encalc/branches.hpp"
#include "encalc/calculus.hpp"
#include "encalc/fuzz.hpp"
#include "encalc/graph.hpp"

using namespace encalc;
using linalg::Int;
using linalg::Rat;

namespace {

std::string slurp(const std::string& name) {
    std::ifstream in(std::string(TEST_DATA_DIR) + "/" + name);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

PlumbingGraph example31() { return parse_graph(slurp("example31.json")); }
PlumbingGraph xsquared() { return parse_graph(slurp("xsquared.json")); }
PlumbingGraph smooth() { return parse_graph(slurp("smooth.json")); }

Rat rat(long num, long den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Independent recomputation of one decoration: extract the directional
// subgraph, permute its vertices, and run the generic Bareiss determinant.
Int decoration_by_submatrix(const PlumbingGraph& g, int v, int toward, bool reversed) {
    auto mark = component_without(g, v, toward);
    std::vector<int> keep;
    for (int i = 0; i < g.size(); ++i)
        if (mark[i]) keep.push_back(i);
    if (reversed) std::reverse(keep.begin(), keep.end());
    linalg::IntMatrix m(static_cast<int>(keep.size()));
    for (size_t a = 0; a < keep.size(); ++a) {
        m.at(a, a) = linalg::make_int(g.vertex(keep[a]).euler);
        for (size_t b = 0; b < keep.size(); ++b)
            if (a != b && g.adjacent(keep[a], keep[b])) m.at(a, b) = 1;
    }
    return abs(linalg::det(m));
}

} // namespace

TEST_CASE("decorations of the five-vertex example match the figure") {
    auto g = example31();
    auto d = edge_decorations(g);
    std::map<std::pair<std::string, std::string>, long> want = {
        {{"E5", "E3"}, 13}, {{"E3", "E5"}, 1}, {{"E5", "E4"}, 2}, {{"E4", "E5"}, 7},
        {{"E3", "E1"}, 3},  {{"E1", "E3"}, 1}, {{"E3", "E2"}, 2}, {{"E2", "E3"}, 2}};
    for (const auto& [key, val] : want) CHECK(d.decoration(key.first, key.second) == val);
}

TEST_CASE("decorations of x^2(y^2-x^4) and the smooth germ") {
    auto d = edge_decorations(xsquared());
    CHECK(d.decoration("E1", "E2") == 1);
    CHECK(d.decoration("E2", "E1") == 2);

    auto ds = edge_decorations(smooth());
    CHECK(ds.dec[0].empty()); // no edges; arrow sides are implicit 1s
}

TEST_CASE("decoration equals the directional subdeterminant, any vertex order") {
    for (const char* name : {"example31.json", "xsquared.json"}) {
        auto g = parse_graph(slurp(name));
        auto d = edge_decorations(g);
        for (int v = 0; v < g.size(); ++v)
            for (size_t k = 0; k < g.adj(v).size(); ++k) {
                int u = g.adj(v)[k];
                CHECK(d.dec[v][k] == decoration_by_submatrix(g, v, u, false));
                CHECK(d.dec[v][k] == decoration_by_submatrix(g, v, u, true));
            }
    }
}

TEST_CASE("edge_decorations rejects non-resolution input") {
    // -2 chain of three vertices: decorations 2 and 2 at the middle vertex
    auto g = parse_graph(
        R"({"vertices":[{"id":"A","euler":-2},{"id":"B","euler":-2},{"id":"C","euler":-2}],
            "edges":[["A","B"],["B","C"]],"arrows":[{"vertex":"B","multiplicity":1}]})");
    CHECK_THROWS_AS(edge_decorations(g), AxiomViolation);
}

TEST_CASE("valencies") {
    auto g = example31();
    auto delta = valencies(g);
    CHECK(delta[g.index_of("E1")] == 1);
    CHECK(delta[g.index_of("E2")] == 1);
    CHECK(delta[g.index_of("E3")] == 3);
    CHECK(delta[g.index_of("E4")] == 1);
    CHECK(delta[g.index_of("E5")] == 2);

    CHECK(valencies(smooth())[0] == 0);
    auto dx = valencies(xsquared());
    CHECK(dx[0] == 1);
    CHECK(dx[1] == 1);

    int total = 0;
    for (int x : delta) total += x;
    CHECK(total == 2 * static_cast<int>(g.edges().size()));
}

TEST_CASE("numerical data (linear route) on the paper examples") {
    auto g = example31();
    auto nd = numerical_data_linear(g);
    long wantN[5] = {4, 6, 12, 13, 26};
    long wantNu[5] = {2, 3, 5, 6, 11};
    for (int i = 0; i < 5; ++i) {
        CHECK(nd.N[g.index_of("E" + std::to_string(i + 1))] == wantN[i]);
        CHECK(nd.nu[g.index_of("E" + std::to_string(i + 1))] == wantNu[i]);
    }
    CHECK(nd.c0 == rat(5, 12));
    CHECK(linalg::rat_str(nd.c0) == "5/12");

    auto ndx = numerical_data_linear(xsquared());
    CHECK(ndx.N[0] == 4);
    CHECK(ndx.N[1] == 6);
    CHECK(ndx.nu[0] == 2);
    CHECK(ndx.nu[1] == 3);
    CHECK(ndx.c0 == rat(1, 2)); // the multiplicity-2 arrow attains it too

    auto nds = numerical_data_linear(smooth());
    CHECK(nds.N[0] == 1);
    CHECK(nds.nu[0] == 2);
    CHECK(nds.c0 == 1);
}

TEST_CASE("numerical_data_linear flags non-integral systems") {
    auto g = parse_graph(
        R"({"vertices":[{"id":"A","euler":-2}],"arrows":[{"vertex":"A","multiplicity":1}]})");
    CHECK_THROWS_AS(numerical_data_linear(g), NonIntegralData);
}

TEST_CASE("path factors of the five-vertex example") {
    auto g = example31();
    auto d = edge_decorations(g);
    auto V = [&](const char* id) { return Component::of_vertex(g.index_of(id)); };

    CHECK(path_factor(d, V("E5"), Component::of_arrow(0)) == 26); // 13 * 2
    CHECK(path_factor(d, V("E3"), V("E4")) == 6);                 // 3 * 2 * arrow 1
    CHECK(path_factor(d, V("E5"), V("E5")) == 26);                // all decorations at E5
    CHECK(path_factor(d, V("E5"), V("E3")) == 12);
    CHECK(path_factor(d, V("E5"), V("E1")) == 4);
    CHECK(path_factor(d, V("E5"), V("E2")) == 6);
    CHECK(path_factor(d, V("E5"), V("E4")) == 13);

    auto ds = edge_decorations(smooth());
    CHECK(path_factor(ds, Component::of_vertex(0), Component::of_vertex(0)) == 1);

    CHECK_THROWS_AS(path_factor(d, Component::of_arrow(0), V("E1")), UnknownComponent);
    CHECK_THROWS_AS(path_factor(d, V("E1"), Component::of_arrow(7)), UnknownComponent);
}

TEST_CASE("diagram route reproduces the figure data") {
    auto g = example31();
    auto d = edge_decorations(g);
    auto nd = numerical_data_diagram(d);
    CHECK(nd.N[g.index_of("E1")] == 4);
    CHECK(nd.N[g.index_of("E5")] == 26);
    CHECK(nd.nu[g.index_of("E5")] == 11); // 0 - 12 + 4 + 6 + 13
    CHECK(nd.nu[g.index_of("E3")] == 5);
    CHECK(nd.c0 == rat(5, 12));

    auto dx = edge_decorations(xsquared());
    auto ndx = numerical_data_diagram(dx);
    CHECK(ndx.N[1] == 6); // 1*2 + 2*2 over the three arrows
    CHECK(ndx.nu[1] == 3);
}

TEST_CASE("dual-oracle equality on the fixed corpus") {
    for (const auto& [bs, cs] : fixed_corpus()) {
        auto g = resolve_branches(bs, cs);
        auto lin = numerical_data_linear(g);
        auto dia = numerical_data_diagram(edge_decorations(g));
        CHECK(lin.N == dia.N);
        CHECK(lin.nu == dia.nu);
        CHECK(lin.c0 == dia.c0);
    }
}

TEST_CASE("minimality check") {
    CHECK(check_minimality(edge_decorations(example31())).ok);
    CHECK(check_minimality(edge_decorations(xsquared())).ok);
    CHECK(check_minimality(edge_decorations(smooth())).ok);

    // -1 vertex pendant on a -2 vertex carrying the arrow: contractible tail
    auto bad = parse_graph(
        R"({"vertices":[{"id":"A","euler":-2},{"id":"B","euler":-1}],
            "edges":[["A","B"]],"arrows":[{"vertex":"A","multiplicity":1}]})");
    CHECK(validate(bad).ok); // valid but not minimal
    auto rep = check_minimality(edge_decorations(bad));
    CHECK_FALSE(rep.ok);
    REQUIRE(rep.violations.size() == 1);
    CHECK(rep.violations[0].ids == std::vector<std::string>{"A", "B"});
}

TEST_CASE("lct over all components") {
    auto nd = numerical_data_linear(example31());
    CHECK(lct(nd) == rat(5, 12));
    auto ndx = numerical_data_linear(xsquared());
    CHECK(lct(ndx) == rat(1, 2));
    auto nds = numerical_data_linear(smooth());
    CHECK(lct(nds) == 1);
}

TEST_CASE("analysis JSON carries the documented fields") {
    auto g = example31();
    auto d = edge_decorations(g);
    auto nd = numerical_data_linear(g);
    auto j = analysis_json(d, nd);
    CHECK(j["lct"] == "5/12");
    bool saw = false;
    for (const auto& e : j["decorations"])
        if (e["vertex"] == "E5" && e["toward"] == "E3") {
            CHECK(e["value"] == 13);
            saw = true;
        }
    CHECK(saw);
    bool data_ok = false;
    for (const auto& e : j["data"])
        if (e["id"] == "E5") data_ok = e["N"] == 26 && e["nu"] == 11;
    CHECK(data_ok);
    // byte stability
    CHECK(j.dump(2) == analysis_json(d, nd).dump(2));
}
