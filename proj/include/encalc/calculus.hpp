#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "encalc/graph.hpp"
#include "encalc/linalg.hpp"

namespace encalc {

// One positive decoration per (vertex, incident exceptional edge), stored in
// adjacency order. Arrow-side decorations are identically 1 and implicit.
struct DecoratedGraph {
    PlumbingGraph graph;
    std::vector<std::vector<linalg::Int>> dec; // dec[v][k] along graph.adj(v)[k]

    // Decoration at v along the edge toward neighbour `toward`.
    const linalg::Int& decoration(int v, int toward) const;
    const linalg::Int& decoration(const std::string& v, const std::string& toward) const;
    // Product of every decoration at v (arrow sides contribute 1).
    linalg::Int product_at(int v) const;
};

// Decorations without the axiom checks; used on intermediate (contracted)
// graphs. Requires a connected tree.
DecoratedGraph compute_decorations(const PlumbingGraph& g);

// Decoration of (v, e toward w) = |det| of the intersection matrix of the
// connected component of Gamma \ {v} containing w. Verifies the decoration
// axioms (positivity, pairwise coprimality, at most two > 1 per vertex, edge
// determinant rule) and throws AxiomViolation when the input is not a
// resolution graph.
DecoratedGraph edge_decorations(const PlumbingGraph& g);

// Minimality rule: for every directed edge (u -> v) whose far component is a
// pure chain ending in a Gamma-valency-1 vertex, dec(u -> v) > 1.
ValidationReport check_minimality(const DecoratedGraph& d);

// delta_i: number of exceptional neighbours (arrows excluded).
std::vector<int> valencies(const PlumbingGraph& g);

struct NumericalData {
    std::vector<linalg::Int> N;  // multiplicity of E_i in div(f o pi)
    std::vector<linalg::Int> nu; // nu_i - 1 = multiplicity in K_pi
    std::vector<long long> arrow_N; // per arrow: N = multiplicity, nu = 1
    linalg::Rat c0;

    linalg::Rat ratio(int vertex) const; // nu_i / N_i
};

// min of nu/N over all components above the origin (arrows included).
linalg::Rat lct(const NumericalData& nd);

// N solves A*N = -(arrow incidence); (nu - 1) solves A*(nu-1)_i = -euler_i - 2.
// Throws NonIntegralData if any component is non-integral or <= 0.
NumericalData numerical_data_linear(const PlumbingGraph& g);

// A component: an exceptional vertex or an arrow (by declaration index).
struct Component {
    int vertex = -1;
    int arrow = -1;
    static Component of_vertex(int v) { return {v, -1}; }
    static Component of_arrow(int a) { return {-1, a}; }
    bool is_arrow() const { return arrow >= 0; }
};

// l_ij: product of the decorations adjacent to, but not on, the path from
// component i to component j. With the empty path (i = j) every incident
// edge is off-path, so l_ii is the product of all decorations at E_i.
linalg::Int path_factor(const DecoratedGraph& d, const Component& i, const Component& j);

// Diagram calculus: N_i = sum over arrows a of l_ia * N_a,
// nu_i = sum over exceptional j of l_ij * (2 - delta_j).
NumericalData numerical_data_diagram(const DecoratedGraph& d);

// Display name: vertex id, or "Ak" for the k-th arrow.
std::string component_name(const PlumbingGraph& g, const Component& c);

// {"decorations":[{"vertex":"E5","toward":"E3","value":13},...],
//  "data":[{"id":"E5","N":26,"nu":11},...], "valencies":[...], "arrows":[...],
//  "lct":"5/12"} — rationals as "p/q" strings, byte-stable field order.
nlohmann::ordered_json analysis_json(const DecoratedGraph& d, const NumericalData& nd);

} // namespace encalc
