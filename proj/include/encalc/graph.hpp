#pragma once

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "encalc/linalg.hpp"

namespace encalc {

struct Vertex {
    std::string id;
    long long euler = -1; // self-intersection E^2
};

struct Arrow {
    int vertex = -1;           // index of the exceptional component it meets
    long long multiplicity = 1; // N of the strict-transform branch
};

// Dual resolution graph: a tree of exceptional vertices plus
// multiplicity-weighted arrowheads. Immutable after construction; vertex
// order (= declaration order) fixes the row/column order of the
// intersection matrix and every serialization.
class PlumbingGraph {
  public:
    PlumbingGraph(std::vector<Vertex> vertices,
                  const std::vector<std::pair<std::string, std::string>>& edge_ids,
                  const std::vector<std::pair<std::string, long long>>& arrow_ids);

    int size() const { return static_cast<int>(vertices_.size()); }
    const Vertex& vertex(int i) const { return vertices_[i]; }
    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    const std::vector<int>& adj(int i) const { return adj_[i]; }
    const std::vector<int>& arrows_at(int i) const { return arrows_at_[i]; }

    // Throws UnknownComponent.
    int index_of(const std::string& id) const;
    bool has_vertex(const std::string& id) const { return index_.count(id) > 0; }

    // Valency in Gamma^e (exceptional neighbours only).
    int e_valency(int i) const { return static_cast<int>(adj_[i].size()); }
    // Valency in Gamma (arrows included).
    int gamma_valency(int i) const {
        return static_cast<int>(adj_[i].size() + arrows_at_[i].size());
    }

    bool adjacent(int i, int j) const;

  private:
    std::vector<Vertex> vertices_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<Arrow> arrows_;
    std::vector<std::vector<int>> adj_;
    std::vector<std::vector<int>> arrows_at_;
    std::unordered_map<std::string, int> index_;
};

// JSON graph format, documented in README.md:
// {"vertices":[{"id":"E1","euler":-3},...],
//  "edges":[["E1","E3"],...],
//  "arrows":[{"vertex":"E5","multiplicity":1},...]}
// Structural checks only; semantic invariants are validate()'s job.
// Throws ParseError, DuplicateId, DanglingEdge.
PlumbingGraph parse_graph(const std::string& text);
std::string serialize_graph(const PlumbingGraph& g);

struct ValidationIssue {
    std::string rule;
    std::string detail;
    std::vector<std::string> ids;
};

struct ValidationReport {
    bool ok = true;
    std::vector<ValidationIssue> violations;
    void add(std::string rule, std::string detail, std::vector<std::string> ids = {}) {
        ok = false;
        violations.push_back({std::move(rule), std::move(detail), std::move(ids)});
    }
};

// Connectivity, acyclicity, euler <= -1, arrow sanity, negative definiteness
// and |det| = 1 of the intersection matrix. Reports, never throws.
ValidationReport validate(const PlumbingGraph& g);

// Symmetric; diagonal = euler numbers; off-diagonal 1 iff edge; row order =
// vertex declaration order.
linalg::IntMatrix intersection_matrix(const PlumbingGraph& g);

struct DecoratedGraph;  // calculus.hpp
struct NumericalData;   // calculus.hpp

struct DotAnnotations {
    const DecoratedGraph* decorations = nullptr;
    const NumericalData* data = nullptr;
};

// DOT export. Vertices are labelled "Ei(N,nu)" when data is supplied, arrows
// become plaintext nodes labelled "(N,1)", and annotated edges carry the two
// near-vertex decorations as tail/head labels.
std::string export_dot(const PlumbingGraph& g, const DotAnnotations& ann = {});

// True iff the component of Gamma \ {from} containing start is a pure chain
// ending in a Gamma-valency-1 vertex; any arrow in it disqualifies.
bool is_chain_direction(const PlumbingGraph& g, int from, int start);
// Same, in Gamma^e (arrows ignored).
bool is_e_chain_direction(const PlumbingGraph& g, int from, int start);
// End vertex of a chain direction (pre: is_chain_direction holds).
int chain_end(const PlumbingGraph& g, int from, int start);

// Marks the vertices of the connected component of Gamma \ {removed}
// containing start (start != removed).
std::vector<char> component_without(const PlumbingGraph& g, int removed, int start);

} // namespace encalc
