#include "encalc/calculus.hpp"

#include <algorithm>
#include <optional>

namespace encalc {

using linalg::Int;
using linalg::Rat;

const Int& DecoratedGraph::decoration(int v, int toward) const {
    const auto& nb = graph.adj(v);
    for (size_t k = 0; k < nb.size(); ++k)
        if (nb[k] == toward) return dec[v][k];
    throw UnknownComponent("no edge " + graph.vertex(v).id + " -- " +
                           graph.vertex(toward).id);
}

const Int& DecoratedGraph::decoration(const std::string& v, const std::string& toward) const {
    return decoration(graph.index_of(v), graph.index_of(toward));
}

Int DecoratedGraph::product_at(int v) const {
    Int p = 1;
    for (const auto& x : dec[v]) p *= x;
    return p; // arrow edges contribute factor 1
}

namespace {

void require_tree(const PlumbingGraph& g) {
    const int n = g.size();
    if (n == 0 || static_cast<int>(g.edges().size()) != n - 1)
        throw AxiomViolation("decorations are defined on trees only");
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : g.adj(v))
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                stack.push_back(w);
            }
    }
    if (reached != n) throw AxiomViolation("decorations are defined on trees only");
}

/*
 * Directional subtree determinants. For adjacent (v, u), sub(v, u) is the
 * determinant of the intersection matrix of the subtree rooted at v away
 * from u. Expanding along v's row:
 *
 *   sub(v,u) = e_v * prod_c sub(c,v)
 *            - sum_c [ prod_{d in N(c)\{v}} sub(d,c) ] * prod_{c' != c} sub(c',v)
 *
 * with c, c' ranging over N(v)\{u}. Each value is literally the subgraph
 * determinant the decoration definition asks for, with no rounding and no
 * use of the edge determinant rule (which stays an independent check).
 */
class SubtreeDets {
  public:
    explicit SubtreeDets(const PlumbingGraph& g) : g_(g), memo_(g.size()) {
        for (int v = 0; v < g.size(); ++v)
            memo_[v].assign(g.adj(v).size(), std::nullopt);
    }

    // det of the component of Gamma \ {u} containing v (u adjacent to v).
    const Int& sub(int v, int u) {
        int slot = -1;
        const auto& nb = g_.adj(v);
        for (size_t k = 0; k < nb.size(); ++k)
            if (nb[k] == u) slot = static_cast<int>(k);
        auto& cell = memo_[v][slot];
        if (cell) return *cell;

        Int prod = 1;
        for (int c : nb)
            if (c != u) prod *= sub(c, v);
        Int val = linalg::make_int(g_.vertex(v).euler) * prod;
        for (int c : nb) {
            if (c == u) continue;
            Int inner = 1;
            for (int d : g_.adj(c))
                if (d != v) inner *= sub(d, c);
            Int rest = 1;
            for (int c2 : nb)
                if (c2 != u && c2 != c) rest *= sub(c2, v);
            val -= inner * rest;
        }
        cell = std::move(val);
        return *cell;
    }

  private:
    const PlumbingGraph& g_;
    std::vector<std::vector<std::optional<Int>>> memo_;
};

} // namespace

DecoratedGraph compute_decorations(const PlumbingGraph& g) {
    require_tree(g);
    DecoratedGraph d{g, {}};
    SubtreeDets dets(g);
    d.dec.resize(g.size());
    for (int v = 0; v < g.size(); ++v) {
        const auto& nb = g.adj(v);
        d.dec[v].reserve(nb.size());
        for (int u : nb) d.dec[v].push_back(abs(dets.sub(u, v)));
    }
    return d;
}

DecoratedGraph edge_decorations(const PlumbingGraph& g) {
    DecoratedGraph d = compute_decorations(g);
    const auto& gr = d.graph;

    for (int v = 0; v < gr.size(); ++v) {
        int big = 0;
        for (const auto& x : d.dec[v]) {
            if (x < 1)
                throw AxiomViolation("decoration " + x.get_str() + " at " +
                                     gr.vertex(v).id + " is not a positive integer");
            if (x > 1) ++big;
        }
        if (big > 2)
            throw AxiomViolation("more than two decorations exceed 1 at " +
                                 gr.vertex(v).id);
        for (size_t a = 0; a < d.dec[v].size(); ++a)
            for (size_t b = a + 1; b < d.dec[v].size(); ++b) {
                Int acc;
                mpz_gcd(acc.get_mpz_t(), d.dec[v][a].get_mpz_t(), d.dec[v][b].get_mpz_t());
                if (acc != 1)
                    throw AxiomViolation("decorations at " + gr.vertex(v).id +
                                         " are not pairwise coprime");
            }
    }

    // edge determinant rule: a*b - prod(others at i) * prod(others at j) = 1
    for (const auto& [i, j] : gr.edges()) {
        Int a = d.decoration(i, j);
        Int b = d.decoration(j, i);
        Int oi = 1, oj = 1;
        for (size_t k = 0; k < gr.adj(i).size(); ++k)
            if (gr.adj(i)[k] != j) oi *= d.dec[i][k];
        for (size_t k = 0; k < gr.adj(j).size(); ++k)
            if (gr.adj(j)[k] != i) oj *= d.dec[j][k];
        if (a * b - oi * oj != 1)
            throw AxiomViolation("edge determinant rule fails on " + gr.vertex(i).id +
                                 " -- " + gr.vertex(j).id);
    }
    return d;
}

ValidationReport check_minimality(const DecoratedGraph& d) {
    ValidationReport r;
    const auto& g = d.graph;
    for (int v = 0; v < g.size(); ++v)
        for (size_t k = 0; k < g.adj(v).size(); ++k) {
            int u = g.adj(v)[k];
            if (is_chain_direction(g, v, u) && d.dec[v][k] <= 1)
                r.add("minimality",
                      "chain toward " + g.vertex(u).id + " starts with decoration " +
                          d.dec[v][k].get_str() + " at " + g.vertex(v).id,
                      {g.vertex(v).id, g.vertex(u).id});
        }
    return r;
}

std::vector<int> valencies(const PlumbingGraph& g) {
    std::vector<int> delta(g.size());
    for (int v = 0; v < g.size(); ++v) delta[v] = g.e_valency(v);
    return delta;
}

Rat NumericalData::ratio(int vertex) const {
    Rat r(nu[vertex], N[vertex]);
    r.canonicalize();
    return r;
}

linalg::Rat lct(const NumericalData& nd) {
    bool have = false;
    Rat best;
    auto consider = [&](const Rat& r) {
        if (!have || r < best) {
            best = r;
            have = true;
        }
    };
    for (size_t i = 0; i < nd.N.size(); ++i) consider(nd.ratio(static_cast<int>(i)));
    for (long long m : nd.arrow_N) {
        Rat r(1, linalg::make_int(m));
        r.canonicalize();
        consider(r);
    }
    return best;
}

NumericalData numerical_data_linear(const PlumbingGraph& g) {
    const int n = g.size();
    auto A = intersection_matrix(g);

    std::vector<Int> bN(n, 0), bK(n, 0);
    for (const auto& a : g.arrows()) bN[a.vertex] -= linalg::make_int(a.multiplicity);
    for (int i = 0; i < n; ++i) bK[i] = linalg::make_int(-g.vertex(i).euler - 2);

    std::vector<Rat> xN, xK;
    try {
        xN = linalg::solve_exact(A, bN);
        xK = linalg::solve_exact(A, bK);
    } catch (const SingularMatrix&) {
        throw NonIntegralData("intersection matrix is singular");
    }

    NumericalData nd;
    nd.N.resize(n);
    nd.nu.resize(n);
    for (int i = 0; i < n; ++i) {
        if (xN[i].get_den() != 1 || xK[i].get_den() != 1)
            throw NonIntegralData("numerical data of " + g.vertex(i).id +
                                  " is not integral");
        nd.N[i] = xN[i].get_num();
        nd.nu[i] = xK[i].get_num() + 1;
        if (nd.N[i] <= 0 || nd.nu[i] <= 0)
            throw NonIntegralData("numerical data of " + g.vertex(i).id +
                                  " is not positive");
    }
    for (const auto& a : g.arrows()) nd.arrow_N.push_back(a.multiplicity);
    nd.c0 = lct(nd);
    return nd;
}

Int path_factor(const DecoratedGraph& d, const Component& i, const Component& j) {
    const auto& g = d.graph;
    auto anchor = [&](const Component& c) {
        if (c.is_arrow()) {
            if (c.arrow < 0 || c.arrow >= static_cast<int>(g.arrows().size()))
                throw UnknownComponent("arrow index out of range");
            return g.arrows()[c.arrow].vertex;
        }
        if (c.vertex < 0 || c.vertex >= g.size())
            throw UnknownComponent("vertex index out of range");
        return c.vertex;
    };
    if (i.is_arrow()) throw UnknownComponent("path_factor: i must be exceptional");
    const int from = anchor(i), to = anchor(j);

    // vertex path from..to in the tree
    std::vector<int> parent(g.size(), -2);
    parent[from] = -1;
    std::vector<int> stack{from};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        if (v == to) break;
        for (int w : g.adj(v))
            if (parent[w] == -2) {
                parent[w] = v;
                stack.push_back(w);
            }
    }
    std::vector<int> path;
    for (int v = to; v != -1; v = parent[v]) path.push_back(v);
    std::reverse(path.begin(), path.end());

    Int l = 1;
    for (size_t k = 0; k < path.size(); ++k) {
        int v = path[k];
        int back = k > 0 ? path[k - 1] : -1;
        int fwd = k + 1 < path.size() ? path[k + 1] : -1;
        const auto& nb = g.adj(v);
        for (size_t t = 0; t < nb.size(); ++t)
            if (nb[t] != back && nb[t] != fwd) l *= d.dec[v][t];
        // arrow edges decorate with 1 on the vertex side: no factor, and the
        // j-side arrow edge being on the path changes nothing either.
    }
    return l;
}

NumericalData numerical_data_diagram(const DecoratedGraph& d) {
    const auto& g = d.graph;
    const auto delta = valencies(g);
    NumericalData nd;
    nd.N.assign(g.size(), 0);
    nd.nu.assign(g.size(), 0);
    for (int i = 0; i < g.size(); ++i) {
        for (size_t a = 0; a < g.arrows().size(); ++a)
            nd.N[i] += path_factor(d, Component::of_vertex(i),
                                   Component::of_arrow(static_cast<int>(a))) *
                       linalg::make_int(g.arrows()[a].multiplicity);
        for (int j = 0; j < g.size(); ++j)
            nd.nu[i] += path_factor(d, Component::of_vertex(i), Component::of_vertex(j)) *
                        Int(2 - delta[j]);
    }
    for (const auto& a : g.arrows()) nd.arrow_N.push_back(a.multiplicity);
    nd.c0 = lct(nd);
    return nd;
}

std::string component_name(const PlumbingGraph& g, const Component& c) {
    if (c.is_arrow()) return "A" + std::to_string(c.arrow);
    return g.vertex(c.vertex).id;
}

namespace {

nlohmann::ordered_json json_int(const Int& x) {
    if (x.fits_slong_p()) return x.get_si();
    return x.get_str();
}

} // namespace

nlohmann::ordered_json analysis_json(const DecoratedGraph& d, const NumericalData& nd) {
    const auto& g = d.graph;
    nlohmann::ordered_json j;
    j["decorations"] = nlohmann::ordered_json::array();
    for (const auto& [a, b] : g.edges()) {
        j["decorations"].push_back({{"vertex", g.vertex(a).id},
                                    {"toward", g.vertex(b).id},
                                    {"value", json_int(d.decoration(a, b))}});
        j["decorations"].push_back({{"vertex", g.vertex(b).id},
                                    {"toward", g.vertex(a).id},
                                    {"value", json_int(d.decoration(b, a))}});
    }
    j["data"] = nlohmann::ordered_json::array();
    for (int i = 0; i < g.size(); ++i)
        j["data"].push_back({{"id", g.vertex(i).id},
                             {"N", json_int(nd.N[i])},
                             {"nu", json_int(nd.nu[i])}});
    const auto delta = valencies(g);
    j["valencies"] = nlohmann::ordered_json::array();
    for (int i = 0; i < g.size(); ++i)
        j["valencies"].push_back({{"id", g.vertex(i).id}, {"delta", delta[i]}});
    j["arrows"] = nlohmann::ordered_json::array();
    for (size_t k = 0; k < g.arrows().size(); ++k) {
        const auto& a = g.arrows()[k];
        j["arrows"].push_back({{"id", "A" + std::to_string(k)},
                               {"vertex", g.vertex(a.vertex).id},
                               {"multiplicity", a.multiplicity},
                               {"N", a.multiplicity},
                               {"nu", 1}});
    }
    j["lct"] = linalg::rat_str(nd.c0);
    return j;
}

} // namespace encalc
