#include "encalc/graph.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

#include "encalc/calculus.hpp"

namespace encalc {

using nlohmann::ordered_json;

PlumbingGraph::PlumbingGraph(std::vector<Vertex> vertices,
                             const std::vector<std::pair<std::string, std::string>>& edge_ids,
                             const std::vector<std::pair<std::string, long long>>& arrow_ids)
    : vertices_(std::move(vertices)) {
    for (int i = 0; i < size(); ++i) {
        auto [it, fresh] = index_.emplace(vertices_[i].id, i);
        if (!fresh) throw DuplicateId("duplicate vertex id \"" + vertices_[i].id + "\"");
    }
    adj_.resize(size());
    arrows_at_.resize(size());
    auto look = [&](const std::string& id) {
        auto it = index_.find(id);
        if (it == index_.end())
            throw DanglingEdge("edge or arrow references unknown id \"" + id + "\"");
        return it->second;
    };
    for (const auto& [a, b] : edge_ids) {
        int i = look(a), j = look(b);
        edges_.emplace_back(i, j);
        adj_[i].push_back(j);
        adj_[j].push_back(i);
    }
    for (const auto& [id, mult] : arrow_ids) {
        int v = look(id);
        arrows_at_[v].push_back(static_cast<int>(arrows_.size()));
        arrows_.push_back({v, mult});
    }
}

int PlumbingGraph::index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw UnknownComponent("unknown component id \"" + id + "\"");
    return it->second;
}

bool PlumbingGraph::adjacent(int i, int j) const {
    return std::find(adj_[i].begin(), adj_[i].end(), j) != adj_[i].end();
}

PlumbingGraph parse_graph(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    try {
        if (!j.is_object() || !j.contains("vertices"))
            throw ParseError("graph file must be an object with a \"vertices\" array");
        std::vector<Vertex> vs;
        for (const auto& v : j.at("vertices"))
            vs.push_back({v.at("id").get<std::string>(), v.at("euler").get<long long>()});
        if (vs.empty()) throw ParseError("graph has no vertices");
        std::vector<std::pair<std::string, std::string>> es;
        if (j.contains("edges"))
            for (const auto& e : j.at("edges")) {
                if (!e.is_array() || e.size() != 2)
                    throw ParseError("each edge must be a two-element id array");
                es.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
            }
        std::vector<std::pair<std::string, long long>> as;
        if (j.contains("arrows"))
            for (const auto& a : j.at("arrows"))
                as.emplace_back(a.at("vertex").get<std::string>(),
                                a.value("multiplicity", 1LL));
        return PlumbingGraph(std::move(vs), es, as);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed graph field: ") + e.what());
    }
}

std::string serialize_graph(const PlumbingGraph& g) {
    ordered_json j;
    j["vertices"] = ordered_json::array();
    for (const auto& v : g.vertices())
        j["vertices"].push_back({{"id", v.id}, {"euler", v.euler}});
    j["edges"] = ordered_json::array();
    for (const auto& [a, b] : g.edges())
        j["edges"].push_back({g.vertex(a).id, g.vertex(b).id});
    j["arrows"] = ordered_json::array();
    for (const auto& a : g.arrows())
        j["arrows"].push_back(
            {{"vertex", g.vertex(a.vertex).id}, {"multiplicity", a.multiplicity}});
    return j.dump(2) + "\n";
}

linalg::IntMatrix intersection_matrix(const PlumbingGraph& g) {
    linalg::IntMatrix m(g.size());
    for (int i = 0; i < g.size(); ++i) m.at(i, i) = linalg::make_int(g.vertex(i).euler);
    for (const auto& [a, b] : g.edges()) {
        m.at(a, b) = 1;
        m.at(b, a) = 1;
    }
    return m;
}

ValidationReport validate(const PlumbingGraph& g) {
    ValidationReport r;
    const int n = g.size();
    if (n == 0) {
        r.add("nonempty", "graph has no vertices");
        return r;
    }

    // tree = connected and |E| = |V| - 1
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
    if (reached != n) {
        std::vector<std::string> missing;
        for (int i = 0; i < n; ++i)
            if (!seen[i]) missing.push_back(g.vertex(i).id);
        r.add("connected", "not connected", missing);
    }
    if (static_cast<int>(g.edges().size()) != n - 1)
        r.add("acyclic", "edge count " + std::to_string(g.edges().size()) +
                             " != vertex count - 1 (" + std::to_string(n - 1) + ")");
    for (int i = 0; i < n; ++i) {
        if (g.vertex(i).euler > -1)
            r.add("euler", "self-intersection must be <= -1", {g.vertex(i).id});
    }
    if (g.arrows().empty())
        r.add("arrows", "graph must carry at least one arrow (strict transform)");
    for (const auto& a : g.arrows())
        if (a.multiplicity < 1)
            r.add("arrow-multiplicity", "arrow multiplicity must be >= 1",
                  {g.vertex(a.vertex).id});

    if (r.ok) { // definiteness checks only make sense on a genuine tree
        auto m = intersection_matrix(g);
        if (!linalg::negative_definite(m))
            r.add("negative-definite", "intersection matrix is not negative definite");
        linalg::Int d = linalg::det(m);
        if (d != 1 && d != -1)
            r.add("unimodular", "|det| of the intersection matrix is " +
                                    linalg::Int(abs(d)).get_str() + ", expected 1");
    }
    return r;
}

bool is_chain_direction(const PlumbingGraph& g, int from, int start) {
    int prev = from, cur = start;
    while (true) {
        if (!g.arrows_at(cur).empty()) return false;
        int gv = g.gamma_valency(cur);
        if (gv == 1) return true;
        if (gv != 2) return false;
        int next = -1;
        for (int w : g.adj(cur))
            if (w != prev) next = w;
        if (next < 0) return false;
        prev = cur;
        cur = next;
    }
}

bool is_e_chain_direction(const PlumbingGraph& g, int from, int start) {
    int prev = from, cur = start;
    while (true) {
        int ev = g.e_valency(cur);
        if (ev == 1) return true;
        if (ev != 2) return false;
        int next = -1;
        for (int w : g.adj(cur))
            if (w != prev) next = w;
        prev = cur;
        cur = next;
    }
}

int chain_end(const PlumbingGraph& g, int from, int start) {
    int prev = from, cur = start;
    while (true) {
        int next = -1;
        for (int w : g.adj(cur))
            if (w != prev) next = w;
        if (next < 0) return cur;
        prev = cur;
        cur = next;
    }
}

std::vector<char> component_without(const PlumbingGraph& g, int removed, int start) {
    std::vector<char> seen(g.size(), 0);
    seen[start] = 1;
    std::vector<int> stack{start};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : g.adj(v))
            if (w != removed && !seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
    }
    return seen;
}

std::string export_dot(const PlumbingGraph& g, const DotAnnotations& ann) {
    std::ostringstream out;
    out << "digraph plumbing {\n";
    out << "  rankdir=LR;\n";
    out << "  node [shape=circle, fontsize=11];\n";
    for (int i = 0; i < g.size(); ++i) {
        const auto& v = g.vertex(i);
        out << "  \"" << v.id << "\" [label=\"" << v.id;
        if (ann.data)
            out << "(" << ann.data->N[i].get_str() << "," << ann.data->nu[i].get_str()
                << ")";
        out << "\"];\n";
    }
    for (size_t k = 0; k < g.arrows().size(); ++k) {
        const auto& a = g.arrows()[k];
        out << "  \"A" << k << "\" [shape=plaintext, label=\"(" << a.multiplicity
            << ",1)\"];\n";
    }
    for (const auto& [i, j] : g.edges()) {
        out << "  \"" << g.vertex(i).id << "\" -> \"" << g.vertex(j).id
            << "\" [dir=none";
        if (ann.decorations)
            out << ", taillabel=\"" << ann.decorations->decoration(i, j).get_str()
                << "\", headlabel=\"" << ann.decorations->decoration(j, i).get_str()
                << "\"";
        out << "];\n";
    }
    for (size_t k = 0; k < g.arrows().size(); ++k)
        out << "  \"" << g.vertex(g.arrows()[k].vertex).id << "\" -> \"A" << k
            << "\";\n";
    out << "}\n";
    return out.str();
}

} // namespace encalc
