#include "encalc/theorems.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace encalc {

using linalg::Int;
using linalg::Rat;

const char* nu_case_name(NuCase c) {
    switch (c) {
        case NuCase::StrictMinus: return "StrictMinus";
        case NuCase::EqualPlus: return "EqualPlus";
        case NuCase::EndMinus: return "EndMinus";
        case NuCase::EndPlus: return "EndPlus";
    }
    return "?";
}

namespace {

bool divides(long long dd, const Int& n) {
    return mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(dd)) != 0;
}

Rat make_rat(const Int& num, const Int& den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

Rat inv(long long dd) { return make_rat(1, linalg::make_int(dd)); }

Rat comp_ratio(const PlumbingGraph& g, const NumericalData& nd, const Component& c) {
    if (c.is_arrow()) return make_rat(1, linalg::make_int(g.arrows()[c.arrow].multiplicity));
    return nd.ratio(c.vertex);
}

// State of the graph being contracted, keyed by original vertex index.
struct ContractionState {
    std::vector<char> alive;
    std::vector<long long> euler;
    std::vector<std::vector<int>> adj;
    std::vector<int> arrow_vertex;

    explicit ContractionState(const PlumbingGraph& g)
        : alive(g.size(), 1), euler(g.size()), adj(g.size()) {
        for (int i = 0; i < g.size(); ++i) {
            euler[i] = g.vertex(i).euler;
            adj[i] = g.adj(i);
        }
        for (const auto& a : g.arrows()) arrow_vertex.push_back(a.vertex);
    }

    std::vector<int> tail_from(int avoid, int start) const {
        std::vector<char> seen(alive.size(), 0);
        seen[start] = 1;
        std::vector<int> stack{start}, out{start};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : adj[v])
                if (w != avoid && !seen[w]) {
                    seen[w] = 1;
                    out.push_back(w);
                    stack.push_back(w);
                }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    // Iterated blow-down of -1 vertices with at most 2 neighbours.
    void blow_down(std::vector<int> tail, const PlumbingGraph& orig, bool reverse) {
        std::set<int> remaining(tail.begin(), tail.end());
        while (!remaining.empty()) {
            int w = -1;
            auto try_pick = [&](int cand) {
                if (euler[cand] == -1 && adj[cand].size() <= 2) w = cand;
            };
            if (!reverse) {
                for (int cand : remaining) {
                    try_pick(cand);
                    if (w >= 0) break;
                }
            } else {
                for (auto it = remaining.rbegin(); it != remaining.rend(); ++it) {
                    try_pick(*it);
                    if (w >= 0) break;
                }
            }
            if (w < 0)
                throw StuckContraction(
                    "unimodular tail has no contractible -1 vertex (near " +
                    orig.vertex(*remaining.begin()).id + ")");

            std::vector<int> nbrs = adj[w];
            for (int n : nbrs)
                adj[n].erase(std::remove(adj[n].begin(), adj[n].end(), w), adj[n].end());
            adj[w].clear();
            if (nbrs.size() == 2) {
                adj[nbrs[0]].push_back(nbrs[1]);
                adj[nbrs[1]].push_back(nbrs[0]);
                euler[nbrs[0]] += 1;
                euler[nbrs[1]] += 1;
            } else if (nbrs.size() == 1) {
                euler[nbrs[0]] += 1;
            }
            int target = *std::min_element(nbrs.begin(), nbrs.end());
            for (auto& av : arrow_vertex)
                if (av == w) av = target;
            alive[w] = 0;
            remaining.erase(w);
        }
    }

    PlumbingGraph build(const PlumbingGraph& orig, std::vector<int>* to_orig) const {
        std::vector<Vertex> vs;
        if (to_orig) to_orig->clear();
        for (int i = 0; i < static_cast<int>(alive.size()); ++i)
            if (alive[i]) {
                vs.push_back({orig.vertex(i).id, euler[i]});
                if (to_orig) to_orig->push_back(i);
            }
        std::vector<std::pair<std::string, std::string>> es;
        for (int i = 0; i < static_cast<int>(alive.size()); ++i) {
            if (!alive[i]) continue;
            for (int j : adj[i])
                if (j > i) es.emplace_back(orig.vertex(i).id, orig.vertex(j).id);
        }
        std::vector<std::pair<std::string, long long>> as;
        for (size_t k = 0; k < arrow_vertex.size(); ++k)
            as.emplace_back(orig.vertex(arrow_vertex[k]).id,
                            orig.arrows()[k].multiplicity);
        return PlumbingGraph(std::move(vs), es, as);
    }
};

} // namespace

PlumbingGraph contract_unimodular_tails(const DecoratedGraph& d, int keep,
                                        bool reverse_order) {
    const auto& orig = d.graph;
    if (keep < 0 || keep >= orig.size())
        throw UnknownComponent("contract: keep vertex out of range");
    ContractionState st(orig);

    while (true) {
        std::vector<int> to_orig;
        PlumbingGraph g = st.build(orig, &to_orig);
        DecoratedGraph dg = compute_decorations(g);
        int keep_cur = g.index_of(orig.vertex(keep).id);

        std::vector<std::pair<int, int>> eligible; // original indices (v, u)
        for (int v = 0; v < g.size(); ++v)
            for (size_t k = 0; k < g.adj(v).size(); ++k) {
                if (dg.dec[v][k] != 1) continue;
                int u = g.adj(v)[k];
                auto comp = component_without(g, v, u);
                if (!comp[keep_cur]) eligible.emplace_back(to_orig[v], to_orig[u]);
            }
        if (eligible.empty()) return g;
        if (reverse_order) std::reverse(eligible.begin(), eligible.end());

        for (auto [v, u] : eligible) {
            if (!st.alive[v] || !st.alive[u]) continue;
            auto tail = st.tail_from(v, u);
            if (std::binary_search(tail.begin(), tail.end(), keep)) continue;
            st.blow_down(std::move(tail), orig, reverse_order);
        }
    }
}

namespace {

int count_big(const DecoratedGraph& d, int v) {
    int n = 0;
    for (const auto& x : d.dec[v])
        if (x > 1) ++n;
    return n;
}

// A figure star inside the direction (v -> u): Gamma^e-valency >= 3, back
// decoration 1 toward v, and two decorations > 1 pointing away.
bool direction_has_star(const DecoratedGraph& d, int v, int u) {
    const auto& g = d.graph;
    std::vector<int> parent(g.size(), -2);
    parent[u] = v;
    std::vector<int> stack{u};
    while (!stack.empty()) {
        int w = stack.back();
        stack.pop_back();
        if (g.e_valency(w) >= 3 && d.decoration(w, parent[w]) == 1 && count_big(d, w) >= 2)
            return true;
        for (int x : g.adj(w))
            if (x != parent[w] && parent[x] == -2) {
                parent[x] = w;
                stack.push_back(x);
            }
    }
    return false;
}

std::optional<ChainStarForm> detect_chain_star(const DecoratedGraph& d, int v, int u) {
    const auto& g = d.graph;
    ChainStarForm f;
    f.a = d.decoration(v, u);
    f.b = 1;
    std::vector<int> others;
    for (int w : g.adj(v))
        if (w != u) others.push_back(w);
    if (others.size() > 1) return std::nullopt;
    if (others.size() == 1) {
        if (!is_e_chain_direction(g, v, others[0])) return std::nullopt;
        f.b = d.decoration(v, others[0]);
    }

    int prev = v, cur = u;
    while (true) {
        int ev = g.e_valency(cur);
        if (ev >= 3) {
            if (ev > 3) return std::nullopt;
            if (d.decoration(cur, prev) != 1) return std::nullopt;
            int n1 = -1, n2 = -1;
            for (int w : g.adj(cur))
                if (w != prev) (n1 < 0 ? n1 : n2) = w;
            Int d1 = d.decoration(cur, n1), d2 = d.decoration(cur, n2);
            if (d1 <= 1 || d2 <= 1) return std::nullopt;
            bool c1 = is_e_chain_direction(g, cur, n1);
            bool c2 = is_e_chain_direction(g, cur, n2);
            if (c1 && c2) { // terminal star; (a_r, b_r) enter symmetrically
                f.stars.emplace_back(d1, d2);
                return f;
            }
            if (c1) {
                f.stars.emplace_back(d2, d1);
                prev = cur;
                cur = n2;
            } else if (c2) {
                f.stars.emplace_back(d1, d2);
                prev = cur;
                cur = n1;
            } else {
                return std::nullopt;
            }
        } else if (ev == 2) {
            int next = -1;
            for (int w : g.adj(cur))
                if (w != prev) next = w;
            prev = cur;
            cur = next;
        } else {
            return std::nullopt; // fell off the end without a terminal star
        }
    }
}

} // namespace

Int chain_star_nu(const ChainStarForm& f) {
    Int s = 0, pref = 1;
    for (size_t i = 0; i < f.stars.size(); ++i) {
        const auto& [ai, bi] = f.stars[i];
        Int term = (i + 1 == f.stars.size()) ? Int(ai + bi - ai * bi) : Int(ai - ai * bi);
        s += term * pref;
        pref *= bi;
    }
    return f.a + f.b * s;
}

NuAnalysis analyze_nu(const DecoratedGraph& d, const NumericalData& nd, int v) {
    const bool end_case = d.graph.e_valency(v) <= 1;

    NuAnalysis an{NuBound{}, contract_unimodular_tails(d, v), 0, std::nullopt};
    DecoratedGraph d0 = compute_decorations(an.gamma0);
    const int v0 = an.gamma0.index_of(d.graph.vertex(v).id);

    std::vector<int> minus_dirs;
    for (int u : an.gamma0.adj(v0))
        if (direction_has_star(d0, v0, u)) minus_dirs.push_back(u);
    an.minus_direction_count = static_cast<int>(minus_dirs.size());

    NuBound& b = an.bound;
    b.vertex = v;
    if (!minus_dirs.empty()) {
        int u = minus_dirs.front();
        b.a = d0.decoration(v0, u);
        b.b = 1;
        for (int w : an.gamma0.adj(v0))
            if (w != u && d0.decoration(v0, w) > b.b) b.b = d0.decoration(v0, w);
        b.kase = end_case ? NuCase::EndMinus : NuCase::StrictMinus;
        Int bound = b.a - b.b;
        b.bound_holds = nd.nu[v] <= bound;
        b.slack = bound - nd.nu[v];
        an.form = detect_chain_star(d0, v0, u);
    } else {
        std::vector<Int> vals = d0.dec[v0];
        std::sort(vals.begin(), vals.end(), std::greater<Int>());
        b.a = vals.size() > 0 ? vals[0] : Int(1);
        b.b = vals.size() > 1 ? vals[1] : Int(1);
        b.kase = end_case ? NuCase::EndPlus : NuCase::EqualPlus;
        b.bound_holds = nd.nu[v] == b.a + b.b;
        b.slack = 0;
    }
    return an;
}

NuBound nu_bound(const DecoratedGraph& d, const NumericalData& nd, int v) {
    return analyze_nu(d, nd, v).bound;
}

namespace {

void require_adjacent(const PlumbingGraph& g, int i, int j) {
    if (i == j || !g.adjacent(i, j))
        throw NotAdjacent(g.vertex(i).id + " and " + g.vertex(j).id +
                          " are not adjacent");
}

void finish(CheckReport& r, const Rat& lhs, const Rat& rhs, bool strict) {
    r.conclusion_holds = strict ? lhs < rhs : lhs <= rhs;
    r.lhs = lhs;
    r.rhs = rhs;
    r.slack = rhs - lhs;
}

// The chain-with-vertical-chains shape beyond E_j; on failure `why` names the
// first rule broken.
bool lemma_chain_star_shape(const PlumbingGraph& g, int i, int j, std::string& why);

bool caterpillar(const PlumbingGraph& g, int from, int start, int& verticals,
                 std::string& why) {
    int prev = from, cur = start;
    while (true) {
        if (!g.arrows_at(cur).empty()) {
            why = "arrow inside the subgraph beyond E_j";
            return false;
        }
        std::vector<int> branches;
        for (int w : g.adj(cur))
            if (w != prev) branches.push_back(w);
        if (branches.empty()) return true;
        if (branches.size() == 1) {
            prev = cur;
            cur = branches[0];
            continue;
        }
        if (branches.size() > 2) {
            why = "spine vertex of valency > 3";
            return false;
        }
        bool c1 = is_chain_direction(g, cur, branches[0]);
        bool c2 = is_chain_direction(g, cur, branches[1]);
        if (c1 && c2) {
            ++verticals;
            return true;
        }
        if (!c1 && !c2) {
            why = "spine vertex with two non-chain branches";
            return false;
        }
        ++verticals;
        prev = cur;
        cur = c1 ? branches[1] : branches[0];
    }
}

bool lemma_chain_star_shape(const PlumbingGraph& g, int i, int j, std::string& why) {
    if (!g.arrows_at(j).empty()) {
        why = "arrows at E_j";
        return false;
    }
    std::vector<int> others;
    for (int w : g.adj(j))
        if (w != i) others.push_back(w);
    if (others.empty() || others.size() > 2) {
        why = "E_j has Gamma-valency " + std::to_string(g.gamma_valency(j) + 1 - 1) +
              ", expected 2 or 3";
        return false;
    }
    int verticals = 0;
    int horizontal;
    if (others.size() == 2) {
        bool c1 = is_chain_direction(g, j, others[0]);
        bool c2 = is_chain_direction(g, j, others[1]);
        if (!c1 && !c2) {
            why = "neither branch at E_j is a pure chain";
            return false;
        }
        ++verticals; // the chain at E_j itself
        horizontal = c1 ? others[1] : others[0];
        if (c1 && c2) horizontal = others[1];
    } else {
        horizontal = others[0];
    }
    if (!caterpillar(g, j, horizontal, verticals, why)) return false;
    if (verticals < 1) {
        why = "no vertical chain in the subgraph";
        return false;
    }
    return true;
}

} // namespace

CheckReport check_lemma_arrows_both_sides(const DecoratedGraph& d, const NumericalData& nd,
                                          int i, int j, long long dd) {
    const auto& g = d.graph;
    require_adjacent(g, i, j);
    CheckReport r;
    r.check = "lemma_arrows_both_sides";
    r.site = {g.vertex(i).id, g.vertex(j).id};
    r.d = dd;

    bool div = divides(dd, nd.N[i]) && divides(dd, nd.N[j]);
    bool both = false;
    if (div) {
        auto side_i = component_without(g, j, i);
        int on_i = 0, on_j = 0;
        for (const auto& a : g.arrows()) (side_i[a.vertex] ? on_i : on_j)++;
        both = on_i > 0 && on_j > 0;
        if (!both) r.note = "no arrows on one side of the edge";
    }
    r.hypothesis_met = div && both;
    if (!r.hypothesis_met) return r;

    Rat rhs = inv(dd);
    Rat li = nd.ratio(i), lj = nd.ratio(j);
    r.conclusion_holds = li <= rhs && lj <= rhs;
    r.lhs = std::max(li, lj);
    r.rhs = rhs;
    r.slack = rhs - *r.lhs;
    r.witness = li >= lj ? g.vertex(i).id : g.vertex(j).id;
    return r;
}

CheckReport check_lemma_chain_star(const DecoratedGraph& d, const NumericalData& nd,
                                   int i, int j, long long dd) {
    const auto& g = d.graph;
    require_adjacent(g, i, j);
    CheckReport r;
    r.check = "lemma_chain_star";
    r.site = {g.vertex(i).id, g.vertex(j).id};
    r.d = dd;

    bool div = divides(dd, nd.N[i]) && divides(dd, nd.N[j]);
    std::string why;
    bool shape = div && lemma_chain_star_shape(g, i, j, why);
    if (div && !shape) r.note = "near miss: " + why;
    r.hypothesis_met = div && shape;
    if (!r.hypothesis_met) return r;

    r.witness = g.vertex(i).id;
    finish(r, nd.ratio(i), inv(dd), /*strict=*/true);
    return r;
}

CheckReport check_lemma_chain_end(const DecoratedGraph& d, const NumericalData& nd,
                                  const std::vector<int>& chain, long long dd) {
    const auto& g = d.graph;
    const int rr = static_cast<int>(chain.size());
    if (rr < 2) throw NotAChain("chain must have length >= 2");
    if (g.gamma_valency(chain[0]) != 1)
        throw NotAChain(g.vertex(chain[0]).id + " is not an end vertex of Gamma");
    for (int t = 1; t < rr; ++t) {
        require_adjacent(g, chain[t - 1], chain[t]);
        if (t + 1 < rr && g.gamma_valency(chain[t]) != 2)
            throw NotAChain(g.vertex(chain[t]).id +
                            " is interior but not of Gamma-valency 2");
    }

    CheckReport r;
    r.check = "lemma_chain_end";
    for (int v : chain) r.site.push_back(g.vertex(v).id);
    r.d = dd;

    const int last = chain[rr - 1], prev = chain[rr - 2];
    r.hypothesis_met = divides(dd, nd.N[last]) && divides(dd, nd.N[prev]);
    if (!r.hypothesis_met) return r;

    Rat rhs = (Rat(nd.nu[prev]) + inv(dd)) / Rat(nd.N[prev] + 1);
    rhs.canonicalize();
    r.witness = g.vertex(last).id;
    finish(r, nd.ratio(last), rhs, /*strict=*/false);
    return r;
}

CheckReport check_lemma_two_chains(const DecoratedGraph& d, const NumericalData& nd,
                                   int i, long long dd) {
    const auto& g = d.graph;
    CheckReport r;
    r.check = "lemma_two_chains";
    r.site = {g.vertex(i).id};
    r.d = dd;

    std::vector<int> ends;
    for (int u : g.adj(i))
        if (is_chain_direction(g, i, u)) ends.push_back(chain_end(g, i, u));

    bool found = false;
    if (g.gamma_valency(i) >= 3) {
        for (size_t a = 0; a < ends.size() && !found; ++a)
            for (size_t b = a + 1; b < ends.size() && !found; ++b)
                if (divides(dd, nd.N[ends[a]]) && divides(dd, nd.N[ends[b]])) {
                    found = true;
                    r.witness = g.vertex(ends[a]).id + "," + g.vertex(ends[b]).id;
                }
    }
    r.hypothesis_met = found;
    if (!found) return r;

    finish(r, nd.ratio(i), inv(dd), /*strict=*/true);
    return r;
}

namespace {

// Shared hypothesis of Theorem 4.1 / the CMN check.
bool power_condition_shadow(const PlumbingGraph& g, const NumericalData& nd,
                            const std::vector<int>& I, long long dd) {
    if (I.size() == 1) {
        int i = I[0];
        if (!divides(dd, nd.N[i])) return false;
        for (int l : g.adj(i))
            if (!divides(dd, nd.N[l])) return false;
        for (int k : g.arrows_at(i))
            if (g.arrows()[k].multiplicity % dd != 0) return false;
        return true;
    }
    require_adjacent(g, I[0], I[1]);
    return divides(dd, nd.N[I[0]]) && divides(dd, nd.N[I[1]]);
}

} // namespace

CheckReport check_main_theorem(const DecoratedGraph& d, const NumericalData& nd,
                               std::vector<int> I, long long dd) {
    const auto& g = d.graph;
    if (I.empty() || I.size() > 2) throw Error("main theorem: |I| must be 1 or 2");
    CheckReport r;
    r.check = "main_theorem";
    for (int v : I) r.site.push_back(g.vertex(v).id);
    r.d = dd;
    r.hypothesis_met = power_condition_shadow(g, nd, I, dd);
    if (!r.hypothesis_met) return r;

    struct Disjunct {
        std::string witness;
        Rat lhs, rhs;
    };
    std::vector<Disjunct> cands;
    auto second_rhs = [&](int i) {
        Rat rhs = (Rat(nd.nu[i]) + inv(dd)) / Rat(nd.N[i] + 1);
        rhs.canonicalize();
        return rhs;
    };

    if (I.size() == 1) {
        int i = I[0];
        cands.push_back({g.vertex(i).id, nd.ratio(i), inv(dd)});
        Rat rhs2 = second_rhs(i);
        for (int l : g.adj(i)) cands.push_back({g.vertex(l).id, nd.ratio(l), rhs2});
        for (int k : g.arrows_at(i))
            cands.push_back({component_name(g, Component::of_arrow(k)),
                             comp_ratio(g, nd, Component::of_arrow(k)), rhs2});
    } else {
        int i = I[0], j = I[1];
        cands.push_back({g.vertex(i).id, nd.ratio(i), inv(dd)});
        cands.push_back({g.vertex(j).id, nd.ratio(j), second_rhs(i)});
        cands.push_back({g.vertex(j).id, nd.ratio(j), inv(dd)});
        cands.push_back({g.vertex(i).id, nd.ratio(i), second_rhs(j)});
    }

    const Disjunct* best = nullptr;
    for (const auto& c : cands) {
        if (c.lhs <= c.rhs) {
            best = &c;
            break;
        }
        if (!best || c.rhs - c.lhs > best->rhs - best->lhs) best = &c;
    }
    r.witness = best->witness;
    finish(r, best->lhs, best->rhs, /*strict=*/false);
    return r;
}

CheckReport check_cmn(const DecoratedGraph& d, const NumericalData& nd,
                      std::vector<int> I, long long dd) {
    const auto& g = d.graph;
    if (I.empty() || I.size() > 2) throw Error("cmn: |I| must be 1 or 2");
    CheckReport r;
    r.check = "cmn";
    for (int v : I) r.site.push_back(g.vertex(v).id);
    r.d = dd;
    r.hypothesis_met = power_condition_shadow(g, nd, I, dd);
    r.trivial = nd.c0 <= inv(dd);
    if (!r.hypothesis_met) return r;

    Int sum_nu = 0, sum_n = 0;
    for (int v : I) {
        sum_nu += nd.nu[v];
        sum_n += nd.N[v];
    }
    Rat rhs = (Rat(sum_nu) + inv(dd)) / Rat(sum_n + 1);
    rhs.canonicalize();
    finish(r, nd.c0, rhs, /*strict=*/false);
    return r;
}

std::vector<std::vector<int>> maximal_chains(const PlumbingGraph& g) {
    std::vector<std::vector<int>> out;
    for (int v = 0; v < g.size(); ++v) {
        if (g.gamma_valency(v) != 1 || g.adj(v).empty()) continue;
        std::vector<int> seq{v};
        int prev = v, cur = g.adj(v)[0];
        while (true) {
            seq.push_back(cur);
            if (g.gamma_valency(cur) != 2 || g.adj(cur).size() != 2) break;
            int next = -1;
            for (int w : g.adj(cur))
                if (w != prev) next = w;
            prev = cur;
            cur = next;
        }
        out.push_back(std::move(seq));
    }
    return out;
}

std::vector<CheckReport> check_all(const DecoratedGraph& d, const NumericalData& nd,
                                   long long dd_max) {
    const auto& g = d.graph;
    std::vector<CheckReport> out;

    auto divisors_of = [&](const Int& n) {
        std::vector<long long> ds;
        for (long long t = 2; t <= dd_max; ++t)
            if (divides(t, n)) ds.push_back(t);
        return ds;
    };
    auto gcd2 = [](const Int& a, const Int& b) {
        Int r;
        mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return r;
    };

    for (const auto& [i, j] : g.edges()) {
        int a = std::min(i, j), b = std::max(i, j);
        for (long long dd : divisors_of(gcd2(nd.N[a], nd.N[b]))) {
            out.push_back(check_lemma_arrows_both_sides(d, nd, a, b, dd));
            out.push_back(check_lemma_chain_star(d, nd, a, b, dd));
            out.push_back(check_lemma_chain_star(d, nd, b, a, dd));
            out.push_back(check_main_theorem(d, nd, {a, b}, dd));
            out.push_back(check_cmn(d, nd, {a, b}, dd));
        }
    }

    for (int i = 0; i < g.size(); ++i) {
        Int gc = nd.N[i];
        for (int l : g.adj(i)) gc = gcd2(gc, nd.N[l]);
        for (int k : g.arrows_at(i)) gc = gcd2(gc, linalg::make_int(g.arrows()[k].multiplicity));
        for (long long dd : divisors_of(gc)) {
            out.push_back(check_main_theorem(d, nd, {i}, dd));
            out.push_back(check_cmn(d, nd, {i}, dd));
        }

        if (g.gamma_valency(i) >= 3) {
            std::vector<int> ends;
            for (int u : g.adj(i))
                if (is_chain_direction(g, i, u)) ends.push_back(chain_end(g, i, u));
            std::set<long long> dds;
            for (size_t x = 0; x < ends.size(); ++x)
                for (size_t y = x + 1; y < ends.size(); ++y)
                    for (long long t : divisors_of(gcd2(nd.N[ends[x]], nd.N[ends[y]])))
                        dds.insert(t);
            for (long long dd : dds) out.push_back(check_lemma_two_chains(d, nd, i, dd));
        }
    }

    for (const auto& chain : maximal_chains(g))
        for (size_t r = 2; r <= chain.size(); ++r) {
            std::vector<int> prefix(chain.begin(), chain.begin() + r);
            for (long long dd :
                 divisors_of(gcd2(nd.N[prefix[r - 1]], nd.N[prefix[r - 2]])))
                out.push_back(check_lemma_chain_end(d, nd, prefix, dd));
        }

    auto key = [&](const CheckReport& r) {
        std::vector<int> idx;
        for (const auto& id : r.site) idx.push_back(g.index_of(id));
        bool failed = r.hypothesis_met && r.conclusion_holds && !*r.conclusion_holds;
        return std::make_tuple(failed ? 0 : 1, r.check, idx, r.d);
    };
    std::stable_sort(out.begin(), out.end(),
                     [&](const CheckReport& x, const CheckReport& y) {
                         return key(x) < key(y);
                     });
    return out;
}

nlohmann::ordered_json report_json(const CheckReport& r) {
    nlohmann::ordered_json j;
    j["check"] = r.check;
    j["I"] = r.site;
    j["d"] = r.d;
    j["hypothesis"] = r.hypothesis_met;
    if (r.conclusion_holds)
        j["holds"] = *r.conclusion_holds;
    else
        j["holds"] = nullptr;
    if (!r.witness.empty()) j["witness"] = r.witness;
    if (r.lhs) j["lhs"] = linalg::rat_str(*r.lhs);
    if (r.rhs) j["rhs"] = linalg::rat_str(*r.rhs);
    if (r.slack) j["slack"] = linalg::rat_str(*r.slack);
    if (r.check == "cmn") j["trivial"] = r.trivial;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

} // namespace encalc
