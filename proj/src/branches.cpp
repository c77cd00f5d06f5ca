#include "encalc/branches.hpp"

#include <algorithm>
#include <numeric>

#include "json.hpp"

#include "encalc/calculus.hpp"

namespace encalc {

using nlohmann::ordered_json;

void validate_branch(const BranchSpec& b) {
    if (b.m < 1) throw InvalidCharacteristic("multiplicity m must be >= 1");
    if (b.factor < 1) throw InvalidCharacteristic("factor must be >= 1");
    if (b.m == 1) {
        if (!b.beta.empty())
            throw InvalidCharacteristic("a smooth branch (m = 1) has no characteristic exponents");
        return;
    }
    if (b.beta.empty())
        throw InvalidCharacteristic("m >= 2 needs characteristic exponents with gcd 1");
    long long prev = b.m, e = b.m;
    for (long long beta : b.beta) {
        if (beta <= prev)
            throw InvalidCharacteristic("characteristic exponents must be strictly increasing and exceed m");
        long long e2 = std::gcd(e, beta);
        if (e2 == e)
            throw InvalidCharacteristic("beta_k = " + std::to_string(beta) +
                                        " is divisible by gcd(m, beta_1..beta_{k-1}) = " +
                                        std::to_string(e));
        e = e2;
        prev = beta;
    }
    if (e != 1)
        throw InvalidCharacteristic("gcd(m, beta_1, ..., beta_g) = " + std::to_string(e) +
                                    ", expected 1 (m=" + std::to_string(b.m) + ")");
}

/*
 * Blow-up simulation of one branch. The state is a pair of coordinate
 * orders (val, tag) where the tag names the exceptional curve the
 * coordinate axis is the strict transform of (0 = not exceptional; the
 * curve of the depth-t point is tagged t). Blowing up subtracts the smaller
 * order from the larger; the new point lies on the new curve and on the
 * strict transform of the larger-order axis, so it is a satellite exactly
 * when that axis is exceptional. Equal orders mean the branch leaves
 * through a generic point: either the next characteristic exponent takes
 * over or the sequence ends.
 */
std::vector<SoloStep> solo_points(const BranchSpec& b) {
    validate_branch(b);
    std::vector<SoloStep> out;
    if (b.m == 1) {
        out.push_back({1, 0});
        return out;
    }

    struct Slot {
        long long val;
        int tag;
    };
    Slot x{b.m, 0}, y{b.beta[0], 0};
    size_t next_beta = 1;
    int depth = 1;
    out.push_back({std::min(x.val, y.val), 0});

    while (true) {
        if (x.val == y.val) {
            if (next_beta >= b.beta.size()) break; // minimal nc end reached
            long long incr = b.beta[next_beta] - b.beta[next_beta - 1];
            ++next_beta;
            x = {x.val, depth};
            y = {incr, 0};
            out.push_back({std::min(x.val, y.val), 0});
        } else if (x.val > y.val) {
            int sat = x.tag;
            x = {x.val - y.val, x.tag};
            y = {y.val, depth};
            out.push_back({std::min(x.val, y.val), sat});
        } else {
            int sat = y.tag;
            y = {y.val - x.val, y.tag};
            x = {x.val, depth};
            out.push_back({std::min(x.val, y.val), sat});
        }
        ++depth;
    }
    return out;
}

std::vector<long long> multiplicity_sequence(const BranchSpec& b) {
    std::vector<long long> out;
    for (const auto& p : solo_points(b)) out.push_back(p.mult);
    return out;
}

namespace {

int step_of(const std::vector<SoloStep>& solo, int depth) { // 1-based depth
    if (depth <= static_cast<int>(solo.size())) return solo[depth - 1].sat;
    return 0; // free extension points
}

} // namespace

Cluster build_cluster(const std::vector<BranchSpec>& branches, const ContactSpec& contact) {
    const int nb = static_cast<int>(branches.size());
    if (nb == 0) throw InvalidCharacteristic("at least one branch is required");

    std::vector<std::vector<SoloStep>> solo(nb);
    for (int i = 0; i < nb; ++i) solo[i] = solo_points(branches[i]);

    std::vector<std::vector<int>> s(nb, std::vector<int>(nb, 1));
    for (const auto& p : contact.pairs) {
        if (p.i < 0 || p.i >= nb || p.j < 0 || p.j >= nb || p.i == p.j)
            throw InconsistentContact("contact pair references invalid branch indices");
        if (p.shared < 1)
            throw InconsistentContact("shared_points must be >= 1 (all branches pass through the origin)");
        s[p.i][p.j] = p.shared;
        s[p.j][p.i] = p.shared;
    }
    for (int i = 0; i < nb; ++i)
        for (int j = i + 1; j < nb; ++j)
            for (int k = j + 1; k < nb; ++k) {
                int v[3] = {s[i][j], s[i][k], s[j][k]};
                std::sort(v, v + 3);
                if (v[0] != v[1])
                    throw InconsistentContact(
                        "shared prefixes do not form a tree on branches " +
                        std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k));
            }

    std::vector<int> len(nb);
    for (int i = 0; i < nb; ++i) {
        len[i] = static_cast<int>(solo[i].size());
        for (int j = 0; j < nb; ++j)
            if (j != i) len[i] = std::max(len[i], s[i][j]);
    }

    for (int i = 0; i < nb; ++i)
        for (int j = i + 1; j < nb; ++j) {
            const int ss = s[i][j];
            for (int t = 2; t <= ss; ++t) {
                int si = step_of(solo[i], t), sj = step_of(solo[j], t);
                if (t > static_cast<int>(solo[i].size()) && sj != 0)
                    throw ContactBeyondBranch(
                        "branch " + std::to_string(i) + " cannot be extended through the "
                        "satellite point of branch " + std::to_string(j) + " at depth " +
                        std::to_string(t));
                if (t > static_cast<int>(solo[j].size()) && si != 0)
                    throw ContactBeyondBranch(
                        "branch " + std::to_string(j) + " cannot be extended through the "
                        "satellite point of branch " + std::to_string(i) + " at depth " +
                        std::to_string(t));
                if (si != sj)
                    throw InconsistentContact(
                        "branches " + std::to_string(i) + " and " + std::to_string(j) +
                        " disagree (free vs satellite) at shared point " + std::to_string(t));
            }
            // the points after the shared prefix must actually be distinct
            if (ss + 1 <= len[i] && ss + 1 <= len[j]) {
                int si = step_of(solo[i], ss + 1), sj = step_of(solo[j], ss + 1);
                if (si != 0 && si == sj)
                    throw InconsistentContact(
                        "branches " + std::to_string(i) + " and " + std::to_string(j) +
                        " are declared to diverge after " + std::to_string(ss) +
                        " points but both continue through the same satellite point");
            }
        }

    Cluster c;
    c.branch_last.assign(nb, -1);
    const int maxlen = *std::max_element(len.begin(), len.end());
    // at[t-1][i] = index of branch i's depth-t point
    std::vector<std::vector<int>> at(maxlen, std::vector<int>(nb, -1));

    for (int t = 1; t <= maxlen; ++t) {
        std::vector<char> done(nb, 0);
        for (int i = 0; i < nb; ++i) {
            if (len[i] < t || done[i]) continue;
            std::vector<int> members{i};
            done[i] = 1;
            for (int j = i + 1; j < nb; ++j)
                if (!done[j] && len[j] >= t && s[i][j] >= t) {
                    members.push_back(j);
                    done[j] = 1;
                }
            ClusterPoint p;
            p.depth = t;
            p.parent = t > 1 ? at[t - 2][i] : -1;
            int sat_depth = step_of(solo[i], t);
            p.sat = sat_depth > 0 ? at[sat_depth - 1][i] : -1;
            for (int m : members) {
                long long mult =
                    t <= static_cast<int>(solo[m].size()) ? solo[m][t - 1].mult : 1;
                p.mults.emplace_back(m, mult);
            }
            int idx = static_cast<int>(c.points.size());
            c.points.push_back(std::move(p));
            for (int m : members) {
                at[t - 1][m] = idx;
                if (len[m] == t) c.branch_last[m] = idx;
            }
        }
    }
    return c;
}

PlumbingGraph cluster_to_graph(const Cluster& c, const std::vector<BranchSpec>& branches) {
    const int n = static_cast<int>(c.points.size());

    // proximity matrix, lower unitriangular
    std::vector<std::vector<long long>> P(n, std::vector<long long>(n, 0));
    for (int p = 0; p < n; ++p) {
        P[p][p] = 1;
        if (c.points[p].parent >= 0) P[p][c.points[p].parent] = -1;
        if (c.points[p].sat >= 0) P[p][c.points[p].sat] = -1;
    }
    // A = -P^T P
    std::vector<std::vector<long long>> A(n, std::vector<long long>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            long long acc = 0;
            for (int k = std::max(i, j); k < n; ++k) acc += P[k][i] * P[k][j];
            A[i][j] = -acc;
        }

    std::vector<Vertex> vs;
    for (int i = 0; i < n; ++i) {
        if (A[i][i] > -1)
            throw NonMinimal("internal: proximity matrix gives euler " +
                             std::to_string(A[i][i]));
        vs.push_back({"E" + std::to_string(i + 1), A[i][i]});
    }
    std::vector<std::pair<std::string, std::string>> es;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (A[i][j] != 0 && A[i][j] != 1)
                throw NonMinimal("internal: intersection number " + std::to_string(A[i][j]));
            if (A[i][j] == 1) es.emplace_back(vs[i].id, vs[j].id);
        }
    std::vector<std::pair<std::string, long long>> as;
    for (size_t b = 0; b < branches.size(); ++b)
        as.emplace_back(vs[c.branch_last[b]].id, branches[b].factor);

    PlumbingGraph g(std::move(vs), es, as);

    auto rep = validate(g);
    if (!rep.ok)
        throw NonMinimal("internal: built graph fails validation: " +
                         rep.violations.front().rule);
    auto minrep = check_minimality(edge_decorations(g));
    if (!minrep.ok)
        throw NonMinimal("internal: built graph is not minimal: " +
                         minrep.violations.front().detail);
    return g;
}

PlumbingGraph resolve_branches(const std::vector<BranchSpec>& branches,
                               const ContactSpec& contact) {
    return cluster_to_graph(build_cluster(branches, contact), branches);
}

std::pair<std::vector<BranchSpec>, ContactSpec> parse_branches(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    try {
        std::vector<BranchSpec> bs;
        for (const auto& b : j.at("branches")) {
            BranchSpec spec;
            spec.m = b.at("m").get<long long>();
            if (b.contains("beta"))
                for (const auto& x : b.at("beta")) spec.beta.push_back(x.get<long long>());
            spec.factor = b.value("factor", 1LL);
            bs.push_back(std::move(spec));
        }
        ContactSpec cs;
        if (j.contains("contacts"))
            for (const auto& p : j.at("contacts"))
                cs.pairs.push_back({p.at("i").get<int>(), p.at("j").get<int>(),
                                    p.at("shared_points").get<int>()});
        return {std::move(bs), std::move(cs)};
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed branch field: ") + e.what());
    }
}

std::string serialize_branches(const std::vector<BranchSpec>& branches,
                               const ContactSpec& contact) {
    ordered_json j;
    j["branches"] = ordered_json::array();
    for (const auto& b : branches) {
        ordered_json e;
        e["m"] = b.m;
        e["beta"] = b.beta;
        e["factor"] = b.factor;
        j["branches"].push_back(std::move(e));
    }
    j["contacts"] = ordered_json::array();
    for (const auto& p : contact.pairs)
        j["contacts"].push_back({{"i", p.i}, {"j", p.j}, {"shared_points", p.shared}});
    return j.dump(2) + "\n";
}

} // namespace encalc
