#include "encalc/fuzz.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <thread>

#include "encalc/calculus.hpp"
#include "encalc/theorems.hpp"

namespace encalc {

using nlohmann::ordered_json;

namespace {

struct SplitMix {
    std::uint64_t s;
    std::uint64_t next() {
        s += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    long long uniform(long long lo, long long hi) { // inclusive, unbiased
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo + 1);
        std::uint64_t lim = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t x;
        do {
            x = next();
        } while (x >= lim);
        return lo + static_cast<long long>(x % span);
    }
    bool chance(int pct) { return uniform(0, 99) < pct; }
};

BranchSpec random_branch(SplitMix& r, const FuzzConfig& cfg) {
    BranchSpec b;
    b.factor = r.uniform(1, cfg.max_factor);
    if (cfg.max_g == 0 || cfg.max_exponent < 3 || r.chance(25)) {
        b.m = 1;
        return b;
    }
    for (int attempt = 0; attempt < 200; ++attempt) {
        int g = static_cast<int>(r.uniform(1, cfg.max_g));
        long long m = r.uniform(2, std::min<long long>(12, cfg.max_exponent - 1));
        std::vector<long long> beta;
        long long e = m, prev = m;
        bool ok = true;
        for (int k = 0; k < g; ++k) {
            if (prev + 1 > cfg.max_exponent) {
                ok = false;
                break;
            }
            long long bk = r.uniform(prev + 1, cfg.max_exponent);
            long long e2 = std::gcd(e, bk);
            if (e2 == e) {
                ok = false;
                break;
            }
            beta.push_back(bk);
            e = e2;
            prev = bk;
        }
        if (ok && e == 1) {
            b.m = m;
            b.beta = std::move(beta);
            return b;
        }
    }
    b.m = 1; // rejection exhausted: fall back to a smooth branch
    return b;
}

// Random nested partition; cross-group pairs split at the node's depth, so
// the shared counts form a tree by construction.
void random_contacts(SplitMix& r, const std::vector<int>& group, int min_depth,
                     std::vector<std::vector<int>>& s) {
    const int k = static_cast<int>(group.size());
    if (k <= 1) return;
    int d = min_depth;
    while (d < min_depth + 3 && r.chance(45)) ++d;

    std::vector<int> label(k);
    bool split = false;
    while (!split) {
        for (int t = 0; t < k; ++t) label[t] = static_cast<int>(r.uniform(0, k - 1));
        for (int t = 1; t < k; ++t)
            if (label[t] != label[0]) split = true;
    }
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b)
            if (label[a] != label[b]) {
                s[group[a]][group[b]] = d;
                s[group[b]][group[a]] = d;
            }
    for (int lab = 0; lab < k; ++lab) {
        std::vector<int> sub;
        for (int t = 0; t < k; ++t)
            if (label[t] == lab) sub.push_back(group[t]);
        if (sub.size() >= 2) random_contacts(r, sub, d + 1, s);
    }
}

ContactSpec contacts_from_matrix(const std::vector<std::vector<int>>& s) {
    ContactSpec cs;
    for (int i = 0; i < static_cast<int>(s.size()); ++i)
        for (int j = i + 1; j < static_cast<int>(s.size()); ++j)
            if (s[i][j] > 1) cs.pairs.push_back({i, j, s[i][j]});
    return cs;
}

} // namespace

std::pair<std::vector<BranchSpec>, ContactSpec> random_instance(const FuzzConfig& cfg,
                                                                int index) {
    SplitMix r{cfg.seed ^ (0xA24BAED4963EE407ULL * static_cast<std::uint64_t>(index + 1))};
    r.next();
    r.next();

    int nb = static_cast<int>(r.uniform(1, cfg.max_branches));
    std::vector<BranchSpec> branches;
    for (int i = 0; i < nb; ++i) branches.push_back(random_branch(r, cfg));

    std::vector<int> all(nb);
    std::iota(all.begin(), all.end(), 0);
    for (int attempt = 0; attempt < 25; ++attempt) {
        std::vector<std::vector<int>> s(nb, std::vector<int>(nb, 1));
        random_contacts(r, all, 1, s);
        ContactSpec cs = contacts_from_matrix(s);
        try {
            build_cluster(branches, cs);
            return {std::move(branches), std::move(cs)};
        } catch (const Error&) {
            // contact draw incompatible with the branch geometries: redraw
        }
    }
    return {std::move(branches), ContactSpec{}}; // origin-only contact always builds
}

std::vector<std::pair<std::vector<BranchSpec>, ContactSpec>> fixed_corpus() {
    std::vector<std::pair<std::vector<BranchSpec>, ContactSpec>> out;
    out.push_back({{BranchSpec{4, {6, 7}, 1}}, ContactSpec{}});
    out.push_back({{BranchSpec{1, {}, 2}, BranchSpec{1, {}, 1}, BranchSpec{1, {}, 1}},
                   ContactSpec{{{1, 2, 2}}}});
    out.push_back({{BranchSpec{2, {3}, 1}}, ContactSpec{}});
    return out;
}

namespace {

struct InstanceResult {
    std::vector<FuzzFailure> failures;
    std::map<std::string, long long> runs, sharp;
};

ordered_json instance_json(const std::vector<BranchSpec>& bs, const ContactSpec& cs) {
    return ordered_json::parse(serialize_branches(bs, cs));
}

InstanceResult run_instance(int index, const std::vector<BranchSpec>& bs,
                            const ContactSpec& cs, long long dd_max) {
    InstanceResult res;
    ordered_json inst = instance_json(bs, cs);
    auto fail = [&](const std::string& check, ordered_json detail) {
        res.failures.push_back({index, check, inst, std::move(detail)});
    };

    try {
        PlumbingGraph g = resolve_branches(bs, cs);

        auto vrep = validate(g);
        if (!vrep.ok) {
            ordered_json d = ordered_json::array();
            for (const auto& v : vrep.violations) d.push_back(v.rule + ": " + v.detail);
            fail("validate", std::move(d));
            return res;
        }

        DecoratedGraph dec = edge_decorations(g); // throws AxiomViolation
        res.runs["axioms"]++;

        auto mrep = check_minimality(dec);
        if (!mrep.ok) fail("minimality", {{"detail", mrep.violations.front().detail}});

        NumericalData ndl = numerical_data_linear(g);
        NumericalData ndd = numerical_data_diagram(dec);
        res.runs["dual_oracle"]++;
        if (ndl.N != ndd.N || ndl.nu != ndd.nu || !(ndl.c0 == ndd.c0))
            fail("dual_oracle", {{"detail", "linear and diagram numerical data differ"}});

        bool has_unit_arrow = false;
        for (const auto& a : g.arrows()) has_unit_arrow |= a.multiplicity == 1;
        if (has_unit_arrow && ndl.c0 > 1)
            fail("lct_bound", {{"lct", linalg::rat_str(ndl.c0)}});

        for (int v = 0; v < g.size(); ++v) {
            NuAnalysis an = analyze_nu(dec, ndl, v);
            std::string kind = std::string("nu_bound.") + nu_case_name(an.bound.kase);
            res.runs[kind]++;
            if (!an.bound.bound_holds)
                fail("nu_bound", {{"vertex", g.vertex(v).id},
                                  {"case", nu_case_name(an.bound.kase)},
                                  {"a", an.bound.a.get_str()},
                                  {"b", an.bound.b.get_str()},
                                  {"nu", ndl.nu[v].get_str()}});
            if (an.minus_direction_count > 1)
                fail("nu_bound_unique_minus", {{"vertex", g.vertex(v).id}});
            if (an.bound.kase == NuCase::StrictMinus || an.bound.kase == NuCase::EndMinus) {
                if (an.bound.slack == 0) res.sharp[kind]++;
                if (an.form && chain_star_nu(*an.form) != ndl.nu[v])
                    fail("nu_expansion", {{"vertex", g.vertex(v).id},
                                          {"expansion", chain_star_nu(*an.form).get_str()},
                                          {"nu", ndl.nu[v].get_str()}});
            }
        }

        auto reports = check_all(dec, ndl, dd_max);
        std::map<std::pair<std::vector<std::string>, long long>, const CheckReport*> mains,
            cmns;
        for (const auto& r : reports) {
            if (!r.hypothesis_met) continue;
            res.runs[r.check]++;
            if (r.conclusion_holds && !*r.conclusion_holds)
                fail(r.check, report_json(r));
            if (r.slack && *r.slack == 0) res.sharp[r.check]++;
            if (r.check == "main_theorem") mains[{r.site, r.d}] = &r;
            if (r.check == "cmn") cmns[{r.site, r.d}] = &r;
        }
        for (const auto& [key, main] : mains) {
            auto it = cmns.find(key);
            if (it == cmns.end()) continue;
            if (*main->conclusion_holds && !*it->second->conclusion_holds)
                fail("main_implies_cmn", report_json(*it->second));
        }
    } catch (const Error& e) {
        fail("exception", {{"what", e.what()}});
    }
    return res;
}

} // namespace

FuzzOutcome run_fuzz(const FuzzConfig& cfg) {
    std::vector<std::pair<std::vector<BranchSpec>, ContactSpec>> instances;
    if (cfg.include_corpus)
        for (auto& c : fixed_corpus()) instances.push_back(std::move(c));
    for (int i = 0; i < cfg.count; ++i) instances.push_back(random_instance(cfg, i));

    const int total = static_cast<int>(instances.size());
    std::vector<InstanceResult> results(total);
    std::atomic<int> cursor{0};
    auto worker = [&]() {
        while (true) {
            int k = cursor.fetch_add(1);
            if (k >= total) break;
            results[k] =
                run_instance(k, instances[k].first, instances[k].second, cfg.dd_max);
        }
    };
    const int jobs = std::max(1, cfg.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    FuzzOutcome out;
    out.instances_run = total;
    for (auto& r : results) { // merged in instance order: determinism
        for (auto& f : r.failures) out.failures.push_back(std::move(f));
        for (const auto& [k, v] : r.runs) out.checks_run[k] += v;
        for (const auto& [k, v] : r.sharp) out.sharp[k] += v;
    }
    return out;
}

nlohmann::ordered_json outcome_json(const FuzzOutcome& o) {
    ordered_json j;
    j["instances_run"] = o.instances_run;
    j["failures"] = ordered_json::array();
    for (const auto& f : o.failures)
        j["failures"].push_back({{"instance", f.instance},
                                 {"check", f.check},
                                 {"input", f.input},
                                 {"detail", f.detail}});
    ordered_json runs = ordered_json::object(), sharp = ordered_json::object();
    for (const auto& [k, v] : o.checks_run) runs[k] = v;
    for (const auto& [k, v] : o.sharp) sharp[k] = v;
    j["stats"] = {{"checks_run", runs}, {"sharp", sharp}};
    return j;
}

} // namespace encalc
