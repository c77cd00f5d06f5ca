#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "encalc/branches.hpp"
#include "encalc/calculus.hpp"
#include "encalc/fuzz.hpp"
#include "encalc/graph.hpp"
#include "encalc/theorems.hpp"

// Exit codes, stable for CI use: 0 success, 1 mathematical violation found,
// 2 input error (parse failure, invalid graph, bad site, bad flags).

namespace {

using namespace encalc;
using nlohmann::ordered_json;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open \"" + path + "\"");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_out(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write \"" + path + "\"");
    out << text;
}

// Graph JSON, or branch-data JSON (key "branches") resolved on the fly, so
// fuzz counterexamples replay with one command.
PlumbingGraph load_graph(const std::string& path) {
    std::string text = slurp(path);
    ordered_json probe;
    try {
        probe = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (probe.is_object() && probe.contains("branches")) {
        auto [bs, cs] = parse_branches(text);
        return resolve_branches(bs, cs);
    }
    return parse_graph(text);
}

PlumbingGraph load_valid_graph(const std::string& path) {
    PlumbingGraph g = load_graph(path);
    auto rep = validate(g);
    if (!rep.ok) {
        std::ostringstream msg;
        msg << "invalid graph:";
        for (const auto& v : rep.violations) msg << "\n  [" << v.rule << "] " << v.detail;
        throw ParseError(msg.str());
    }
    return g;
}

int cmd_analyze(const std::string& file, const std::string& format) {
    PlumbingGraph g = load_valid_graph(file);
    DecoratedGraph dec = edge_decorations(g);
    NumericalData nd = numerical_data_linear(g);

    if (format == "json") {
        std::cout << analysis_json(dec, nd).dump(2) << "\n";
    } else if (format == "dot") {
        std::cout << export_dot(g, {&dec, &nd});
    } else {
        const auto delta = valencies(g);
        std::cout << "vertices:\n";
        for (int i = 0; i < g.size(); ++i)
            std::cout << "  " << g.vertex(i).id << "  euler " << g.vertex(i).euler
                      << "  N " << nd.N[i].get_str() << "  nu " << nd.nu[i].get_str()
                      << "  delta " << delta[i] << "\n";
        std::cout << "arrows:\n";
        for (size_t k = 0; k < g.arrows().size(); ++k)
            std::cout << "  A" << k << " at " << g.vertex(g.arrows()[k].vertex).id
                      << "  multiplicity " << g.arrows()[k].multiplicity << "\n";
        std::cout << "decorations:\n";
        for (const auto& [a, b] : g.edges())
            std::cout << "  " << g.vertex(a).id << " -> " << g.vertex(b).id << ": "
                      << dec.decoration(a, b).get_str() << "   " << g.vertex(b).id
                      << " -> " << g.vertex(a).id << ": " << dec.decoration(b, a).get_str()
                      << "\n";
        std::cout << "lct: " << linalg::rat_str(nd.c0) << "\n";
    }
    return 0;
}

int cmd_resolve(const std::string& file, const std::string& out) {
    auto [bs, cs] = parse_branches(slurp(file));
    PlumbingGraph g = resolve_branches(bs, cs);
    write_out(out, serialize_graph(g));
    return 0;
}

int cmd_check(const std::string& file, long long d_exact, long long all_d,
              const std::string& set) {
    PlumbingGraph g = load_valid_graph(file);
    DecoratedGraph dec = edge_decorations(g);
    NumericalData nd = numerical_data_linear(g);

    std::vector<CheckReport> reports;
    if (!set.empty()) {
        std::vector<int> I;
        std::stringstream ss(set);
        std::string id;
        while (std::getline(ss, id, ',')) I.push_back(g.index_of(id));
        if (I.empty() || I.size() > 2) throw ParseError("--set takes one or two vertex ids");
        std::vector<long long> ds;
        if (d_exact > 0)
            ds.push_back(d_exact);
        else
            for (long long t = 2; t <= all_d; ++t) ds.push_back(t);
        for (long long dd : ds) {
            reports.push_back(check_main_theorem(dec, nd, I, dd));
            reports.push_back(check_cmn(dec, nd, I, dd));
        }
    } else if (d_exact > 0) {
        for (auto& r : check_all(dec, nd, d_exact))
            if (r.d == d_exact) reports.push_back(std::move(r));
    } else {
        reports = check_all(dec, nd, all_d);
    }

    int violations = 0;
    ordered_json out;
    out["reports"] = ordered_json::array();
    for (const auto& r : reports) {
        if (r.hypothesis_met && r.conclusion_holds && !*r.conclusion_holds) ++violations;
        out["reports"].push_back(report_json(r));
    }
    out["violations"] = violations;
    std::cout << out.dump(2) << "\n";
    return violations > 0 ? 1 : 0;
}

int cmd_fuzz(const FuzzConfig& cfg) {
    FuzzOutcome o = run_fuzz(cfg);
    std::cout << outcome_json(o).dump(2) << "\n";
    return o.ok() ? 0 : 1;
}

int cmd_export_dot(const std::string& file, const std::string& out, bool bare) {
    PlumbingGraph g = load_valid_graph(file);
    if (bare) {
        write_out(out, export_dot(g));
    } else {
        DecoratedGraph dec = edge_decorations(g);
        NumericalData nd = numerical_data_linear(g);
        write_out(out, export_dot(g, {&dec, &nd}));
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Eisenbud-Neumann calculus on plane curve resolution graphs"};
    app.require_subcommand(1);

    std::string file, format = "json", out, set;
    long long d_exact = 0, all_d = 30;
    FuzzConfig cfg;

    auto* analyze = app.add_subcommand("analyze",
                                       "decorations, numerical data and lct of a graph");
    analyze->add_option("file", file, "graph JSON (or branch JSON) file")->required();
    analyze->add_option("--format", format, "json | text | dot")
        ->check(CLI::IsMember({"json", "text", "dot"}));

    auto* resolve = app.add_subcommand("resolve",
                                       "minimal resolution graph of branch data");
    resolve->add_option("file", file, "branch JSON file")->required();
    resolve->add_option("--out", out, "output graph file (default: stdout)");

    auto* check = app.add_subcommand("check", "run the theorem and inequality suite");
    check->add_option("file", file, "graph JSON (or branch JSON) file")->required();
    auto* dopt = check->add_option("--d", d_exact, "check a single divisor d >= 2")
                     ->check(CLI::Range(2LL, 1000000000LL));
    check->add_option("--all-d", all_d, "check every d in 2..MAX (default 30)")
        ->excludes(dopt)
        ->check(CLI::Range(2LL, 1000000000LL));
    check->add_option("--set", set, "one or two vertex ids, e.g. E3,E5");

    auto* fuzz = app.add_subcommand("fuzz", "seeded random verification at scale");
    fuzz->add_option("--seed", cfg.seed, "rng seed (default 42)");
    fuzz->add_option("--count", cfg.count, "instances (default 1000)");
    fuzz->add_option("--max-branches", cfg.max_branches, "default 3");
    fuzz->add_option("--max-g", cfg.max_g, "characteristic exponents per branch (default 2)");
    fuzz->add_option("--max-exponent", cfg.max_exponent, "default 30");
    fuzz->add_option("--max-factor", cfg.max_factor, "default 3");
    fuzz->add_option("--dd-max", cfg.dd_max, "default 30");
    fuzz->add_option("--jobs", cfg.jobs, "worker threads (default 1)");
    fuzz->add_flag("--include-corpus", cfg.include_corpus,
                   "prepend the three documented instances");

    auto* expdot = app.add_subcommand("export-dot", "DOT rendering of a graph");
    expdot->add_option("file", file, "graph JSON (or branch JSON) file")->required();
    expdot->add_option("--out", out, "output file (default: stdout)");
    bool bare = false;
    expdot->add_flag("--bare", bare, "ids only, no numerical annotations");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(file, format);
        if (resolve->parsed()) return cmd_resolve(file, out);
        if (check->parsed()) return cmd_check(file, d_exact, all_d, set);
        if (fuzz->parsed()) return cmd_fuzz(cfg);
        if (expdot->parsed()) return cmd_export_dot(file, out, bare);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
