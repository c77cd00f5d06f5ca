#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "encalc/branches.hpp"

namespace encalc {

struct FuzzConfig {
    std::uint64_t seed = 42;
    int count = 1000;
    int max_branches = 3;
    int max_g = 2;
    long long max_exponent = 30;
    int max_factor = 3;
    long long dd_max = 30;
    int jobs = 1;
    bool include_corpus = false; // prepend the three documented instances
};

struct FuzzFailure {
    int instance = 0;
    std::string check;
    nlohmann::ordered_json input;  // branch-data JSON, reusable via `check`
    nlohmann::ordered_json detail;
};

struct FuzzOutcome {
    int instances_run = 0;
    std::vector<FuzzFailure> failures;
    std::map<std::string, long long> checks_run; // hypothesis-met count per check
    std::map<std::string, long long> sharp;      // slack = 0 count per check
    bool ok() const { return failures.empty(); }
};

// Deterministic in (seed, cfg bounds, index); resamples internally until the
// instance satisfies every BranchSpec/ContactSpec invariant.
std::pair<std::vector<BranchSpec>, ContactSpec> random_instance(const FuzzConfig& cfg,
                                                                int index);

// Example 3.1-style (4;6,7), x^2(y^2-x^4), and the (2;3) cusp.
std::vector<std::pair<std::vector<BranchSpec>, ContactSpec>> fixed_corpus();

// Per instance: resolve -> validate -> decorations/axioms -> minimality ->
// dual-oracle N/nu equality -> nu_bound for every vertex -> check_all up to
// dd_max. Failures are data, not exceptions; the outcome is byte-identical
// for identical (seed, cfg) regardless of the worker count.
FuzzOutcome run_fuzz(const FuzzConfig& cfg);

nlohmann::ordered_json outcome_json(const FuzzOutcome& o);

} // namespace encalc
