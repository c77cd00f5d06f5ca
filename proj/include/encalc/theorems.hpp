#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "encalc/calculus.hpp"

namespace encalc {

enum class NuCase { StrictMinus, EqualPlus, EndMinus, EndPlus };
const char* nu_case_name(NuCase c);

// Classification of a vertex's nu against its edge decorations:
//   StrictMinus: nu <= a - b     EqualPlus: nu = a + b
//   EndMinus:    nu <= a - 1     EndPlus:   nu = a + 1   (valency <= 1, b = 1)
struct NuBound {
    int vertex = -1;
    NuCase kase = NuCase::EqualPlus;
    linalg::Int a, b;
    bool bound_holds = false;
    linalg::Int slack; // bound - nu for the Minus cases, 0 for Plus
};

// Repeatedly contracts every subgraph that hangs off a 1-decorated edge side
// and does not contain `keep`, by iterated blow-down of -1 vertices
// (delete, join the <= 2 neighbours, bump their euler numbers by 1).
// Deterministic: lowest-index eligible tail first (highest-index when
// reverse_order, used to test order independence). Decorations of the result
// must be recomputed by the caller. Throws StuckContraction on
// non-contractible tails (non-resolution input).
PlumbingGraph contract_unimodular_tails(const DecoratedGraph& d, int keep,
                                        bool reverse_order = false);

// The contracted graph's canonical shape in the Minus case: a path from the
// vertex through stars v_1..v_r, each with back decoration 1, forward
// decoration a_i > 1 and one hanging chain decorated b_i > 1; chains
// everywhere else. nu then expands as
//   a + b [ a_1 - a_1 b_1 + (a_2 - a_2 b_2) b_1 + ...
//           + (a_r + b_r - a_r b_r) b_1 ... b_{r-1} ].
struct ChainStarForm {
    linalg::Int a, b;
    std::vector<std::pair<linalg::Int, linalg::Int>> stars; // (a_i, b_i)
};
linalg::Int chain_star_nu(const ChainStarForm& f);

struct NuAnalysis {
    NuBound bound;
    PlumbingGraph gamma0;
    int minus_direction_count = 0; // must be <= 1 on resolution graphs
    std::optional<ChainStarForm> form;
};

NuAnalysis analyze_nu(const DecoratedGraph& d, const NumericalData& nd, int v);
NuBound nu_bound(const DecoratedGraph& d, const NumericalData& nd, int v);

struct CheckReport {
    std::string check;
    std::vector<std::string> site; // I, or the chain vertex ids
    long long d = 0;
    bool hypothesis_met = false;
    std::optional<bool> conclusion_holds; // empty = not applicable
    std::string witness;
    std::optional<linalg::Rat> lhs, rhs;
    std::optional<linalg::Rat> slack; // rhs - lhs of the binding inequality
    bool trivial = false;             // cmn only: c0 <= 1/d
    std::string note;
};

// d | N_i, d | N_j, arrows on both sides of the edge {i,j}
//   =>  nu_i/N_i <= 1/d  and  nu_j/N_j <= 1/d.
CheckReport check_lemma_arrows_both_sides(const DecoratedGraph& d, const NumericalData& nd,
                                          int i, int j, long long dd);

// d | N_i, d | N_j, and beyond the E_i edge E_j attaches precisely to an
// arrowless chain-with-vertical-chains shape  =>  nu_i/N_i < 1/d (strict).
CheckReport check_lemma_chain_star(const DecoratedGraph& d, const NumericalData& nd,
                                   int i, int j, long long dd);

// chain = (E_1, ..., E_r), E_1 of Gamma-valency 1, interior valency 2.
// d | N_r, d | N_{r-1}  =>  nu_r/N_r <= (nu_{r-1} + 1/d) / (N_{r-1} + 1).
CheckReport check_lemma_chain_end(const DecoratedGraph& d, const NumericalData& nd,
                                  const std::vector<int>& chain, long long dd);

// Two chains hang off E_i with end vertices whose N are both divisible by d
//   =>  nu_i/N_i < 1/d (strict).
CheckReport check_lemma_two_chains(const DecoratedGraph& d, const NumericalData& nd,
                                   int i, long long dd);

// |I| = 1: d | N_i and d | N_l for every component meeting E_i (arrows
// included); |I| = 2: adjacent pair with d | N_i, d | N_j. Conclusion is the
// two-disjunct bound, up to switching indices for |I| = 2.
CheckReport check_main_theorem(const DecoratedGraph& d, const NumericalData& nd,
                               std::vector<int> I, long long dd);

// Same hypotheses; conclusion c0 <= (sum nu_I + 1/d) / (sum N_I + 1), with
// the trivial case c0 <= 1/d flagged separately.
CheckReport check_cmn(const DecoratedGraph& d, const NumericalData& nd,
                      std::vector<int> I, long long dd);

// Every vertex, adjacent pair, chain prefix, and every d in 2..dd_max
// dividing the relevant N's; failures first, then canonical order.
std::vector<CheckReport> check_all(const DecoratedGraph& d, const NumericalData& nd,
                                   long long dd_max);

// Maximal chains from every Gamma-valency-1 vertex (leaf first, anchor last).
std::vector<std::vector<int>> maximal_chains(const PlumbingGraph& g);

// {"check":"main_theorem","I":["E4"],"d":13,"hypothesis":true,"holds":true,
//  "witness":"E5","lhs":"11/26","rhs":"79/182","slack":"...?"}
nlohmann::ordered_json report_json(const CheckReport& r);

} // namespace encalc
