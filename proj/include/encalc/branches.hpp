#pragma once

#include <string>
#include <utility>
#include <vector>

#include "encalc/graph.hpp"

namespace encalc {

// Puiseux characteristic (m; beta_1, ..., beta_g) plus the multiplicity of
// this branch as a factor of f. m = 1 (smooth) forces g = 0.
struct BranchSpec {
    long long m = 1;
    std::vector<long long> beta;
    long long factor = 1;
};

// Throws InvalidCharacteristic.
void validate_branch(const BranchSpec& b);

// One infinitely-near point of a single branch: its multiplicity and, when
// the point is a satellite, the 1-based depth of the second point it is
// proximate to (0 = free). Every point is proximate to its predecessor.
struct SoloStep {
    long long mult = 1;
    int sat = 0;
};

// The branch's own point sequence, up to the minimal normal-crossings end.
std::vector<SoloStep> solo_points(const BranchSpec& b);
std::vector<long long> multiplicity_sequence(const BranchSpec& b);

// Pairwise contact as a count of common infinitely-near points (branch
// indices are 0-based positions in the branch list). Unlisted pairs share
// exactly the origin.
struct ContactSpec {
    struct Pair {
        int i = 0;
        int j = 0;
        int shared = 1;
    };
    std::vector<Pair> pairs;
};

struct ClusterPoint {
    int depth = 1;   // 1-based blow-up depth
    int parent = -1; // point index, -1 for the origin
    int sat = -1;    // extra proximity (satellite), -1 if free
    std::vector<std::pair<int, long long>> mults; // (branch, multiplicity here)
};

struct Cluster {
    std::vector<ClusterPoint> points;
    std::vector<int> branch_last; // per branch, index of its last point
};

// Merges the per-branch point chains along shared prefixes, extending
// branches with free points where the declared contact exceeds their own
// length. Throws InconsistentContact / ContactBeyondBranch.
Cluster build_cluster(const std::vector<BranchSpec>& branches, const ContactSpec& contact);

// Euler numbers and edges from the proximity matrix P via A = -P^T P;
// arrows at each branch's last point with multiplicity = factor. The result
// is checked against validate() and check_minimality(); NonMinimal signals an
// internal inconsistency.
PlumbingGraph cluster_to_graph(const Cluster& c, const std::vector<BranchSpec>& branches);

PlumbingGraph resolve_branches(const std::vector<BranchSpec>& branches,
                               const ContactSpec& contact);

// JSON: {"branches":[{"m":4,"beta":[6,7],"factor":1}],
//        "contacts":[{"i":0,"j":1,"shared_points":2}]}
std::pair<std::vector<BranchSpec>, ContactSpec> parse_branches(const std::string& text);
std::string serialize_branches(const std::vector<BranchSpec>& branches,
                               const ContactSpec& contact);

} // namespace encalc
