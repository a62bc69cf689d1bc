#pragma once
#include <cstdint>
#include <vector>

#include "odl/conngraph.hpp"
#include "odl/model.hpp"

namespace odl {

// Family of recovered clusters C_i = {samples whose support contains i}.
// provenance[c] is the generating node tuple (the identifying pair for
// triplet rounds, the anchor tuple for l-tuple rounds; empty for oracles).
struct OverlapClustering {
    std::vector<std::vector<int>> clusters;    // sorted sample indices
    std::vector<std::vector<int>> provenance;  // sorted generating tuple
};

struct ClusterParams {
    int T = 1;               // common-neighbor threshold
    long long rounds = 1;    // random tuple draws
    int ell = 3;             // tuple order; 3 = triplet algorithm
    bool trimming = false;   // bounded-moment variant
    // l-tuple deletion key: the anchor tuple u_1..u_{ell-1} (default), or the
    // generating base {u, u_1..u_{ell-2}} that the membership test actually
    // intersects. The anchor key breaks both ways at small m: it can delete an
    // exact cluster whose anchors share a stray second coordinate, and it lets
    // a merged set survive (its base sits inside each constituent cluster, but
    // the extra anchor u_{ell-1} usually lies in neither, so no smaller
    // survivor contains the key). Keying on the base restores the triplet
    // invariant: an exact set's generators share exactly one coordinate.
    bool tuple_key_generators = false;
};

// ell = 3: T = floor(pk/10m), rounds = ceil(10 m ln^2 m);
// ell > 3: T = floor(pk/(10 m 2^ell)), rounds = ceil(10 k^{ell-2} m ln^2 m).
// Throws if T underflows to 0 (p too small for these k, m).
ClusterParams default_params(long long p, int k, int m, int ell);

// One triplet-test candidate set: {w : |Γ(u) ∩ Γ(v) ∩ Γ(w)| >= T} ∪ {u, v},
// sorted. The inner step of the triplet rounds, exposed for tests/diagnostics.
std::vector<int> candidate_set(const ConnectionGraph& g, int u, int v, int T);

// Triplet rounds: draw a uniform random edge (u,v), form the candidate set
// (trimmed first when params.trimming), then delete any set whose generating
// pair lies in a strictly smaller surviving set, and delete duplicates.
OverlapClustering overlapping_cluster(const ConnectionGraph& g,
                                      const ClusterParams& params,
                                      std::uint64_t seed);

// l-tuple rounds: pick a random node u and ell-1 distinct random neighbors
// u_1..u_{ell-1}; if |Γ(u) ∩ Γ(u_1) ∩ ... ∩ Γ(u_{ell-1})| >= T, form
// S = {w : |Γ(u) ∩ Γ(u_1) ∩ ... ∩ Γ(u_{ell-2}) ∩ Γ(w)| >= T} ∪ {u_1..u_{ell-1}};
// same minimal-set deletion, keyed on the anchor tuple (or the generating
// base, per tuple_key_generators). Rounds landing on a node with fewer than
// ell-1 neighbors are skipped; all-skipped is an error.
OverlapClustering overlapping_cluster_l(const ConnectionGraph& g,
                                        const ClusterParams& params,
                                        std::uint64_t seed);

// Exactly {w in s_prime : |Γ(w) ∩ s_prime| >= T}.
std::vector<int> trim_candidate_set(const ConnectionGraph& g,
                                    const std::vector<int>& s_prime, int T);

// Ground-truth clustering {j : i in Omega_j} for every coordinate i present.
OverlapClustering oracle_clustering(const SampleSet& ss);

}  // namespace odl
