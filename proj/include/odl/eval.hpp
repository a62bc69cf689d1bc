#pragma once
#include <Eigen/Dense>
#include <vector>

#include "odl/cluster.hpp"
#include "odl/model.hpp"
#include "odl/recover.hpp"

namespace odl {

// Column correspondence between two dictionaries: per_column_err[i] =
// ||Ahat_i - signs[i] * Aref_{perm[i]}||, max_err their maximum.
struct Alignment {
    std::vector<int> perm;    // hat column -> ref column (bijection)
    std::vector<int> signs;   // +1 / -1 per hat column
    std::vector<double> per_column_err;
    double max_err = 0.0;
};

// Optimal assignment on the |<Ahat_i, Aref_j>| score matrix (maximum total
// score), signs from the matched inner products.
Alignment align_dictionaries(const Dictionary& a_ref, const Dictionary& a_hat);

struct ClusterScore {
    std::vector<double> jaccard;  // per matched oracle cluster
    int exact = 0;                // exactly recovered oracle clusters
    int missed = 0;               // oracle clusters with no match
    int spurious = 0;             // found clusters with no match
};

// Greedy Jaccard matching of found clusters to oracle clusters (descending
// similarity; exact when clusters are near-disjoint).
ClusterScore clustering_score(const OverlapClustering& oracle,
                              const OverlapClustering& found);

// Per signed cluster, the better of the two sign conventions against the
// ground-truth signs of the cluster's coordinate; averaged over clusters.
double sign_accuracy(const SampleSet& ss, const std::vector<SignedCluster>& signed_clusters);

}  // namespace odl
