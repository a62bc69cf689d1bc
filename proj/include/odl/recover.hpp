#pragma once
#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "odl/cluster.hpp"
#include "odl/model.hpp"

namespace odl {

// A cluster with a relative-sign split: members_pos holds the samples whose
// shared-coordinate coefficient was labeled +1 relative to the cluster anchor.
// Invariants: members_pos subset of members_all, |members_pos| >= |members_all|/2.
struct SignedCluster {
    int coordinate_tag = -1;  // opaque cluster identifier (index in the input clustering)
    std::vector<int> members_pos;
    std::vector<int> members_all;
};

struct SignSplitStats {
    int labeled = 0;
    int unlabeled = 0;  // members with no labeled path to the anchor (dropped)
};

// Splits each cluster by relative sign.  Pairs (u,v) that co-occur in exactly
// one cluster are unique-intersection pairs and get label sign(<Y_u, Y_v>).
// The anchor is the smallest-index member; other members get the direct pair
// label when available, else the verdict of the first member w (in index
// order) with labeled pairs to both.  The side is complemented when it covers
// at most half the labeled members.  Clusters larger than `subsample` are
// processed on their first `subsample` members by index; members_all holds
// exactly the labeled members.  Unlabeled members are reported per cluster
// via `stats`, not fatal.
std::vector<SignedCluster> find_relative_signs(const SampleSet& ss,
                                               const OverlapClustering& clustering,
                                               int subsample = 500,
                                               std::vector<SignSplitStats>* stats = nullptr);

// Column estimate per signed cluster: normalized signed sum of member samples.
// Throws if a sum has zero norm or a members_pos is empty.
Dictionary average_recover(const SampleSet& ss, const std::vector<SignedCluster>& signed_clusters);

// (1/count) * sum of y y^T over the cluster; symmetric by construction.
struct CovarianceEstimate {
    Eigen::MatrixXd sigma_hat;
    int count = 0;
};

CovarianceEstimate empirical_covariance(const SampleSet& ss, const std::vector<int>& members);

struct PowerResult {
    Eigen::VectorXd v;       // unit top eigenvector estimate
    double sigma1 = 0.0;     // Rayleigh quotient at v
    double sigma2 = 0.0;     // from one deflated power-iteration pass
    bool converged = false;  // sine of successive angle fell below tol
    bool degenerate = false; // no usable spectral gap (sigma2 ~ sigma1)
    int iterations = 0;
};

// Power iteration from a random unit start; converged when the sine of the
// angle between successive iterates drops below tol.  Non-convergence and
// degeneracy are flagged, not fatal.
PowerResult top_singular_vector(const CovarianceEstimate& cov, double tol, int max_iter,
                                std::uint64_t seed);

struct SvdRecovery {
    Dictionary estimate;          // columns = per-cluster top singular vectors
    std::vector<double> sigma1;
    std::vector<double> sigma2;
    double zeta = 0.0;            // max{ mu*k/sqrt(n), sqrt(k/m) }
    std::vector<PowerResult> details;
};

// Column estimate per cluster: top singular vector of the cluster's empirical
// covariance.  Appends one JSON-lines row per cluster to `diagnostics` when
// non-null: {"cluster":i,"size":s,"sigma1":..,"sigma2":..,"zeta":..}.
SvdRecovery svd_recover(const SampleSet& ss, const OverlapClustering& clustering,
                        double tol = 1e-9, int max_iter = 10000,
                        std::uint64_t seed = 0, std::string* diagnostics = nullptr);

}  // namespace odl
