#include "odl/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>

namespace odl {
namespace {

// Hungarian algorithm (potential form), O(n^3).  Returns row -> column of a
// minimum-cost perfect matching.
std::vector<int> hungarian_min(const Eigen::MatrixXd& cost) {
    const int n = static_cast<int>(cost.rows());
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            int j1 = -1;
            double delta = inf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }
    std::vector<int> row_to_col(n, -1);
    for (int j = 1; j <= n; ++j) row_to_col[p[j] - 1] = j - 1;
    return row_to_col;
}

double jaccard(const std::vector<int>& a, const std::vector<int>& b) {
    // both sorted ascending
    std::size_t i = 0, j = 0, inter = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) {
            ++inter;
            ++i;
            ++j;
        } else if (a[i] < b[j]) {
            ++i;
        } else {
            ++j;
        }
    }
    const std::size_t uni = a.size() + b.size() - inter;
    return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace

Alignment align_dictionaries(const Dictionary& a_ref, const Dictionary& a_hat) {
    if (a_ref.n != a_hat.n || a_ref.m != a_hat.m)
        throw std::invalid_argument("align_dictionaries: dimension mismatch");
    const int m = a_ref.m;
    Eigen::MatrixXd score = (a_hat.columns.transpose() * a_ref.columns).cwiseAbs();
    // maximize total |<hat_i, ref_j>| == minimize negated scores
    Alignment out;
    out.perm = hungarian_min(-score);
    out.signs.resize(m);
    out.per_column_err.resize(m);
    out.max_err = 0.0;
    for (int i = 0; i < m; ++i) {
        const int j = out.perm[i];
        const double ip = a_hat.columns.col(i).dot(a_ref.columns.col(j));
        out.signs[i] = ip >= 0.0 ? 1 : -1;
        out.per_column_err[i] =
            (a_hat.columns.col(i) - out.signs[i] * a_ref.columns.col(j)).norm();
        out.max_err = std::max(out.max_err, out.per_column_err[i]);
    }
    return out;
}

ClusterScore clustering_score(const OverlapClustering& oracle, const OverlapClustering& found) {
    const int no = static_cast<int>(oracle.clusters.size());
    const int nf = static_cast<int>(found.clusters.size());
    std::vector<std::tuple<double, int, int>> pairs;  // (jaccard, oracle idx, found idx)
    pairs.reserve(static_cast<std::size_t>(no) * nf);
    for (int i = 0; i < no; ++i)
        for (int j = 0; j < nf; ++j) {
            const double s = jaccard(oracle.clusters[i], found.clusters[j]);
            if (s > 0.0) pairs.emplace_back(s, i, j);
        }
    std::stable_sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
        return std::get<0>(a) > std::get<0>(b);
    });
    ClusterScore out;
    out.jaccard.assign(no, 0.0);
    std::vector<char> used_o(no, 0), used_f(nf, 0);
    int matched = 0;
    for (const auto& [s, i, j] : pairs) {
        if (used_o[i] || used_f[j]) continue;
        used_o[i] = used_f[j] = 1;
        out.jaccard[i] = s;
        ++matched;
        if (oracle.clusters[i] == found.clusters[j]) ++out.exact;
    }
    out.missed = no - matched;
    out.spurious = nf - matched;
    return out;
}

double sign_accuracy(const SampleSet& ss, const std::vector<SignedCluster>& signed_clusters) {
    if (!ss.has_ground_truth())
        throw std::invalid_argument("sign_accuracy: sample set has no ground truth");
    if (signed_clusters.empty())
        throw std::invalid_argument("sign_accuracy: no clusters");
    const int m = ss.cfg.m;
    double total = 0.0;
    for (const auto& sc : signed_clusters) {
        // the cluster's coordinate is the majority coordinate over member supports
        // (coordinate_tag is an opaque cluster id, not a coordinate index)
        std::vector<int> votes(m, 0);
        for (int u : sc.members_all)
            for (int c : ss.ground_truth[u].support) ++votes[c];
        const int tag =
            static_cast<int>(std::max_element(votes.begin(), votes.end()) - votes.begin());
        // members whose support lacks the tag coordinate carry no true sign
        int agree = 0, scored = 0;
        for (int u : sc.members_all) {
            const auto& code = ss.ground_truth[u];
            const auto it = std::lower_bound(code.support.begin(), code.support.end(), tag);
            if (it == code.support.end() || *it != tag) continue;
            const double value = code.values[it - code.support.begin()];
            const int truth = value >= 0.0 ? 1 : -1;
            const bool in_pos =
                std::binary_search(sc.members_pos.begin(), sc.members_pos.end(), u);
            const int label = in_pos ? 1 : -1;
            ++scored;
            if (label == truth) ++agree;
        }
        if (scored == 0) continue;  // contributes 0
        const double acc = static_cast<double>(agree) / scored;
        total += std::max(acc, 1.0 - acc);
    }
    return total / static_cast<double>(signed_clusters.size());
}

}  // namespace odl
