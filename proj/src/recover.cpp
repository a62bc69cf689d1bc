#include "odl/recover.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "odl/rng.hpp"

namespace odl {
namespace {

// number of clusters containing both a and b (lists sorted ascending)
int common_cluster_count(const std::vector<int>& a, const std::vector<int>& b) {
    int count = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) {
            ++count;
            ++i;
            ++j;
        } else if (a[i] < b[j]) {
            ++i;
        } else {
            ++j;
        }
    }
    return count;
}

}  // namespace

std::vector<SignedCluster> find_relative_signs(const SampleSet& ss,
                                               const OverlapClustering& clustering,
                                               int subsample,
                                               std::vector<SignSplitStats>* stats) {
    if (subsample < 2) throw std::invalid_argument("find_relative_signs: subsample >= 2 required");
    const int p = ss.p;
    // inverted index sample -> clusters (cluster ids ascending by construction)
    std::vector<std::vector<int>> owner(p);
    for (std::size_t c = 0; c < clustering.clusters.size(); ++c)
        for (int u : clustering.clusters[c]) {
            if (u < 0 || u >= p)
                throw std::invalid_argument("find_relative_signs: member out of range");
            owner[u].push_back(static_cast<int>(c));
        }

    std::vector<SignedCluster> out;
    out.reserve(clustering.clusters.size());
    if (stats) stats->assign(clustering.clusters.size(), SignSplitStats{});

    for (std::size_t c = 0; c < clustering.clusters.size(); ++c) {
        const auto& full = clustering.clusters[c];
        if (full.size() < 2)
            throw std::invalid_argument("find_relative_signs: cluster with fewer than 2 members");
        std::vector<int> s(full.begin(),
                           full.begin() + std::min<std::size_t>(full.size(), subsample));
        const int sz = static_cast<int>(s.size());

        // pairwise labels: 0 = not a unique-intersection pair, else sign(<Y_a,Y_b>)
        Eigen::MatrixXd ys(ss.samples.rows(), sz);
        for (int t = 0; t < sz; ++t) ys.col(t) = ss.samples.col(s[t]);
        Eigen::MatrixXd gram = ys.transpose() * ys;
        std::vector<signed char> label(static_cast<std::size_t>(sz) * sz, 0);
        for (int a = 0; a < sz; ++a)
            for (int b = a + 1; b < sz; ++b) {
                if (common_cluster_count(owner[s[a]], owner[s[b]]) != 1) continue;
                const signed char l = gram(a, b) >= 0.0 ? 1 : -1;
                label[static_cast<std::size_t>(a) * sz + b] = l;
                label[static_cast<std::size_t>(b) * sz + a] = l;
            }
        auto lab = [&](int a, int b) { return label[static_cast<std::size_t>(a) * sz + b]; };

        // anchor = smallest index member = s[0]; assign each other member a side
        std::vector<signed char> side(sz, 0);  // +1 / -1 relative to anchor, 0 unlabeled
        side[0] = 1;
        for (int v = 1; v < sz; ++v) {
            if (const signed char direct = lab(0, v); direct != 0) {
                side[v] = direct;
                continue;
            }
            signed char verdict = 0;
            for (int w = 1; w < sz; ++w) {
                if (w == v) continue;
                const signed char lw = lab(0, w), lv = lab(v, w);
                if (lw == 0 || lv == 0) continue;
                if (lw == lv) {
                    verdict = 1;  // first w with equal labels decides
                    break;
                }
                verdict = -1;  // labeled path exists; keep scanning for an equal one
            }
            side[v] = verdict;
        }

        SignedCluster sc;
        sc.coordinate_tag = static_cast<int>(c);
        int unlabeled = 0;
        for (int t = 0; t < sz; ++t) {
            if (side[t] == 0) {
                ++unlabeled;
                continue;
            }
            sc.members_all.push_back(s[t]);
            if (side[t] > 0) sc.members_pos.push_back(s[t]);
        }
        if (2 * sc.members_pos.size() <= sc.members_all.size()) {
            std::vector<int> flipped;
            flipped.reserve(sc.members_all.size() - sc.members_pos.size());
            std::set_difference(sc.members_all.begin(), sc.members_all.end(),
                                sc.members_pos.begin(), sc.members_pos.end(),
                                std::back_inserter(flipped));
            sc.members_pos = std::move(flipped);
        }
        if (stats) {
            (*stats)[c].labeled = static_cast<int>(sc.members_all.size());
            (*stats)[c].unlabeled = unlabeled;
        }
        out.push_back(std::move(sc));
    }
    return out;
}

Dictionary average_recover(const SampleSet& ss, const std::vector<SignedCluster>& signed_clusters) {
    if (signed_clusters.empty())
        throw std::invalid_argument("average_recover: no clusters");
    const Eigen::Index n = ss.samples.rows();
    Dictionary est;
    est.n = static_cast<int>(n);
    est.m = static_cast<int>(signed_clusters.size());
    est.columns.resize(n, est.m);
    for (std::size_t c = 0; c < signed_clusters.size(); ++c) {
        const auto& pos = signed_clusters[c].members_pos;
        if (pos.empty())
            throw std::invalid_argument("average_recover: empty members_pos");
        Eigen::VectorXd sum = Eigen::VectorXd::Zero(n);
        for (int u : pos) sum += ss.samples.col(u);
        const double norm = sum.norm();
        if (norm == 0.0)
            throw std::runtime_error("average_recover: zero-norm signed sum");
        est.columns.col(static_cast<Eigen::Index>(c)) = sum / norm;
    }
    est.mu = est.m >= 2 ? incoherence(est) : 0.0;
    return est;
}

CovarianceEstimate empirical_covariance(const SampleSet& ss, const std::vector<int>& members) {
    if (members.empty())
        throw std::invalid_argument("empirical_covariance: empty cluster");
    const Eigen::Index n = ss.samples.rows();
    CovarianceEstimate cov;
    cov.count = static_cast<int>(members.size());
    Eigen::MatrixXd ys(n, cov.count);
    for (int t = 0; t < cov.count; ++t) {
        const int u = members[t];
        if (u < 0 || u >= ss.p)
            throw std::invalid_argument("empirical_covariance: member out of range");
        ys.col(t) = ss.samples.col(u);
    }
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n, n);
    acc.selfadjointView<Eigen::Lower>().rankUpdate(ys, 1.0 / cov.count);
    cov.sigma_hat = acc.selfadjointView<Eigen::Lower>();
    return cov;
}

PowerResult top_singular_vector(const CovarianceEstimate& cov, double tol, int max_iter,
                                std::uint64_t seed) {
    const Eigen::Index n = cov.sigma_hat.rows();
    if (n < 1 || cov.sigma_hat.cols() != n)
        throw std::invalid_argument("top_singular_vector: matrix must be square and nonempty");
    if (tol <= 0.0 || max_iter < 1)
        throw std::invalid_argument("top_singular_vector: tol > 0 and max_iter >= 1 required");
    Rng rng = Rng(seed).stream("power");
    auto random_unit = [&]() {
        Eigen::VectorXd v(n);
        for (Eigen::Index i = 0; i < n; ++i) v[i] = rng.normal();
        const double norm = v.norm();
        return norm > 0.0 ? Eigen::VectorXd(v / norm) : Eigen::VectorXd(Eigen::VectorXd::Unit(n, 0));
    };

    PowerResult res;
    res.v = random_unit();
    // main pass
    for (int it = 0; it < max_iter; ++it) {
        Eigen::VectorXd next = cov.sigma_hat.selfadjointView<Eigen::Lower>() * res.v;
        const double norm = next.norm();
        ++res.iterations;
        if (norm == 0.0) {  // vector in the kernel; the matrix may be zero
            res.sigma1 = 0.0;
            res.converged = true;
            break;
        }
        next /= norm;
        const double dot = std::min(1.0, std::abs(next.dot(res.v)));
        res.v = next;
        if (std::sqrt(std::max(0.0, 1.0 - dot * dot)) < tol) {
            res.converged = true;
            break;
        }
    }
    res.sigma1 = res.v.dot(cov.sigma_hat.selfadjointView<Eigen::Lower>() * res.v);

    // one deflated pass for sigma2: iterate w -> (M - sigma1 v v^T) w
    Eigen::VectorXd w = random_unit();
    w -= res.v * res.v.dot(w);
    if (w.norm() > 0.0) {
        w.normalize();
        for (int it = 0; it < max_iter; ++it) {
            Eigen::VectorXd next = cov.sigma_hat.selfadjointView<Eigen::Lower>() * w;
            next -= res.v * (res.sigma1 * res.v.dot(w));
            const double norm = next.norm();
            if (norm == 0.0) break;
            next /= norm;
            const double dot = std::min(1.0, std::abs(next.dot(w)));
            w = next;
            if (std::sqrt(std::max(0.0, 1.0 - dot * dot)) < tol) break;
        }
        const Eigen::VectorXd mw = cov.sigma_hat.selfadjointView<Eigen::Lower>() * w;
        res.sigma2 = w.dot(mw) - res.sigma1 * (res.v.dot(w)) * (res.v.dot(w));
    }
    res.degenerate = res.sigma1 - res.sigma2 <= tol * std::max(res.sigma1, 1e-300);
    return res;
}

SvdRecovery svd_recover(const SampleSet& ss, const OverlapClustering& clustering,
                        double tol, int max_iter, std::uint64_t seed, std::string* diagnostics) {
    if (clustering.clusters.empty())
        throw std::invalid_argument("svd_recover: no clusters");
    const Eigen::Index n = ss.samples.rows();
    SvdRecovery out;
    out.estimate.n = static_cast<int>(n);
    out.estimate.m = static_cast<int>(clustering.clusters.size());
    out.estimate.columns.resize(n, out.estimate.m);
    const double mu = ss.dict_mu;
    out.zeta = std::max(mu * ss.cfg.k / std::sqrt(static_cast<double>(ss.cfg.n)),
                        std::sqrt(static_cast<double>(ss.cfg.k) / ss.cfg.m));
    Rng root = Rng(seed).stream("svd");
    std::ostringstream diag;
    diag.precision(12);
    for (std::size_t c = 0; c < clustering.clusters.size(); ++c) {
        CovarianceEstimate cov = empirical_covariance(ss, clustering.clusters[c]);
        PowerResult pr = top_singular_vector(cov, tol, max_iter, root.stream(c).next_u64());
        out.estimate.columns.col(static_cast<Eigen::Index>(c)) = pr.v;
        out.sigma1.push_back(pr.sigma1);
        out.sigma2.push_back(pr.sigma2);
        if (diagnostics)
            diag << "{\"cluster\":" << c << ",\"size\":" << cov.count
                 << ",\"sigma1\":" << pr.sigma1 << ",\"sigma2\":" << pr.sigma2
                 << ",\"zeta\":" << out.zeta << "}\n";
        out.details.push_back(std::move(pr));
    }
    out.estimate.mu = out.estimate.m >= 2 ? incoherence(out.estimate) : 0.0;
    if (diagnostics) *diagnostics += diag.str();
    return out;
}

}  // namespace odl
