#include "odl/refine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "odl/eval.hpp"

namespace odl {
namespace {

// One round over batch columns [begin, end) of ss.
Dictionary step_range(const Dictionary& b, const SampleSet& ss, int begin, int end, double tau,
                      std::vector<int>* carried, double* support_acc) {
    if (b.columns.rows() != ss.samples.rows())
        throw std::invalid_argument("iterative_average_step: dimension mismatch");
    if (begin < 0 || end > ss.p || begin >= end)
        throw std::invalid_argument("iterative_average_step: empty batch");
    const Eigen::Index n = b.columns.rows();
    const int m = b.m;
    // all signed inner products in one product: (m x batch)
    const Eigen::MatrixXd gram =
        b.columns.transpose() * ss.samples.middleCols(begin, end - begin);

    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(n, m);
    std::vector<long long> counts(m, 0);
    int support_hits = 0;
    std::vector<int> omega;
    for (int i = 0; i < end - begin; ++i) {
        omega.clear();
        for (int j = 0; j < m; ++j)
            if (std::abs(gram(j, i)) > tau) omega.push_back(j);
        if (support_acc && ss.has_ground_truth() &&
            omega == ss.ground_truth[begin + i].support)
            ++support_hits;
        if (omega.empty()) continue;
        Eigen::MatrixXd b_sub(n, omega.size());
        for (std::size_t t = 0; t < omega.size(); ++t) b_sub.col(t) = b.columns.col(omega[t]);
        const Eigen::VectorXd y = ss.samples.col(begin + i);
        const Eigen::VectorXd xhat = least_squares_coeffs(b_sub, y);
        const Eigen::VectorXd resid = y - b_sub * xhat;
        for (std::size_t t = 0; t < omega.size(); ++t) {
            const int j = omega[t];
            if (gram(j, i) <= tau) continue;  // positive side only
            sums.col(j) += resid + b.columns.col(j) * xhat[static_cast<Eigen::Index>(t)];
            ++counts[j];
        }
    }

    Dictionary out = b;
    for (int j = 0; j < m; ++j) {
        if (counts[j] == 0) {
            if (carried) carried->push_back(j);
            continue;  // carry the column over unchanged
        }
        const double norm = sums.col(j).norm();
        if (norm == 0.0)
            throw std::runtime_error("iterative_average_step: zero-norm residual sum");
        out.columns.col(j) = sums.col(j) / norm;
    }
    out.mu = m >= 2 ? incoherence(out) : 0.0;
    if (support_acc)
        *support_acc = ss.has_ground_truth()
                           ? static_cast<double>(support_hits) / (end - begin)
                           : -1.0;
    return out;
}

}  // namespace

std::vector<int> infer_support(const Eigen::VectorXd& y, const Dictionary& b, double tau) {
    if (y.size() != b.columns.rows())
        throw std::invalid_argument("infer_support: dimension mismatch");
    const Eigen::VectorXd g = b.columns.transpose() * y;
    std::vector<int> omega;
    for (int j = 0; j < b.m; ++j)
        if (std::abs(g[j]) > tau) omega.push_back(j);
    return omega;
}

Eigen::VectorXd least_squares_coeffs(const Eigen::MatrixXd& b_sub, const Eigen::VectorXd& y) {
    if (b_sub.rows() != y.size())
        throw std::invalid_argument("least_squares_coeffs: dimension mismatch");
    if (b_sub.cols() < 1 || b_sub.cols() > b_sub.rows())
        throw std::invalid_argument("least_squares_coeffs: need 1 <= |support| <= n");
    // Gram spectrum is cheap at |support| << n and certifies conditioning
    const Eigen::MatrixXd gram = b_sub.transpose() * b_sub;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    if (lo <= 0.0 || hi / lo > 1e8)
        throw std::runtime_error("least_squares_coeffs: Gram condition number above 1e8");
    return Eigen::HouseholderQR<Eigen::MatrixXd>(b_sub).solve(y);
}

Dictionary iterative_average_step(const Dictionary& b, const SampleSet& batch, double tau,
                                  std::vector<int>* carried) {
    return step_range(b, batch, 0, batch.p, tau, carried, nullptr);
}

RefineResult refine(const Dictionary& b0, const SampleSet& pool, const RefineConfig& cfg,
                    const Dictionary* reference) {
    if (cfg.tau <= 0.0 || cfg.tau >= 1.0)
        throw std::invalid_argument("refine: tau in (0,1) required");
    if (cfg.q < 1) throw std::invalid_argument("refine: q >= 1 required");
    if (cfg.rounds < 0 || cfg.target_error < 0.0)
        throw std::invalid_argument("refine: negative stop criterion");
    if (cfg.rounds == 0 && cfg.target_error == 0.0) {
        // no stop criterion requested: zero rounds, estimate unchanged
        return RefineResult{b0, {}, {}};
    }

    // the reference is diagnostics only; unusable when shapes differ
    if (reference && (reference->m != b0.m || reference->n != b0.n)) reference = nullptr;

    RefineResult res;
    res.estimate = b0;
    int offset = 0;
    int growth_streak = 0;
    double prev_change = -1.0;
    for (int round = 1; cfg.rounds == 0 || round <= cfg.rounds; ++round) {
        if (offset + cfg.q > pool.p)
            throw std::runtime_error("refine: sample pool exhausted at round " +
                                     std::to_string(round));
        RefineTraceRow row;
        row.round = round;
        double support_acc = -1.0;
        res.carried_columns.clear();
        Dictionary next = step_range(res.estimate, pool, offset, offset + cfg.q, cfg.tau,
                                     &res.carried_columns, &support_acc);
        offset += cfg.q;
        if (support_acc >= 0.0) row.support_acc = support_acc;
        row.changed_norm =
            (next.columns - res.estimate.columns).colwise().norm().maxCoeff();
        if (reference) {
            const Alignment al = align_dictionaries(*reference, next);
            row.max_err = al.max_err;
            row.mean_err =
                std::accumulate(al.per_column_err.begin(), al.per_column_err.end(), 0.0) /
                al.per_column_err.size();
            row.perm = al.perm;
            row.signs = al.signs;
        }
        res.estimate = std::move(next);
        res.trace.push_back(row);
        if (cfg.target_error > 0.0 && row.changed_norm < cfg.target_error) break;
        // growth below 1e-12 is converged-state jitter, not divergence
        if (prev_change >= 0.0 && row.changed_norm > prev_change &&
            row.changed_norm > 1e-12) {
            if (++growth_streak >= 2)
                throw std::runtime_error(
                    "refine: diverging, change grew 2 consecutive rounds (" +
                    std::to_string(prev_change) + " -> " + std::to_string(row.changed_norm) +
                    " at round " + std::to_string(round) + ")");
        } else {
            growth_streak = 0;
        }
        prev_change = row.changed_norm;
    }
    return res;
}

std::string trace_json_lines(const std::vector<RefineTraceRow>& trace) {
    std::ostringstream out;
    out.precision(12);
    for (const auto& row : trace) {
        out << "{\"round\":" << row.round << ",\"max_err\":";
        if (row.max_err) out << *row.max_err; else out << "null";
        out << ",\"mean_err\":";
        if (row.mean_err) out << *row.mean_err; else out << "null";
        out << ",\"support_acc\":";
        if (row.support_acc) out << *row.support_acc; else out << "null";
        out << ",\"changed_norm\":" << row.changed_norm << "}\n";
    }
    return out.str();
}

}  // namespace odl
